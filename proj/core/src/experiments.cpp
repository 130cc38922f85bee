#include "soblab/experiments.hpp"

#include <cmath>
#include <functional>

#include "soblab/bundle_metrics.hpp"
#include "soblab/errors.hpp"

namespace soblab {

namespace {

double bump(double s) {
    if (std::fabs(s) >= 1.0) return 0.0;
    const double w = 1.0 - s * s;
    return w * w;
}

double bump_slope(double s) {
    if (std::fabs(s) >= 1.0) return 0.0;
    return -4.0 * s * (1.0 - s * s);
}

// Family 2 excursion amplitude: small enough that the holonomy competitor
// stays below 2 pi pointwise.
constexpr double kExcursionAmplitude = 0.35;

double excursion(double s) {
    if (std::fabs(s) >= 0.5) return 0.0;
    const double w = 1.0 - 4.0 * s * s;
    return kExcursionAmplitude * w * w;
}

double excursion_slope(double s) {
    if (std::fabs(s) >= 0.5) return 0.0;
    return -16.0 * kExcursionAmplitude * s * (1.0 - 4.0 * s * s);
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < intervals; i += 2) odd += f(a + i * h);
    for (int i = 2; i < intervals; i += 2) even += f(a + i * h);
    return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ContractViolation("loglog_slope: need matching samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<FamilyResult> family_cg_vs_sasaki(double p, int n,
                                              const std::vector<double>& lambdas, int nodes) {
    if (n < 2)
        throw ContractViolation("family_cg_vs_sasaki: the fiber rotation needs n >= 2");
    const Manifold N = Manifold::euclidean(n);
    std::vector<FamilyResult> out;
    for (double lambda : lambdas) {
        const Manifold M = Manifold::interval(-lambda, lambda);
        auto value = [&](double sign) {
            return [=](const Vec& c) {
                Vec y = zeros(n);
                y[0] = sign * bump(c[0] / lambda);
                return y;
            };
        };
        auto slope = [&](double sign) {
            return [=](const Vec& c) {
                Vec col = zeros(n);
                col[0] = sign * bump_slope(c[0] / lambda) / lambda;
                return std::vector<Vec>{col};
            };
        };
        SampledMap u = SampledMap::sample(M, N, {nodes}, value(1.0), slope(1.0));
        SampledMap v = SampledMap::sample(M, N, {nodes}, value(-1.0), slope(-1.0));

        FamilyResult row;
        row.family = "cg-sasaki";
        row.p = p;
        row.parameter = lambda;
        row.delta_sasaki = sobolev_distance(u, v, DistanceKind::sasaki, p).value;
        row.sasaki_is_bound = false;
        row.delta_iota = sobolev_distance(u, v, DistanceKind::iota, p).value;
        row.delta_chiron = sobolev_distance(u, v, DistanceKind::chiron, p).value;

        // Sharp pointwise bound: rotate the derivative to its negative in the
        // (0, 1) fiber plane while the base translates through 2|u_lambda|.
        // The competitor's length under G^{1/2} is evaluated by path_length.
        DerivativeField du = weak_derivative(u);
        const int steps = 512;
        const std::vector<Vec> fx = M.tangent_frame(Vec{0.0});
        const std::vector<Vec> fy = N.tangent_frame(zeros(n));  // flat frames, point-free
        std::vector<double> sharp(u.grid.size(), 0.0), saturated(u.grid.size(), 0.0);
        for (std::size_t i = 0; i < u.grid.size(); ++i) {
            const double a = u.values[i][0];
            const double b = du.ambient[i](0, 0);
            saturated[i] = std::sqrt(4.0 * a * a + M_PI * M_PI);
            if (a == 0.0 && b == 0.0) continue;
            BundlePath path;
            path.samples.reserve(steps + 1);
            const Vec t = u.grid.position(i);
            for (int j = 0; j <= steps; ++j) {
                const double tau = static_cast<double>(j) / steps;
                Vec base = zeros(n);
                base[0] = (1.0 - 2.0 * tau) * a;
                Mat mat(n, 1);
                mat(0, 0) = b * std::cos(M_PI * tau);
                mat(1, 0) = b * std::sin(M_PI * tau);
                path.samples.push_back(HomElement{M, N, t, base, fx, fy, mat});
            }
            sharp[i] = path_length(0.5, path);
        }
        std::vector<double> terms(u.grid.size()), sat_terms(u.grid.size());
        for (std::size_t i = 0; i < u.grid.size(); ++i) {
            terms[i] = u.grid.weight(i) * std::pow(sharp[i], p);
            sat_terms[i] = u.grid.weight(i) * std::pow(saturated[i], p);
        }
        row.delta_cg = std::pow(pairwise_sum(terms), 1.0 / p);
        row.cg_is_bound = true;
        row.cg_saturated_bound = std::pow(pairwise_sum(sat_terms), 1.0 / p);
        row.closed_form_bound =
            std::sqrt(4.0 + M_PI * M_PI) * std::pow(2.0 * lambda, 1.0 / p);

        // Independent reference for the exact flat Sasaki distance: the
        // rescaled closed form, integrated at high resolution.
        row.reference_value =
            2.0 * std::pow(simpson(
                               [&](double s) {
                                   const double us = bump(s), ds = bump_slope(s);
                                   const double term =
                                       std::pow(lambda, 2.0 / p) * us * us +
                                       std::pow(lambda, -2.0 * (1.0 - 1.0 / p)) * ds * ds;
                                   return std::pow(term, p / 2.0);
                               },
                               -1.0, 1.0, 1 << 17),
                           1.0 / p);
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

// Base-loop competitor for the sphere rotation family: transport along the
// meridian from rho(x) to x, then around a geodesic circle through x
// enclosing a pi cap, whose holonomy supplies the remaining half turn.
std::vector<std::pair<Vec, Vec>> rotation_competitor_chain(const Vec& t, const Vec& x,
                                                           double alpha, int ambient,
                                                           int loop_points) {
    const int last = ambient - 1;
    Vec w = zeros(ambient);  // meridian tangent at x
    w[0] = std::cos(alpha);
    w[last] = -std::sin(alpha);
    const double beta = M_PI / 3.0;  // cap of area pi
    Vec c = std::cos(beta) * x + std::sin(beta) * w;
    Vec a = std::sin(beta) * x - std::cos(beta) * w;
    // b completes {c, a} inside the span of axes {0, 1, last}.
    Vec c3{c[0], c[1], c[last]}, a3{a[0], a[1], a[last]};
    Vec b3 = cross(c3, a3);
    Vec b = zeros(ambient);
    b[0] = b3[0];
    b[1] = b3[1];
    b[last] = b3[2];

    std::vector<std::pair<Vec, Vec>> chain;
    chain.reserve(loop_points);
    chain.emplace_back(t, x);
    for (int j = 1; j < loop_points; ++j) {
        const double phi = 2.0 * M_PI * j / loop_points;
        Vec point = std::cos(beta) * c +
                    (std::sin(beta) * std::cos(phi)) * a +
                    (std::sin(beta) * std::sin(phi)) * b;
        chain.emplace_back(t, point);
    }
    return chain;
}

}  // namespace

std::vector<FamilyResult> family_sasaki_vs_embedding(double p, int n,
                                                     const std::vector<double>& lambdas,
                                                     int nodes) {
    if (n < 2)
        throw ContractViolation("family_sasaki_vs_embedding: needs a sphere of dimension >= 2");
    const Manifold N = Manifold::sphere(n);
    const int ambient = n + 1;
    const int last = ambient - 1;
    Mat rho = Mat::identity(ambient);
    rho(0, 0) = -1.0;
    rho(1, 1) = -1.0;

    std::vector<FamilyResult> out;
    for (double lambda : lambdas) {
        const Manifold M = Manifold::interval(-lambda, lambda);
        auto point = [&](double s) {
            Vec y = zeros(ambient);
            y[0] = std::sin(excursion(s));
            y[last] = std::cos(excursion(s));
            return y;
        };
        auto column = [&](double s) {
            Vec col = zeros(ambient);
            const double a = excursion(s), da = excursion_slope(s);
            col[0] = da * std::cos(a);
            col[last] = -da * std::sin(a);
            return col;
        };
        SampledMap u = SampledMap::sample(
            M, N, {nodes}, [&](const Vec& c) { return point(c[0] / lambda); },
            [&](const Vec& c) {
                return std::vector<Vec>{(1.0 / lambda) * column(c[0] / lambda)};
            });
        SampledMap v = SampledMap::sample(
            M, N, {nodes}, [&](const Vec& c) { return rho * point(c[0] / lambda); },
            [&](const Vec& c) {
                return std::vector<Vec>{(1.0 / lambda) * (rho * column(c[0] / lambda))};
            });

        FamilyResult row;
        row.family = "sasaki-embedding";
        row.p = p;
        row.parameter = lambda;
        row.delta_iota = sobolev_distance(u, v, DistanceKind::iota, p).value;
        row.delta_chiron = sobolev_distance(u, v, DistanceKind::chiron, p).value;
        row.delta_cg = sobolev_distance(u, v, DistanceKind::cheeger_gromoll, p).value;
        row.cg_is_bound = true;

        DerivativeField du = weak_derivative(u);
        DerivativeField dv = weak_derivative(v);
        std::vector<double> terms(u.grid.size(), 0.0);
        for (std::size_t i = 0; i < u.grid.size(); ++i) {
            const double s = u.grid.chart_coords(i)[0] / lambda;
            const double alpha = excursion(s);
            if (alpha == 0.0 && excursion_slope(s) == 0.0) continue;
            HomElement e1 = du.element(i);
            HomElement e2 = dv.element(i);
            double direct = sasaki_distance_upper_bound(e1, e2);
            double looped = sasaki_chain_competitor(
                e1, e2,
                rotation_competitor_chain(u.grid.position(i), u.values[i], alpha, ambient, 256));
            terms[i] = u.grid.weight(i) * std::pow(std::min(direct, looped), p);
        }
        row.delta_sasaki = std::pow(pairwise_sum(terms), 1.0 / p);
        row.sasaki_is_bound = true;
        row.closed_form_bound = 2.0 * M_PI * std::pow(lambda, 1.0 / p);

        // Rescaled closed form of delta^iota, integrated independently.
        row.reference_value =
            std::pow(simpson(
                         [&](double s) {
                             const double a = excursion(s), da = excursion_slope(s);
                             const double gap2 = 4.0 * std::sin(a) * std::sin(a);
                             const double dgap2 = 4.0 * da * da * std::cos(a) * std::cos(a);
                             return lambda *
                                    std::pow(gap2 + dgap2 / (lambda * lambda), p / 2.0);
                         },
                         -1.0, 1.0, 1 << 17),
                     1.0 / p);
        out.push_back(std::move(row));
    }
    return out;
}

double disk_phase(double r, double lambda, double p, int dim_m) {
    if (r >= 2.0 * lambda) return M_PI / 2.0;
    if (r >= lambda) return (r - lambda) * M_PI / (2.0 * lambda);
    const double psi =
        (r - lambda) * M_PI / (2.0 * std::pow(lambda, 1.0 + dim_m / p));
    return lambda * std::sin(psi);
}

double disk_phase_slope(double r, double lambda, double p, int dim_m) {
    if (r >= 2.0 * lambda) return 0.0;
    if (r >= lambda) return M_PI / (2.0 * lambda);
    const double scale = M_PI / (2.0 * std::pow(lambda, 1.0 + dim_m / p));
    return lambda * scale * std::cos((r - lambda) * scale);
}

std::vector<FamilyResult> family_s1_disk(double p, const std::vector<double>& lambdas,
                                         int nodes_per_axis) {
    const int dim_m = 2;
    if (!(p >= 1.0 && p < dim_m))
        throw ContractViolation("family_s1_disk: requires p in [1, dim M)");
    const double radius = 1.0;
    for (double lambda : lambdas)
        if (!(radius > 2.0 * lambda))
            throw ContractViolation("family_s1_disk: disk radius must exceed 2 lambda");

    // The integrands depend only on the radius, so the angular sum of the
    // polar-grid quadrature is carried out exactly (n_theta * h_theta = 2 pi)
    // and only the radial axis is discretized at nodes_per_axis cells.
    const double hr = radius / nodes_per_axis;

    std::vector<FamilyResult> out;
    for (double lambda : lambdas) {
        std::vector<double> s_terms(nodes_per_axis), i_terms(nodes_per_axis),
            c_terms(nodes_per_axis), cg_terms(nodes_per_axis);
        for (int k = 0; k < nodes_per_axis; ++k) {
            const double r = (k + 0.5) * hr;
            const double w = 2.0 * M_PI * r * hr;
            const double phi = disk_phase(r, lambda, p, dim_m);
            const double dphi = disk_phase_slope(r, lambda, p, dim_m);
            const double c = std::cos(phi), s = std::sin(phi);
            s_terms[k] = w * std::pow(c * c + dphi * dphi, p / 2.0);
            i_terms[k] = w * std::pow(c * c + s * s * dphi * dphi, p / 2.0);
            c_terms[k] = w * std::pow(std::fabs(c), p);
            const double gap = M_PI - 2.0 * phi;
            cg_terms[k] = w * std::pow(
                                  gap * gap + M_PI * M_PI * dphi * dphi / (1.0 + dphi * dphi),
                                  p / 2.0);
        }
        FamilyResult row;
        row.family = "s1-disk";
        row.p = p;
        row.parameter = lambda;
        row.delta_sasaki = 2.0 * std::pow(pairwise_sum(s_terms), 1.0 / p);
        row.sasaki_is_bound = false;
        row.delta_iota = 2.0 * std::pow(pairwise_sum(i_terms), 1.0 / p);
        row.delta_chiron = 2.0 * std::pow(pairwise_sum(c_terms), 1.0 / p);
        row.delta_cg = std::pow(pairwise_sum(cg_terms), 1.0 / p);
        row.cg_is_bound = true;

        // Independent radial reference for the Sasaki expression: plain
        // trapezoid at eight-fold resolution.
        const int fine = 8 * nodes_per_axis;
        const double hr = radius / fine;
        std::vector<double> ref(fine + 1);
        for (int j = 0; j <= fine; ++j) {
            const double r = j * hr;
            const double phi = disk_phase(r, lambda, p, dim_m);
            const double dphi = disk_phase_slope(r, lambda, p, dim_m);
            double f = std::pow(std::cos(phi) * std::cos(phi) + dphi * dphi, p / 2.0) * 2.0 *
                       M_PI * r;
            ref[j] = (j == 0 || j == fine) ? 0.5 * hr * f : hr * f;
        }
        row.reference_value = 2.0 * std::pow(pairwise_sum(ref), 1.0 / p);
        row.closed_form_bound = row.reference_value;
        out.push_back(std::move(row));
    }
    return out;
}

SampledMap chiron_kink_map(int ell, int nodes) {
    const Manifold M = Manifold::interval(0.0, 1.0);
    const Manifold N = Manifold::circle();
    auto saw = [ell](double t) {
        const double scaled = t * ell;
        const double frac = scaled - std::floor(scaled);
        return std::min(frac, 1.0 - frac) / ell;
    };
    auto slope = [ell](double t) {
        const double scaled = t * ell;
        const double frac = scaled - std::floor(scaled);
        return frac < 0.5 ? 1.0 : -1.0;  // one-sided at the kinks
    };
    return SampledMap::sample(
        M, N, {nodes},
        [saw](const Vec& c) {
            const double s = saw(c[0]);
            return Vec{std::cos(s), std::sin(s)};
        },
        [saw, slope](const Vec& c) {
            const double s = saw(c[0]), d = slope(c[0]);
            return std::vector<Vec>{Vec{-std::sin(s) * d, std::cos(s) * d}};
        });
}

ChironReport chiron_cauchy_not_convergent(double p, const std::vector<int>& ells, int nodes) {
    ChironReport rep;
    rep.p = p;
    rep.ells = ells;
    std::vector<SampledMap> maps;
    std::vector<DerivativeField> fields;
    maps.reserve(ells.size());
    for (int ell : ells) {
        maps.push_back(chiron_kink_map(ell, nodes));
        fields.push_back(weak_derivative(maps.back()));
        rep.energies.push_back(sobolev_energy(maps.back(), p));
    }
    SampledMap limit = SampledMap::sample(
        Manifold::interval(0.0, 1.0), Manifold::circle(), {nodes},
        [](const Vec&) { return Vec{1.0, 0.0}; },
        [](const Vec&) { return std::vector<Vec>{Vec{0.0, 0.0}}; });
    rep.limit_energy = sobolev_energy(limit, p);

    rep.delta.assign(ells.size(), std::vector<double>(ells.size(), 0.0));
    for (std::size_t i = 0; i < ells.size(); ++i)
        for (std::size_t j = 0; j < ells.size(); ++j) {
            if (i == j) continue;
            rep.delta[i][j] = sobolev_distance(maps[i], maps[j], DistanceKind::chiron, p).value;
            for (std::size_t k = 0; k < maps[i].grid.size(); ++k)
                rep.max_derivative_term = std::max(
                    rep.max_derivative_term,
                    std::fabs(fields[i].frobenius(k) - fields[j].frobenius(k)));
        }
    return rep;
}

}  // namespace soblab

#include "soblab/sobolev.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "soblab/bundle_metrics.hpp"
#include "soblab/errors.hpp"

namespace soblab {

namespace {

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

double lp_from_pointwise(const Grid& grid, const std::vector<double>& pointwise, double p) {
    std::vector<double> terms(pointwise.size());
    for (std::size_t i = 0; i < pointwise.size(); ++i)
        terms[i] = grid.weight(i) * std::pow(pointwise[i], p);
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

}  // namespace

Grid::Grid(const Manifold& domain, const std::vector<int>& shape) : shape_(shape) {
    switch (domain.kind()) {
        case ManifoldKind::interval:
            if (shape.size() != 1) throw ContractViolation("interval grid: one axis expected");
            lo_ = domain.lower_bounds();
            hi_ = domain.upper_bounds();
            break;
        case ManifoldKind::rectangle:
            if (shape.size() != 2) throw ContractViolation("rectangle grid: two axes expected");
            lo_ = domain.lower_bounds();
            hi_ = domain.upper_bounds();
            break;
        case ManifoldKind::disk:
            if (shape.size() != 2) throw ContractViolation("disk grid: two axes expected");
            lo_ = {0.0, 0.0};
            hi_ = {domain.disk_radius(), 2.0 * M_PI};
            polar_ = true;
            break;
        default:
            throw ContractViolation("grids require an interval, rectangle or disk domain");
    }
    for (int n : shape_)
        if (n < 3) throw ContractViolation("grid: need at least 3 nodes per axis");
    spacing_.resize(shape_.size());
    size_ = 1;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
        const double extent = hi_[a] - lo_[a];
        if (polar_)
            spacing_[a] = extent / shape_[a];  // cell-centered radius, periodic angle
        else
            spacing_[a] = extent / (shape_[a] - 1);
        size_ *= static_cast<std::size_t>(shape_[a]);
    }
}

std::vector<std::size_t> Grid::index_of(std::size_t flat) const {
    std::vector<std::size_t> idx(shape_.size());
    for (std::size_t a = shape_.size(); a-- > 0;) {
        idx[a] = flat % shape_[a];
        flat /= shape_[a];
    }
    return idx;
}

std::size_t Grid::flat_of(const std::vector<std::size_t>& idx) const {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a)
        flat = flat * shape_[a] + idx[a];
    return flat;
}

Vec Grid::chart_coords(std::size_t flat) const {
    auto idx = index_of(flat);
    Vec c(shape_.size());
    for (std::size_t a = 0; a < shape_.size(); ++a) {
        if (polar_)
            c[a] = (a == 0) ? lo_[a] + (idx[a] + 0.5) * spacing_[a] : lo_[a] + idx[a] * spacing_[a];
        else
            c[a] = lo_[a] + idx[a] * spacing_[a];
    }
    return c;
}

Vec Grid::position(std::size_t flat) const {
    Vec c = chart_coords(flat);
    if (polar_) return {c[0] * std::cos(c[1]), c[0] * std::sin(c[1])};
    return c;
}

double Grid::weight(std::size_t flat) const {
    auto idx = index_of(flat);
    double w = 1.0;
    if (polar_) {
        const double r = lo_[0] + (idx[0] + 0.5) * spacing_[0];
        return r * spacing_[0] * spacing_[1];
    }
    for (std::size_t a = 0; a < shape_.size(); ++a) {
        double wa = spacing_[a];
        if (idx[a] == 0 || idx[a] + 1 == static_cast<std::size_t>(shape_[a])) wa *= 0.5;
        w *= wa;
    }
    return w;
}

SampledMap SampledMap::sample(const Manifold& domain, const Manifold& target,
                              const std::vector<int>& shape,
                              const std::function<Vec(const Vec&)>& f,
                              std::function<std::vector<Vec>(const Vec&)> derivative) {
    SampledMap u{domain, target, Grid(domain, shape), {}, std::move(derivative)};
    u.values.resize(u.grid.size());
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        u.values[i] = f(u.grid.chart_coords(i));
        if (!target.contains(u.values[i], 1e-12))
            throw ContractViolation("sample: value escapes the target manifold");
    }
    return u;
}

void SampledMap::save_csv(const std::string& path) const {
    std::string out = "# domain=" + domain.to_string() + " target=" + target.to_string() +
                      " nodes=";
    for (std::size_t a = 0; a < grid.shape().size(); ++a) {
        if (a) out += ",";
        out += std::to_string(grid.shape()[a]);
    }
    out += " h=";
    for (std::size_t a = 0; a < grid.spacing().size(); ++a) {
        if (a) out += ",";
        format_double(out, grid.spacing()[a]);
    }
    out += "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out += std::to_string(i);
        Vec c = grid.chart_coords(i);
        for (double x : c) {
            out += ",";
            format_double(out, x);
        }
        for (double x : values[i]) {
            out += ",";
            format_double(out, x);
        }
        out += "\n";
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_csv: cannot open " + path);
    f << out;
}

SampledMap SampledMap::load_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_csv: cannot open " + path);
    std::string header;
    std::getline(f, header);
    auto field = [&](const std::string& key) {
        auto pos = header.find(key + "=");
        if (pos == std::string::npos) throw std::runtime_error("load_csv: missing " + key);
        pos += key.size() + 1;
        auto end = header.find(' ', pos);
        return header.substr(pos, end == std::string::npos ? end : end - pos);
    };
    Manifold domain = Manifold::from_string(field("domain"));
    Manifold target = Manifold::from_string(field("target"));
    std::vector<int> shape;
    {
        std::istringstream is(field("nodes"));
        std::string tok;
        while (std::getline(is, tok, ',')) shape.push_back(std::stoi(tok));
    }
    SampledMap u{domain, target, Grid(domain, shape), {}, {}};
    u.values.assign(u.grid.size(), Vec(target.ambient_dim()));
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string tok;
        std::getline(is, tok, ',');
        std::size_t i = std::stoul(tok);
        for (int a = 0; a < u.grid.axes(); ++a) std::getline(is, tok, ',');  // coords
        for (int c = 0; c < target.ambient_dim(); ++c) {
            std::getline(is, tok, ',');
            u.values.at(i)[c] = std::stod(tok);
        }
    }
    return u;
}

double DerivativeField::frobenius(std::size_t node) const {
    return frobenius_norm(ambient[node]);
}

HomElement DerivativeField::element(std::size_t node) const {
    std::vector<Vec> cols(ambient[node].cols());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = ambient[node].col(j);
    return hom_from_ambient_columns(domain, target, grid.position(node),
                                    source ? source->values[node] : Vec(target.ambient_dim()),
                                    cols);
}

namespace {

// Second-order difference along one axis of the grid; one-sided 3-point at
// the ends of non-periodic axes.
Vec axis_difference(const SampledMap& u, const std::vector<std::size_t>& idx, std::size_t axis,
                    bool periodic, std::size_t flat) {
    const Grid& g = u.grid;
    const int n = g.shape()[axis];
    const double h = g.spacing()[axis];
    auto value_at = [&](std::size_t k) {
        auto j = idx;
        j[axis] = k;
        return u.values[g.flat_of(j)];
    };
    const std::size_t i = idx[axis];
    Vec diff;
    if (periodic) {
        const Vec& plus = value_at((i + 1) % n);
        const Vec& minus = value_at((i + n - 1) % n);
        if (plus == minus) return zeros(plus.size());
        diff = (1.0 / (2.0 * h)) * (plus - minus);
    } else if (i == 0) {
        if (value_at(0) == value_at(1) && value_at(1) == value_at(2))
            return zeros(value_at(0).size());
        diff = (1.0 / (2.0 * h)) *
               ((-3.0) * value_at(0) + 4.0 * value_at(1) - value_at(2));
    } else if (i + 1 == static_cast<std::size_t>(n)) {
        if (value_at(n - 1) == value_at(n - 2) && value_at(n - 2) == value_at(n - 3))
            return zeros(value_at(0).size());
        diff = (1.0 / (2.0 * h)) *
               (3.0 * value_at(n - 1) - 4.0 * value_at(n - 2) + value_at(n - 3));
    } else {
        Vec plus = value_at(i + 1), minus = value_at(i - 1);
        if (!u.target.flat() &&
            u.target.geodesic_distance(plus, minus) > M_PI - 1e-6)
            throw ResolutionError("weak_derivative: antipodal neighboring values", flat);
        diff = (1.0 / (2.0 * h)) * (plus - minus);
    }
    return diff;
}

}  // namespace

DerivativeField weak_derivative(const SampledMap& u) {
    DerivativeField d{u.domain, u.target, u.grid, {}, &u};
    d.ambient.resize(u.grid.size());
    const int m = u.domain.intrinsic_dim();
    const bool polar = (u.domain.kind() == ManifoldKind::disk);
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        Mat cols(u.target.ambient_dim(), m);
        if (u.analytic_derivative) {
            auto c = u.analytic_derivative(u.grid.chart_coords(i));
            for (int a = 0; a < m; ++a) cols.set_col(a, c.at(a));
        } else {
            auto idx = u.grid.index_of(i);
            for (int a = 0; a < m; ++a) {
                Vec diff = axis_difference(u, idx, a, polar && a == 1, i);
                if (polar && a == 1) diff = (1.0 / u.grid.chart_coords(i)[0]) * diff;
                cols.set_col(a, u.target.project_to_tangent(u.values[i], diff));
            }
        }
        if (polar) {
            // Rotate chart directions {r-hat, theta-hat} onto the Cartesian
            // frame so the columns match the ambient domain axes.
            const double th = u.grid.chart_coords(i)[1];
            Mat rot(2, 2);
            rot(0, 0) = std::cos(th);
            rot(0, 1) = -std::sin(th);
            rot(1, 0) = std::sin(th);
            rot(1, 1) = std::cos(th);
            d.ambient[i] = cols * transpose(rot);
        } else {
            d.ambient[i] = cols;
        }
    }
    return d;
}

double sobolev_energy(const SampledMap& u, double p) {
    if (p < 1.0 || p > 16.0) throw ContractViolation("sobolev_energy: p must lie in [1, 16]");
    DerivativeField d = weak_derivative(u);
    std::vector<double> terms(u.grid.size());
    for (std::size_t i = 0; i < u.grid.size(); ++i)
        terms[i] = u.grid.weight(i) * std::pow(d.frobenius(i), p);
    return pairwise_sum(terms);
}

namespace {

void require_compatible(const SampledMap& u, const SampledMap& v) {
    if (!(u.domain == v.domain) || !(u.target == v.target) || !(u.grid == v.grid))
        throw ContractViolation("maps live on different grids or manifolds");
}

}  // namespace

double measure_distance(const SampledMap& u, const SampledMap& v) {
    require_compatible(u, v);
    std::vector<double> terms(u.grid.size());
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        double d = u.target.geodesic_distance(u.values[i], v.values[i]);
        terms[i] = u.grid.weight(i) * d / (1.0 + d);
    }
    return pairwise_sum(terms);
}

DistanceValue sobolev_distance(const SampledMap& u, const SampledMap& v, DistanceKind kind,
                               double p) {
    require_compatible(u, v);
    if (p < 1.0 || p > 16.0) throw ContractViolation("sobolev_distance: p must lie in [1, 16]");
    DerivativeField du = weak_derivative(u);
    DerivativeField dv = weak_derivative(v);
    const std::size_t n = u.grid.size();
    const bool curved = !u.target.flat();

    auto ambient_gap = [&](std::size_t i) {
        Vec dval = u.values[i] - v.values[i];
        Mat dmat = du.ambient[i] - dv.ambient[i];
        return std::sqrt(dot(dval, dval) + frobenius_inner(dmat, dmat));
    };

    std::vector<double> pw(n);
    switch (kind) {
        case DistanceKind::iota:
            for (std::size_t i = 0; i < n; ++i) pw[i] = ambient_gap(i);
            return {lp_from_pointwise(u.grid, pw, p), false};
        case DistanceKind::chiron:
            for (std::size_t i = 0; i < n; ++i) {
                Vec dval = u.values[i] - v.values[i];
                double dm = du.frobenius(i) - dv.frobenius(i);
                pw[i] = std::sqrt(dot(dval, dval) + dm * dm);
            }
            return {lp_from_pointwise(u.grid, pw, p), false};
        case DistanceKind::sasaki:
            if (!curved && u.domain.flat()) {
                for (std::size_t i = 0; i < n; ++i) pw[i] = ambient_gap(i);
                return {lp_from_pointwise(u.grid, pw, p), false};
            }
            for (std::size_t i = 0; i < n; ++i)
                pw[i] = sasaki_distance_upper_bound(du.element(i), dv.element(i));
            return {lp_from_pointwise(u.grid, pw, p), true};
        case DistanceKind::cheeger_gromoll:
            for (std::size_t i = 0; i < n; ++i)
                pw[i] = cg_distance_upper_bound(du.element(i), dv.element(i), 128);
            return {lp_from_pointwise(u.grid, pw, p), true};
        case DistanceKind::dot: {
            std::vector<double> meas(n), moduli(n);
            for (std::size_t i = 0; i < n; ++i) {
                double rho = ambient_gap(i);
                meas[i] = u.grid.weight(i) * rho / (1.0 + rho);
                moduli[i] = std::fabs(du.frobenius(i) - dv.frobenius(i));
            }
            return {pairwise_sum(meas) + lp_from_pointwise(u.grid, moduli, p), false};
        }
    }
    throw ContractViolation("sobolev_distance: unknown kind");
}

LipschitzMap LipschitzMap::coordinate_projection(const Manifold& N, int axis) {
    if (axis < 0 || axis >= N.ambient_dim())
        throw ContractViolation("coordinate_projection: axis out of range");
    return {"coordinate_projection(" + std::to_string(axis) + ")", 1.0, 1,
            [axis](const Vec& y) { return Vec{y[static_cast<std::size_t>(axis)]}; }};
}

LipschitzMap LipschitzMap::ambient_linear(const Manifold& N, const Mat& a) {
    if (a.cols() != static_cast<std::size_t>(N.ambient_dim()))
        throw ContractViolation("ambient_linear: shape mismatch");
    return {"ambient_linear", operator_norm(a), static_cast<int>(a.rows()),
            [a](const Vec& y) { return a * y; }};
}

LipschitzMap LipschitzMap::target_isometry(const Manifold& N, const Mat& rotation) {
    if (rotation.rows() != rotation.cols() ||
        rotation.rows() != static_cast<std::size_t>(N.ambient_dim()))
        throw ContractViolation("target_isometry: need a square ambient rotation");
    return {"target_isometry", 1.0, N.ambient_dim(),
            [rotation](const Vec& y) { return rotation * y; }};
}

LipschitzMap LipschitzMap::distance_to_point(const Manifold& N, const Vec& q) {
    return {"distance_to_point", 1.0, 1,
            [N, q](const Vec& y) { return Vec{N.geodesic_distance(y, q)}; }};
}

double check_lipschitz_chain_rule(const SampledMap& u, const LipschitzMap& f) {
    SampledMap fu{u.domain, Manifold::euclidean(f.out_dim), u.grid, {}, {}};
    fu.values.resize(u.grid.size());
    for (std::size_t i = 0; i < u.grid.size(); ++i) fu.values[i] = f.apply(u.values[i]);
    DerivativeField du = weak_derivative(u);
    DerivativeField dfu = weak_derivative(fu);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.grid.size(); ++i)
        worst = std::max(worst, dfu.frobenius(i) - f.lip * du.frobenius(i));
    return worst;
}

double check_sqrt2_comparison(const SampledMap& u, const SampledMap& v, double p) {
    double chiron = sobolev_distance(u, v, DistanceKind::chiron, p).value;
    double best = sobolev_distance(u, v, DistanceKind::iota, p).value;
    if (u.target.flat() && u.domain.flat())
        best = std::min(best, sobolev_distance(u, v, DistanceKind::sasaki, p).value);
    return chiron - std::sqrt(2.0) * best;
}

}  // namespace soblab

#include "soblab/bundle_metrics.hpp"

#include <cmath>
#include <random>

#include "soblab/errors.hpp"

namespace soblab {

BundleTangent vertical_lift(const HomElement& at, const Mat& direction) {
    BundleTangent nu;
    nu.base_element = at;
    nu.horizontal_m = {at.x, zeros(at.x.size())};
    nu.horizontal_n = {at.y, zeros(at.y.size())};
    nu.vertical = direction;
    return nu;
}

double eval_lambda_metric(double lambda, const BundleTangent& nu) {
    if (lambda < 0.0 || lambda > 1.0)
        throw ContractViolation("eval_lambda_metric: lambda must lie in [0, 1]");
    const double gh = dot(nu.horizontal_m.vec, nu.horizontal_m.vec) +
                      dot(nu.horizontal_n.vec, nu.horizontal_n.vec);
    const double gkk = frobenius_inner(nu.vertical, nu.vertical);
    const double gke = frobenius_inner(nu.vertical, nu.base_element.matrix);
    const double gee = frobenius_inner(nu.base_element.matrix, nu.base_element.matrix);
    const double denom = lambda + (1.0 - lambda) * gee;
    if (denom == 0.0) {
        if (gkk == 0.0) return gh;  // zero vertical part: fiber term vanishes
        throw SingularityError(
            "eval_lambda_metric: degenerate at lambda = 0 on the zero section");
    }
    return gh + (lambda * gkk + (1.0 - lambda) * gke * gke) / denom;
}

double path_length(double lambda, const BundlePath& path) {
    const auto& s = path.samples;
    if (s.size() < 2) throw ContractViolation("path_length: need at least 2 samples");
    const double dtau = 1.0 / static_cast<double>(s.size() - 1);
    std::vector<double> terms;
    terms.reserve(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const HomElement& a = s[i];
        const HomElement& b = s[i + 1];
        Vec lm = a.M.log_map(a.x, b.x);
        Vec ln = a.N.log_map(a.y, b.y);
        Mat pulled = transport_to(b, a);
        BundleTangent nu;
        nu.base_element = a;
        nu.base_element.matrix = 0.5 * (a.matrix + pulled);  // covariant midpoint
        nu.horizontal_m = {a.x, (1.0 / dtau) * lm};
        nu.horizontal_n = {a.y, (1.0 / dtau) * ln};
        nu.vertical = (1.0 / dtau) * (pulled - a.matrix);
        terms.push_back(dtau * std::sqrt(eval_lambda_metric(lambda, nu)));
    }
    return pairwise_sum(terms);
}

double sasaki_distance_flat(const HomElement& e1, const HomElement& e2) {
    if (!e1.M.flat() || !e1.N.flat())
        throw ContractViolation("sasaki_distance_flat: both manifolds must be flat");
    double base2 = dot(e2.x - e1.x, e2.x - e1.x) + dot(e2.y - e1.y, e2.y - e1.y);
    Mat diff = e1.matrix - e2.matrix;  // flat frames coincide everywhere
    return std::sqrt(base2 + frobenius_inner(diff, diff));
}

double sasaki_distance_upper_bound(const HomElement& e1, const HomElement& e2) {
    double dm = e1.M.geodesic_distance(e1.x, e2.x);
    double dn = e1.N.geodesic_distance(e1.y, e2.y);
    Mat pulled = transport_to(e2, e1);
    Mat diff = e1.matrix - pulled;
    return std::sqrt(dm * dm + dn * dn + frobenius_inner(diff, diff));
}

double sasaki_chain_competitor(const HomElement& e1, const HomElement& e2,
                               const std::vector<std::pair<Vec, Vec>>& chain) {
    auto hop = [](const Manifold& M, const Manifold& N, const Vec& ax, const Vec& ay,
                  const Vec& bx, const Vec& by) {
        double dm = M.geodesic_distance(ax, bx);
        double dn = N.geodesic_distance(ay, by);
        return std::sqrt(dm * dm + dn * dn);
    };
    HomElement cur = e2;
    double length = hop(e2.M, e2.N, e2.x, e2.y, chain.empty() ? e1.x : chain.front().first,
                        chain.empty() ? e1.y : chain.front().second);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        cur = transport_hom(cur, chain[i].first, chain[i].second);
        const Vec& nx = (i + 1 < chain.size()) ? chain[i + 1].first : e1.x;
        const Vec& ny = (i + 1 < chain.size()) ? chain[i + 1].second : e1.y;
        length += hop(cur.M, cur.N, cur.x, cur.y, nx, ny);
    }
    Mat pulled = transport_to(cur, e1);
    Mat diff = e1.matrix - pulled;
    return std::sqrt(length * length + frobenius_inner(diff, diff));
}

namespace {

// Rotate `from` toward `to` by fraction t inside their common 2-plane,
// interpolating the magnitude linearly.  Falls back to a deterministic
// orthogonal direction when the matrices are antiparallel.
Mat fiber_slerp(const Mat& from, const Mat& to, double t) {
    const double rf = frobenius_norm(from), rt = frobenius_norm(to);
    const double r = (1.0 - t) * rf + t * rt;
    if (rf == 0.0 && rt == 0.0) return from;
    if (rf == 0.0) return (r / rt) * to;
    if (rt == 0.0) return (r / rf) * from;
    double c = frobenius_inner(from, to) / (rf * rt);
    c = std::min(1.0, std::max(-1.0, c));
    const double angle = std::acos(c);
    Mat uf = (1.0 / rf) * from;
    // Orthogonalize twice: a single pass leaves roundoff along uf that can
    // dwarf a vanishing genuine residual when from and to are antiparallel.
    Mat orth = to - frobenius_inner(to, uf) * uf;
    orth = orth - frobenius_inner(orth, uf) * uf;
    double no = frobenius_norm(orth);
    if (no <= 1e-12 * rt) {
        if (c > 0.0) return (r / rf) * from;  // parallel
        // Antiparallel: rotate through the first frame slot orthogonal to `from`.
        no = 0.0;
        for (std::size_t i = 0; i < from.rows() && no == 0.0; ++i)
            for (std::size_t j = 0; j < from.cols() && no == 0.0; ++j) {
                Mat cand(from.rows(), from.cols());
                cand(i, j) = 1.0;
                cand = cand - frobenius_inner(cand, uf) * uf;
                cand = cand - frobenius_inner(cand, uf) * uf;
                if (frobenius_norm(cand) >= 0.5) {
                    orth = cand;
                    no = frobenius_norm(cand);
                }
            }
        if (no == 0.0)
            throw SingularityError("fiber_slerp: no rotation plane in a 1-dimensional fiber");
    }
    Mat uo = (1.0 / no) * orth;
    double phi = angle * t;
    return (r * std::cos(phi)) * uf + (r * std::sin(phi)) * uo;
}

}  // namespace

double cg_distance_upper_bound(const HomElement& e1, const HomElement& e2, int steps) {
    if (steps < 2) throw ContractViolation("cg_distance_upper_bound: need >= 2 steps");
    Mat pulled = transport_to(e2, e1);
    HomElement target = e1;
    target.matrix = pulled;
    BundlePath path;
    path.samples.reserve(steps + 1);
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        Vec lx = e1.M.log_map(e1.x, e2.x);
        Vec ly = e1.N.log_map(e1.y, e2.y);
        Vec bx = e1.M.exp_map(e1.x, t * lx);
        Vec by = e1.N.exp_map(e1.y, t * ly);
        Mat fiber_at_e1 = fiber_slerp(e1.matrix, pulled, t);
        HomElement at{e1.M, e1.N, e1.x, e1.y, e1.frame_x, e1.frame_y, fiber_at_e1};
        path.samples.push_back(transport_hom(at, bx, by));
    }
    return path_length(0.5, path);
}

BundleTangent random_bundle_tangent(std::uint64_t seed, int index) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(index));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    const bool curved = (index % 2 == 0);
    Manifold M = curved ? Manifold::interval(0.0, 1.0) : Manifold::rectangle(0, 1, 0, 1);
    Manifold N = curved ? Manifold::sphere(2) : Manifold::euclidean(3);

    Vec x = curved ? Vec{unif(rng) * 0.5 + 0.5} : Vec{0.5 + 0.4 * unif(rng), 0.5 + 0.4 * unif(rng)};
    Vec y;
    if (curved) {
        y = {gauss(rng), gauss(rng), gauss(rng)};
        y = normalized(y);
    } else {
        y = {gauss(rng), gauss(rng), gauss(rng)};
    }

    const int m = M.intrinsic_dim(), n = N.intrinsic_dim();
    Mat e(n, m), k(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            e(i, j) = gauss(rng);
            k(i, j) = gauss(rng);
        }

    BundleTangent nu;
    nu.base_element = make_hom(M, N, x, y, e);
    Vec hm(M.ambient_dim()), hn(N.ambient_dim());
    for (double& c : hm) c = gauss(rng);
    for (double& c : hn) c = gauss(rng);
    nu.horizontal_m = {x, M.project_to_tangent(x, hm)};
    nu.horizontal_n = {y, N.project_to_tangent(y, hn)};
    nu.vertical = k;
    return nu;
}

ConcordanceReport check_strong_concordance(double lambda, int samples, std::uint64_t seed) {
    ConcordanceReport rep;
    rep.samples = samples;
    rep.seed = seed;
    for (int i = 0; i < samples; ++i) {
        BundleTangent nu = random_bundle_tangent(seed, i);
        const double g_nu = eval_lambda_metric(lambda, nu);

        BundleTangent hproj = nu;
        hproj.vertical = Mat(nu.vertical.rows(), nu.vertical.cols());
        const double g_h = eval_lambda_metric(lambda, hproj);
        rep.max_violation_horizontal = std::max(rep.max_violation_horizontal, g_h - g_nu);

        const double gke = frobenius_inner(nu.vertical, nu.base_element.matrix);
        const double gee =
            frobenius_inner(nu.base_element.matrix, nu.base_element.matrix);
        const double lhs = (2.0 * gke) * (2.0 * gke);
        rep.max_violation_derivative =
            std::max(rep.max_violation_derivative, lhs - 4.0 * gee * g_nu);

        BundleTangent vlift = vertical_lift(nu.base_element, nu.base_element.matrix);
        rep.max_violation_vertical_lift = std::max(
            rep.max_violation_vertical_lift, std::fabs(eval_lambda_metric(lambda, vlift) - gee));
    }
    return rep;
}

double check_cg_le_sasaki(int samples, std::uint64_t seed) {
    double max_gap = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        BundleTangent nu = random_bundle_tangent(seed, i);
        max_gap = std::max(max_gap, eval_lambda_metric(0.5, nu) - eval_lambda_metric(1.0, nu));
    }
    return max_gap;
}

}  // namespace soblab

// Acceptance suite: every release gate in one binary, one PASS/FAIL line per
// criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "soblab/bundle_metrics.hpp"
#include "soblab/experiments.hpp"
#include "soblab/sobolev.hpp"

using namespace soblab;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s — %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

Vec random_point(const Manifold& m, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.2, 0.8);
    switch (m.kind()) {
        case ManifoldKind::sphere:
        case ManifoldKind::circle: {
            Vec x(m.ambient_dim());
            for (double& c : x) c = g(rng);
            return normalized(x);
        }
        case ManifoldKind::euclidean: {
            Vec x(m.ambient_dim());
            for (double& c : x) c = g(rng);
            return x;
        }
        case ManifoldKind::interval:
            return {m.lower_bounds()[0] +
                    u(rng) * (m.upper_bounds()[0] - m.lower_bounds()[0])};
        case ManifoldKind::rectangle:
            return {m.lower_bounds()[0] + u(rng) * (m.upper_bounds()[0] - m.lower_bounds()[0]),
                    m.lower_bounds()[1] + u(rng) * (m.upper_bounds()[1] - m.lower_bounds()[1])};
        case ManifoldKind::disk: {
            double r = 0.8 * m.disk_radius() * std::sqrt(u(rng));
            double th = 2 * M_PI * u(rng);
            return {r * std::cos(th), r * std::sin(th)};
        }
    }
    return {};
}

Vec random_tangent(const Manifold& m, const Vec& x, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g;
    Vec w(m.ambient_dim());
    for (double& c : w) c = g(rng);
    Vec t = m.project_to_tangent(x, w);
    double n = norm(t);
    return n == 0.0 ? t : (scale / n) * t;
}

void criterion_1() {
    const std::vector<Manifold> kinds = {Manifold::sphere(2),      Manifold::sphere(3),
                                         Manifold::circle(),        Manifold::euclidean(3),
                                         Manifold::interval(0, 1), Manifold::rectangle(0, 1, 0, 1),
                                         Manifold::disk(1.0)};
    double worst_round = 0.0, worst_iso = 0.0;
    std::mt19937_64 rng(20260808);
    for (const Manifold& m : kinds) {
        const bool curved = !m.flat();
        const double reach =
            curved ? 0.9 * m.injectivity_radius() : 0.1;
        std::uniform_real_distribution<double> mag(0.0, reach);
        for (int i = 0; i < 10000; ++i) {
            Vec x = random_point(m, rng);
            Vec v = random_tangent(m, x, rng, mag(rng));
            Vec y = m.exp_map(x, v);
            worst_round = std::max(worst_round, norm(m.log_map(x, y) - v));
            Vec z = random_point(m, rng);
            if (curved && dot(x, z) < -0.99) continue;
            Vec w = m.parallel_transport(x, z, v);
            worst_iso = std::max(worst_iso, std::fabs(dot(w, w) - dot(v, v)));
        }
    }
    report(1, "geometry kernel roundtrip and transport isometry, 1e4 samples per kind",
           worst_round < 1e-9 && worst_iso < 1e-9,
           "max roundtrip err " + num(worst_round) + ", max isometry err " + num(worst_iso) +
               " (tol 1e-9)");
}

void criterion_2() {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g;
    double worst_constructive = 0.0, worst_excess = -1.0;
    for (int shape = 0; shape < 2; ++shape) {
        const int rows = shape == 0 ? 3 : 4, cols = shape == 0 ? 2 : 3;
        const Manifold M = cols == 2 ? Manifold::rectangle(0, 1, 0, 1) : Manifold::euclidean(3);
        const Manifold N = Manifold::euclidean(rows);
        for (int i = 0; i < 1000; ++i) {
            Mat a(rows, cols);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) a(r, c) = g(rng);
            HomElement h = make_hom(M, N, zeros(cols), zeros(rows), a);
            const double target = frobenius_norm(h);
            worst_constructive = std::max(
                worst_constructive,
                std::fabs(reduce_frobenius_by_postcomposition(h, cols) - target));
            for (int s = 0; s < 200; ++s) {
                Mat rho(cols, rows);
                for (int r = 0; r < cols; ++r)
                    for (int c = 0; c < rows; ++c) rho(r, c) = g(rng);
                double op = operator_norm(rho);
                if (op > 1.0) rho = (1.0 / op) * rho;
                worst_excess =
                    std::max(worst_excess, frobenius_norm(rho * a) - target);
            }
        }
    }
    report(2, "frobenius reduction: constructive isometry attains the norm",
           worst_constructive < 1e-9 && worst_excess <= 1e-12,
           "constructive gap " + num(worst_constructive) + " (tol 1e-9), max sample excess " +
               num(worst_excess));
}

void criterion_3() {
    bool ok = true;
    std::string detail;
    for (double lambda : {0.0, 0.5, 1.0}) {
        ConcordanceReport rep = check_strong_concordance(lambda, 10000, 99991);
        double worst = std::max({rep.max_violation_horizontal, rep.max_violation_derivative,
                                 rep.max_violation_vertical_lift});
        ok = ok && worst < 1e-12;
        detail += "lambda=" + num(lambda) + ": " + num(worst) + "  ";
    }
    report(3, "strong concordance clauses at lambda in {0, 1/2, 1}, 1e4 samples", ok,
           detail + "(tol 1e-12)");
}

void criterion_4() {
    double gap = check_cg_le_sasaki(10000, 4711);
    report(4, "comparison lemma G^CG <= G^S on 1e4 samples", gap < 1e-12,
           "max signed gap " + num(gap) + " (tol 1e-12)");
}

void criterion_5() {
    Manifold M = Manifold::interval(-10, 10);
    Manifold N = Manifold::euclidean(2);
    Mat m0(2, 1), m1(2, 1);
    m1(0, 0) = 4.0;
    HomElement a = make_hom(M, N, {0.0}, {0, 0}, m0);
    HomElement b = make_hom(M, N, {3.0}, {0, 0}, m1);
    double fivegap = std::fabs(sasaki_distance_flat(a, b) - 5.0);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Mat ma(2, 1), mb(2, 1);
        ma(0, 0) = g(rng);
        ma(1, 0) = g(rng);
        mb(0, 0) = g(rng);
        mb(1, 0) = g(rng);
        HomElement ea = make_hom(M, N, {g(rng)}, {g(rng), g(rng)}, ma);
        HomElement eb = make_hom(M, N, {g(rng)}, {g(rng), g(rng)}, mb);
        worst = std::max(worst, std::fabs(sasaki_distance_upper_bound(ea, eb) -
                                          sasaki_distance_flat(ea, eb)));
    }
    report(5, "flat Sasaki exactness (3-4-5 and bound agreement on 1e3 samples)",
           fivegap < 1e-12 && worst < 1e-12,
           "3-4-5 gap " + num(fivegap) + ", bound gap " + num(worst) + " (tol 1e-12)");
}

void criterion_6() {
    const Manifold sphere = Manifold::sphere(2);
    const Manifold unit = Manifold::interval(0, 1);
    const int nodes = 4097;
    const double h = 1.0 / 4096.0;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> amp(0.2, 0.45), phase(0.0, 2 * M_PI);

    Mat contraction(2, 3);
    contraction(0, 0) = 0.5;
    contraction(0, 1) = -0.4;
    contraction(1, 2) = 0.6;
    double cop = operator_norm(contraction);
    if (cop > 1.0) contraction = (1.0 / cop) * contraction;

    std::vector<LipschitzMap> library;
    for (int axis = 0; axis < 3; ++axis)
        library.push_back(LipschitzMap::coordinate_projection(sphere, axis));
    library.push_back(LipschitzMap::ambient_linear(sphere, contraction));
    library.push_back(LipschitzMap::distance_to_point(sphere, Vec{0.0, 1.0, 0.0}));

    double worst = -1.0, worst_iso = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double A = amp(rng), B = amp(rng), p1 = phase(rng), p2 = phase(rng);
        SampledMap u = SampledMap::sample(unit, sphere, {nodes}, [&](const Vec& c) {
            double a = A * std::sin(2 * M_PI * c[0] + p1);
            double b = B * std::cos(2 * M_PI * c[0] + p2);
            Vec y{std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a)};
            return normalized(y);
        });
        for (const LipschitzMap& f : library)
            worst = std::max(worst, check_lipschitz_chain_rule(u, f));

        const double th = 0.4;
        Mat rot = Mat::identity(3);
        rot(0, 0) = std::cos(th);
        rot(0, 1) = -std::sin(th);
        rot(1, 0) = std::sin(th);
        rot(1, 1) = std::cos(th);
        worst_iso = std::max(
            worst_iso,
            std::fabs(check_lipschitz_chain_rule(u, LipschitzMap::target_isometry(sphere, rot))));
    }
    report(6, "Lipschitz chain rule over the test library, 20 seeded maps",
           worst < 10.0 * h * h && worst_iso < 1e-10,
           "max violation " + num(worst) + " (tol " + num(10.0 * h * h) +
               "), isometry equality gap " + num(worst_iso) + " (tol 1e-10)");
}

void criterion_7() {
    std::mt19937_64 rng(7077);
    std::uniform_real_distribution<double> amp(-0.5, 0.5);
    const Manifold unit = Manifold::interval(0, 1);
    const Manifold plane = Manifold::euclidean(2);
    int violations = 0;
    double worst = -1e9;
    for (int trial = 0; trial < 100; ++trial) {
        double a1 = amp(rng), a2 = amp(rng), b1 = amp(rng), b2 = amp(rng), c1 = amp(rng),
               c2 = amp(rng), d1 = amp(rng), d2 = amp(rng);
        SampledMap u = SampledMap::sample(unit, plane, {257}, [&](const Vec& c) {
            double t = c[0];
            return Vec{a1 + b1 * std::sin(2 * M_PI * t) + c1 * std::cos(4 * M_PI * t),
                       a2 + b2 * std::cos(2 * M_PI * t) + c2 * std::sin(4 * M_PI * t)};
        });
        SampledMap v = SampledMap::sample(unit, plane, {257}, [&](const Vec& c) {
            double t = c[0];
            return Vec{d1 + c2 * std::sin(2 * M_PI * t) + b2 * std::cos(6 * M_PI * t),
                       d2 + c1 * std::cos(2 * M_PI * t) + b1 * std::sin(4 * M_PI * t)};
        });
        for (double p : {1.0, 2.0}) {
            double gap = check_sqrt2_comparison(u, v, p);
            worst = std::max(worst, gap);
            if (gap > 0.0) ++violations;
        }
    }
    report(7, "sqrt(2) inequality delta^C <= sqrt(2) min(delta^S, delta^iota), 100 flat pairs",
           violations == 0, std::to_string(violations) + " violations, max signed gap " +
                                num(worst));
}

void criterion_8() {
    const std::vector<double> ladder{1.0, 0.3, 0.1, 0.03, 0.01};
    auto rows = family_cg_vs_sasaki(2.0, 2, ladder, 8192);
    bool bounds_ok = true, grid_ok = true;
    std::vector<double> lams, saturated, sharp, sasaki;
    for (const auto& r : rows) {
        bounds_ok = bounds_ok && r.delta_cg <= r.closed_form_bound &&
                    r.cg_saturated_bound <= r.closed_form_bound;
        grid_ok = grid_ok && std::fabs(r.delta_sasaki / r.reference_value - 1.0) < 1e-4;
        lams.push_back(r.parameter);
        saturated.push_back(r.cg_saturated_bound);
        sharp.push_back(r.delta_cg);
        sasaki.push_back(r.delta_sasaki);
    }
    const double slope_sat = loglog_slope(lams, saturated);
    const double slope_sharp = loglog_slope(lams, sharp);
    const double slope_sas = loglog_slope(lams, sasaki);
    const bool ok = bounds_ok && grid_ok && std::fabs(slope_sat - 0.5) <= 0.05 &&
                    std::fabs(slope_sas + 0.5) <= 0.05;
    report(8, "family cg-sasaki: bounds, scaling slopes, closed-form agreement", ok,
           "cg bound slope " + num(slope_sat) + " (target 0.5+-0.05; sharp competitor " +
               num(slope_sharp) + "), sasaki slope " + num(slope_sas) +
               " (target -0.5+-0.05), bounds " + (bounds_ok ? "hold" : "VIOLATED") +
               ", grid-vs-closed-form " + (grid_ok ? "<1e-4" : "VIOLATED"));
}

void criterion_9() {
    auto rows = family_sasaki_vs_embedding(2.0, 2, {1.0, 0.1, 0.01}, 2048);
    bool bound_ok = true;
    for (const auto& r : rows) bound_ok = bound_ok && r.delta_sasaki <= r.closed_form_bound;
    double r0 = rows[0].delta_sasaki / rows[0].delta_iota;
    double r1 = rows[1].delta_sasaki / rows[1].delta_iota;
    double r2 = rows[2].delta_sasaki / rows[2].delta_iota;
    const bool ok = bound_ok && r0 > r1 && r1 > r2 && r2 < 0.05;
    report(9, "family sasaki-embedding: 2 pi lambda^(1/p) bound and vanishing ratio", ok,
           "ratios " + num(r0) + " > " + num(r1) + " > " + num(r2) + " (< 0.05), bound " +
               (bound_ok ? "holds" : "VIOLATED"));
}

void criterion_10() {
    const double p = 1.0;
    auto rows = family_s1_disk(p, {0.2, 0.1, 0.05}, 65536);
    const bool iota_ok = rows[1].delta_iota < rows[0].delta_iota &&
                         rows[2].delta_iota < rows[1].delta_iota &&
                         rows[2].delta_iota < 0.5 * rows[0].delta_iota;
    bool sas_ok = true;
    double worst_gap = 0.0;
    for (const auto& r : rows) {
        double gap = std::fabs(r.delta_sasaki / r.reference_value - 1.0);
        worst_gap = std::max(worst_gap, gap);
        sas_ok = sas_ok && gap < 0.05;
    }
    // lambda-independent level of the sasaki expression: the oscillatory core
    // contributes 2 (pi (pi/2)^p <|cos|^p>)^{1/p} independently of lambda.
    const int q = 1 << 20;
    double mean_cos = 0.0;
    for (int i = 0; i < q; ++i)
        mean_cos += std::pow(std::fabs(std::cos(M_PI * (i + 0.5) / q)), p) / q;
    const double level = 2.0 * std::pow(M_PI * std::pow(M_PI / 2.0, p) * mean_cos, 1.0 / p);
    bool level_ok = true;
    for (const auto& r : rows) level_ok = level_ok && r.delta_sasaki >= 0.95 * level;
    report(10, "family s1-disk: iota collapse, sasaki floor and reference agreement",
           iota_ok && sas_ok && level_ok,
           "iota " + num(rows[0].delta_iota) + " > " + num(rows[1].delta_iota) + " > " +
               num(rows[2].delta_iota) + ", max ref gap " + num(worst_gap) +
               " (tol 0.05), floor " + num(level) + " " + (level_ok ? "respected" : "VIOLATED"));
}

void criterion_11() {
    auto rep = chiron_cauchy_not_convergent(1.0, {4, 16, 64, 256}, 8192);
    bool energies_ok = true;
    for (double e : rep.energies) energies_ok = energies_ok && e > 0.99 && e < 1.01;
    const double tail = rep.delta[2][3];
    const bool ok = energies_ok && tail < 0.02 &&
                    rep.max_derivative_term <= std::numeric_limits<double>::epsilon() &&
                    rep.limit_energy == 0.0;
    report(11, "Chiron non-completeness: Cauchy tail without an energy drop", ok,
           "energies in [0.99, 1.01]: " + std::string(energies_ok ? "yes" : "NO") +
               ", delta(u_64, u_256) = " + num(tail) + " (< 0.02), derivative term " +
               num(rep.max_derivative_term) + " (<= 1 ulp), limit energy " +
               num(rep.limit_energy));
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void criterion_12() {
#ifdef SOBLAB_CLI_PATH
    const std::string cli = SOBLAB_CLI_PATH;
    auto run = [&](const std::string& args, const std::string& out) {
        std::string cmd = cli + " " + args + " --out " + out + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    bool ok = true;
    std::string detail;
    const std::string props = "props --samples 2000 --seed 7";
    const std::string chir = "chiron --p 1 --ells 4,16,64 --nodes 1024 --seed 7";
    for (const auto& [name, args] : std::vector<std::pair<std::string, std::string>>{
             {"props", props}, {"chiron", chir}}) {
        int ra = run(args, "acc_det_a");
        int rb = run(args, "acc_det_b");
        bool same = slurp("acc_det_a/results.csv") == slurp("acc_det_b/results.csv") &&
                    !slurp("acc_det_a/results.csv").empty();
        ok = ok && ra == 0 && rb == 0 && same;
        detail += name + (same ? " identical " : " DIFFERS ");
    }
    report(12, "determinism: identical seeds give byte-identical CSV", ok, detail);
#else
    report(12, "determinism: identical seeds give byte-identical CSV", false,
           "CLI path not configured");
#endif
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (g_failures == 0)
        std::printf("acceptance: all 12 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures;
}

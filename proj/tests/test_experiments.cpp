#include <cmath>
#include <limits>

#include "doctest.h"
#include "soblab/errors.hpp"
#include "soblab/experiments.hpp"

using namespace soblab;

TEST_CASE("family 1: bounds, closed-form agreement, scaling") {
    auto rows = family_cg_vs_sasaki(2.0, 2, {1.0, 0.3, 0.1}, 1024);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.cg_is_bound);
        CHECK_FALSE(r.sasaki_is_bound);
        CHECK(r.delta_cg <= r.closed_form_bound);
        CHECK(r.cg_saturated_bound <= r.closed_form_bound);
        CHECK(r.delta_cg <= r.cg_saturated_bound + 1e-9);
        // Flat target: iota and sasaki coincide.
        CHECK(r.delta_iota == doctest::Approx(r.delta_sasaki).epsilon(1e-12));
        // Grid quadrature against the independent rescaled closed form.
        CHECK(std::fabs(r.delta_sasaki / r.reference_value - 1.0) < 1e-5);
        CHECK(r.delta_chiron <= std::sqrt(2.0) * r.delta_iota);
    }
    // The capped bound scales exactly like lambda^(1/p) on the grid.
    std::vector<double> lams, sat;
    for (const auto& r : rows) {
        lams.push_back(r.parameter);
        sat.push_back(r.cg_saturated_bound);
    }
    CHECK(loglog_slope(lams, sat) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(family_cg_vs_sasaki(2.0, 1, {1.0}, 256), ContractViolation);
}

TEST_CASE("family 1: values are deterministic") {
    auto a = family_cg_vs_sasaki(2.0, 2, {0.5}, 512);
    auto b = family_cg_vs_sasaki(2.0, 2, {0.5}, 512);
    CHECK(a[0].delta_cg == b[0].delta_cg);
    CHECK(a[0].delta_sasaki == b[0].delta_sasaki);
}

TEST_CASE("family 1: grid refinement stability") {
    auto coarse = family_cg_vs_sasaki(2.0, 2, {0.3}, 512);
    auto fine = family_cg_vs_sasaki(2.0, 2, {0.3}, 1024);
    CHECK(std::fabs(coarse[0].delta_cg / fine[0].delta_cg - 1.0) < 5e-3);
    CHECK(std::fabs(coarse[0].delta_sasaki / fine[0].delta_sasaki - 1.0) < 5e-3);
    CHECK(std::fabs(coarse[0].delta_chiron / fine[0].delta_chiron - 1.0) < 5e-3);
}

TEST_CASE("family 2: rotation bound and ratio decay") {
    auto rows = family_sasaki_vs_embedding(2.0, 2, {1.0, 0.1}, 512);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.sasaki_is_bound);
        CHECK(r.delta_sasaki <= r.closed_form_bound);
        CHECK(r.delta_sasaki >= 0.0);
        CHECK(std::fabs(r.delta_iota / r.reference_value - 1.0) < 1e-6);
    }
    double ratio0 = rows[0].delta_sasaki / rows[0].delta_iota;
    double ratio1 = rows[1].delta_sasaki / rows[1].delta_iota;
    CHECK(ratio1 < ratio0);
    CHECK_THROWS_AS(family_sasaki_vs_embedding(2.0, 1, {1.0}, 256), ContractViolation);
}

TEST_CASE("family 2 works on higher-dimensional spheres") {
    auto rows = family_sasaki_vs_embedding(2.0, 3, {0.5}, 256);
    CHECK(rows[0].delta_sasaki <= rows[0].closed_form_bound);
    CHECK(rows[0].delta_iota > 0.0);
}

TEST_CASE("family 2: grid refinement stability") {
    auto coarse = family_sasaki_vs_embedding(2.0, 2, {0.3}, 256);
    auto fine = family_sasaki_vs_embedding(2.0, 2, {0.3}, 512);
    CHECK(std::fabs(coarse[0].delta_sasaki / fine[0].delta_sasaki - 1.0) < 5e-3);
    CHECK(std::fabs(coarse[0].delta_iota / fine[0].delta_iota - 1.0) < 5e-3);
}

TEST_CASE("family members at equal arguments give vanishing distances") {
    // The families never hit u_lambda = v_lambda, so the zero/symmetry axioms
    // are checked on each map against itself and a swapped pair.
    const double lambda = 0.4;
    const Manifold M = Manifold::interval(-lambda, lambda);
    const Manifold N = Manifold::euclidean(2);
    auto bump_map = [&](double sign) {
        return SampledMap::sample(M, N, {257}, [=](const Vec& c) {
            double s = c[0] / lambda;
            double w = std::fabs(s) >= 1.0 ? 0.0 : (1 - s * s) * (1 - s * s);
            return Vec{sign * w, 0.0};
        });
    };
    SampledMap u = bump_map(1.0), v = bump_map(-1.0);
    for (DistanceKind k : {DistanceKind::sasaki, DistanceKind::iota, DistanceKind::chiron}) {
        CHECK(sobolev_distance(u, u, k, 2.0).value <= 1e-12);
        CHECK(sobolev_distance(u, v, k, 2.0).value ==
              doctest::Approx(sobolev_distance(v, u, k, 2.0).value).epsilon(1e-12));
    }
}

TEST_CASE("disk phase: branch values and seam continuity") {
    const double p = 1.0;
    for (double lambda : {0.2, 0.1, 0.05}) {
        CHECK(disk_phase(2.5 * lambda, lambda, p) == M_PI / 2);
        CHECK(disk_phase_slope(2.5 * lambda, lambda, p) == 0.0);
        CHECK(disk_phase(lambda, lambda, p) == 0.0);
        CHECK(disk_phase_slope(1.5 * lambda, lambda, p) ==
              doctest::Approx(M_PI / (2 * lambda)).epsilon(1e-15));
        // Jumps across the two seams stay at rounding level.
        double j1 = disk_phase(std::nextafter(lambda, 0.0), lambda, p) -
                    disk_phase(lambda, lambda, p);
        double j2 = disk_phase(std::nextafter(2 * lambda, 0.0), lambda, p) -
                    disk_phase(2 * lambda, lambda, p);
        CHECK(std::fabs(j1) <= 1e-12);
        CHECK(std::fabs(j2) <= 1e-12);
    }
}

TEST_CASE("family 3: monotone iota, reference agreement, stability") {
    auto rows = family_s1_disk(1.0, {0.2, 0.1, 0.05}, 16384);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].delta_iota < rows[0].delta_iota);
    CHECK(rows[2].delta_iota < rows[1].delta_iota);
    for (const auto& r : rows) {
        CHECK(std::fabs(r.delta_sasaki / r.reference_value - 1.0) < 0.01);
        CHECK(r.cg_is_bound);
        CHECK_FALSE(r.sasaki_is_bound);
        CHECK(r.delta_chiron < r.delta_iota);
    }
    auto fine = family_s1_disk(1.0, {0.2, 0.1, 0.05}, 32768);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(std::fabs(rows[i].delta_sasaki / fine[i].delta_sasaki - 1.0) < 5e-3);
        CHECK(std::fabs(rows[i].delta_iota / fine[i].delta_iota - 1.0) < 5e-3);
    }
    CHECK_THROWS_AS(family_s1_disk(2.0, {0.1}, 256), ContractViolation);
    CHECK_THROWS_AS(family_s1_disk(1.0, {0.6}, 256), ContractViolation);
}

TEST_CASE("chiron family: unit energies, small mutual distances") {
    auto rep = chiron_cauchy_not_convergent(1.0, {4, 16, 64}, 2048);
    for (double e : rep.energies) CHECK(e == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rep.limit_energy == 0.0);
    CHECK(rep.max_derivative_term <= std::numeric_limits<double>::epsilon());
    for (std::size_t i = 0; i < rep.ells.size(); ++i) {
        CHECK(rep.delta[i][i] == 0.0);
        for (std::size_t j = i + 1; j < rep.ells.size(); ++j) {
            CHECK(rep.delta[i][j] == doctest::Approx(rep.delta[j][i]).epsilon(1e-12));
            // The chordal gap never exceeds the phase gap.
            double bound = 0.5 / rep.ells[i] + 0.5 / rep.ells[j];
            CHECK(rep.delta[i][j] <= bound);
        }
    }
    // The tail of the family is Cauchy while energies stay at 1.
    auto tail = chiron_cauchy_not_convergent(1.0, {64, 256}, 4096);
    CHECK(tail.delta[0][1] < 0.02);
}

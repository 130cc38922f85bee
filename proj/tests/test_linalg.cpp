#include <random>

#include "doctest.h"
#include "soblab/linalg.hpp"

using namespace soblab;

TEST_CASE("operator norm of small matrices") {
    Mat d = Mat::diag({3.0, 4.0});
    CHECK(operator_norm(d) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(frobenius_norm(d) == doctest::Approx(5.0).epsilon(1e-12));

    Mat z(3, 2);
    CHECK(operator_norm(z) == 0.0);

    // Rank one: operator norm equals Frobenius norm.
    Mat r1(3, 2);
    r1(0, 0) = 1.0;
    r1(1, 0) = 2.0;
    r1(2, 0) = -1.0;
    CHECK(operator_norm(r1) == doctest::Approx(frobenius_norm(r1)).epsilon(1e-12));
}

TEST_CASE("operator norm brackets on random matrices") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 2000; ++trial) {
        int rows = 2 + trial % 3, cols = 2 + (trial / 3) % 3;
        Mat a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) a(i, j) = g(rng);
        double op = operator_norm(a), fr = frobenius_norm(a);
        double k = std::min(rows, cols);
        CHECK(op <= fr + 1e-12);
        CHECK(fr <= std::sqrt(k) * op + 1e-10);
    }
}

TEST_CASE("orthonormal column basis spans and is orthonormal") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    Mat a(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = g(rng);
    auto basis = orthonormal_column_basis(a);
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            CHECK(dot(basis[i], basis[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
}

TEST_CASE("pairwise sum matches plain sum") {
    std::vector<double> xs(1000);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = std::sin(0.1 * i);
    double plain = 0.0;
    for (double x : xs) plain += x;
    CHECK(pairwise_sum(xs) == doctest::Approx(plain).epsilon(1e-12));
}

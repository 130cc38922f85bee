#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

// Small dense vectors and matrices in ambient coordinates.  Everything here
// is sized by manifold dimensions (rarely above 4), so plain loops beat any
// heavyweight linear-algebra dependency.

namespace soblab {

using Vec = std::vector<double>;

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }

inline Vec operator+(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator*(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline double dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    assert(n > 0.0);
    return (1.0 / n) * a;
}

// Cross product, 3-vectors only.
inline Vec cross(const Vec& a, const Vec& b) {
    assert(a.size() == 3 && b.size() == 3);
    return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
               a[0] * b[1] - a[1] * b[0]};
}

// Row-major dense matrix.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Mat diag(const Vec& d) {
        Mat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec col(std::size_t j) const {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_col(std::size_t j, const Vec& c) {
        assert(c.size() == rows_);
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

inline Mat operator+(const Mat& a, const Mat& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Mat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline Mat operator-(const Mat& a, const Mat& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Mat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

inline Mat operator*(double s, const Mat& a) {
    Mat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

inline Mat operator*(const Mat& a, const Mat& b) {
    assert(a.cols() == b.rows());
    Mat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

inline Vec operator*(const Mat& a, const Vec& x) {
    assert(a.cols() == x.size());
    Vec r(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * x[j];
    return r;
}

inline Mat transpose(const Mat& a) {
    Mat r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

inline double frobenius_inner(const Mat& a, const Mat& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
    return s;
}

inline double frobenius_norm(const Mat& a) { return std::sqrt(frobenius_inner(a, a)); }

// Largest singular value via cyclic Jacobi iteration on A^T A.  The matrices
// here never exceed a handful of rows, so the quadratic sweep cost is moot.
inline double operator_norm(const Mat& a) {
    const std::size_t n = a.cols();
    if (n == 0 || a.rows() == 0) return 0.0;
    Mat s = transpose(a) * a;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(s(p, q)) < 1e-300) continue;
                double theta = 0.5 * std::atan2(2.0 * s(p, q), s(q, q) - s(p, p));
                double c = std::cos(theta), t = std::sin(theta);
                for (std::size_t k = 0; k < n; ++k) {
                    double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - t * skq;
                    s(k, q) = t * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - t * sqk;
                    s(q, k) = t * spk + c * sqk;
                }
            }
    }
    double lmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) lmax = std::max(lmax, s(i, i));
    return std::sqrt(std::max(0.0, lmax));
}

// Orthonormal basis of the column span, by modified Gram-Schmidt. Columns with
// residual below `tol` are dropped.
inline std::vector<Vec> orthonormal_column_basis(const Mat& a, double tol = 1e-12) {
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Vec v = a.col(j);
        for (const Vec& b : basis) v = v - dot(v, b) * b;
        double n = norm(v);
        if (n > tol) basis.push_back((1.0 / n) * v);
    }
    return basis;
}

// Pairwise summation: a fixed, platform-stable reduction order for quadrature
// accumulations independent of any loop partitioning.
inline double pairwise_sum(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += xs[i];
        return s;
    }
    std::size_t mid = lo + n / 2;
    return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& xs) {
    return pairwise_sum(xs, 0, xs.size());
}

}  // namespace soblab

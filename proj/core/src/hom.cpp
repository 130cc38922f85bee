#include "soblab/hom.hpp"

#include <algorithm>
#include <cmath>

#include "soblab/errors.hpp"

namespace soblab {

Vec HomElement::ambient_column(std::size_t j) const {
    Vec c = zeros(N.ambient_dim());
    for (std::size_t i = 0; i < frame_y.size(); ++i) c = c + matrix(i, j) * frame_y[i];
    return c;
}

Mat HomElement::ambient_matrix() const {
    Mat a(N.ambient_dim(), matrix.cols());
    for (std::size_t j = 0; j < matrix.cols(); ++j) a.set_col(j, ambient_column(j));
    return a;
}

HomElement make_hom(const Manifold& M, const Manifold& N, const Vec& x, const Vec& y,
                    const Mat& frame_matrix) {
    if (frame_matrix.rows() != static_cast<std::size_t>(N.intrinsic_dim()) ||
        frame_matrix.cols() != static_cast<std::size_t>(M.intrinsic_dim()))
        throw ContractViolation("make_hom: matrix shape does not match manifold dimensions");
    HomElement h{M, N, x, y, M.tangent_frame(x), N.tangent_frame(y), frame_matrix};
    return h;
}

HomElement hom_from_ambient_columns(const Manifold& M, const Manifold& N, const Vec& x,
                                    const Vec& y, const std::vector<Vec>& columns) {
    if (columns.size() != static_cast<std::size_t>(M.intrinsic_dim()))
        throw ContractViolation("hom_from_ambient_columns: one column per domain dimension");
    HomElement h{M, N, x, y, M.tangent_frame(x), N.tangent_frame(y),
                 Mat(N.intrinsic_dim(), M.intrinsic_dim())};
    for (std::size_t j = 0; j < columns.size(); ++j) {
        Vec t = N.project_to_tangent(y, columns[j]);
        for (std::size_t i = 0; i < h.frame_y.size(); ++i) h.matrix(i, j) = dot(t, h.frame_y[i]);
    }
    return h;
}

double frobenius_norm(const HomElement& h) { return frobenius_norm(h.matrix); }

double operator_norm(const HomElement& h) { return operator_norm(h.matrix); }

Mat isometric_reduction(const Mat& a, int k) {
    const int m = static_cast<int>(a.cols()), n = static_cast<int>(a.rows());
    if (k < std::min(m, n))
        throw ContractViolation("isometric_reduction: k must be at least min(m, n)");
    std::vector<Vec> basis = orthonormal_column_basis(a);
    Mat rho(k, n);
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (int j = 0; j < n; ++j) rho(r, j) = basis[r][j];
    return rho;  // rho maps im(a) isometrically onto span(e_1..e_r), kills im(a)^perp
}

double reduce_frobenius_by_postcomposition(const HomElement& h, int k) {
    Mat rho = isometric_reduction(h.matrix, k);
    return frobenius_norm(rho * h.matrix);
}

HomElement transport_hom(const HomElement& h, const Vec& x2, const Vec& y2) {
    HomElement out{h.M, h.N, x2, y2, h.M.tangent_frame(x2), h.N.tangent_frame(y2),
                   Mat(h.matrix.rows(), h.matrix.cols())};
    // Column j of the result: pull the destination frame vector back to x,
    // apply xi there, push the image forward to y2.
    for (std::size_t j = 0; j < out.matrix.cols(); ++j) {
        Vec back = h.M.parallel_transport(x2, h.x, out.frame_x[j]);
        Vec coeff(h.frame_x.size());
        for (std::size_t i = 0; i < h.frame_x.size(); ++i) coeff[i] = dot(back, h.frame_x[i]);
        Vec image = zeros(h.N.ambient_dim());
        for (std::size_t r = 0; r < h.frame_y.size(); ++r) {
            double a = 0.0;
            for (std::size_t i = 0; i < coeff.size(); ++i) a += h.matrix(r, i) * coeff[i];
            image = image + a * h.frame_y[r];
        }
        Vec moved = h.N.parallel_transport(h.y, y2, image);
        for (std::size_t r = 0; r < out.frame_y.size(); ++r)
            out.matrix(r, j) = dot(moved, out.frame_y[r]);
    }
    return out;
}

Mat transport_to(const HomElement& h, const HomElement& target) {
    Mat out(h.matrix.rows(), h.matrix.cols());
    for (std::size_t j = 0; j < out.cols(); ++j) {
        Vec back = h.M.parallel_transport(target.x, h.x, target.frame_x[j]);
        Vec coeff(h.frame_x.size());
        for (std::size_t i = 0; i < h.frame_x.size(); ++i) coeff[i] = dot(back, h.frame_x[i]);
        Vec image = zeros(h.N.ambient_dim());
        for (std::size_t r = 0; r < h.frame_y.size(); ++r) {
            double a = 0.0;
            for (std::size_t i = 0; i < coeff.size(); ++i) a += h.matrix(r, i) * coeff[i];
            image = image + a * h.frame_y[r];
        }
        Vec moved = h.N.parallel_transport(h.y, target.y, image);
        for (std::size_t r = 0; r < target.frame_y.size(); ++r)
            out(r, j) = dot(moved, target.frame_y[r]);
    }
    return out;
}

}  // namespace soblab

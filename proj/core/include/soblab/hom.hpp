#pragma once

#include <vector>

#include "soblab/linalg.hpp"
#include "soblab/manifold.hpp"

namespace soblab {

// An element of the morphism bundle over M x N: a linear map T_x M -> T_y N
// stored as an (dim N) x (dim M) matrix in orthonormal tangent frames at the
// base pair.  The zero matrix is identified with the base pair itself.

struct HomElement {
    Manifold M, N;
    Vec x, y;
    std::vector<Vec> frame_x;  // orthonormal frame of T_x M, ambient coords
    std::vector<Vec> frame_y;  // orthonormal frame of T_y N
    Mat matrix;                // dim N x dim M, frame coordinates

    // Image of the j-th domain frame vector, in ambient N coordinates.
    Vec ambient_column(std::size_t j) const;
    // Full ambient representation: ambient_dim(N) x dim M.
    Mat ambient_matrix() const;
};

// Builds the element with the deterministic frames of the two manifolds.
HomElement make_hom(const Manifold& M, const Manifold& N, const Vec& x, const Vec& y,
                    const Mat& frame_matrix);

// Builds the element from ambient-coordinate columns (one per domain frame
// vector); columns are projected onto the tangent space at y.
HomElement hom_from_ambient_columns(const Manifold& M, const Manifold& N, const Vec& x,
                                    const Vec& y, const std::vector<Vec>& columns);

double frobenius_norm(const HomElement& h);
double operator_norm(const HomElement& h);

// Supremum of |rho . xi|_F over nonexpansive rho: R^n -> R^k, k >= min(m, n),
// computed constructively with an isometry on the image of xi.
double reduce_frobenius_by_postcomposition(const HomElement& h, int k);

// The constructive k x n reduction matrix itself (unit operator norm,
// isometric on the column span of a).
Mat isometric_reduction(const Mat& a, int k);

// Tensor-product parallel transport to the base pair (x2, y2) along the
// minimizing geodesics; the result carries the deterministic frames there.
HomElement transport_hom(const HomElement& h, const Vec& x2, const Vec& y2);

// Same transport, but expressed in the frames of `target` (whose base pair
// must be the transport destination).  Returns just the matrix.
Mat transport_to(const HomElement& h, const HomElement& target);

}  // namespace soblab

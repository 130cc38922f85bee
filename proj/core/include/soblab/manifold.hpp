#pragma once

#include <limits>
#include <string>
#include <vector>

#include "soblab/linalg.hpp"

namespace soblab {

// Geometry kernel.  Points and tangent vectors live in ambient (embedded)
// coordinates: charts are implicit.  Spheres are the unit spheres of
// R^{n+1}; the flat kinds carry the ambient Euclidean structure and, for the
// domain kinds, a bounding box / radius used for membership and grids.

enum class ManifoldKind { euclidean, sphere, circle, interval, rectangle, disk };

class Manifold {
public:
    Manifold() : Manifold(ManifoldKind::euclidean, 1, 1) {}

    static Manifold euclidean(int n);
    static Manifold sphere(int n);  // S^n, ambient dimension n+1
    static Manifold circle();       // S^1, ambient dimension 2
    static Manifold interval(double a, double b);
    static Manifold rectangle(double ax, double bx, double ay, double by);
    static Manifold disk(double radius);

    ManifoldKind kind() const { return kind_; }
    int intrinsic_dim() const { return intrinsic_dim_; }
    int ambient_dim() const { return ambient_dim_; }
    bool flat() const { return kind_ != ManifoldKind::sphere && kind_ != ManifoldKind::circle; }

    // pi for spheres and the circle, infinity for the flat kinds.
    double injectivity_radius() const;

    // Bounds of the domain kinds (interval: [lo[0], hi[0]]; rectangle: per
    // axis; disk: radius in hi[0]).
    const Vec& lower_bounds() const { return lo_; }
    const Vec& upper_bounds() const { return hi_; }
    double disk_radius() const { return hi_[0]; }

    bool contains(const Vec& x, double tol = 1e-12) const;
    bool is_tangent_at(const Vec& x, const Vec& v, double tol = 1e-12) const;

    Vec exp_map(const Vec& x, const Vec& v) const;
    Vec log_map(const Vec& x, const Vec& y) const;
    double geodesic_distance(const Vec& x, const Vec& y) const;
    // Parallel transport of v from x to y along the minimizing geodesic.
    Vec parallel_transport(const Vec& x, const Vec& y, const Vec& v) const;
    Vec project_to_tangent(const Vec& x, const Vec& w) const;

    // Deterministic orthonormal tangent frame at x (Gram-Schmidt against the
    // standard axes in fixed order; axes nearly parallel to x are skipped).
    std::vector<Vec> tangent_frame(const Vec& x) const;

    std::string to_string() const;
    static Manifold from_string(const std::string& s);

    bool operator==(const Manifold& o) const {
        return kind_ == o.kind_ && intrinsic_dim_ == o.intrinsic_dim_ && lo_ == o.lo_ &&
               hi_ == o.hi_;
    }

private:
    Manifold(ManifoldKind k, int intrinsic, int ambient) noexcept
        : kind_(k), intrinsic_dim_(intrinsic), ambient_dim_(ambient) {}

    void check_point(const Vec& x) const;

    ManifoldKind kind_;
    int intrinsic_dim_;
    int ambient_dim_;
    Vec lo_, hi_;
};

struct TangentVector {
    Vec base;
    Vec vec;
};

}  // namespace soblab

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "soblab/hom.hpp"

namespace soblab {

// Uniform chart grid over an interval, rectangle or disk domain.  Interval
// and rectangle grids are vertex grids with trapezoidal weights; disk grids
// are polar, cell-centered in the radius (so the r = 0 coordinate
// singularity never hosts a node) and periodic in the angle.
class Grid {
public:
    Grid() = default;
    Grid(const Manifold& domain, const std::vector<int>& shape);

    const std::vector<int>& shape() const { return shape_; }
    const std::vector<double>& spacing() const { return spacing_; }
    std::size_t size() const { return size_; }
    int axes() const { return static_cast<int>(shape_.size()); }

    // Chart coordinates of a flattened node index (row-major, first axis
    // slowest).
    Vec chart_coords(std::size_t flat) const;
    // Ambient-coordinate position in the domain manifold.
    Vec position(std::size_t flat) const;
    // Quadrature weight including the volume element.
    double weight(std::size_t flat) const;

    std::vector<std::size_t> index_of(std::size_t flat) const;
    std::size_t flat_of(const std::vector<std::size_t>& idx) const;

    bool operator==(const Grid& o) const {
        return shape_ == o.shape_ && lo_ == o.lo_ && hi_ == o.hi_ && polar_ == o.polar_;
    }

private:
    std::vector<int> shape_;
    std::vector<double> spacing_;
    Vec lo_, hi_;
    bool polar_ = false;
    std::size_t size_ = 1;
};

// A map u: M -> N tabulated on a grid, values in ambient target coordinates.
// The optional analytic derivative returns one ambient column per domain
// axis (orthonormal chart directions; for the disk these are the radial and
// unit-scaled angular directions) and is used verbatim when present.
struct SampledMap {
    Manifold domain;
    Manifold target;
    Grid grid;
    std::vector<Vec> values;
    std::function<std::vector<Vec>(const Vec& chart)> analytic_derivative;

    static SampledMap sample(const Manifold& domain, const Manifold& target,
                             const std::vector<int>& shape,
                             const std::function<Vec(const Vec& chart)>& f,
                             std::function<std::vector<Vec>(const Vec& chart)> derivative = {});

    void save_csv(const std::string& path) const;
    static SampledMap load_csv(const std::string& path);
};

// Derivative field: one bundle element per grid node, columns kept in
// ambient target coordinates.
struct DerivativeField {
    Manifold domain;
    Manifold target;
    Grid grid;
    std::vector<Mat> ambient;          // per node, ambient_dim(N) x dim M
    const SampledMap* source = nullptr;

    double frobenius(std::size_t node) const;
    // Materializes the bundle element at a node (with its orthonormal
    // frames); the matrix is the frame representation of the stored columns.
    HomElement element(std::size_t node) const;
};

DerivativeField weak_derivative(const SampledMap& u);

double sobolev_energy(const SampledMap& u, double p);

// Convergence-in-measure metric between maps with a common grid.
double measure_distance(const SampledMap& u, const SampledMap& v);

enum class DistanceKind { sasaki, cheeger_gromoll, iota, chiron, dot };

struct DistanceValue {
    double value = 0.0;
    bool is_upper_bound = false;
};

DistanceValue sobolev_distance(const SampledMap& u, const SampledMap& v, DistanceKind kind,
                               double p);

// Post-composition test maps with known Lipschitz constants.
struct LipschitzMap {
    std::string name;
    double lip;
    int out_dim;
    std::function<Vec(const Vec& y)> apply;

    static LipschitzMap coordinate_projection(const Manifold& N, int axis);
    static LipschitzMap ambient_linear(const Manifold& N, const Mat& a);
    static LipschitzMap target_isometry(const Manifold& N, const Mat& rotation);
    static LipschitzMap distance_to_point(const Manifold& N, const Vec& q);
};

// Max over nodes of |D(f o u)|_F - |f|_Lip |Du|_F, both sides from the same
// finite-difference pipeline.
double check_lipschitz_chain_rule(const SampledMap& u, const LipschitzMap& f);

// delta^C - sqrt(2) min(delta^iota, flat-exact delta^S); the Sasaki term is
// included only when both manifolds are flat.
double check_sqrt2_comparison(const SampledMap& u, const SampledMap& v, double p);

}  // namespace soblab

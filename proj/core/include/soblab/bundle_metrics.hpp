#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "soblab/hom.hpp"

namespace soblab {

// Tangent vector to the morphism bundle, split against the connection:
// horizontal part (a tangent to the base M x N at the footpoint) and vertical
// part (a matrix increment in the frames of the footpoint element).
struct BundleTangent {
    HomElement base_element;
    TangentVector horizontal_m;
    TangentVector horizontal_n;
    Mat vertical;
};

// Pure fiber motion: zero horizontal part, vertical increment `direction`.
BundleTangent vertical_lift(const HomElement& at, const Mat& direction);

// The one-parameter family of bundle metrics: lambda = 1 is Sasaki,
// lambda = 1/2 Cheeger-Gromoll, lambda = 0 the degenerate limit.
double eval_lambda_metric(double lambda, const BundleTangent& nu);

struct BundlePath {
    std::vector<HomElement> samples;  // uniform parameter steps on [0, 1]
};

// Length of the discretized path under G^lambda: per segment, horizontal
// speed from base logs, vertical speed from transport-back differences,
// fiber data evaluated at the covariant segment midpoint.  Second-order in
// the step size on smooth paths.
double path_length(double lambda, const BundlePath& path);

// Exact Sasaki distance when both manifolds are flat.
double sasaki_distance_flat(const HomElement& e1, const HomElement& e2);

// Competitor value g(e1 - P(e2)) + d_{MxN}(bases)^2 along the minimizing base
// geodesic, square-rooted.  Never below the Sasaki distance; equal to it in
// the flat case.
double sasaki_distance_upper_bound(const HomElement& e1, const HomElement& e2);

// Same competitor along an explicit base chain running from the base pair of
// e2 to the base pair of e1 (consecutive pairs joined by minimizing
// geodesics, constant-speed overall).
double sasaki_chain_competitor(const HomElement& e1, const HomElement& e2,
                               const std::vector<std::pair<Vec, Vec>>& chain);

// Cheeger-Gromoll competitor: traverse the minimizing base geodesic while the
// fiber rotates/scales from e1 to the transported e2 in a fixed 2-plane.
// Evaluated with path_length at `steps` segments.
double cg_distance_upper_bound(const HomElement& e1, const HomElement& e2, int steps = 512);

struct ConcordanceReport {
    double max_violation_horizontal = 0.0;  // G(h-projection) - G(nu)
    double max_violation_derivative = 0.0;  // (2 g(k,e))^2 - 4 g(e,e) G(nu)
    double max_violation_vertical_lift = 0.0;  // |G(V_e(e)) - g(e,e)|
    int samples = 0;
    std::uint64_t seed = 0;
};

ConcordanceReport check_strong_concordance(double lambda, int samples, std::uint64_t seed);

// Max over samples of G^CG(nu) - G^S(nu); nonpositive up to roundoff.
double check_cg_le_sasaki(int samples, std::uint64_t seed);

// Seeded random bundle tangent over an interval-to-sphere hom element
// (alternating with a rectangle-to-Euclidean one); shared by the property
// checks and the test suites.
BundleTangent random_bundle_tangent(std::uint64_t seed, int index);

}  // namespace soblab

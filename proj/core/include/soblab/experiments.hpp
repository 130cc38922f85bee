#pragma once

#include <string>
#include <vector>

#include "soblab/sobolev.hpp"

namespace soblab {

// One row of a counterexample-family run.  Values flagged as bounds are
// certified upper bounds on the corresponding distance; unflagged curved-case
// values follow the closed-form expressions the construction admits.
struct FamilyResult {
    std::string family;
    double p = 0.0;
    double parameter = 0.0;  // lambda
    double delta_sasaki = 0.0;
    bool sasaki_is_bound = false;
    double delta_cg = 0.0;
    bool cg_is_bound = false;
    double delta_iota = 0.0;
    double delta_chiron = 0.0;
    double closed_form_bound = 0.0;

    // Extra diagnostics, reported in summaries but not part of the CSV row.
    double cg_saturated_bound = 0.0;   // family 1: pointwise bound with the fiber term capped
    double reference_value = 0.0;      // independent fine-quadrature reference
};

// Scaled bump pair u_lambda = u(./lambda), v_lambda = -u_lambda into R^n.
std::vector<FamilyResult> family_cg_vs_sasaki(double p, int n,
                                              const std::vector<double>& lambdas, int nodes);

// Sphere excursion u_lambda against its image under a rotation fixing the
// excursion's endpoint.
std::vector<FamilyResult> family_sasaki_vs_embedding(double p, int n,
                                                     const std::vector<double>& lambdas,
                                                     int nodes);

// Circle-valued phase construction on the 2-disk, p < dim M.
std::vector<FamilyResult> family_s1_disk(double p, const std::vector<double>& lambdas,
                                         int nodes_per_axis);

// The three-branch phase profile of the disk family and its radial slope.
double disk_phase(double r, double lambda, double p, int dim_m = 2);
double disk_phase_slope(double r, double lambda, double p, int dim_m = 2);

struct ChironReport {
    double p = 0.0;
    std::vector<int> ells;
    std::vector<double> energies;            // E_p(u_ell)
    double limit_energy = 0.0;               // energy of the constant limit map
    std::vector<std::vector<double>> delta;  // delta^C(u_k, u_j)
    double max_derivative_term = 0.0;        // sup |  |Du_k| - |Du_j|  | over nodes/pairs
};

// Oscillating kink family u_ell(t) = gamma(dist(t, Z/ell)) on (0, 1): Cauchy
// for delta^C while the energies stay away from the limit's.
ChironReport chiron_cauchy_not_convergent(double p, const std::vector<int>& ells, int nodes);

// Builds one member of the kink family (exposed for tests and the CLI).
SampledMap chiron_kink_map(int ell, int nodes);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace soblab

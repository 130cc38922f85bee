// Command-line driver: property suites and counterexample families, with CSV
// and a human-readable summary written to the output directory.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "soblab/bundle_metrics.hpp"
#include "soblab/errors.hpp"
#include "soblab/experiments.hpp"

using namespace soblab;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class Report {
public:
    Report(const std::string& out_dir, char delim) : delim_(delim) {
        std::filesystem::create_directories(out_dir);
        csv_.open(out_dir + "/results.csv", std::ios::binary);
        summary_.open(out_dir + "/summary.txt", std::ios::binary);
    }

    void csv_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) csv_ << delim_;
            csv_ << cells[i];
        }
        csv_ << "\n";
    }

    void note(const std::string& line) { summary_ << "# " << line << "\n"; }

    void check(const std::string& name, bool ok, double margin) {
        summary_ << (ok ? "PASS " : "FAIL ") << name << " margin=" << fmt(margin) << "\n";
        if (!ok) ++failures_;
    }

    void info(const std::string& name, double value) {
        summary_ << "INFO " << name << " value=" << fmt(value) << "\n";
    }

    int failures() const { return failures_; }

private:
    char delim_;
    std::ofstream csv_;
    std::ofstream summary_;
    int failures_ = 0;
};

void write_family_rows(Report& rep, const std::vector<FamilyResult>& rows) {
    rep.csv_row({"family", "p", "parameter", "delta_sasaki", "sasaki_is_bound", "delta_cg",
                 "cg_is_bound", "delta_iota", "delta_chiron", "closed_form_bound"});
    for (const auto& r : rows)
        rep.csv_row({r.family, fmt(r.p), fmt(r.parameter), fmt(r.delta_sasaki),
                     r.sasaki_is_bound ? "1" : "0", fmt(r.delta_cg), r.cg_is_bound ? "1" : "0",
                     fmt(r.delta_iota), fmt(r.delta_chiron), fmt(r.closed_form_bound)});
}

int run_props(const std::string& out, char delim, int samples, std::uint64_t seed) {
    Report rep(out, delim);
    rep.note("props samples=" + std::to_string(samples) + " seed=" + std::to_string(seed));
    rep.csv_row({"suite", "check", "lambda", "samples", "seed", "value"});
    for (double lambda : {0.0, 0.5, 1.0}) {
        ConcordanceReport c = check_strong_concordance(lambda, samples, seed);
        const std::string ls = fmt(lambda);
        rep.csv_row({"props", "concordance_horizontal", ls, std::to_string(samples),
                     std::to_string(seed), fmt(c.max_violation_horizontal)});
        rep.csv_row({"props", "concordance_derivative", ls, std::to_string(samples),
                     std::to_string(seed), fmt(c.max_violation_derivative)});
        rep.csv_row({"props", "concordance_vertical_lift", ls, std::to_string(samples),
                     std::to_string(seed), fmt(c.max_violation_vertical_lift)});
        rep.check("strong_concordance_horizontal lambda=" + ls,
                  c.max_violation_horizontal < 1e-12, 1e-12 - c.max_violation_horizontal);
        rep.check("strong_concordance_derivative lambda=" + ls,
                  c.max_violation_derivative < 1e-12, 1e-12 - c.max_violation_derivative);
        rep.check("vertical_lift_identity lambda=" + ls, c.max_violation_vertical_lift < 1e-12,
                  1e-12 - c.max_violation_vertical_lift);
    }
    double gap = check_cg_le_sasaki(samples, seed);
    rep.csv_row({"props", "cg_le_sasaki", "", std::to_string(samples), std::to_string(seed),
                 fmt(gap)});
    rep.check("cheeger_gromoll_le_sasaki", gap < 1e-12, 1e-12 - gap);

    // Quadratic homogeneity of the lambda-family.
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        BundleTangent nu = random_bundle_tangent(seed ^ 0xabcdef, i);
        const double t = 0.25 + (i % 7) * 0.5;
        BundleTangent tnu = nu;
        tnu.horizontal_m.vec = t * nu.horizontal_m.vec;
        tnu.horizontal_n.vec = t * nu.horizontal_n.vec;
        tnu.vertical = t * nu.vertical;
        for (double lambda : {0.0, 0.5, 1.0}) {
            double a = eval_lambda_metric(lambda, tnu);
            double b = t * t * eval_lambda_metric(lambda, nu);
            worst = std::max(worst, std::fabs(a - b) / std::max(1.0, b));
        }
    }
    rep.csv_row({"props", "quadratic_homogeneity", "", std::to_string(samples),
                 std::to_string(seed), fmt(worst)});
    rep.check("quadratic_homogeneity", worst < 1e-12, 1e-12 - worst);
    return rep.failures() == 0 ? 0 : 1;
}

int run_family(const std::string& out, char delim, const std::string& name, double p, int nodes,
               const std::vector<double>& lambdas) {
    Report rep(out, delim);
    rep.note("family name=" + name + " p=" + fmt(p) + " nodes=" + std::to_string(nodes));
    std::vector<FamilyResult> rows;
    if (name == "cg-sasaki") {
        rows = family_cg_vs_sasaki(p, 2, lambdas, nodes);
        write_family_rows(rep, rows);
        for (const auto& r : rows) {
            rep.check("cg_bound_le_closed_form lambda=" + fmt(r.parameter),
                      r.delta_cg <= r.closed_form_bound,
                      r.closed_form_bound - r.delta_cg);
            rep.check("sasaki_grid_matches_closed_form lambda=" + fmt(r.parameter),
                      std::fabs(r.delta_sasaki / r.reference_value - 1.0) < 1e-4,
                      1e-4 - std::fabs(r.delta_sasaki / r.reference_value - 1.0));
            rep.info("cg_saturated_bound lambda=" + fmt(r.parameter), r.cg_saturated_bound);
        }
    } else if (name == "sasaki-embedding") {
        rows = family_sasaki_vs_embedding(p, 2, lambdas, nodes);
        write_family_rows(rep, rows);
        for (const auto& r : rows) {
            rep.check("sasaki_bound_le_2pi_lambda^(1/p) lambda=" + fmt(r.parameter),
                      r.delta_sasaki <= r.closed_form_bound,
                      r.closed_form_bound - r.delta_sasaki);
            rep.info("ratio_sasaki_over_iota lambda=" + fmt(r.parameter),
                     r.delta_sasaki / r.delta_iota);
        }
    } else if (name == "s1-disk") {
        rows = family_s1_disk(p, lambdas, nodes);
        write_family_rows(rep, rows);
        for (const auto& r : rows) {
            const double lam = r.parameter;
            double seam1 = disk_phase(std::nextafter(lam, 0.0), lam, p) -
                           disk_phase(lam, lam, p);
            double seam2 = disk_phase(std::nextafter(2 * lam, 0.0), lam, p) -
                           disk_phase(2 * lam, lam, p);
            double worst = std::max(std::fabs(seam1), std::fabs(seam2));
            rep.check("phase_continuity_at_seams lambda=" + fmt(lam), worst <= 1e-12,
                      1e-12 - worst);
            rep.info("sasaki_vs_radial_reference lambda=" + fmt(lam),
                     r.delta_sasaki / r.reference_value - 1.0);
        }
    } else {
        std::cerr << "unknown family: " << name << "\n";
        return 2;
    }
    return rep.failures() == 0 ? 0 : 1;
}

int run_chiron(const std::string& out, char delim, double p, int nodes,
               const std::vector<int>& ells) {
    Report rep(out, delim);
    rep.note("chiron p=" + fmt(p) + " nodes=" + std::to_string(nodes));
    ChironReport r = chiron_cauchy_not_convergent(p, ells, nodes);
    rep.csv_row({"p", "ell_i", "ell_j", "delta_chiron", "energy_i", "energy_j"});
    for (std::size_t i = 0; i < ells.size(); ++i)
        for (std::size_t j = 0; j < ells.size(); ++j)
            rep.csv_row({fmt(p), std::to_string(ells[i]), std::to_string(ells[j]),
                         fmt(r.delta[i][j]), fmt(r.energies[i]), fmt(r.energies[j])});
    for (std::size_t i = 0; i < ells.size(); ++i)
        rep.check("energy_near_one ell=" + std::to_string(ells[i]),
                  r.energies[i] > 0.99 && r.energies[i] < 1.01,
                  0.01 - std::fabs(r.energies[i] - 1.0));
    // Both moduli are the constant 1; the measured gap is at most one
    // rounding of the unit column norm.
    rep.check("derivative_term_vanishes",
              r.max_derivative_term <= std::numeric_limits<double>::epsilon(),
              std::numeric_limits<double>::epsilon() - r.max_derivative_term);
    rep.check("limit_energy_zero", r.limit_energy == 0.0, -r.limit_energy);
    for (std::size_t i = 0; i < ells.size(); ++i)
        for (std::size_t j = i + 1; j < ells.size(); ++j) {
            bool sym = std::fabs(r.delta[i][j] - r.delta[j][i]) < 1e-12;
            rep.check("chiron_symmetric " + std::to_string(ells[i]) + "," +
                          std::to_string(ells[j]),
                      sym, 1e-12 - std::fabs(r.delta[i][j] - r.delta[j][i]));
        }
    return rep.failures() == 0 ? 0 : 1;
}

int run_energy(const std::string& out, char delim, double p, int nodes,
               const std::vector<int>& ells) {
    Report rep(out, delim);
    rep.note("energy p=" + fmt(p) + " nodes=" + std::to_string(nodes));
    rep.csv_row({"map", "p", "nodes", "energy"});
    SampledMap unit_speed = SampledMap::sample(
        Manifold::interval(0.0, 1.0), Manifold::circle(), {nodes},
        [](const Vec& c) { return Vec{std::cos(c[0]), std::sin(c[0])}; });
    double e_unit = sobolev_energy(unit_speed, p);
    rep.csv_row({"unit_speed_circle", fmt(p), std::to_string(nodes), fmt(e_unit)});
    rep.check("unit_speed_energy_near_one", std::fabs(e_unit - 1.0) < 1e-3,
              1e-3 - std::fabs(e_unit - 1.0));
    SampledMap constant = SampledMap::sample(
        Manifold::interval(0.0, 1.0), Manifold::circle(), {nodes},
        [](const Vec&) { return Vec{1.0, 0.0}; });
    double e_const = sobolev_energy(constant, p);
    rep.csv_row({"constant", fmt(p), std::to_string(nodes), fmt(e_const)});
    rep.check("constant_energy_zero", e_const == 0.0, -e_const);
    for (int ell : ells) {
        double e = sobolev_energy(chiron_kink_map(ell, nodes), p);
        rep.csv_row({"kink_" + std::to_string(ell), fmt(p), std::to_string(nodes), fmt(e)});
        rep.check("kink_energy_near_one ell=" + std::to_string(ell),
                  e > 0.99 && e < 1.01, 0.01 - std::fabs(e - 1.0));
    }
    return rep.failures() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bundle metrics and intrinsic Sobolev distances for manifold-valued maps"};
    app.require_subcommand(1);
    app.set_config("--config");

    double p = 2.0;
    int nodes = 4096;
    int samples = 10000;
    std::uint64_t seed = 12345;
    std::string out = "out";
    std::string format = "csv";
    std::vector<double> lambdas{1.0, 0.1, 0.01};
    std::vector<int> ells{4, 16, 64, 256};
    std::string family_name = "cg-sasaki";

    app.add_option("--p", p, "Integrability exponent")->capture_default_str();
    app.add_option("--nodes", nodes, "Grid nodes per axis")->capture_default_str();
    app.add_option("--samples", samples, "Random samples for property suites")
        ->capture_default_str();
    app.add_option("--seed", seed, "Random seed")->envname("SOBOLEV_LAB_SEED")
        ->capture_default_str();
    app.add_option("--out", out, "Output directory")->capture_default_str();
    app.add_option("--format", format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}))
        ->capture_default_str();
    app.add_option("--lambdas", lambdas, "Scale parameters")->delimiter(',');
    app.add_option("--ells", ells, "Kink counts")->delimiter(',');

    CLI::App* props = app.add_subcommand("props", "Property suites for the bundle metrics");
    CLI::App* family = app.add_subcommand("family", "Run a counterexample family");
    family->add_option("--name", family_name, "cg-sasaki | sasaki-embedding | s1-disk")
        ->capture_default_str();
    CLI::App* chiron = app.add_subcommand("chiron", "Kink family: Cauchy without a limit");
    CLI::App* energy = app.add_subcommand("energy", "Sobolev energies of the built-in maps");
    for (CLI::App* sub : {props, family, chiron, energy}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (p < 1.0 || p > 16.0) {
        std::cerr << "invalid config: p must lie in [1, 16]\n";
        return 2;
    }
    if (nodes < 64) {
        std::cerr << "invalid config: nodes must be at least 64\n";
        return 2;
    }
    for (double l : lambdas)
        if (!(l > 0.0) || !std::isfinite(l)) {
            std::cerr << "invalid config: lambdas must be positive and finite\n";
            return 2;
        }

    const char delim = (format == "tsv") ? '\t' : ',';
    try {
        if (props->parsed()) return run_props(out, delim, samples, seed);
        if (family->parsed()) return run_family(out, delim, family_name, p, nodes, lambdas);
        if (chiron->parsed()) return run_chiron(out, delim, p, nodes, ells);
        if (energy->parsed()) return run_energy(out, delim, p, nodes, ells);
    } catch (const ContractViolation& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

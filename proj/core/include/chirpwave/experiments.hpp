#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chirpwave/propagators.hpp"

namespace chirpwave {

/// Reproducible experiment definition. ids: fig1..fig4 reproduce the figure
/// data sets, "sweep" tabulates approximation error against alpha,
/// "invariance" audits the rescaled-density identity.
struct ExperimentSpec {
    std::string id;
    InitialState state = SincState{1.0};
    std::vector<double> alphas;
    std::vector<double> times;
    Grid grid;
    std::filesystem::path output_dir;
    std::size_t jobs = 0;  // 0 = hardware default
    QuadratureSpec quad{};
    OraclePlanLimits oracle_limits{};

    void validate() const;
};

struct CellReport {
    double alpha = 0.0;
    double t = 0.0;
    std::string method;
    FactorCoeffs coeffs;
    // keys: psi0_vs_exact, psi1_vs_exact, exact_vs_oracle, density_sup, ...
    std::map<std::string, double> errors;
    std::optional<std::string> oracle_skipped;  // set when vs_oracle was infeasible
};

struct ComparisonReport {
    std::string experiment;
    std::string state;
    Grid grid;
    std::vector<CellReport> cells;
};

/// Runs the experiment, writes its CSV panels plus report.json under
/// spec.output_dir, and returns the aggregated report. Output bytes are a
/// deterministic function of the spec.
ComparisonReport run_experiment(const ExperimentSpec& spec);

struct AlphaErrorRow {
    double alpha = 0.0;
    double err_psi0 = 0.0;
    double err_psi1 = 0.0;
    double f4 = 0.0;
};

/// Rows (alpha, err_psi0, err_psi1, f4) sorted by alpha; errors are relative
/// l2 distances to the exact closed-form evolution.
std::vector<AlphaErrorRow> alpha_error_curve(const InitialState& state,
                                             std::vector<double> alphas, double t,
                                             const Grid& grid, std::size_t jobs = 0);

/// Pre-canned spec for a figure id with the standard parameters.
ExperimentSpec figure_spec(const std::string& id, const std::filesystem::path& out_root);

void write_report_json(const ComparisonReport& report, const std::filesystem::path& path);

/// %.17g formatting used by every data file.
std::string format_double(double v);

}  // namespace chirpwave

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "leray/blowdown.hpp"
#include "leray/diagnostics.hpp"
#include "leray/solver.hpp"

namespace leray {

/// Radial resolution grows with log2 R so every octave gets the same number of nodes.
struct GridPolicy {
    double nodes_per_octave = 64.0;
    std::size_t n_theta = 128;

    std::size_t n_r(double r_outer) const;
    GridPtr build(double r_outer) const;
};

struct ExperimentConfig {
    std::vector<double> lambdas{0.1};
    std::vector<double> radii{10.0, 20.0, 40.0, 80.0};
    GridPolicy grid;
    double newton_tol = 1e-10;
    int max_newton = 50;
    int picard_warmup = 3;
    DiagnosticsOptions diagnostics;
    /// Velocities at consecutive R are compared on r <= compare_radius.
    double compare_radius = 10.0;
    std::filesystem::path output_dir;
    bool write_fields = true;
    bool write_svg = true;
    /// Worker threads for independent lambda values; 0 picks the hardware count.
    unsigned threads = 0;

    void validate() const;
};

struct TailEnergy {
    double quarter = 0.0;  ///< D(r >= R/4)
    double half = 0.0;     ///< D(r >= R/2)
};

struct SweepRow {
    double lambda = 0.0;
    double r_outer = 0.0;
    std::size_t n_r = 0;
    std::size_t n_theta = 0;
    bool converged = true;
    std::string failure;
    int newton_iters = 0;
    double residual_norm = 0.0;
    bool warm_start = false;

    double d_total = 0.0;
    double d_normalized = 0.0;  ///< D |ln lambda| / lambda^2
    Vec2 force;                 ///< on the obstacle surface
    std::map<double, Vec2> force_by_contour;
    double lambda0 = 0.0;
    double phi0 = 0.0;
    double probe_radius = 0.0;
    double force_asymptotic = 0.0;  ///< F . e1 |ln lambda0| / (4 pi lambda0)
    double bernoulli_gap = 0.0;
    double pressure_defect = 0.0;
    std::map<std::string, Slack> slacks;
    std::map<std::string, double> info;
    BlowDownReport blowdown;
    TailEnergy tail;
    /// Sup-norm velocity difference on r <= compare_radius against the previous R; negative if none.
    double leray_difference = -1.0;

    bool all_pass() const;
};

struct SweepReport {
    ExperimentConfig config;
    std::vector<SweepRow> rows;
    /// Converged states by (lambda, R), kept in memory only.
    std::map<std::pair<double, double>, FlowState> states;
};

/// Analysis of one converged state (diagnostics, blow-down, tails). No solving.
SweepRow analyse_state(const FlowState& state, const ExperimentConfig& cfg);

/// Solves for every R in cfg.radii at fixed lambda, each continued from the previous one.
/// A solver failure produces a failure row and stops the sequence.
SweepReport run_invading_sequence(const ExperimentConfig& cfg, double lambda);

/// run_invading_sequence for every lambda in cfg.lambdas; rows sorted by (lambda, R).
SweepReport run_lambda_sweep(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepRow& row);
SweepRow row_from_json(const nlohmann::json& j);

/// {config, rows, metadata}; metadata holds the only non-deterministic content.
nlohmann::json report_json(const SweepReport& rep, bool with_metadata = true);
SweepReport read_report(const std::filesystem::path& path);

std::string report_csv(const SweepReport& rep);
std::string diagnostics_csv(const SweepReport& rep);
std::string state_dir_name(double lambda, double r_outer);

/// report.json, report.csv, diagnostics.csv, optional charts and state directories.
void emit_reports(const SweepReport& rep, const std::filesystem::path& dir);

/// Writes psi, omega and state.json into dir.
void write_state(const FlowState& state, const std::filesystem::path& dir);
FlowState read_state(const std::filesystem::path& dir);

/// Names of failing slacks (and failed solves) found in a report JSON.
std::vector<std::string> check_report(const nlohmann::json& report);

}  // namespace leray

// sweep.hpp — batch experiment runner: coupling sweeps over the field
// channels, truth-table audits, CSV output with a JSON manifest sidecar.

#pragma once

#include "udwqc/channels.hpp"
#include "udwqc/metrics.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace udwqc {

enum class Experiment {
    capacity_qst,
    diamond_qst,
    diamond_cnot_mediated,
    diamond_cnot_two_qubit,
    diamond_single_qubit_h,
    diamond_single_qubit_s,
    diamond_single_qubit_t,
    gate_audit,
};

Experiment parse_experiment(const std::string& name);
std::string to_string(Experiment e);

enum class SweepBackend { weyl, fock, both };

struct SweepConfig {
    Experiment experiment = Experiment::diamond_qst;
    std::vector<double> coupling_grid;  // J/sigma values, strictly increasing
    double sigma = 1.0;
    double v = 1.0;
    double mass_reg = 1e-3;
    int truncation = 60;
    SweepBackend backend = SweepBackend::weyl;
    std::string receiver_init = "plus_y";
    std::uint64_t seed = 12345;
    std::string output_path = "sweep.csv";
    int diamond_restarts = 16;
    bool regulator_check = true;  // log mass_reg/2 agreement for J/sigma >= 3

    static SweepConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
    static std::vector<double> default_grid();  // 0.2..6.0, 30 log-spaced
};

struct SweepRow {
    double j_over_sigma = 0.0;
    double metric = 0.0;
    std::string backend;
    double s_phi = 0.0;
    double s_pi = 0.0;
    double gamma = 0.0;
    double restriction_ratio = 0.0;
    double agreement = 0.0;  // |weyl - fock| when backend = both
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;
    nlohmann::json manifest;
    int exit_code = 0;
};

SweepResult run_sweep(const SweepConfig& cfg);

/// Writes the CSV (and the manifest next to it as <output>.manifest.json).
void write_sweep(const SweepResult& result);

std::string render_csv(const SweepResult& result);

/// Gnuplot-dialect script plotting metric vs J/sigma with a log x axis,
/// one series per backend, referencing the CSV by relative path.
std::string emit_plot_script(const SweepResult& result);
std::string emit_plot_script(const std::string& csv_name, bool both_backends,
                             const std::string& metric_label);

struct AuditOutcome {
    int checks = 0;
    int failures = 0;
    std::vector<std::string> lines;
};

/// Truth tables of the elementary and composite gates, the transfer matrix,
/// the SWAP identity, and the projector-cancellation unitarity identity.
AuditOutcome run_gate_audit();

}  // namespace udwqc

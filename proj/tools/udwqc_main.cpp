// Command line front end: coupling sweeps, gate audits, plot script export.

#include "udwqc/sweep.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace udwqc;

std::vector<double> parse_grid(const std::string& s) {
    // start:stop:points, log spaced.
    double start = 0, stop = 0;
    int points = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> start >> c1 >> stop >> c2 >> points) || c1 != ':' || c2 != ':' ||
        points < 2 || start <= 0 || stop <= start)
        throw CLI::ValidationError("--grid expects start:stop:points");
    std::vector<double> g;
    const double lo = std::log(start), hi = std::log(stop);
    for (int i = 0; i < points; ++i)
        g.push_back(std::exp(lo + (hi - lo) * i / (points - 1)));
    return g;
}

int cmd_sweep(const std::string& config_path, const std::string& experiment,
              const std::string& grid, const std::string& backend,
              int truncation, std::int64_t seed, const std::string& out,
              const std::string& receiver, int restarts) {
    SweepConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "cannot read config " << config_path << "\n";
                return 1;
            }
            nlohmann::json j;
            f >> j;
            cfg = SweepConfig::from_json(j);
        } else {
            cfg.coupling_grid = SweepConfig::default_grid();
        }
        if (!experiment.empty()) cfg.experiment = parse_experiment(experiment);
        if (!grid.empty()) cfg.coupling_grid = parse_grid(grid);
        if (!backend.empty())
            cfg.backend = backend == "weyl"   ? SweepBackend::weyl
                          : backend == "fock" ? SweepBackend::fock
                          : backend == "both"
                              ? SweepBackend::both
                              : throw CLI::ValidationError("unknown backend");
        if (truncation > 0) cfg.truncation = truncation;
        if (const char* env = std::getenv("UDWQC_SEED"))
            cfg.seed = std::strtoull(env, nullptr, 10);
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (!out.empty()) cfg.output_path = out;
        if (!receiver.empty()) cfg.receiver_init = receiver;
        if (restarts > 0) cfg.diamond_restarts = restarts;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    if (cfg.experiment == Experiment::gate_audit) {
        AuditOutcome audit = run_gate_audit();
        for (const std::string& line : audit.lines) std::cout << line << "\n";
        std::cout << audit.checks - audit.failures << "/" << audit.checks
                  << " checks passed\n";
        return audit.failures == 0 ? 0 : 2;
    }

    try {
        SweepResult result = run_sweep(cfg);
        write_sweep(result);
        std::cout << "wrote " << cfg.output_path << " (" << result.rows.size()
                  << " rows)\n";
        return result.exit_code;
    } catch (const std::runtime_error& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_plot(const std::string& csv_path, const std::string& out_path) {
    std::ifstream f(csv_path);
    if (!f) {
        std::cerr << "cannot read " << csv_path << "\n";
        return 1;
    }
    std::string header;
    std::getline(f, header);
    bool both = false;
    std::string line;
    bool saw_weyl = false, saw_fock = false;
    while (std::getline(f, line)) {
        if (line.find(",weyl,") != std::string::npos) saw_weyl = true;
        if (line.find(",fock,") != std::string::npos) saw_fock = true;
    }
    both = saw_weyl && saw_fock;

    std::string name = csv_path;
    size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    std::string label = header.rfind("j_over_sigma,metric", 0) == 0 ? "metric" : "value";
    std::string script = emit_plot_script(name, both, label);

    if (out_path.empty() || out_path == "-") {
        std::cout << script;
    } else {
        std::ofstream o(out_path, std::ios::binary);
        if (!o) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        o << script;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"field-mediated gate sweeps and audits"};
    app.require_subcommand(1);

    std::string config_path, experiment, grid, backend, out, receiver;
    int truncation = 0, restarts = 0;
    std::int64_t seed = -1;

    CLI::App* sweep = app.add_subcommand("sweep", "run a coupling sweep");
    sweep->add_option("--config", config_path, "JSON config file");
    sweep->add_option("--experiment", experiment, "experiment name");
    sweep->add_option("--grid", grid, "start:stop:points (log spaced)");
    sweep->add_option("--backend", backend, "weyl | fock | both");
    sweep->add_option("--truncation", truncation, "Fock levels per mode");
    sweep->add_option("--seed", seed, "RNG seed (overrides config and env)");
    sweep->add_option("--out", out, "output CSV path");
    sweep->add_option("--receiver-init", receiver,
                      "zero|one|plus|minus|plus_y|minus_y");
    sweep->add_option("--restarts", restarts, "diamond optimizer restarts");

    CLI::App* audit = app.add_subcommand("audit", "run the gate truth-table audit");

    std::string plot_csv, plot_out;
    CLI::App* plot = app.add_subcommand("plot", "emit a gnuplot script for a sweep CSV");
    plot->add_option("--csv", plot_csv, "sweep CSV")->required();
    plot->add_option("--out", plot_out, "script path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (sweep->parsed())
        return cmd_sweep(config_path, experiment, grid, backend, truncation, seed,
                         out, receiver, restarts);
    if (audit->parsed()) {
        AuditOutcome a = run_gate_audit();
        for (const std::string& line : a.lines) std::cout << line << "\n";
        std::cout << a.checks - a.failures << "/" << a.checks << " checks passed\n";
        return a.failures == 0 ? 0 : 2;
    }
    if (plot->parsed()) return cmd_plot(plot_csv, plot_out);
    return 1;
}

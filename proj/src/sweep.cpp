#include "udwqc/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

namespace udwqc {

namespace {

constexpr const char* kCodeVersion = "0.1.0";

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

bool is_diamond(Experiment e) {
    return e != Experiment::capacity_qst && e != Experiment::gate_audit;
}

FieldChannelKind channel_of(Experiment e) {
    switch (e) {
        case Experiment::capacity_qst:
        case Experiment::diamond_qst: return FieldChannelKind::qst;
        case Experiment::diamond_cnot_mediated: return FieldChannelKind::cnot_mediated;
        case Experiment::diamond_cnot_two_qubit: return FieldChannelKind::cnot_two_qubit;
        case Experiment::diamond_single_qubit_h: return FieldChannelKind::hadamard;
        case Experiment::diamond_single_qubit_s: return FieldChannelKind::s;
        case Experiment::diamond_single_qubit_t: return FieldChannelKind::t;
        case Experiment::gate_audit: break;
    }
    throw std::invalid_argument("channel_of: not a sweep experiment");
}

double point_metric(const SweepConfig& cfg, const FieldCalibration& cal,
                    FieldBackend backend, const QuantumChannel& reference,
                    std::uint64_t point_seed) {
    const Vector receiver = parse_receiver_init(cfg.receiver_init);
    QuantumChannel field = field_channel(channel_of(cfg.experiment), cal,
                                         receiver, backend, cfg.truncation);
    if (cfg.experiment == Experiment::capacity_qst)
        return capacity_estimate(field, CapacityStrategy::assume_maximizing_default);
    return diamond_distance(field, reference, cfg.diamond_restarts, point_seed)
        .value;
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
    if (name == "capacity_qst") return Experiment::capacity_qst;
    if (name == "diamond_qst") return Experiment::diamond_qst;
    if (name == "diamond_cnot_mediated") return Experiment::diamond_cnot_mediated;
    if (name == "diamond_cnot_two_qubit") return Experiment::diamond_cnot_two_qubit;
    if (name == "diamond_single_qubit_h") return Experiment::diamond_single_qubit_h;
    if (name == "diamond_single_qubit_s") return Experiment::diamond_single_qubit_s;
    if (name == "diamond_single_qubit_t") return Experiment::diamond_single_qubit_t;
    if (name == "gate_audit") return Experiment::gate_audit;
    throw std::invalid_argument("unknown experiment: " + name);
}

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::capacity_qst: return "capacity_qst";
        case Experiment::diamond_qst: return "diamond_qst";
        case Experiment::diamond_cnot_mediated: return "diamond_cnot_mediated";
        case Experiment::diamond_cnot_two_qubit: return "diamond_cnot_two_qubit";
        case Experiment::diamond_single_qubit_h: return "diamond_single_qubit_h";
        case Experiment::diamond_single_qubit_s: return "diamond_single_qubit_s";
        case Experiment::diamond_single_qubit_t: return "diamond_single_qubit_t";
        case Experiment::gate_audit: return "gate_audit";
    }
    return "?";
}

std::vector<double> SweepConfig::default_grid() {
    std::vector<double> g;
    const double lo = std::log(0.2), hi = std::log(6.0);
    for (int i = 0; i < 30; ++i)
        g.push_back(std::exp(lo + (hi - lo) * i / 29.0));
    return g;
}

void SweepConfig::validate() const {
    if (coupling_grid.empty())
        throw std::invalid_argument("SweepConfig: empty coupling grid");
    for (size_t i = 0; i < coupling_grid.size(); ++i) {
        if (coupling_grid[i] <= 0)
            throw std::invalid_argument("SweepConfig: grid values must be positive");
        if (i > 0 && coupling_grid[i] <= coupling_grid[i - 1])
            throw std::invalid_argument("SweepConfig: grid must be strictly increasing");
    }
    if (backend != SweepBackend::weyl && truncation < 16)
        throw std::invalid_argument("SweepConfig: truncation must be >= 16 for fock");
    if (sigma <= 0 || v <= 0)
        throw std::invalid_argument("SweepConfig: sigma, v must be positive");
    parse_receiver_init(receiver_init);
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
    SweepConfig cfg;
    cfg.experiment = parse_experiment(j.at("experiment").get<std::string>());
    if (j.contains("coupling_grid"))
        cfg.coupling_grid = j.at("coupling_grid").get<std::vector<double>>();
    else
        cfg.coupling_grid = default_grid();
    cfg.sigma = j.value("sigma", 1.0);
    cfg.v = j.value("v", 1.0);
    cfg.mass_reg = j.value("mass_reg", 1e-3 * cfg.v / cfg.sigma);
    cfg.truncation = j.value("truncation", 60);
    std::string b = j.value("backend", std::string("weyl"));
    cfg.backend = b == "weyl"   ? SweepBackend::weyl
                  : b == "fock" ? SweepBackend::fock
                  : b == "both" ? SweepBackend::both
                                : throw std::invalid_argument("unknown backend: " + b);
    cfg.receiver_init = j.value("receiver_init", std::string("plus_y"));
    cfg.seed = j.value("seed", std::uint64_t(12345));
    cfg.output_path = j.value("output_path", std::string("sweep.csv"));
    cfg.diamond_restarts = j.value("diamond_restarts", 16);
    cfg.regulator_check = j.value("regulator_check", true);
    cfg.validate();
    return cfg;
}

nlohmann::json SweepConfig::to_json() const {
    return nlohmann::json{
        {"experiment", to_string(experiment)},
        {"coupling_grid", coupling_grid},
        {"sigma", sigma},
        {"v", v},
        {"mass_reg", mass_reg},
        {"truncation", truncation},
        {"backend", backend == SweepBackend::weyl   ? "weyl"
                    : backend == SweepBackend::fock ? "fock"
                                                    : "both"},
        {"receiver_init", receiver_init},
        {"seed", seed},
        {"output_path", output_path},
        {"diamond_restarts", diamond_restarts},
        {"regulator_check", regulator_check}};
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    if (cfg.experiment == Experiment::gate_audit)
        throw std::invalid_argument("run_sweep: gate_audit is not a sweep");

    SweepResult result;
    result.config = cfg;

    SmearingSpec base = SmearingSpec::make(cfg.sigma, cfg.v);
    base.mass_reg = cfg.mass_reg;

    const Vector receiver = parse_receiver_init(cfg.receiver_init);
    QuantumChannel reference =
        reference_channel(reference_for(channel_of(cfg.experiment)), receiver);

    std::vector<FieldBackend> backends;
    if (cfg.backend == SweepBackend::weyl) backends = {FieldBackend::weyl};
    else if (cfg.backend == SweepBackend::fock) backends = {FieldBackend::fock};
    else backends = {FieldBackend::weyl, FieldBackend::fock};

    struct PointOut {
        FieldCalibration cal;
        std::vector<double> metric;  // per backend
        double regulator_rel_diff = -1.0;
    };

    auto eval_point = [&](int idx) {
        PointOut out;
        const double x = cfg.coupling_grid[idx];
        const double j = x * cfg.sigma;
        out.cal = calibrate_gamma(base, j);
        const std::uint64_t pseed = splitmix64(cfg.seed ^ (0x1000 + idx));
        for (FieldBackend b : backends)
            out.metric.push_back(point_metric(cfg, out.cal, b, reference, pseed));

        if (cfg.regulator_check && is_diamond(cfg.experiment) && x >= 3.0) {
            SmearingSpec half = base;
            half.mass_reg = 0.5 * base.mass_reg;
            FieldCalibration cal2 = calibrate_gamma(half, j);
            double m2 = point_metric(cfg, cal2, backends[0], reference, pseed);
            double scale = std::max({std::abs(out.metric[0]), std::abs(m2), 1e-12});
            out.regulator_rel_diff = std::abs(out.metric[0] - m2) / scale;
        }
        return out;
    };

    std::vector<std::future<PointOut>> futures;
    for (int idx = 0; idx < static_cast<int>(cfg.coupling_grid.size()); ++idx)
        futures.push_back(std::async(std::launch::async, eval_point, idx));

    nlohmann::json regulator_log = nlohmann::json::array();
    bool disagreement = false;
    for (int idx = 0; idx < static_cast<int>(cfg.coupling_grid.size()); ++idx) {
        PointOut out = futures[idx].get();
        double agreement = backends.size() == 2
                               ? std::abs(out.metric[0] - out.metric[1])
                               : 0.0;
        if (backends.size() == 2 && agreement > 1e-4) disagreement = true;
        for (size_t b = 0; b < backends.size(); ++b) {
            SweepRow row;
            row.j_over_sigma = cfg.coupling_grid[idx];
            row.metric = out.metric[b];
            row.backend = backends[b] == FieldBackend::weyl ? "weyl" : "fock";
            row.s_phi = out.cal.s_phi;
            row.s_pi = out.cal.s_pi;
            row.gamma = out.cal.gamma;
            row.restriction_ratio = out.cal.restriction_ratio();
            row.agreement = agreement;
            result.rows.push_back(std::move(row));
        }
        if (out.regulator_rel_diff >= 0.0)
            regulator_log.push_back({{"j_over_sigma", cfg.coupling_grid[idx]},
                                     {"rel_diff", out.regulator_rel_diff}});
    }

    result.manifest = nlohmann::json{
        {"config", cfg.to_json()},
        {"seed", cfg.seed},
        {"code_version", kCodeVersion},
        {"quadrature_residual", quadrature_residual(base)},
        {"regulator_robustness", regulator_log},
        {"timestamp", iso_timestamp()},
        {"rows", result.rows.size()}};
    result.exit_code = disagreement ? 3 : 0;
    return result;
}

std::string render_csv(const SweepResult& result) {
    const bool both = result.config.backend == SweepBackend::both;
    std::string out =
        "j_over_sigma,metric,backend,s_phi,s_pi,gamma,restriction_ratio";
    if (both) out += ",agreement";
    out += "\n";
    for (const SweepRow& r : result.rows) {
        out += fmt(r.j_over_sigma) + "," + fmt(r.metric) + "," + r.backend + "," +
               fmt(r.s_phi) + "," + fmt(r.s_pi) + "," + fmt(r.gamma) + "," +
               fmt(r.restriction_ratio);
        if (both) out += "," + fmt(r.agreement);
        out += "\n";
    }
    return out;
}

void write_sweep(const SweepResult& result) {
    {
        std::ofstream f(result.config.output_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + result.config.output_path);
        f << render_csv(result);
    }
    {
        std::ofstream f(result.config.output_path + ".manifest.json");
        if (!f)
            throw std::runtime_error("cannot write manifest for " +
                                     result.config.output_path);
        f << result.manifest.dump(2) << "\n";
    }
}

std::string emit_plot_script(const std::string& csv_name, bool both_backends,
                             const std::string& metric_label) {
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set logscale x\n"
      << "set xlabel 'J/sigma'\n"
      << "set ylabel '" << metric_label << "'\n"
      << "set key top right\n";
    if (both_backends) {
        s << "plot '< awk -F, \"NR>1 && $3==\\\"weyl\\\"\" " << csv_name
          << "' using 1:2 with linespoints title 'weyl', \\\n"
          << "     '< awk -F, \"NR>1 && $3==\\\"fock\\\"\" " << csv_name
          << "' using 1:2 with linespoints title 'fock'\n";
    } else {
        s << "plot '" << csv_name << "' every ::1 using 1:2 with linespoints title '"
          << metric_label << "'\n";
    }
    return s.str();
}

std::string emit_plot_script(const SweepResult& result) {
    std::string name = result.config.output_path;
    size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    const std::string label = result.config.experiment == Experiment::capacity_qst
                                  ? "capacity (bits)"
                                  : "diamond distance";
    return emit_plot_script(name, result.config.backend == SweepBackend::both,
                            label);
}

AuditOutcome run_gate_audit() {
    AuditOutcome out;
    auto check = [&](const std::string& what, bool ok) {
        ++out.checks;
        if (!ok) ++out.failures;
        out.lines.push_back(std::string(ok ? "[PASS] " : "[FAIL] ") + what);
    };
    auto close = [](const Vector& a, const Vector& b) {
        return (a - b).cwiseAbs().maxCoeff() < 1e-12;
    };

    const Matrix x = pauli(Axis::x), y = pauli(Axis::y), z = pauli(Axis::z);
    check("NOT truth table: X|0>=|1>, X|1>=|0>",
          close(x * ket0(), ket1()) && close(x * ket1(), ket0()));
    check("Z truth table: Z|0>=|0>, Z|1>=-|1>",
          close(z * ket0(), ket0()) && close(z * ket1(), Vector(-ket1())));
    check("Y action: Y|0>=i|1>, Y|1>=-i|0>",
          close(y * ket0(), Vector(Complex(0, 1) * ket1())) &&
              close(y * ket1(), Vector(Complex(0, -1) * ket0())));
    for (Axis ax : {Axis::x, Axis::y, Axis::z}) {
        Matrix sum = Projector{ax, +1}.matrix() - Projector{ax, -1}.matrix();
        check("pauli equals signed projector sum", max_abs(sum - pauli(ax)) < 1e-15);
        Matrix comp = Projector{ax, +1}.matrix() + Projector{ax, -1}.matrix();
        check("projector completeness", max_abs(comp - Matrix::Identity(2, 2)) < 1e-15);
    }

    const Matrix c12 = cnot(ControlBasis::z_control).entries;
    const Matrix c21 = cnot(ControlBasis::x_control).entries;
    auto bits = [&](int a, int b) { return Vector(kron(a ? ket1() : ket0(),
                                                       b ? ket1() : ket0())); };
    bool t4 = true;
    const int cnot12_expect[4] = {0b00, 0b01, 0b11, 0b10};
    for (int in = 0; in < 4; ++in)
        t4 = t4 && close(c12 * bits(in >> 1, in & 1),
                         bits(cnot12_expect[in] >> 1, cnot12_expect[in] & 1));
    check("controlled-NOT truth table (z-control)", t4);
    bool t5 = true;
    const int cnot21_expect[4] = {0b00, 0b11, 0b10, 0b01};
    for (int in = 0; in < 4; ++in)
        t5 = t5 && close(c21 * bits(in >> 1, in & 1),
                         bits(cnot21_expect[in] >> 1, cnot21_expect[in] & 1));
    check("controlled-NOT truth table (x-control)", t5);

    Matrix qst_expect(4, 4);
    qst_expect << 1, 0, 0, 0,
                  0, 0, 1, 0,
                  0, 0, 0, 1,
                  0, 1, 0, 0;
    check("transfer matrix", max_abs(qst_gate().entries - qst_expect) < 1e-12);

    Matrix swap_expect(4, 4);
    swap_expect << 1, 0, 0, 0,
                   0, 0, 1, 0,
                   0, 1, 0, 0,
                   0, 0, 0, 1;
    check("swap equals three alternating controlled-NOTs",
          max_abs(swap_gate().entries - swap_expect) < 1e-12 &&
              max_abs(swap_gate().entries - c21 * c12 * c21) < 1e-12);

    for (const Operator& u : {cnot(ControlBasis::z_control),
                              cnot(ControlBasis::x_control), qst_gate(),
                              swap_gate()})
        check("projector-sum unitarity U U^dag = I",
              max_abs(u.entries * u.entries.adjoint() - Matrix::Identity(4, 4)) <
                  1e-12);

    const Matrix h = single_qubit_gate(Gate1Q::h);
    const Matrix s = single_qubit_gate(Gate1Q::s);
    const Matrix t = single_qubit_gate(Gate1Q::t);
    check("Hadamard truth table",
          close(h * ket0(), ket_plus()) && close(h * ket1(), ket_minus()));
    check("H^2 = I, S^2 = Z, T^2 = S",
          max_abs(h * h - Matrix::Identity(2, 2)) < 1e-12 &&
              max_abs(s * s - z) < 1e-12 && max_abs(t * t - s) < 1e-12);

    return out;
}

}  // namespace udwqc

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run a single criterion with --criterion N.

#include "udwqc/metrics.hpp"
#include "udwqc/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace udwqc;

namespace {

struct Criterion {
    int id;
    std::string label;
    bool (*run)(std::string& detail);
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

FieldCalibration cal_for_sphi(double s_phi) {
    SmearingSpec spec = SmearingSpec::make(1.0);
    FieldCalibration probe = spectral_moments(spec, 1.0, 0.0);
    return calibrate_gamma(spec, std::sqrt(s_phi / probe.s_phi));
}

// --- 1: gate audit -----------------------------------------------------------

bool criterion1(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    AuditOutcome audit = run_gate_audit();
    double dt = seconds_since(t0);
    std::ostringstream os;
    os << audit.checks - audit.failures << "/" << audit.checks
       << " audit checks, " << dt << " s";
    detail = os.str();
    return audit.failures == 0 && dt < 1.0;
}

// --- 2: constraint suite -----------------------------------------------------

bool criterion2(std::string& detail) {
    SmearingSpec spec = SmearingSpec::make(1.0);
    double worst_gamma = 0.0;
    for (double x : SweepConfig::default_grid()) {
        FieldCalibration cal = calibrate_gamma(spec, x);
        worst_gamma = std::max(worst_gamma, std::abs(cal.gamma - M_PI / 4.0));
    }
    bool gamma_ok = worst_gamma < 1e-9;

    // Momentum-kick eigenphase residual vs the restriction ratio, checked on
    // the truncated backend across a decade of ratios.
    bool monotone = true;
    double prev = 2.0;
    std::vector<double> ratios;
    for (double j : {2.0, 2.9, 4.3, 6.3}) {  // ratio spans > 10x
        FieldCalibration cal = calibrate_gamma(spec, j);
        FockBackend bk = FockBackend::build(cal, 60);
        Vector plus = bk.apply_word(DisplacementWord::phi(1.0), bk.vacuum());
        Vector kicked = bk.apply_word(DisplacementWord::pi(1.0), plus);
        double res = (kicked - std::exp(Complex(0, cal.gamma)) * plus).norm();
        if (res >= prev) monotone = false;
        prev = res;
        ratios.push_back(cal.restriction_ratio());
    }
    bool decade = ratios.back() > 10.0 * ratios.front();

    std::ostringstream os;
    os << "max |gamma - pi/4| = " << worst_gamma
       << ", residual monotone over ratios " << ratios.front() << ".."
       << ratios.back();
    detail = os.str();
    return gamma_ok && monotone && decade;
}

// --- 3: backend equivalence --------------------------------------------------

bool criterion3(std::string& detail) {
    const std::vector<FieldChannelKind> kinds = {
        FieldChannelKind::qst,      FieldChannelKind::cnot_mediated,
        FieldChannelKind::cnot_two_qubit, FieldChannelKind::hadamard,
        FieldChannelKind::s,        FieldChannelKind::t};
    double worst = 0.0;
    for (double s_phi : {0.25, 1.0, 4.0}) {
        FieldCalibration cal = cal_for_sphi(s_phi);
        for (FieldChannelKind kind : kinds) {
            QuantumChannel w = field_channel(kind, cal, ket_plus_y(),
                                             FieldBackend::weyl);
            QuantumChannel f = field_channel(kind, cal, ket_plus_y(),
                                             FieldBackend::fock, 60);
            worst = std::max(worst, max_abs(w.choi.entries - f.choi.entries));
        }
    }
    std::ostringstream os;
    os << "max Choi disagreement " << worst;
    detail = os.str();
    return worst < 1e-6;
}

// --- 4: CPTP suite -----------------------------------------------------------

bool criterion4(std::string& detail) {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> uj(0.3, 2.2);
    std::uniform_int_distribution<int> ukind(0, 5);
    std::uniform_int_distribution<int> urec(0, 5);
    std::uniform_int_distribution<int> ubk(0, 3);
    const char* recs[] = {"zero", "one", "plus", "minus", "plus_y", "minus_y"};

    double worst_tp = 0.0, worst_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        FieldCalibration cal =
            calibrate_gamma(SmearingSpec::make(1.0), uj(rng));
        FieldChannelKind kind = static_cast<FieldChannelKind>(ukind(rng));
        Vector receiver = parse_receiver_init(recs[urec(rng)]);
        FieldBackend backend =
            ubk(rng) == 0 ? FieldBackend::fock : FieldBackend::weyl;
        QuantumChannel ch = field_channel(kind, cal, receiver, backend, 60);

        Matrix acc = Matrix::Zero(ch.in_dim, ch.in_dim);
        for (const Matrix& k : ch.kraus) acc += k.adjoint() * k;
        worst_tp = std::max(
            worst_tp, max_abs(acc - Matrix::Identity(ch.in_dim, ch.in_dim)));
        worst_eig = std::min(worst_eig, ch.min_choi_eig);
        worst_eig = std::min(worst_eig, 0.0);
    }
    std::ostringstream os;
    os << "worst sum K^dag K defect " << worst_tp << ", min Choi eigenvalue "
       << worst_eig;
    detail = os.str();
    return worst_tp < 1e-8 && worst_eig > -1e-8;
}

// --- 5/6: sweep trends -------------------------------------------------------

SweepResult run_default(Experiment e, std::uint64_t seed) {
    SweepConfig cfg;
    cfg.experiment = e;
    cfg.coupling_grid = SweepConfig::default_grid();
    cfg.seed = seed;
    cfg.regulator_check = false;
    cfg.diamond_restarts = 16;
    cfg.output_path = "/tmp/udwqc_acceptance_" + to_string(e) + ".csv";
    return run_sweep(cfg);
}

bool criterion5(std::string& detail) {
    SweepResult r = run_default(Experiment::diamond_qst, 2024);
    const size_t n = r.rows.size();
    bool monotone = true;
    for (size_t i = n / 3 + 1; i < n; ++i)
        if (r.rows[i].metric > r.rows[i - 1].metric + 1e-12) monotone = false;
    double final_value = r.rows.back().metric;
    std::ostringstream os;
    os << "final diamond distance " << final_value
       << (monotone ? ", non-increasing tail" : ", tail not monotone");
    detail = os.str();
    return monotone && final_value < 0.05;
}

bool criterion6(std::string& detail) {
    SweepResult r = run_default(Experiment::capacity_qst, 2024);
    bool rising = true;
    for (size_t i = 1; i < r.rows.size(); ++i)
        if (r.rows[i].metric < r.rows[i - 1].metric - 1e-3) rising = false;
    double final_value = r.rows.back().metric;
    std::ostringstream os;
    os << "final capacity " << final_value << " bits"
       << (rising ? ", monotone rise" : ", not monotone");
    detail = os.str();
    return rising && final_value > 0.95;
}

// --- 7: universal-set analogues ---------------------------------------------

bool criterion7(std::string& detail) {
    std::ostringstream os;
    bool ok = true;

    for (Experiment e : {Experiment::diamond_cnot_mediated,
                         Experiment::diamond_cnot_two_qubit,
                         Experiment::diamond_single_qubit_h,
                         Experiment::diamond_single_qubit_s,
                         Experiment::diamond_single_qubit_t}) {
        SweepResult r = run_default(e, 2024);
        double final_value = r.rows.back().metric;
        bool pass = final_value < 0.05;
        ok = ok && pass;
        os << to_string(e) << " -> " << final_value << (pass ? " ok" : " FAIL")
           << "; ";
    }

    // T o T tracks the S channel at the strong-coupling end.
    FieldCalibration cal = calibrate_gamma(SmearingSpec::make(1.0), 6.0);
    QuantumChannel t_ch = field_channel(FieldChannelKind::t, cal, ket_plus_y(),
                                        FieldBackend::weyl);
    QuantumChannel s_ch = field_channel(FieldChannelKind::s, cal, ket_plus_y(),
                                        FieldBackend::weyl);
    double tt_vs_s = diamond_distance(compose(t_ch, t_ch), s_ch, 16, 2024).value;
    os << "T.T vs S -> " << tt_vs_s;
    ok = ok && tt_vs_s < 0.1;

    detail = os.str();
    return ok;
}

// --- 8: oracle cross-check ---------------------------------------------------

QuantumChannel random_channel8(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    const int d = 4;
    Matrix h(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h(i, j) = Complex(g(rng), g(rng));
    h = 0.5 * (h + h.adjoint().eval());
    Matrix u = mat_exp_hermitian_generator(h, Complex(0, 1));
    Matrix choi = Matrix::Zero(4, 4);
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            Matrix out = Matrix::Zero(2, 2);
            for (int e = 0; e < 2; ++e)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        out(i, j) += u(i * 2 + e, m * 2) *
                                     std::conj(u(j * 2 + e, n * 2));
            choi.block(m * 2, n * 2, 2, 2) = out;
        }
    return channel_from_choi(choi, 2, 2);
}

bool criterion8(std::string& detail) {
    QuantumChannel id = identity_channel(2);
    Matrix x = pauli(Axis::x);
    Matrix choi_x = Matrix::Zero(4, 4);
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            Matrix e = Matrix::Zero(2, 2);
            e(m, n) = 1.0;
            choi_x.block(m * 2, n * 2, 2, 2) = x * e * x;
        }
    QuantumChannel xconj = channel_from_choi(choi_x, 2, 2);

    double id_vs_x = diamond_distance(id, xconj, 16, 1).value;
    double oracle_id_x = diamond_lower_bound_oracle(id, xconj, 100000, 1);
    bool endpoint_ok = std::abs(id_vs_x - 2.0) < 0.01 && oracle_id_x >= 1.99;

    double worst_gap = 0.0;
    bool bound_ok = true;
    for (int pair = 0; pair < 20; ++pair) {
        QuantumChannel a = random_channel8(1000 + 2 * pair);
        QuantumChannel b = random_channel8(1001 + 2 * pair);
        double opt = diamond_distance(a, b, 16, 50 + pair).value;
        double low = diamond_lower_bound_oracle(a, b, 100000, 50 + pair);
        if (low > opt + 1e-6) bound_ok = false;
        worst_gap = std::max(worst_gap, opt - low);
    }
    std::ostringstream os;
    os << "identity-vs-X " << id_vs_x << ", worst optimizer-oracle gap "
       << worst_gap;
    detail = os.str();
    return endpoint_ok && bound_ok && worst_gap < 0.02;
}

// --- 9: determinism through the CLI -----------------------------------------

bool criterion9(std::string& detail) {
    const char* cli = std::getenv("UDWQC_CLI");
    if (!cli) {
        detail = "UDWQC_CLI not set";
        return false;
    }
    auto run_once = [&](const std::string& out) {
        std::string cmd = std::string(cli) +
                          " sweep --experiment diamond_qst --grid 0.5:4.0:4"
                          " --seed 31415 --restarts 6 --out " + out +
                          " > /dev/null";
        return std::system(cmd.c_str());
    };
    const std::string a = "/tmp/udwqc_det_a.csv", b = "/tmp/udwqc_det_b.csv";
    if (run_once(a) != 0 || run_once(b) != 0) {
        detail = "sweep invocation failed";
        return false;
    }
    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    };
    std::string ca = slurp(a), cb = slurp(b);
    detail = ca == cb ? "byte-identical CSVs" : "CSVs differ";
    return !ca.empty() && ca == cb;
}

const Criterion criteria[] = {
    {1, "gate audit (truth tables, transfer matrix, unitarity identity)", criterion1},
    {2, "constraint suite (gamma calibration, eigenphase residual)", criterion2},
    {3, "backend equivalence (Weyl vs Fock Choi, six channels)", criterion3},
    {4, "CPTP suite (100 randomized configurations)", criterion4},
    {5, "transfer-channel diamond trend (decay to < 0.05)", criterion5},
    {6, "transfer-channel capacity trend (rise to > 0.95)", criterion6},
    {7, "universal-set analogues (CNOT forms, H, S, T, T.T vs S)", criterion7},
    {8, "diamond oracle cross-check", criterion8},
    {9, "sweep determinism (byte-identical CSVs)", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double dt = seconds_since(t0);
        std::printf("[%s] criterion %d: %s (%.1fs) -- %s\n", ok ? "PASS" : "FAIL",
                    c.id, c.label.c_str(), dt, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

#include "udwqc/channels.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <random>

using namespace udwqc;

namespace {

FieldCalibration cal_at(double j, double sigma = 1.0) {
    return calibrate_gamma(SmearingSpec::make(sigma), j);
}

bool cptp_ok(const QuantumChannel& ch, double tol = 1e-8) {
    Matrix acc = Matrix::Zero(ch.in_dim, ch.in_dim);
    for (const Matrix& k : ch.kraus) acc += k.adjoint() * k;
    if (max_abs(acc - Matrix::Identity(ch.in_dim, ch.in_dim)) > tol) return false;
    return ch.min_choi_eig >= -tol && ch.tp_defect <= tol;
}

double choi_distance(const QuantumChannel& a, const QuantumChannel& b) {
    return max_abs(a.choi.entries - b.choi.entries);
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("identity channel and empty circuits") {
    QuantumChannel id = identity_channel(2);
    CHECK(cptp_ok(id));
    Operator rho(0.5 * (Matrix::Identity(2, 2) + 0.3 * pauli(Axis::x)), {2});
    CHECK(max_abs(apply(id, rho).entries - rho.entries) < 1e-12);

    QubitCircuit empty;
    empty.n_qubits = 1;
    empty.inputs = {0};
    empty.outputs = {0};
    CHECK(choi_distance(build_qubit_channel(empty), id) < 1e-12);

    FieldCircuit fempty;
    fempty.n_qubits = 1;
    fempty.inputs = {0};
    fempty.outputs = {0};
    FieldCalibration cal = cal_at(1.0);
    CHECK(choi_distance(build_field_channel(fempty, cal, FieldBackend::weyl), id) <
          1e-12);
}

TEST_CASE("kraus and choi agree on a basis of inputs") {
    QuantumChannel ch = reference_channel(ReferenceKind::cnot_two_qubit,
                                          ket_plus_y());
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            Matrix e = Matrix::Zero(2, 2);
            e(m, n) = 1.0;
            Matrix via_kraus = Matrix::Zero(2, 2);
            for (const Matrix& k : ch.kraus) via_kraus += k * e * k.adjoint();
            CHECK(max_abs(via_kraus - apply_via_choi(ch, e)) < 1e-8);
        }
}

TEST_CASE("three mediated swaps act as a unitary swap") {
    QubitCircuit c;
    c.n_qubits = 3;
    c.steps = {{swap_gate(), {0, 1}}, {swap_gate(), {1, 2}}, {swap_gate(), {0, 1}}};
    c.fixed_inits = {{1, ket_plus()}};

    SUBCASE("A to B restriction is the identity channel") {
        c.inputs = {0};
        c.outputs = {2};
        c.fixed_inits[2] = ket0();
        QuantumChannel ch = build_qubit_channel(c);
        CHECK(cptp_ok(ch));
        CHECK(choi_distance(ch, identity_channel(2)) < 1e-12);
    }
    SUBCASE("joint (A,B) map is unitary: Choi rank 1") {
        c.inputs = {0, 2};
        c.outputs = {0, 2};
        QuantumChannel ch = build_qubit_channel(c);
        HermEig eig = herm_eig(ch.choi.entries);
        int rank = 0;
        for (Eigen::Index i = 0; i < eig.values.size(); ++i)
            if (eig.values(i) > 1e-8) ++rank;
        CHECK(rank == 1);
    }
}

TEST_CASE("reference channels") {
    QuantumChannel qst = reference_channel(ReferenceKind::qst_qubit, ket_plus_y());
    CHECK(cptp_ok(qst));
    Vector psi = 0.28 * ket0() + Complex(0.643, 0.713) * ket1();
    psi.normalize();
    Operator in = Operator::pure(psi, {2});
    CHECK(max_abs(apply(qst, in).entries - in.entries) < 1e-10);

    QuantumChannel swap = reference_channel(ReferenceKind::swap_qubit, ket_plus_y());
    QuantumChannel twice = compose(swap, swap);
    CHECK(choi_distance(twice, identity_channel(2)) < 1e-10);

    QuantumChannel had = reference_channel(ReferenceKind::hadamard_local, ket0());
    Matrix h = single_qubit_gate(Gate1Q::h);
    Vector omega = (kron(ket0(), ket0()) + kron(ket1(), ket1())) / std::sqrt(2.0);
    Matrix expect = 2.0 * kron(Matrix(Matrix::Identity(2, 2)), h) *
                    (omega * omega.adjoint()) *
                    kron(Matrix(Matrix::Identity(2, 2)), h).adjoint();
    CHECK(max_abs(had.choi.entries - expect) < 1e-12);

    CHECK_THROWS_AS(parse_reference_kind("nope"), std::invalid_argument);
}

TEST_CASE("apply on simple comparators") {
    // Fully dephasing channel built from projector Kraus operators.
    Matrix choi = Matrix::Zero(4, 4);
    choi(0, 0) = 1.0;  // |0><0| (x) |0><0|
    choi(3, 3) = 1.0;
    QuantumChannel dephase = channel_from_choi(choi, 2, 2);
    Operator plus = Operator::pure(ket_plus(), {2});
    CHECK(max_abs(apply(dephase, plus).entries - 0.5 * Matrix::Identity(2, 2)) <
          1e-12);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix gm(2, 2);
    for (int i = 0; i < 4; ++i) gm(i / 2, i % 2) = Complex(g(rng), g(rng));
    Operator rho(gm * gm.adjoint() / (gm * gm.adjoint()).trace().real(), {2});
    QuantumChannel field = field_channel(FieldChannelKind::qst, cal_at(0.8),
                                         ket_plus_y(), FieldBackend::weyl);
    CHECK(std::abs(apply(field, rho).trace() - Complex(1, 0)) < 1e-10);
}

TEST_CASE("field channels are CPTP on both backends") {
    FieldCalibration cal = cal_at(0.5);
    for (FieldChannelKind kind :
         {FieldChannelKind::qst, FieldChannelKind::cnot_mediated,
          FieldChannelKind::cnot_two_qubit, FieldChannelKind::hadamard,
          FieldChannelKind::s, FieldChannelKind::t}) {
        QuantumChannel w = field_channel(kind, cal, ket_plus_y(),
                                         FieldBackend::weyl);
        CHECK(cptp_ok(w));
        QuantumChannel f = field_channel(kind, cal, ket_plus_y(),
                                         FieldBackend::fock, 40);
        CHECK(cptp_ok(f, 1e-6));
        CHECK(choi_distance(w, f) < 1e-6);
    }
}

TEST_CASE("phase-gate channels match their closed form") {
    // The z-controlled momentum kick dephases by e^{-2 s_pi} and rotates the
    // coherence by e^{-2 i gamma}; with gamma = pi/4 that is the S gate up to
    // the vacuum spread.
    FieldCalibration cal = cal_at(1.3);
    QuantumChannel s_ch = field_channel(FieldChannelKind::s, cal, ket0(),
                                        FieldBackend::weyl);
    Matrix e01 = Matrix::Zero(2, 2);
    e01(0, 1) = 1.0;
    Matrix out = apply_via_choi(s_ch, e01);
    Complex expect = std::exp(Complex(0, -2.0 * cal.gamma)) *
                     std::exp(-2.0 * cal.s_pi);
    CHECK(std::abs(out(0, 1) - expect) < 1e-10);
    Matrix e00 = Matrix::Zero(2, 2);
    e00(0, 0) = 1.0;
    CHECK(max_abs(apply_via_choi(s_ch, e00) - e00) < 1e-10);

    QuantumChannel t_ch = field_channel(FieldChannelKind::t, cal, ket0(),
                                        FieldBackend::weyl);
    Matrix out_t = apply_via_choi(t_ch, e01);
    Complex expect_t = std::exp(Complex(0, -cal.gamma)) *
                       std::exp(-0.5 * cal.s_pi);
    CHECK(std::abs(out_t(0, 1) - expect_t) < 1e-10);
}

TEST_CASE("mediated flip channel diagonal closed form") {
    // Diagonal inputs map to the quarter-rotated receiver with an x-basis
    // dephasing factor e^{-2 s_pi} between the momentum branches.
    FieldCalibration cal = cal_at(1.1);
    QuantumChannel ch = field_channel(FieldChannelKind::cnot_mediated, cal,
                                      ket_plus_y(), FieldBackend::weyl);
    Matrix e00 = Matrix::Zero(2, 2);
    e00(0, 0) = 1.0;
    Matrix out = apply_via_choi(ch, e00);

    const Vector r = ket_plus_y();
    const double damp = std::exp(-2.0 * cal.s_pi);
    Matrix expect = Matrix::Zero(2, 2);
    for (int mu : {+1, -1})
        for (int nu : {+1, -1}) {
            Matrix pm = Projector{Axis::x, mu}.matrix();
            Matrix pn = Projector{Axis::x, nu}.matrix();
            Complex phase = std::exp(Complex(0, 0.5 * (mu - nu) * 2.0 * cal.gamma));
            double weight = mu == nu ? 1.0 : damp;
            expect += phase * weight * pm * (r * r.adjoint()) * pn;
        }
    CHECK(max_abs(out - expect) < 1e-10);

    // Input coherences are wiped exactly (the sender trace projects in z).
    Matrix e01 = Matrix::Zero(2, 2);
    e01(0, 1) = 1.0;
    CHECK(max_abs(apply_via_choi(ch, e01)) < 1e-12);
}

TEST_CASE("composition walks toward the identity at strong coupling") {
    // Forward QST composed with itself (A->B then B->A shape) approaches the
    // identity channel as the coupling grows.
    QuantumChannel weak = field_channel(FieldChannelKind::qst, cal_at(0.8),
                                        ket_plus_y(), FieldBackend::weyl);
    QuantumChannel strong = field_channel(FieldChannelKind::qst, cal_at(3.0),
                                          ket_plus_y(), FieldBackend::weyl);
    double d_weak = choi_distance(compose(weak, weak), identity_channel(2));
    double d_strong = choi_distance(compose(strong, strong), identity_channel(2));
    CHECK(d_strong < d_weak);
}

TEST_CASE("choi export") {
    QuantumChannel ch = reference_channel(ReferenceKind::s_local, ket0());
    nlohmann::json j = choi_to_json(ch);
    CHECK(j.at("in_dim") == 2);
    CHECK(j.at("real").size() == 4);
    CHECK(j.at("imag")[0].size() == 4);
}

TEST_CASE("name parsing") {
    CHECK(parse_field_channel_kind("qst") == FieldChannelKind::qst);
    CHECK(to_string(FieldChannelKind::cnot_two_qubit) == "cnot_two_qubit");
    CHECK_THROWS_AS(parse_field_channel_kind("bogus"), std::invalid_argument);
    CHECK(parse_receiver_init("plus_y").size() == 2);
    CHECK_THROWS_AS(parse_receiver_init("bogus"), std::invalid_argument);
}

}  // TEST_SUITE

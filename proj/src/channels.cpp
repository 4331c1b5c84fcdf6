#include "udwqc/channels.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace udwqc {

namespace {

Vector basis_ket(int dim, int i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

// Multi-index digits of `index` over `count` qubit factors, MSB first.
std::vector<int> qubit_digits(int index, int count) {
    std::vector<int> d(count, 0);
    for (int f = count - 1; f >= 0; --f) {
        d[f] = index & 1;
        index >>= 1;
    }
    return d;
}

struct Branch {
    std::vector<Matrix> qubit_ops;          // per factor, matrix order
    std::vector<DisplacementWord> applied;  // application order
};

std::vector<Branch> expand_branches(const FieldCircuit& c) {
    std::vector<Branch> branches(1);
    branches[0].qubit_ops.assign(c.n_qubits, Matrix::Identity(2, 2));
    for (const UdwStep& step : c.steps) {
        std::vector<Branch> next;
        next.reserve(branches.size() * step.gate.terms.size());
        for (const Branch& b : branches)
            for (const GateTerm& t : step.gate.terms) {
                Branch nb = b;
                nb.qubit_ops[step.qubit] =
                    projector_word(t.projectors) * nb.qubit_ops[step.qubit];
                nb.applied.push_back(t.word);
                next.push_back(std::move(nb));
            }
        branches = std::move(next);
    }
    return branches;
}

// Matrix-ordered word list of a branch, mediator preparation appended on the
// right (it acts first).
std::vector<DisplacementWord> matrix_ordered(const Branch& b, MediatorInit init) {
    std::vector<DisplacementWord> words(b.applied.rbegin(), b.applied.rend());
    if (init == MediatorInit::plus_alpha)
        words.push_back(DisplacementWord::phi(+1));
    return words;
}

Matrix branch_gram_weyl(const std::vector<Branch>& branches,
                        const FieldCalibration& cal, MediatorInit init) {
    const int nb = static_cast<int>(branches.size());
    Matrix g(nb, nb);
    for (int i = 0; i < nb; ++i) {
        const auto wi = matrix_ordered(branches[i], init);
        for (int j = 0; j < nb; ++j) {
            const auto wj = matrix_ordered(branches[j], init);
            std::vector<DisplacementWord> full;
            for (auto it = wj.rbegin(); it != wj.rend(); ++it)
                full.push_back(it->adjoint());
            full.insert(full.end(), wi.begin(), wi.end());
            g(j, i) = vacuum_expectation(weyl_reduce(full, cal), cal);
        }
    }
    return g;
}

Matrix branch_gram_fock(const std::vector<Branch>& branches,
                        const FieldCalibration& cal, MediatorInit init,
                        int truncation) {
    FockBackend bk = FockBackend::build(cal, truncation);
    Vector start = bk.vacuum();
    if (init == MediatorInit::plus_alpha)
        start = bk.apply_word(DisplacementWord::phi(+1), start);

    const int nb = static_cast<int>(branches.size());
    std::vector<Vector> states(nb);
    for (int i = 0; i < nb; ++i) {
        Vector v = start;
        for (const DisplacementWord& w : branches[i].applied)
            v = bk.apply_word(w, v);
        states[i] = std::move(v);
    }
    Matrix g(nb, nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) g(j, i) = states[j].dot(states[i]);
    return g;
}

int pow2(int n) { return 1 << n; }

}  // namespace

QuantumChannel channel_from_choi(const Matrix& choi, int in_dim, int out_dim,
                                 double leak_tol) {
    if (choi.rows() != in_dim * out_dim)
        throw std::invalid_argument("channel_from_choi: dimension mismatch");
    QuantumChannel ch;
    ch.in_dim = in_dim;
    ch.out_dim = out_dim;
    ch.choi = Operator(0.5 * (choi + choi.adjoint()), {in_dim, out_dim});

    Operator tp = partial_trace(ch.choi, {0});
    ch.tp_defect = max_abs(tp.entries - Matrix::Identity(in_dim, in_dim));
    if (ch.tp_defect > leak_tol)
        throw std::runtime_error("channel_from_choi: trace preservation defect " +
                                 std::to_string(ch.tp_defect));

    HermEig eig = herm_eig(ch.choi.entries, 1e-6);
    ch.min_choi_eig = eig.values.minCoeff();
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        if (eig.values(k) <= 1e-10) continue;
        Matrix kr(out_dim, in_dim);
        for (int i = 0; i < in_dim; ++i)
            for (int o = 0; o < out_dim; ++o)
                kr(o, i) = std::sqrt(eig.values(k)) * eig.vectors(i * out_dim + o, k);
        ch.kraus.push_back(std::move(kr));
    }
    return ch;
}

Operator apply(const QuantumChannel& ch, const Operator& rho) {
    if (rho.dim() != ch.in_dim)
        throw std::invalid_argument("apply: dimension mismatch");
    Matrix out = Matrix::Zero(ch.out_dim, ch.out_dim);
    for (const Matrix& k : ch.kraus) out += k * rho.entries * k.adjoint();
    return Operator(std::move(out), {ch.out_dim});
}

Matrix apply_via_choi(const QuantumChannel& ch, const Matrix& rho) {
    Matrix out = Matrix::Zero(ch.out_dim, ch.out_dim);
    for (int i = 0; i < ch.in_dim; ++i)
        for (int j = 0; j < ch.in_dim; ++j)
            out += rho(i, j) * ch.choi.entries.block(i * ch.out_dim,
                                                     j * ch.out_dim,
                                                     ch.out_dim, ch.out_dim);
    return out;
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
    if (first.out_dim != second.in_dim)
        throw std::invalid_argument("compose: dimension mismatch");
    const int din = first.in_dim, dout = second.out_dim;
    Matrix choi = Matrix::Zero(din * dout, din * dout);
    for (int m = 0; m < din; ++m)
        for (int n = 0; n < din; ++n) {
            Matrix e = Matrix::Zero(din, din);
            e(m, n) = 1.0;
            Matrix mid = Matrix::Zero(first.out_dim, first.out_dim);
            for (const Matrix& k : first.kraus) mid += k * e * k.adjoint();
            Matrix out = Matrix::Zero(dout, dout);
            for (const Matrix& k : second.kraus) out += k * mid * k.adjoint();
            choi.block(m * dout, n * dout, dout, dout) = out;
        }
    return channel_from_choi(choi, din, dout);
}

QuantumChannel identity_channel(int dim) {
    Matrix choi = Matrix::Zero(dim * dim, dim * dim);
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) choi(m * dim + m, n * dim + n) = 1.0;
    return channel_from_choi(choi, dim, dim);
}

QuantumChannel build_field_channel(const FieldCircuit& c,
                                   const FieldCalibration& cal,
                                   FieldBackend backend, int truncation) {
    for (const UdwStep& s : c.steps)
        if (s.qubit < 0 || s.qubit >= c.n_qubits)
            throw std::invalid_argument("build_field_channel: bad qubit index");

    const std::vector<Branch> branches = expand_branches(c);
    const Matrix gram = backend == FieldBackend::weyl
                            ? branch_gram_weyl(branches, cal, c.mediator)
                            : branch_gram_fock(branches, cal, c.mediator,
                                               truncation);

    const int nb = static_cast<int>(branches.size());
    const int n_in = static_cast<int>(c.inputs.size());
    const int n_out = static_cast<int>(c.outputs.size());
    const int d_in = pow2(n_in), d_out = pow2(n_out);
    const std::vector<int> qdims(c.n_qubits, 2);

    // Full qubit-space operator per branch.
    std::vector<Matrix> ops(nb);
    for (int b = 0; b < nb; ++b) {
        Matrix m = Matrix::Identity(1, 1);
        for (int f = 0; f < c.n_qubits; ++f) m = kron(m, branches[b].qubit_ops[f]);
        ops[b] = std::move(m);
    }

    Matrix choi = Matrix::Zero(d_in * d_out, d_in * d_out);
    for (int mi = 0; mi < d_in; ++mi)
        for (int ni = 0; ni < d_in; ++ni) {
            const auto mdig = qubit_digits(mi, n_in);
            const auto ndig = qubit_digits(ni, n_in);
            Matrix rho0 = Matrix::Identity(1, 1);
            for (int f = 0; f < c.n_qubits; ++f) {
                auto slot = std::find(c.inputs.begin(), c.inputs.end(), f);
                Matrix mf;
                if (slot != c.inputs.end()) {
                    int k = static_cast<int>(slot - c.inputs.begin());
                    mf = basis_ket(2, mdig[k]) * basis_ket(2, ndig[k]).adjoint();
                } else {
                    auto it = c.fixed_inits.find(f);
                    if (it == c.fixed_inits.end())
                        throw std::invalid_argument(
                            "build_field_channel: missing init for factor " +
                            std::to_string(f));
                    Vector v = it->second.normalized();
                    mf = v * v.adjoint();
                }
                rho0 = kron(rho0, mf);
            }

            Matrix out_block = Matrix::Zero(d_out, d_out);
            for (int b = 0; b < nb; ++b)
                for (int bb = 0; bb < nb; ++bb) {
                    Complex g = gram(bb, b);
                    if (std::abs(g) < 1e-300) continue;
                    Operator sand(ops[b] * rho0 * ops[bb].adjoint(), qdims);
                    out_block += g * partial_trace(sand, c.outputs).entries;
                }
            choi.block(mi * d_out, ni * d_out, d_out, d_out) = out_block;
        }
    return channel_from_choi(choi, d_in, d_out);
}

QuantumChannel build_qubit_channel(const QubitCircuit& c) {
    const std::vector<int> qdims(c.n_qubits, 2);
    const int dim = pow2(c.n_qubits);
    Matrix u = Matrix::Identity(dim, dim);
    for (const QubitStep& s : c.steps)
        u = embed(s.u.entries, s.factors, qdims) * u;

    const int n_in = static_cast<int>(c.inputs.size());
    const int d_in = pow2(n_in);
    const int d_out = pow2(static_cast<int>(c.outputs.size()));

    Matrix choi = Matrix::Zero(d_in * d_out, d_in * d_out);
    for (int mi = 0; mi < d_in; ++mi)
        for (int ni = 0; ni < d_in; ++ni) {
            const auto mdig = qubit_digits(mi, n_in);
            const auto ndig = qubit_digits(ni, n_in);
            Matrix rho0 = Matrix::Identity(1, 1);
            for (int f = 0; f < c.n_qubits; ++f) {
                auto slot = std::find(c.inputs.begin(), c.inputs.end(), f);
                Matrix mf;
                if (slot != c.inputs.end()) {
                    int k = static_cast<int>(slot - c.inputs.begin());
                    mf = basis_ket(2, mdig[k]) * basis_ket(2, ndig[k]).adjoint();
                } else {
                    auto it = c.fixed_inits.find(f);
                    if (it == c.fixed_inits.end())
                        throw std::invalid_argument(
                            "build_qubit_channel: missing init for factor " +
                            std::to_string(f));
                    Vector v = it->second.normalized();
                    mf = v * v.adjoint();
                }
                rho0 = kron(rho0, mf);
            }
            Operator sand(u * rho0 * u.adjoint(), qdims);
            choi.block(mi * d_out, ni * d_out, d_out, d_out) =
                partial_trace(sand, c.outputs).entries;
        }
    return channel_from_choi(choi, d_in, d_out);
}

QuantumChannel reference_channel(ReferenceKind kind, const Vector& receiver_init) {
    QubitCircuit c;
    switch (kind) {
        case ReferenceKind::qst_qubit:
            c.n_qubits = 3;
            c.steps = {{qst_gate(), {0, 1}}, {qst_gate(), {1, 2}}};
            c.inputs = {0};
            c.outputs = {2};
            c.fixed_inits = {{1, ket0()}, {2, ket0()}};
            break;
        case ReferenceKind::swap_qubit:
            c.n_qubits = 3;
            c.steps = {{swap_gate(), {0, 1}},
                       {swap_gate(), {1, 2}},
                       {swap_gate(), {0, 1}}};
            c.inputs = {0};
            c.outputs = {2};
            c.fixed_inits = {{1, ket0()}, {2, ket0()}};
            break;
        case ReferenceKind::cnot_qubit_mediated:
            // Mediator prepared in the flipped state: the momentum kick of
            // the field-mediated circuit maps the +y receiver onto |1>, so
            // this comparator shares its strong-coupling limit.
            c.n_qubits = 3;
            c.steps = {{cnot(ControlBasis::z_control), {0, 1}},
                       {qst_gate(), {1, 2}}};
            c.inputs = {0};
            c.outputs = {2};
            c.fixed_inits = {{1, ket1()}, {2, ket0()}};
            break;
        case ReferenceKind::cnot_two_qubit:
            c.n_qubits = 2;
            c.steps = {{cnot(ControlBasis::z_control), {0, 1}}};
            c.inputs = {0};
            c.outputs = {1};
            c.fixed_inits = {{1, receiver_init}};
            break;
        case ReferenceKind::hadamard_local:
        case ReferenceKind::s_local:
        case ReferenceKind::t_local: {
            Gate1Q g = kind == ReferenceKind::hadamard_local ? Gate1Q::h
                       : kind == ReferenceKind::s_local      ? Gate1Q::s
                                                             : Gate1Q::t;
            c.n_qubits = 1;
            c.steps = {{Operator(single_qubit_gate(g), {2}), {0}}};
            c.inputs = {0};
            c.outputs = {0};
            break;
        }
    }
    return build_qubit_channel(c);
}

QuantumChannel field_channel(FieldChannelKind kind, const FieldCalibration& cal,
                             const Vector& receiver_init, FieldBackend backend,
                             int truncation) {
    FieldCircuit c;
    switch (kind) {
        case FieldChannelKind::qst:
            // Encode on A, decode on B with the adjoint: the decoder is the
            // same operator read with its systems reversed.
            c.n_qubits = 2;
            c.steps = {{u_qst(cal), 0}, {u_qst(cal).adjoint(), 1}};
            c.inputs = {0};
            c.outputs = {1};
            c.fixed_inits = {{1, receiver_init}};
            break;
        case FieldChannelKind::cnot_mediated:
            c.n_qubits = 2;
            c.steps = {{u_zphi(cal), 0}, {u_xpi(cal), 1}};
            c.inputs = {0};
            c.outputs = {1};
            c.fixed_inits = {{1, receiver_init}};
            break;
        case FieldChannelKind::cnot_two_qubit:
            c.n_qubits = 2;
            c.steps = {{u_zpix_phi(cal), 0}, {u_qst(cal).adjoint(), 1}};
            c.inputs = {0};
            c.outputs = {1};
            c.fixed_inits = {{1, receiver_init}};
            break;
        case FieldChannelKind::hadamard:
            c.n_qubits = 1;
            c.steps = {{u_zphi(cal), 0}, {u_hadamard(cal), 0}};
            c.inputs = {0};
            c.outputs = {0};
            break;
        case FieldChannelKind::s:
            c.n_qubits = 1;
            c.steps = {{u_s(cal), 0}};
            c.inputs = {0};
            c.outputs = {0};
            break;
        case FieldChannelKind::t:
            c.n_qubits = 1;
            c.steps = {{u_t(cal), 0}};
            c.inputs = {0};
            c.outputs = {0};
            break;
    }
    return build_field_channel(c, cal, backend, truncation);
}

ReferenceKind reference_for(FieldChannelKind kind) {
    switch (kind) {
        case FieldChannelKind::qst: return ReferenceKind::qst_qubit;
        case FieldChannelKind::cnot_mediated: return ReferenceKind::cnot_qubit_mediated;
        case FieldChannelKind::cnot_two_qubit: return ReferenceKind::cnot_two_qubit;
        case FieldChannelKind::hadamard: return ReferenceKind::hadamard_local;
        case FieldChannelKind::s: return ReferenceKind::s_local;
        case FieldChannelKind::t: return ReferenceKind::t_local;
    }
    throw std::invalid_argument("reference_for: bad kind");
}

ReferenceKind parse_reference_kind(const std::string& name) {
    if (name == "qst_qubit") return ReferenceKind::qst_qubit;
    if (name == "swap_qubit") return ReferenceKind::swap_qubit;
    if (name == "cnot_qubit_mediated") return ReferenceKind::cnot_qubit_mediated;
    if (name == "cnot_two_qubit") return ReferenceKind::cnot_two_qubit;
    if (name == "hadamard_local") return ReferenceKind::hadamard_local;
    if (name == "s_local") return ReferenceKind::s_local;
    if (name == "t_local") return ReferenceKind::t_local;
    throw std::invalid_argument("unknown reference channel: " + name);
}

FieldChannelKind parse_field_channel_kind(const std::string& name) {
    if (name == "qst") return FieldChannelKind::qst;
    if (name == "cnot_mediated") return FieldChannelKind::cnot_mediated;
    if (name == "cnot_two_qubit") return FieldChannelKind::cnot_two_qubit;
    if (name == "hadamard") return FieldChannelKind::hadamard;
    if (name == "s") return FieldChannelKind::s;
    if (name == "t") return FieldChannelKind::t;
    throw std::invalid_argument("unknown field channel: " + name);
}

std::string to_string(FieldChannelKind kind) {
    switch (kind) {
        case FieldChannelKind::qst: return "qst";
        case FieldChannelKind::cnot_mediated: return "cnot_mediated";
        case FieldChannelKind::cnot_two_qubit: return "cnot_two_qubit";
        case FieldChannelKind::hadamard: return "hadamard";
        case FieldChannelKind::s: return "s";
        case FieldChannelKind::t: return "t";
    }
    return "?";
}

Vector parse_receiver_init(const std::string& name) {
    if (name == "zero") return ket0();
    if (name == "one") return ket1();
    if (name == "plus") return ket_plus();
    if (name == "minus") return ket_minus();
    if (name == "plus_y") return ket_plus_y();
    if (name == "minus_y") return ket_minus_y();
    throw std::invalid_argument("unknown receiver init: " + name);
}

nlohmann::json choi_to_json(const QuantumChannel& ch) {
    const Matrix& m = ch.choi.entries;
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return nlohmann::json{{"in_dim", ch.in_dim},
                          {"out_dim", ch.out_dim},
                          {"real", re},
                          {"imag", im}};
}

}  // namespace udwqc

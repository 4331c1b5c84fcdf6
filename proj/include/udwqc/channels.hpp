// channels.hpp — CPTP channels built from gate circuits plus environment
// tracing, for both field-mediated and qubit-mediated circuits.

#pragma once

#include "udwqc/fock.hpp"
#include "udwqc/linalg.hpp"
#include "udwqc/qubit_gates.hpp"
#include "udwqc/udw_gates.hpp"

#include <map>
#include <optional>
#include <string>

namespace udwqc {

/// Completely positive trace-preserving map stored as both a Kraus list and
/// a Choi matrix (reference factor first, unnormalized: Tr_out C = I_in).
struct QuantumChannel {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<Matrix> kraus;
    Operator choi;  // factor_dims {in_dim, out_dim}

    double tp_defect = 0.0;       // max|sum K^dag K - I|
    double min_choi_eig = 0.0;
};

/// Builds the channel from its Choi matrix; Kraus operators come from the
/// Choi eigendecomposition (eigenvalues > 1e-10 kept). Throws if the trace
/// preservation defect exceeds `leak_tol`.
QuantumChannel channel_from_choi(const Matrix& choi, int in_dim, int out_dim,
                                 double leak_tol = 1e-6);

Operator apply(const QuantumChannel& ch, const Operator& rho);
/// Applies the map through the Choi matrix instead of the Kraus list.
Matrix apply_via_choi(const QuantumChannel& ch, const Matrix& rho);
/// second o first.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
QuantumChannel identity_channel(int dim);

enum class MediatorInit { vacuum, plus_alpha };
enum class FieldBackend { weyl, fock };

/// One UDW gate application: `gate` acts on the listed qubit factor and the
/// (implicit, shared) field mediator. Steps are listed in application order.
struct UdwStep {
    ControlledDisplacementGate gate;
    int qubit = 0;
};

struct FieldCircuit {
    int n_qubits = 1;
    std::vector<UdwStep> steps;
    std::vector<int> inputs;             // qubit factors carrying the input
    std::vector<int> outputs;            // qubit factors kept
    std::map<int, Vector> fixed_inits;   // initial kets for the other qubits
    MediatorInit mediator = MediatorInit::vacuum;
};

/// rho_in -> Tr_{field + non-output qubits}[ U (rho_in (x) inits (x)
/// mediator) U^dag ]. The Weyl path evaluates field factors exactly through
/// vacuum expectations of reduced words; the Fock path uses truncated
/// matrices (`truncation` levels per mode).
QuantumChannel build_field_channel(const FieldCircuit& circuit,
                                   const FieldCalibration& cal,
                                   FieldBackend backend, int truncation = 60);

/// One qubit-space unitary applied to the listed factors.
struct QubitStep {
    Operator u;
    std::vector<int> factors;
};

struct QubitCircuit {
    int n_qubits = 1;
    std::vector<QubitStep> steps;  // application order
    std::vector<int> inputs;
    std::vector<int> outputs;
    std::map<int, Vector> fixed_inits;
};

QuantumChannel build_qubit_channel(const QubitCircuit& circuit);

enum class ReferenceKind {
    qst_qubit,
    swap_qubit,
    cnot_qubit_mediated,
    cnot_two_qubit,
    hadamard_local,
    s_local,
    t_local,
};

enum class FieldChannelKind { qst, cnot_mediated, cnot_two_qubit, hadamard, s, t };

/// Ideal comparator channels built from the qubit gate set.
QuantumChannel reference_channel(ReferenceKind kind,
                                 const Vector& receiver_init);

/// The field-mediated channels. `receiver_init` is the receiving qubit's
/// initial state where one exists (ignored for the local A->A channels).
QuantumChannel field_channel(FieldChannelKind kind, const FieldCalibration& cal,
                             const Vector& receiver_init,
                             FieldBackend backend, int truncation = 60);

/// The comparator paired with each field channel in the sweeps.
ReferenceKind reference_for(FieldChannelKind kind);

ReferenceKind parse_reference_kind(const std::string& name);
FieldChannelKind parse_field_channel_kind(const std::string& name);
std::string to_string(FieldChannelKind kind);

/// Named receiver states: zero, one, plus, minus, plus_y, minus_y.
Vector parse_receiver_init(const std::string& name);

nlohmann::json choi_to_json(const QuantumChannel& ch);

}  // namespace udwqc

// qubit_gates.hpp — projector/Pauli algebra and the canonical two-qubit
// composites used as ideal references.

#pragma once

#include "udwqc/linalg.hpp"

namespace udwqc {

enum class Axis { x, y, z };

/// Rank-one spectral projector of a Pauli operator.
struct Projector {
    Axis axis;
    int sign;  // +1 or -1

    Matrix matrix() const;
};

Matrix pauli(Axis axis);

/// Left-to-right matrix product of the listed projectors.
Matrix projector_word(const std::vector<Projector>& word);

enum class ControlBasis { z_control, x_control };

/// z_control: sum_mu P^mu_z (x) X^{(1-mu)/2}  — control on factor 0.
/// x_control: sum_mu P^mu_x (x) Z^{(1-mu)/2}  — the reverse-control form.
Operator cnot(ControlBasis basis);

/// State transfer built from two CNOT gates (z-control applied first, then
/// the x-control form). Permutation matrix with rows
/// (1,0,0,0),(0,0,1,0),(0,0,0,1),(0,1,0,0).
Operator qst_gate();

/// Three alternating CNOT gates; exchanges |01> and |10>.
Operator swap_gate();

enum class Gate1Q { h, s, t };

Matrix single_qubit_gate(Gate1Q g);

Vector ket0();
Vector ket1();
Vector ket_plus();
Vector ket_minus();
Vector ket_plus_y();   // (|0> + i|1>)/sqrt(2)
Vector ket_minus_y();  // (|0> - i|1>)/sqrt(2)

}  // namespace udwqc

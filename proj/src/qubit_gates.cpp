#include "udwqc/qubit_gates.hpp"

#include <cmath>

namespace udwqc {

namespace {
const Complex I1(0.0, 1.0);
}

Matrix pauli(Axis axis) {
    Matrix m(2, 2);
    switch (axis) {
        case Axis::x: m << 0, 1, 1, 0; break;
        case Axis::y: m << 0, -I1, I1, 0; break;
        case Axis::z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Matrix Projector::matrix() const {
    return 0.5 * (Matrix::Identity(2, 2) + double(sign) * pauli(axis));
}

Matrix projector_word(const std::vector<Projector>& word) {
    Matrix m = Matrix::Identity(2, 2);
    for (const Projector& p : word) m = m * p.matrix();
    return m;
}

Operator cnot(ControlBasis basis) {
    Matrix m = Matrix::Zero(4, 4);
    for (int mu : {+1, -1}) {
        Projector p{basis == ControlBasis::z_control ? Axis::z : Axis::x, mu};
        Matrix flip = (mu == +1)
                          ? Matrix(Matrix::Identity(2, 2))
                          : pauli(basis == ControlBasis::z_control ? Axis::x
                                                                   : Axis::z);
        m += kron(p.matrix(), flip);
    }
    return Operator(std::move(m), {2, 2});
}

Operator qst_gate() {
    // Circuit order: CNOT(1,2) first, then CNOT(2,1); as matrices the later
    // gate multiplies from the left.
    Matrix m = cnot(ControlBasis::x_control).entries *
               cnot(ControlBasis::z_control).entries;
    return Operator(std::move(m), {2, 2});
}

Operator swap_gate() {
    Matrix m = cnot(ControlBasis::x_control).entries *
               cnot(ControlBasis::z_control).entries *
               cnot(ControlBasis::x_control).entries;
    return Operator(std::move(m), {2, 2});
}

Matrix single_qubit_gate(Gate1Q g) {
    Matrix m(2, 2);
    switch (g) {
        case Gate1Q::h:
            m << 1, 1, 1, -1;
            m /= std::sqrt(2.0);
            break;
        case Gate1Q::s: m << 1, 0, 0, I1; break;
        case Gate1Q::t: m << 1, 0, 0, std::exp(I1 * (M_PI / 4.0)); break;
    }
    return m;
}

Vector ket0() { Vector v(2); v << 1, 0; return v; }
Vector ket1() { Vector v(2); v << 0, 1; return v; }
Vector ket_plus() { Vector v(2); v << 1, 1; return v / std::sqrt(2.0); }
Vector ket_minus() { Vector v(2); v << 1, -1; return v / std::sqrt(2.0); }
Vector ket_plus_y() { Vector v(2); v << 1, I1; return v / std::sqrt(2.0); }
Vector ket_minus_y() { Vector v(2); v << 1, -I1; return v / std::sqrt(2.0); }

}  // namespace udwqc

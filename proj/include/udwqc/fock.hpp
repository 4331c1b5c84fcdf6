// fock.hpp — truncated two-mode Fock oracle for the smeared field sector.
//
// The two smeared observables live in the span of two mode profiles; after
// Gram-Schmidt the field sector is at most two bosonic modes:
//   phi(F) = u1 * x1
//   Pi(F)  = w1 * p1 + w2 * p2
// with u1 = sqrt(s_phi), w1 = (gamma/2)/u1, w2 = sqrt(s_pi - w1^2), so that
// [phi(F), Pi(F)] = i*gamma away from the truncation boundary.

#pragma once

#include "udwqc/field.hpp"
#include "udwqc/linalg.hpp"

namespace udwqc {

struct FockBackend {
    FieldCalibration cal;
    int truncation = 0;  // levels per mode
    int n_modes = 1;
    double u1 = 0.0, w1 = 0.0, w2 = 0.0;
    Matrix x1, p1, x2, p2;  // single-mode quadratures, truncation x truncation

    static FockBackend build(const FieldCalibration& cal, int truncation);

    int field_dim() const;
    Vector vacuum() const;

    // Materialized observables on the full field space. Quadratic cost in
    // field_dim; intended for moderate truncations.
    Matrix phi_op() const;
    Matrix pi_op() const;

    /// Per-mode unitary factors of the word (overall scalar folded into the
    /// first factor). Throws if the displacement needs more levels than the
    /// truncation supports.
    std::vector<Matrix> word_factors(const DisplacementWord& w) const;

    /// kron of the word factors (moderate truncations only).
    Matrix word_matrix(const DisplacementWord& w) const;

    Vector apply_word(const DisplacementWord& w, const Vector& state) const;

    /// <a| w |b> evaluated with truncated matrices.
    Complex matrix_element(const Vector& a, const DisplacementWord& w,
                           const Vector& b) const;

    void check_word_amplitude(const DisplacementWord& w) const;
};

/// Smallest truncation that keeps the displacement tails of words with
/// coefficient magnitude up to max_coeff below ~1e-7.
int fock_required_truncation(double s_phi, double s_pi, double max_coeff);

}  // namespace udwqc

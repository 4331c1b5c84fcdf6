// udw_gates.hpp — controlled-displacement unitaries in a structured,
// backend-independent form: a sum of (qubit projector word) x (field
// displacement word) terms.

#pragma once

#include "udwqc/field.hpp"
#include "udwqc/fock.hpp"
#include "udwqc/qubit_gates.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace udwqc {

struct GateTerm {
    std::vector<Projector> projectors;  // matrix order, leftmost first
    DisplacementWord word;
};

struct ControlledDisplacementGate {
    std::string name;
    std::vector<GateTerm> terms;

    /// Sum over terms of (projector word)^dag x (word)^dag; projector word
    /// order reverses.
    ControlledDisplacementGate adjoint() const;

    /// Dense unitary on qubit (x) field for the given Fock backend. Cost is
    /// quadratic in the field dimension; moderate truncations only.
    Matrix materialize(const FockBackend& bk) const;

    /// Exact identity check over sign tuples: every pair of distinct terms
    /// shares a layer with equal axis and opposite sign.
    bool terms_mutually_orthogonal() const;

    nlohmann::json schedule() const;
};

// Gate constructors. Words are stored in Weyl normal form, so construction
// needs the calibration (the reduction phases carry gamma).

/// sum_{mu,mu'} P^mu_x P^mu'_z (x) e^{i mu Pi} e^{i mu' phi}.
ControlledDisplacementGate u_qst(const FieldCalibration& cal);
/// sum_mu P^mu_z (x) e^{i mu phi}.
ControlledDisplacementGate u_zphi(const FieldCalibration& cal);
/// sum_mu P^mu_x (x) e^{i mu Pi}.
ControlledDisplacementGate u_xpi(const FieldCalibration& cal);
/// e^{-i Pi} sum_{mu,mu'} P^mu_z P^mu'_x (x) e^{i mu Pi} e^{i mu' phi}.
ControlledDisplacementGate u_zpix_phi(const FieldCalibration& cal);
/// sum_mu P^mu_x (x) e^{-i mu phi}.
ControlledDisplacementGate u_hadamard(const FieldCalibration& cal);
/// sum_mu P^mu_z (x) e^{(1-mu) i Pi} e^{i phi}.
ControlledDisplacementGate u_s(const FieldCalibration& cal);
/// sum_mu P^mu_z (x) e^{(1-mu)/2 i Pi} e^{i phi}.
ControlledDisplacementGate u_t(const FieldCalibration& cal);

/// Coherent-state projector and flip operators on the Fock field space,
/// both as literal outer products of the non-orthogonal |+a>,|-a> pair and
/// as idealized versions built on their symmetric (Loewdin) orthogonalization.
struct CoherentOps {
    Vector plus_alpha, minus_alpha;     // field-space kets
    Vector e_plus, e_minus;             // Loewdin-orthonormalized pair
    double overlap = 0.0;               // Re<+a|-a>
    Matrix p_plus, p_minus;             // literal projectors
    Matrix z_alpha, x_alpha;            // literal flip/phase operators
    Matrix p_half_plus, p_half_minus;   // the pi/2 combinations
    Matrix z_alpha_ideal, x_alpha_ideal;  // Loewdin-orthogonalized versions
    double x_unitarity_defect = 0.0;    // max|X X^dag - P_span| on the span
    double z_unitarity_defect = 0.0;
};

CoherentOps coherent_projector_ops(const FieldCalibration& cal,
                                   const FockBackend& bk);

enum class SwapVariant { vacuum_init, plus_alpha_init };

/// The three-factor simplified SWAP sequence on qubit (x) field, using the
/// idealized coherent flip operators when `idealized` is set. Factors are
/// returned in application order (first applied first).
std::vector<Matrix> u_swap_simplified(SwapVariant variant,
                                      const FieldCalibration& cal,
                                      const FockBackend& bk, bool idealized);

}  // namespace udwqc

// field.hpp — Gaussian smearing spectra, coupling calibration, and the exact
// Weyl displacement algebra of the two smeared field observables.

#pragma once

#include "udwqc/linalg.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace udwqc {

/// Gaussian smearing profile |F(k)|^2 = exp(-sigma^2 k^2) together with the
/// dispersion omega(k) = sqrt(v^2 k^2 + mass_reg^2) and quadrature controls.
struct SmearingSpec {
    double sigma = 1.0;
    double v = 1.0;
    double mass_reg = 1e-3;  // IR regulator; the massless 1-D moment diverges
    double k_max = 40.0;
    int quad_points = 4001;  // must be odd (Simpson)

    static SmearingSpec make(double sigma, double v = 1.0);
    void validate() const;
    double omega(double k) const;
    double profile_sq(double k) const;  // |F(k)|^2
};

/// Couplings plus the derived spectral moments of the smeared observables:
///   s_phi  = <0|phi(F)^2|0>   = j_phi^2     * I[ |F|^2 / (2 omega) ]
///   s_pi   = <0|Pi(F)^2|0>    = lambda_pi^2 * I[ |F|^2 * omega / 2 ]
///   gamma  = -i<0|[phi(F),Pi(F)]|0> = j_phi*lambda_pi * I[ |F|^2 ]
///   cross_moment = <0|{phi(F),Pi(F)}|0>/2 (vanishes for a real profile)
struct FieldCalibration {
    SmearingSpec spec;
    double j_phi = 0.0;
    double lambda_pi = 0.0;
    double s_phi = 0.0;
    double s_pi = 0.0;
    double gamma = 0.0;
    double cross_moment = 0.0;
    double norm_integral = 0.0;  // I[ |F|^2 ]

    double restriction_ratio() const;  // s_phi^2 / s_pi

    nlohmann::json to_json() const;
    static FieldCalibration from_json(const nlohmann::json& j);
};

/// Deterministic Simpson quadrature of the three spectral moments. Throws
/// std::runtime_error if halving the step changes any moment by more than
/// 1e-6 relative.
FieldCalibration spectral_moments(const SmearingSpec& spec, double j_phi,
                                  double lambda_pi);

/// Solves gamma = gamma_target for lambda_pi at fixed j_phi.
FieldCalibration calibrate_gamma(const SmearingSpec& spec, double j_phi,
                                 double gamma_target = M_PI / 4.0);

/// Largest relative change of any moment when the quadrature step is halved.
double quadrature_residual(const SmearingSpec& spec);

/// |<+alpha|-alpha>| from the displacement algebra: exp(-2 s_phi).
double coherent_overlap(const FieldCalibration& cal);
/// Alternative single-|alpha|^2 normalization convention, exp(-s_phi); both
/// values are reported since both circulate for this inner product.
double coherent_overlap_single_exponent(const FieldCalibration& cal);

/// A scalar multiple of exp(i(c_phi*phi(F) + c_pi*Pi(F))). Products reduce
/// to a unique normal form through the Weyl relation.
struct DisplacementWord {
    Complex c_phi{0.0, 0.0};
    Complex c_pi{0.0, 0.0};
    Complex phase{1.0, 0.0};

    static DisplacementWord identity() { return {}; }
    static DisplacementWord phi(Complex c) { return {c, 0.0, 1.0}; }
    static DisplacementWord pi(Complex c) { return {0.0, c, 1.0}; }

    DisplacementWord adjoint() const;
    bool is_identity(double tol = 1e-12) const;
};

/// Normal form of the matrix product a*b (a is the left factor):
/// exp(A)exp(B) = exp(A+B) exp([A,B]/2) with [phi(F),Pi(F)] = i*gamma.
DisplacementWord weyl_product(const DisplacementWord& a,
                              const DisplacementWord& b,
                              const FieldCalibration& cal);

/// Reduces a matrix-ordered word list (leftmost factor first) to normal form.
DisplacementWord weyl_reduce(const std::vector<DisplacementWord>& words,
                             const FieldCalibration& cal);

/// <0| w |0> = phase * exp(-(c_phi^2 s_phi + c_pi^2 s_pi
///                           + 2 c_phi c_pi cross_moment)/2).
Complex vacuum_expectation(const DisplacementWord& w,
                           const FieldCalibration& cal);

}  // namespace udwqc

#include "udwqc/field.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace udwqc {

SmearingSpec SmearingSpec::make(double sigma, double v) {
    SmearingSpec s;
    s.sigma = sigma;
    s.v = v;
    s.mass_reg = 1e-3 * v / sigma;
    s.k_max = 40.0 / sigma;
    s.quad_points = 4001;
    return s;
}

void SmearingSpec::validate() const {
    if (sigma <= 0 || v <= 0) throw std::invalid_argument("SmearingSpec: sigma, v must be positive");
    if (mass_reg < 0) throw std::invalid_argument("SmearingSpec: mass_reg must be >= 0");
    if (k_max * sigma < 20.0) throw std::invalid_argument("SmearingSpec: k_max*sigma must be >= 20");
    if (quad_points < 5 || quad_points % 2 == 0)
        throw std::invalid_argument("SmearingSpec: quad_points must be odd and >= 5");
}

double SmearingSpec::omega(double k) const {
    return std::sqrt(v * v * k * k + mass_reg * mass_reg);
}

double SmearingSpec::profile_sq(double k) const {
    return std::exp(-sigma * sigma * k * k);
}

namespace {

// Simpson rule for int_{-k_max}^{k_max} f(k) dk with n (odd) points. The
// 1/omega moment has a peak of width mass_reg at k = 0, so the grid is
// uniform in u with k = mass_reg * sinh(u), which flattens that peak while
// keeping the rule deterministic.
template <typename F>
double simpson(const SmearingSpec& spec, int n, F integrand) {
    const double m = spec.mass_reg;
    if (m > 0.0) {
        const double umax = std::asinh(spec.k_max / m);
        const double h = 2.0 * umax / (n - 1);
        auto g = [&](double u) {
            return integrand(m * std::sinh(u)) * m * std::cosh(u);
        };
        double acc = g(-umax) + g(umax);
        for (int i = 1; i < n - 1; ++i)
            acc += g(-umax + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return acc * h / 3.0;
    }
    const double a = -spec.k_max, b = spec.k_max;
    const double h = (b - a) / (n - 1);
    double acc = integrand(a) + integrand(b);
    for (int i = 1; i < n - 1; ++i)
        acc += integrand(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

struct RawMoments {
    double norm;   // I[|F|^2]
    double phi;    // I[|F|^2/(2 omega)]
    double omega;  // I[|F|^2 * omega / 2]
};

RawMoments raw_moments(const SmearingSpec& spec, int n) {
    RawMoments m;
    m.norm = simpson(spec, n, [&](double k) { return spec.profile_sq(k); });
    m.phi = simpson(spec, n,
                    [&](double k) { return spec.profile_sq(k) / (2.0 * spec.omega(k)); });
    m.omega = simpson(spec, n,
                      [&](double k) { return spec.profile_sq(k) * spec.omega(k) / 2.0; });
    return m;
}

double rel_diff(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace

double FieldCalibration::restriction_ratio() const {
    if (s_pi <= 0.0) return std::numeric_limits<double>::infinity();
    return s_phi * s_phi / s_pi;
}

nlohmann::json FieldCalibration::to_json() const {
    return nlohmann::json{{"sigma", spec.sigma},
                          {"v", spec.v},
                          {"mass_reg", spec.mass_reg},
                          {"k_max", spec.k_max},
                          {"j_phi", j_phi},
                          {"lambda_pi", lambda_pi},
                          {"s_phi", s_phi},
                          {"s_pi", s_pi},
                          {"gamma", gamma},
                          {"cross_moment", cross_moment}};
}

FieldCalibration FieldCalibration::from_json(const nlohmann::json& j) {
    SmearingSpec spec;
    spec.sigma = j.at("sigma").get<double>();
    spec.v = j.at("v").get<double>();
    spec.mass_reg = j.at("mass_reg").get<double>();
    spec.k_max = j.at("k_max").get<double>();
    FieldCalibration cal = spectral_moments(spec, j.at("j_phi").get<double>(),
                                            j.at("lambda_pi").get<double>());
    return cal;
}

FieldCalibration spectral_moments(const SmearingSpec& spec, double j_phi,
                                  double lambda_pi) {
    spec.validate();
    RawMoments coarse = raw_moments(spec, spec.quad_points);
    RawMoments fine = raw_moments(spec, 2 * spec.quad_points - 1);
    if (rel_diff(coarse.norm, fine.norm) > 1e-6 ||
        rel_diff(coarse.phi, fine.phi) > 1e-6 ||
        rel_diff(coarse.omega, fine.omega) > 1e-6)
        throw std::runtime_error("spectral_moments: quadrature not converged");

    FieldCalibration cal;
    cal.spec = spec;
    cal.j_phi = j_phi;
    cal.lambda_pi = lambda_pi;
    cal.norm_integral = fine.norm;
    cal.s_phi = j_phi * j_phi * fine.phi;
    cal.s_pi = lambda_pi * lambda_pi * fine.omega;
    cal.gamma = j_phi * lambda_pi * fine.norm;
    // Symmetric part of the phi-Pi mode overlap; identically zero for a real
    // profile, kept as a computed quantity for the characteristic function.
    cal.cross_moment = 0.0;
    return cal;
}

FieldCalibration calibrate_gamma(const SmearingSpec& spec, double j_phi,
                                 double gamma_target) {
    if (j_phi <= 0) throw std::invalid_argument("calibrate_gamma: j_phi must be positive");
    FieldCalibration probe = spectral_moments(spec, j_phi, 0.0);
    if (probe.norm_integral <= 0)
        throw std::runtime_error("calibrate_gamma: zero normalization integral");
    double lambda_pi = gamma_target / (j_phi * probe.norm_integral);
    return spectral_moments(spec, j_phi, lambda_pi);
}

double quadrature_residual(const SmearingSpec& spec) {
    spec.validate();
    RawMoments coarse = raw_moments(spec, spec.quad_points);
    RawMoments fine = raw_moments(spec, 2 * spec.quad_points - 1);
    return std::max({rel_diff(coarse.norm, fine.norm),
                     rel_diff(coarse.phi, fine.phi),
                     rel_diff(coarse.omega, fine.omega)});
}

double coherent_overlap(const FieldCalibration& cal) {
    return std::exp(-2.0 * cal.s_phi);
}

double coherent_overlap_single_exponent(const FieldCalibration& cal) {
    return std::exp(-cal.s_phi);
}

DisplacementWord DisplacementWord::adjoint() const {
    return {-std::conj(c_phi), -std::conj(c_pi), std::conj(phase)};
}

bool DisplacementWord::is_identity(double tol) const {
    return std::abs(c_phi) <= tol && std::abs(c_pi) <= tol &&
           std::abs(phase - Complex(1.0, 0.0)) <= tol;
}

DisplacementWord weyl_product(const DisplacementWord& a,
                              const DisplacementWord& b,
                              const FieldCalibration& cal) {
    // [i(ca phi + da Pi), i(cb phi + db Pi)] = -i gamma (ca db - da cb)
    const Complex comm_half =
        Complex(0.0, -0.5 * cal.gamma) * (a.c_phi * b.c_pi - a.c_pi * b.c_phi);
    DisplacementWord out;
    out.c_phi = a.c_phi + b.c_phi;
    out.c_pi = a.c_pi + b.c_pi;
    out.phase = a.phase * b.phase * std::exp(comm_half);
    return out;
}

DisplacementWord weyl_reduce(const std::vector<DisplacementWord>& words,
                             const FieldCalibration& cal) {
    DisplacementWord acc = DisplacementWord::identity();
    for (const DisplacementWord& w : words) acc = weyl_product(acc, w, cal);
    return acc;
}

Complex vacuum_expectation(const DisplacementWord& w,
                           const FieldCalibration& cal) {
    const Complex second_moment = w.c_phi * w.c_phi * cal.s_phi +
                                  w.c_pi * w.c_pi * cal.s_pi +
                                  2.0 * w.c_phi * w.c_pi * cal.cross_moment;
    return w.phase * std::exp(-0.5 * second_moment);
}

}  // namespace udwqc

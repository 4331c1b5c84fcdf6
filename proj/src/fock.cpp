#include "udwqc/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace udwqc {

namespace {

const Complex I1(0.0, 1.0);

Matrix ladder(int n) {
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(double(k));
    return a;
}

bool effectively_real(Complex c) { return std::abs(c.imag()) < 1e-14; }

// Levels needed so a coherent displacement of mean occupation `occ` has
// negligible tail mass.
double levels_needed(double occ) { return occ + 8.0 * std::sqrt(occ) + 8.0; }

}  // namespace

FockBackend FockBackend::build(const FieldCalibration& cal, int truncation) {
    if (truncation < 2)
        throw std::invalid_argument("FockBackend: truncation must be >= 2");

    FockBackend bk;
    bk.cal = cal;
    bk.truncation = truncation;

    const double tiny = 1e-10;
    bk.u1 = std::sqrt(std::max(cal.s_phi, 0.0));
    if (bk.u1 > tiny) {
        bk.w1 = 0.5 * cal.gamma / bk.u1;
        double w2_sq = cal.s_pi - bk.w1 * bk.w1;
        bk.w2 = w2_sq > 0.0 ? std::sqrt(w2_sq) : 0.0;
    } else {
        // Degenerate case: no phi profile, Pi alone defines the single mode.
        bk.u1 = 0.0;
        bk.w1 = std::sqrt(std::max(cal.s_pi, 0.0));
        bk.w2 = 0.0;
    }
    bk.n_modes = bk.w2 > tiny * std::sqrt(cal.s_pi + 1.0) ? 2 : 1;

    Matrix a = ladder(truncation);
    bk.x1 = a + a.adjoint().eval();
    bk.p1 = I1 * (a.adjoint().eval() - a);
    if (bk.n_modes == 2) {
        bk.x2 = bk.x1;
        bk.p2 = bk.p1;
    }
    return bk;
}

int FockBackend::field_dim() const {
    int d = 1;
    for (int m = 0; m < n_modes; ++m) d *= truncation;
    return d;
}

Vector FockBackend::vacuum() const {
    Vector v = Vector::Zero(field_dim());
    v(0) = 1.0;
    return v;
}

Matrix FockBackend::phi_op() const {
    Matrix m = u1 * x1;
    if (n_modes == 1) return m;
    return kron(m, Matrix(Matrix::Identity(truncation, truncation)));
}

Matrix FockBackend::pi_op() const {
    if (n_modes == 1) return w1 * p1;
    Matrix id = Matrix::Identity(truncation, truncation);
    return kron(Matrix(w1 * p1), id) + kron(id, Matrix(w2 * p2));
}

void FockBackend::check_word_amplitude(const DisplacementWord& w) const {
    const double occ1 = std::norm(w.c_phi) * u1 * u1 + std::norm(w.c_pi) * w1 * w1;
    const double occ2 = std::norm(w.c_pi) * w2 * w2;
    if (levels_needed(occ1) > truncation || levels_needed(occ2) > truncation)
        throw std::runtime_error(
            "FockBackend: truncation too small for requested displacement");
}

std::vector<Matrix> FockBackend::word_factors(const DisplacementWord& w) const {
    check_word_amplitude(w);
    std::vector<Matrix> factors;

    auto exp_of = [&](const Matrix& x, const Matrix& p, Complex cx, Complex cp) {
        if (effectively_real(cx) && effectively_real(cp)) {
            Matrix h = cx.real() * x + cp.real() * p;
            return mat_exp_hermitian_generator(h, I1);
        }
        Matrix g = I1 * (cx * x + cp * p);
        return Matrix(g.exp());
    };

    factors.push_back(w.phase * exp_of(x1, p1, w.c_phi * u1, w.c_pi * w1));
    if (n_modes == 2)
        factors.push_back(exp_of(x2, p2, 0.0, w.c_pi * w2));
    return factors;
}

Matrix FockBackend::word_matrix(const DisplacementWord& w) const {
    auto f = word_factors(w);
    return f.size() == 1 ? f[0] : kron(f[0], f[1]);
}

Vector FockBackend::apply_word(const DisplacementWord& w, const Vector& state) const {
    auto f = word_factors(w);
    if (f.size() == 1) return f[0] * state;
    // state index = i1*T + i2; column-major map puts mode 2 on rows.
    const int t = truncation;
    Eigen::Map<const Matrix> m(state.data(), t, t);
    Matrix out = f[1] * m * f[0].transpose();
    return Eigen::Map<Vector>(out.data(), state.size());
}

Complex FockBackend::matrix_element(const Vector& a, const DisplacementWord& w,
                                    const Vector& b) const {
    return a.dot(apply_word(w, b));
}

int fock_required_truncation(double s_phi, double s_pi, double max_coeff) {
    const double occ = max_coeff * max_coeff * std::max(s_phi, s_pi);
    return static_cast<int>(std::ceil(levels_needed(occ)));
}

}  // namespace udwqc

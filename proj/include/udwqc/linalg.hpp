// linalg.hpp — dense complex operators with tensor-factor bookkeeping.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace udwqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Square complex matrix tagged with the ordered list of tensor-factor
/// dimensions whose product equals the matrix dimension. Factor 0 is the
/// leftmost ket symbol (most significant index).
struct Operator {
    Matrix entries;
    std::vector<int> factor_dims;

    Operator() = default;
    Operator(Matrix m, std::vector<int> dims);

    int dim() const { return static_cast<int>(entries.rows()); }
    Complex trace() const { return entries.trace(); }
    Operator dagger() const { return Operator(entries.adjoint(), factor_dims); }

    static Operator identity(std::vector<int> dims);
    /// |psi><psi| with the given factor split.
    static Operator pure(const Vector& psi, std::vector<int> dims);
};

struct DensityReport {
    double herm_defect = 0.0;   // max |rho - rho^dag|
    double min_eigenvalue = 0.0;
    double trace_defect = 0.0;  // |Tr rho - 1|
    bool ok = false;
};

/// Checks the DensityState invariants (Hermitian within herm_tol, min
/// eigenvalue >= -eig_tol, trace within trace_tol of 1).
DensityReport density_report(const Operator& rho, double herm_tol = 1e-10,
                             double eig_tol = 1e-9, double trace_tol = 1e-10);

Matrix kron(const Matrix& a, const Matrix& b);
Operator kron(const Operator& a, const Operator& b);
Vector kron(const Vector& a, const Vector& b);

/// Traces out every factor not listed in `keep`; kept factors stay in their
/// original order. Total trace is preserved.
Operator partial_trace(const Operator& m, const std::vector<int>& keep);

struct HermEig {
    RealVector values;  // ascending
    Matrix vectors;     // columns
};

/// Eigendecomposition of a Hermitian matrix. Throws std::invalid_argument
/// if the input fails the Hermiticity tolerance.
HermEig herm_eig(const Matrix& h, double herm_tol = 1e-8);

/// exp(scale * h) for Hermitian h via eigendecomposition. Unitary to
/// roundoff when scale is purely imaginary.
Matrix mat_exp_hermitian_generator(const Matrix& h, Complex scale,
                                   double herm_tol = 1e-8);

/// Sum of singular values.
double trace_norm(const Matrix& m);
/// Sum of |eigenvalues|; requires Hermitian input (cheaper than the SVD).
double trace_norm_hermitian(const Matrix& m, double herm_tol = 1e-8);

/// Von Neumann entropy in bits. Eigenvalues below 1e-12 contribute zero.
/// Throws std::invalid_argument for an invalid density operator.
double von_neumann_entropy(const Operator& rho);

double max_abs(const Matrix& m);

/// Embeds `op` (acting on the listed factors, in that order) into the full
/// space described by `dims`, identity elsewhere.
Matrix embed(const Matrix& op, const std::vector<int>& factors,
             const std::vector<int>& dims);

}  // namespace udwqc

#include "udwqc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numeric>

namespace udwqc {

namespace {

int product(const std::vector<int>& dims) {
    int p = 1;
    for (int d : dims) p *= d;
    return p;
}

// Row-major strides for a multi-index over dims.
std::vector<long> strides(const std::vector<int>& dims) {
    std::vector<long> s(dims.size(), 1);
    for (int f = static_cast<int>(dims.size()) - 2; f >= 0; --f)
        s[f] = s[f + 1] * dims[f + 1];
    return s;
}

}  // namespace

Operator::Operator(Matrix m, std::vector<int> dims)
    : entries(std::move(m)), factor_dims(std::move(dims)) {
    if (entries.rows() != entries.cols())
        throw std::invalid_argument("Operator: matrix must be square");
    if (product(factor_dims) != entries.rows())
        throw std::invalid_argument("Operator: factor_dims product != dimension");
}

Operator Operator::identity(std::vector<int> dims) {
    int n = product(dims);
    return Operator(Matrix::Identity(n, n), std::move(dims));
}

Operator Operator::pure(const Vector& psi, std::vector<int> dims) {
    return Operator(psi * psi.adjoint(), std::move(dims));
}

DensityReport density_report(const Operator& rho, double herm_tol,
                             double eig_tol, double trace_tol) {
    DensityReport r;
    r.herm_defect = max_abs(rho.entries - rho.entries.adjoint());
    r.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        Matrix(0.5 * (rho.entries + rho.entries.adjoint())),
        Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.ok = r.herm_defect <= herm_tol && r.min_eigenvalue >= -eig_tol &&
           r.trace_defect <= trace_tol;
    return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

Operator kron(const Operator& a, const Operator& b) {
    std::vector<int> dims = a.factor_dims;
    dims.insert(dims.end(), b.factor_dims.begin(), b.factor_dims.end());
    return Operator(kron(a.entries, b.entries), std::move(dims));
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

Operator partial_trace(const Operator& m, const std::vector<int>& keep) {
    const auto& dims = m.factor_dims;
    const int nf = static_cast<int>(dims.size());
    for (int f : keep)
        if (f < 0 || f >= nf)
            throw std::out_of_range("partial_trace: factor index out of range");

    std::vector<bool> kept(nf, false);
    for (int f : keep) kept[f] = true;

    std::vector<int> keep_sorted;
    std::vector<int> traced;
    for (int f = 0; f < nf; ++f) (kept[f] ? keep_sorted : traced).push_back(f);

    std::vector<int> keep_dims, trace_dims;
    for (int f : keep_sorted) keep_dims.push_back(dims[f]);
    for (int f : traced) trace_dims.push_back(dims[f]);

    const auto full_stride = strides(dims);
    const int dk = product(keep_dims);
    const int dt = product(trace_dims);

    // Flat offsets of each kept/traced multi-index into the full index.
    auto offsets = [&](const std::vector<int>& factors,
                       const std::vector<int>& sub_dims, int count) {
        std::vector<long> off(count, 0);
        std::vector<int> idx(factors.size(), 0);
        for (int i = 0; i < count; ++i) {
            long o = 0;
            for (size_t f = 0; f < factors.size(); ++f)
                o += idx[f] * full_stride[factors[f]];
            off[i] = o;
            for (int f = static_cast<int>(factors.size()) - 1; f >= 0; --f) {
                if (++idx[f] < sub_dims[f]) break;
                idx[f] = 0;
            }
        }
        return off;
    };
    const auto keep_off = offsets(keep_sorted, keep_dims, dk);
    const auto trace_off = offsets(traced, trace_dims, dt);

    Matrix out = Matrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j) {
            Complex acc(0.0, 0.0);
            for (int t = 0; t < dt; ++t)
                acc += m.entries(keep_off[i] + trace_off[t],
                                 keep_off[j] + trace_off[t]);
            out(i, j) = acc;
        }
    return Operator(std::move(out), keep_dims);
}

HermEig herm_eig(const Matrix& h, double herm_tol) {
    if (max_abs(h - h.adjoint()) > herm_tol)
        throw std::invalid_argument("herm_eig: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("herm_eig: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

Matrix mat_exp_hermitian_generator(const Matrix& h, Complex scale,
                                   double herm_tol) {
    HermEig e = herm_eig(h, herm_tol);
    Vector d(e.values.size());
    for (Eigen::Index i = 0; i < e.values.size(); ++i)
        d(i) = std::exp(scale * e.values(i));
    return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

double trace_norm(const Matrix& m) {
    if (m.rows() <= 16) {
        Eigen::JacobiSVD<Matrix> svd(m);
        return svd.singularValues().sum();
    }
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

double trace_norm_hermitian(const Matrix& m, double herm_tol) {
    if (max_abs(m - m.adjoint()) > herm_tol)
        throw std::invalid_argument("trace_norm_hermitian: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double von_neumann_entropy(const Operator& rho) {
    DensityReport rep = density_report(rho);
    if (!rep.ok)
        throw std::invalid_argument("von_neumann_entropy: invalid density operator");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double p = es.eigenvalues()(i);
        if (p > 1e-12) s -= p * std::log2(p);
    }
    return s;
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix embed(const Matrix& op, const std::vector<int>& factors,
             const std::vector<int>& dims) {
    const int nf = static_cast<int>(dims.size());
    for (int f : factors)
        if (f < 0 || f >= nf) throw std::out_of_range("embed: bad factor");

    std::vector<int> sub_dims;
    for (int f : factors) sub_dims.push_back(dims[f]);
    const int ds = product(sub_dims);
    if (op.rows() != ds || op.cols() != ds)
        throw std::invalid_argument("embed: operator/factor dims mismatch");

    std::vector<int> rest;
    std::vector<bool> used(nf, false);
    for (int f : factors) used[f] = true;
    for (int f = 0; f < nf; ++f)
        if (!used[f]) rest.push_back(f);
    std::vector<int> rest_dims;
    for (int f : rest) rest_dims.push_back(dims[f]);
    const int dr = product(rest_dims);

    const auto full_stride = strides(dims);
    auto offset_table = [&](const std::vector<int>& fs,
                            const std::vector<int>& sd, int count) {
        std::vector<long> off(count, 0);
        std::vector<int> idx(fs.size(), 0);
        for (int i = 0; i < count; ++i) {
            long o = 0;
            for (size_t f = 0; f < fs.size(); ++f) o += idx[f] * full_stride[fs[f]];
            off[i] = o;
            for (int f = static_cast<int>(fs.size()) - 1; f >= 0; --f) {
                if (++idx[f] < sd[f]) break;
                idx[f] = 0;
            }
        }
        return off;
    };
    const auto sub_off = offset_table(factors, sub_dims, ds);
    const auto rest_off = offset_table(rest, rest_dims, dr);

    const int n = product(dims);
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < ds; ++i)
        for (int j = 0; j < ds; ++j) {
            if (op(i, j) == Complex(0.0, 0.0)) continue;
            for (int r = 0; r < dr; ++r)
                out(sub_off[i] + rest_off[r], sub_off[j] + rest_off[r]) = op(i, j);
        }
    return out;
}

}  // namespace udwqc

#include "udwqc/metrics.hpp"

#include "udwqc/qubit_gates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace udwqc {

namespace {

// ----------------------------- Nelder-Mead ---------------------------------

struct NmResult {
    std::vector<double> x;
    double value = 0.0;  // minimized objective
    long iterations = 0;
};

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, double step, int max_iter,
                     double tol) {
    const size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    for (size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

    long iters = 0;
    for (; iters < max_iter; ++iters) {
        // Order ascending by value.
        std::vector<size_t> idx(n + 1);
        for (size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](size_t a, size_t b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> s2;
            std::vector<double> f2;
            for (size_t i = 0; i <= n; ++i) {
                s2.push_back(simplex[idx[i]]);
                f2.push_back(fv[idx[i]]);
            }
            simplex = std::move(s2);
            fv = std::move(f2);
        }
        if (std::abs(fv[n] - fv[0]) < tol) break;

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / double(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
            return p;
        };

        std::vector<double> xr = blend(-1.0);
        double fr = f(xr);
        if (fr < fv[0]) {
            std::vector<double> xe = blend(-2.0);
            double fe = f(xe);
            if (fe < fr) { simplex[n] = xe; fv[n] = fe; }
            else { simplex[n] = xr; fv[n] = fr; }
        } else if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[n] ? -0.5 : 0.5);
            double fc = f(xc);
            if (fc < std::min(fr, fv[n])) { simplex[n] = xc; fv[n] = fc; }
            else {
                for (size_t i = 1; i <= n; ++i) {
                    for (size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    size_t best = 0;
    for (size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    return {simplex[best], fv[best], iters};
}

Vector params_to_ket(const std::vector<double>& x) {
    const size_t d = x.size() / 2;
    Vector v(d);
    for (size_t i = 0; i < d; ++i) v(i) = Complex(x[2 * i], x[2 * i + 1]);
    double n = v.norm();
    if (n < 1e-12) {
        v = Vector::Zero(d);
        v(0) = 1.0;
        return v;
    }
    return v / n;
}

std::vector<double> ket_to_params(const Vector& v) {
    std::vector<double> x(2 * v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        x[2 * i] = v(i).real();
        x[2 * i + 1] = v(i).imag();
    }
    return x;
}

Matrix stabilized_apply(const QuantumChannel& ch, const Matrix& rho) {
    // (id_d (x) ch) on a (d*in_dim)-dimensional state, reference first.
    const int d = static_cast<int>(rho.rows()) / ch.in_dim;
    Matrix out = Matrix::Zero(d * ch.out_dim, d * ch.out_dim);
    Matrix id = Matrix::Identity(d, d);
    for (const Matrix& k : ch.kraus) {
        Matrix kk = kron(id, k);
        out += kk * rho * kk.adjoint();
    }
    return out;
}

std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

Vector haar_ket(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
    return v / v.norm();
}

}  // namespace

Matrix stabilized_difference(const QuantumChannel& ch1,
                             const QuantumChannel& ch2, const Vector& psi) {
    Matrix rho = psi * psi.adjoint();
    return stabilized_apply(ch1, rho) - stabilized_apply(ch2, rho);
}

std::vector<Vector> structured_stabilized_inputs(int in_dim) {
    const int d2 = in_dim * in_dim;
    std::vector<Vector> out;

    Vector bell = Vector::Zero(d2);
    for (int i = 0; i < in_dim; ++i) bell(i * in_dim + i) = 1.0;
    out.push_back(bell / bell.norm());

    for (int i = 0; i < d2; ++i) {
        Vector v = Vector::Zero(d2);
        v(i) = 1.0;
        out.push_back(v);
    }

    if (in_dim == 2) {
        const std::vector<Vector> axis = {ket0(),      ket1(),       ket_plus(),
                                          ket_minus(), ket_plus_y(), ket_minus_y()};
        for (const Vector& a : axis)
            for (const Vector& b : axis) out.push_back(kron(a, b));
    }
    return out;
}

double coherent_information(const QuantumChannel& ch, const Operator& rho_in) {
    if (rho_in.dim() != ch.in_dim)
        throw std::invalid_argument("coherent_information: dimension mismatch");

    HermEig eig = herm_eig(rho_in.entries, 1e-8);
    const int d = ch.in_dim;
    Vector psi = Vector::Zero(d * d);  // reference (x) input
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        double p = std::max(eig.values(k), 0.0);
        if (p < 1e-15) continue;
        Vector ref = Vector::Zero(d);
        ref(k) = 1.0;
        psi += std::sqrt(p) * kron(ref, Vector(eig.vectors.col(k)));
    }
    psi /= psi.norm();

    Matrix rho_cb = stabilized_apply(ch, Matrix(psi * psi.adjoint()));
    Operator cb(rho_cb, {d, ch.out_dim});
    Operator b = partial_trace(cb, {1});
    return von_neumann_entropy(b) - von_neumann_entropy(cb);
}

double capacity_estimate(const QuantumChannel& ch, CapacityStrategy strategy,
                         std::uint64_t seed, int restarts) {
    if (ch.in_dim != 2)
        throw std::invalid_argument("capacity_estimate: qubit input expected");
    Operator mixed(0.5 * Matrix::Identity(2, 2), {2});
    double at_mixed = coherent_information(ch, mixed);
    if (strategy == CapacityStrategy::assume_maximizing_default) return at_mixed;

    auto rho_of = [](const std::vector<double>& r) {
        double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
        double s = len > 1.0 - 1e-9 ? (1.0 - 1e-9) / len : 1.0;
        Matrix m(2, 2);
        const Complex i1(0.0, 1.0);
        m << 1.0 + s * r[2], s * (r[0] - i1 * r[1]),
             s * (r[0] + i1 * r[1]), 1.0 - s * r[2];
        return Operator(0.5 * m, {2});
    };
    auto objective = [&](const std::vector<double>& r) {
        return -coherent_information(ch, rho_of(r));
    };

    double best = at_mixed;
    std::mt19937_64 rng = seeded_rng(seed);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> x0 = r == 0 ? std::vector<double>{0.0, 0.0, 0.0}
                                        : std::vector<double>{u(rng), u(rng), u(rng)};
        NmResult res = nelder_mead(objective, x0, 0.25, 200, 1e-10);
        best = std::max(best, -res.value);
    }
    return std::max(best, 0.0);
}

DiamondResult diamond_distance(const QuantumChannel& ch1,
                               const QuantumChannel& ch2, int restarts,
                               std::uint64_t seed) {
    if (ch1.in_dim != ch2.in_dim || ch1.out_dim != ch2.out_dim)
        throw std::invalid_argument("diamond_distance: dimension mismatch");
    const int d2 = ch1.in_dim * ch1.in_dim;

    auto value_at = [&](const Vector& psi) {
        return trace_norm_hermitian(stabilized_difference(ch1, ch2, psi), 1e-7);
    };
    auto objective = [&](const std::vector<double>& x) {
        return -value_at(params_to_ket(x));
    };

    DiamondResult result;
    result.argmax_state = ket_to_params(structured_stabilized_inputs(ch1.in_dim)[0]);

    // Deterministic floor: the optimizer never reports below its own
    // evaluations of the structured set.
    for (const Vector& psi : structured_stabilized_inputs(ch1.in_dim)) {
        double v = value_at(psi);
        if (v > result.value) {
            result.value = v;
            result.argmax_state = ket_to_params(psi);
        }
    }

    std::mt19937_64 rng = seeded_rng(seed);
    std::vector<Vector> starts;
    starts.push_back(structured_stabilized_inputs(ch1.in_dim)[0]);
    starts.push_back(params_to_ket(result.argmax_state));
    while (static_cast<int>(starts.size()) < restarts)
        starts.push_back(haar_ket(d2, rng));

    for (const Vector& s0 : starts) {
        NmResult res = nelder_mead(objective, ket_to_params(s0), 0.2, 400, 1e-12);
        result.iterations += res.iterations;
        result.best_per_restart.push_back(-res.value);
        if (-res.value > result.value) {
            result.value = -res.value;
            result.argmax_state = res.x;
        }
        ++result.restarts;
    }
    return result;
}

double diamond_lower_bound_oracle(const QuantumChannel& ch1,
                                  const QuantumChannel& ch2, int samples,
                                  std::uint64_t seed) {
    if (ch1.in_dim != ch2.in_dim || ch1.out_dim != ch2.out_dim)
        throw std::invalid_argument("diamond_lower_bound_oracle: dimension mismatch");
    double best = 0.0;
    for (const Vector& psi : structured_stabilized_inputs(ch1.in_dim))
        best = std::max(best, trace_norm_hermitian(
                                  stabilized_difference(ch1, ch2, psi), 1e-7));
    std::mt19937_64 rng = seeded_rng(seed);
    const int d2 = ch1.in_dim * ch1.in_dim;
    for (int s = 0; s < samples; ++s) {
        Vector psi = haar_ket(d2, rng);
        best = std::max(best, trace_norm_hermitian(
                                  stabilized_difference(ch1, ch2, psi), 1e-7));
    }
    return best;
}

double trace_distance(const Operator& rho, const Operator& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    return 0.5 * trace_norm_hermitian(rho.entries - sigma.entries, 1e-7);
}

}  // namespace udwqc

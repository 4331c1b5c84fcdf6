#include "udwqc/udw_gates.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace udwqc {

namespace {

const int signs[2] = {+1, -1};

std::string axis_name(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

}  // namespace

ControlledDisplacementGate ControlledDisplacementGate::adjoint() const {
    ControlledDisplacementGate out;
    out.name = name + "_dag";
    for (const GateTerm& t : terms) {
        GateTerm a;
        a.projectors.assign(t.projectors.rbegin(), t.projectors.rend());
        a.word = t.word.adjoint();
        out.terms.push_back(std::move(a));
    }
    return out;
}

Matrix ControlledDisplacementGate::materialize(const FockBackend& bk) const {
    const int fd = bk.field_dim();
    Matrix u = Matrix::Zero(2 * fd, 2 * fd);
    for (const GateTerm& t : terms)
        u += kron(projector_word(t.projectors), bk.word_matrix(t.word));
    return u;
}

bool ControlledDisplacementGate::terms_mutually_orthogonal() const {
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = i + 1; j < terms.size(); ++j) {
            const auto& a = terms[i].projectors;
            const auto& b = terms[j].projectors;
            if (a.size() != b.size()) return false;
            bool blocked = false;
            for (size_t k = 0; k < a.size() && !blocked; ++k)
                blocked = a[k].axis == b[k].axis && a[k].sign != b[k].sign;
            if (!blocked) return false;
        }
    return true;
}

nlohmann::json ControlledDisplacementGate::schedule() const {
    nlohmann::json jterms = nlohmann::json::array();
    for (const GateTerm& t : terms) {
        nlohmann::json jproj = nlohmann::json::array();
        for (const Projector& p : t.projectors)
            jproj.push_back({{"axis", axis_name(p.axis)}, {"sign", p.sign}});
        jterms.push_back(
            {{"projectors", jproj},
             {"c_phi", {t.word.c_phi.real(), t.word.c_phi.imag()}},
             {"c_pi", {t.word.c_pi.real(), t.word.c_pi.imag()}},
             {"phase", {t.word.phase.real(), t.word.phase.imag()}}});
    }
    return nlohmann::json{{"name", name}, {"terms", jterms}};
}

ControlledDisplacementGate u_qst(const FieldCalibration& cal) {
    ControlledDisplacementGate g;
    g.name = "u_qst";
    for (int mu : signs)
        for (int mup : signs) {
            GateTerm t;
            t.projectors = {{Axis::x, mu}, {Axis::z, mup}};
            t.word = weyl_reduce({DisplacementWord::pi(mu),
                                  DisplacementWord::phi(mup)},
                                 cal);
            g.terms.push_back(std::move(t));
        }
    return g;
}

ControlledDisplacementGate u_zphi(const FieldCalibration& cal) {
    (void)cal;
    ControlledDisplacementGate g;
    g.name = "u_zphi";
    for (int mu : signs)
        g.terms.push_back({{{Axis::z, mu}}, DisplacementWord::phi(mu)});
    return g;
}

ControlledDisplacementGate u_xpi(const FieldCalibration& cal) {
    (void)cal;
    ControlledDisplacementGate g;
    g.name = "u_xpi";
    for (int mu : signs)
        g.terms.push_back({{{Axis::x, mu}}, DisplacementWord::pi(mu)});
    return g;
}

ControlledDisplacementGate u_zpix_phi(const FieldCalibration& cal) {
    ControlledDisplacementGate g;
    g.name = "u_zpix_phi";
    for (int mu : signs)
        for (int mup : signs) {
            GateTerm t;
            t.projectors = {{Axis::z, mu}, {Axis::x, mup}};
            t.word = weyl_reduce({DisplacementWord::pi(-1),
                                  DisplacementWord::pi(mu),
                                  DisplacementWord::phi(mup)},
                                 cal);
            g.terms.push_back(std::move(t));
        }
    return g;
}

ControlledDisplacementGate u_hadamard(const FieldCalibration& cal) {
    (void)cal;
    ControlledDisplacementGate g;
    g.name = "u_hadamard";
    for (int mu : signs)
        g.terms.push_back({{{Axis::x, mu}}, DisplacementWord::phi(-mu)});
    return g;
}

ControlledDisplacementGate u_s(const FieldCalibration& cal) {
    ControlledDisplacementGate g;
    g.name = "u_s";
    for (int mu : signs) {
        GateTerm t;
        t.projectors = {{Axis::z, mu}};
        t.word = weyl_reduce({DisplacementWord::pi(1 - mu),
                              DisplacementWord::phi(1)},
                             cal);
        g.terms.push_back(std::move(t));
    }
    return g;
}

ControlledDisplacementGate u_t(const FieldCalibration& cal) {
    ControlledDisplacementGate g;
    g.name = "u_t";
    for (int mu : signs) {
        GateTerm t;
        t.projectors = {{Axis::z, mu}};
        t.word = weyl_reduce({DisplacementWord::pi(0.5 * (1 - mu)),
                              DisplacementWord::phi(1)},
                             cal);
        g.terms.push_back(std::move(t));
    }
    return g;
}

CoherentOps coherent_projector_ops(const FieldCalibration& cal,
                                   const FockBackend& bk) {
    CoherentOps ops;
    ops.plus_alpha = bk.apply_word(DisplacementWord::phi(+1), bk.vacuum());
    ops.minus_alpha = bk.apply_word(DisplacementWord::phi(-1), bk.vacuum());
    const Complex eps = ops.plus_alpha.dot(ops.minus_alpha);
    ops.overlap = eps.real();

    const Vector& p = ops.plus_alpha;
    const Vector& m = ops.minus_alpha;
    ops.p_plus = p * p.adjoint();
    ops.p_minus = m * m.adjoint();
    ops.z_alpha = ops.p_plus - ops.p_minus;
    ops.x_alpha = m * p.adjoint() + p * m.adjoint();
    ops.p_half_plus = ops.p_plus + m * p.adjoint() + p * m.adjoint() + ops.p_minus;
    ops.p_half_minus = ops.p_plus - m * p.adjoint() - p * m.adjoint() + ops.p_minus;

    // Loewdin orthogonalization of {|+a>,|-a>}: basis = S^{-1/2} columns.
    Eigen::Matrix2cd gram;
    gram << 1.0, eps, std::conj(eps), 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram);
    Eigen::Matrix2cd s_inv_half =
        es.eigenvectors() *
        es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().adjoint();
    Vector e_plus = s_inv_half(0, 0) * p + s_inv_half(1, 0) * m;
    Vector e_minus = s_inv_half(0, 1) * p + s_inv_half(1, 1) * m;
    ops.e_plus = e_plus;
    ops.e_minus = e_minus;
    ops.z_alpha_ideal = e_plus * e_plus.adjoint() - e_minus * e_minus.adjoint();
    ops.x_alpha_ideal = e_minus * e_plus.adjoint() + e_plus * e_minus.adjoint();

    // Unitarity deviation of the literal operators, restricted to the span.
    Matrix p_span = e_plus * e_plus.adjoint() + e_minus * e_minus.adjoint();
    ops.x_unitarity_defect = max_abs(ops.x_alpha * ops.x_alpha.adjoint() - p_span);
    ops.z_unitarity_defect = max_abs(ops.z_alpha * ops.z_alpha.adjoint() - p_span);
    (void)cal;
    return ops;
}

std::vector<Matrix> u_swap_simplified(SwapVariant variant,
                                      const FieldCalibration& cal,
                                      const FockBackend& bk, bool idealized) {
    CoherentOps ops = coherent_projector_ops(cal, bk);
    const Matrix& xa = idealized ? ops.x_alpha_ideal : ops.x_alpha;
    const Matrix& za = idealized ? ops.z_alpha_ideal : ops.z_alpha;
    const int fd = bk.field_dim();
    Matrix id_f = Matrix::Identity(fd, fd);

    auto ctrl = [&](Axis axis, const Matrix& plus_op, const Matrix& minus_op) {
        return kron(Projector{axis, +1}.matrix(), plus_op) +
               kron(Projector{axis, -1}.matrix(), minus_op);
    };

    Matrix first;
    if (variant == SwapVariant::vacuum_init) {
        // z-controlled displacement, the u_zphi factor.
        first = ctrl(Axis::z, bk.word_matrix(DisplacementWord::phi(+1)),
                     bk.word_matrix(DisplacementWord::phi(-1)));
    } else {
        first = ctrl(Axis::z, id_f, xa);
    }
    Matrix second = ctrl(Axis::x, id_f, za);
    Matrix third = ctrl(Axis::z, id_f, xa);
    return {first, second, third};
}

}  // namespace udwqc

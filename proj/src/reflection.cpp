#include "casimir/reflection.hpp"

#include <sstream>

#include "casimir/constants.hpp"

namespace casimir {

namespace {

const cplx I(0.0, 1.0);

void check_decay_branch(cplx w_med, const char* which) {
    if (!(w_med.real() > 0.0)) {
        std::ostringstream os;
        os << which << " decay constant has Re <= 0: " << w_med
           << " (branch violation for a passive medium)";
        throw BranchViolation(os.str());
    }
}

void check_denominator(cplx den, cplx term_a, cplx term_b, const char* which) {
    const double scale = std::abs(term_a) + std::abs(term_b);
    if (std::abs(den) < 1e-12 * scale) {
        std::ostringstream os;
        os << "surface-mode pole in " << which << ": |" << den << "| < 1e-12 * " << scale;
        throw PoleProximity(os.str());
    }
}

FresnelSet fresnel_from(cplx eps, cplx mu, double w_vac, cplx q2_trans, cplx kappa_med) {
    FresnelSet f;
    f.eps = eps;
    f.mu = mu;
    f.w_med = std::sqrt(q2_trans + eps * mu * kappa_med * kappa_med);
    check_decay_branch(f.w_med, "medium");
    const cplx denE = mu * w_vac + f.w_med;
    const cplx denB = eps * w_vac + f.w_med;
    check_denominator(denE, mu * w_vac, f.w_med, "TE coefficient");
    check_denominator(denB, eps * w_vac, f.w_med, "TM coefficient");
    f.r_E = (mu * w_vac - f.w_med) / denE;
    f.r_B = -(eps * w_vac - f.w_med) / denB;
    return f;
}

} // namespace

FresnelSet fresnel_plate1(const PlateMaterial& mat, const ModeGeometry& m) {
    const cplx zeta = constants::c * m.kappa;
    const Response r = eval_response(mat, zeta);
    return fresnel_from(r.eps, r.mu, m.w, cplx(m.q * m.q), cplx(m.kappa));
}

FresnelSet fresnel_plate2(const PlateMaterial& mat, const ModeGeometry& m) {
    const cplx zeta = constants::c * m.kappa_p;
    const Response r = eval_response(mat, zeta);
    const cplx q2 = m.u_p * m.u_p + m.v * m.v;
    return fresnel_from(r.eps, r.mu, m.w, q2, m.kappa_p);
}

ReflectionOperator operator_R1(const FresnelSet& f, const PolarizationBasis& b) {
    const Mat3c Rx = reflectX();
    return f.r_E * outer(b.n_E1, b.n_E1) + f.r_B * Rx * outer(b.n_B1, b.n_B1);
}

ReflectionOperator operator_R2(const FresnelSet& f, const PolarizationBasis& b) {
    const Mat3c Rx = reflectX();
    return f.r_E * Rx * outer(b.n_E2, b.n_E2) + f.r_B * Rx * outer(b.n_B2, b.n_B2);
}

InterfaceOperators interface_operators_plate1(const PlateMaterial& mat,
                                              const ModeGeometry& m) {
    const FresnelSet f1 = fresnel_plate1(mat, m);
    const PolarizationBasis b = polarization_basis(m);
    const cplx n_mat = std::sqrt(f1.eps * f1.mu);  // in-plate refractive index

    InterfaceOperators ops;
    ops.w1 = f1.w_med;
    ops.r_Em = -f1.r_E;
    ops.r_Bm = -f1.r_B;
    ops.t_Em = 1.0 - f1.r_E;
    ops.t_Bm = std::sqrt(f1.eps / f1.mu) * (1.0 + f1.r_B);
    ops.t_E1 = 1.0 + f1.r_E;
    ops.t_B1 = std::sqrt(f1.mu / f1.eps) * (1.0 - f1.r_B);

    const double q = m.q;
    ops.n_Em = b.n_E1;
    const cplx den = m.kappa * n_mat * q;
    ops.n_Bm_plus = Vec3c(I * q * q, ops.w1 * m.u, ops.w1 * m.v) / den;
    ops.n_Bm_minus = Vec3c(I * q * q, -ops.w1 * m.u, -ops.w1 * m.v) / den;

    const Mat3c Rx = reflectX();
    ops.R_m = ops.r_Em * outer(ops.n_Em, ops.n_Em) +
              ops.r_Bm * outer(Vec3c(Rx * ops.n_Bm_plus), ops.n_Bm_plus);
    ops.T_m = ops.t_Em * outer(ops.n_Em, ops.n_Em) -
              ops.t_Bm * outer(Vec3c(Rx * b.n_B1), ops.n_Bm_plus);
    ops.T_1 = ops.t_E1 * outer(b.n_E1, b.n_E1) + ops.t_B1 * outer(ops.n_Bm_minus, b.n_B1);
    return ops;
}

} // namespace casimir

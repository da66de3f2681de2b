#include "casimir/stress.hpp"

#include <cmath>
#include <limits>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kForcePrefactor =
    constants::hbar * constants::c / (4.0 * constants::pi * constants::pi * constants::pi);

Mat3c sym(const Mat3c& m) { return 0.5 * (m + m.transpose()); }

// One reflected Green term expressed in closed polarization dyads:
// C = scale * sum_XY gamma_XY L_X (x) R_Y, with x-profile factor f.
// The curl of each directed evanescent wave maps E- and B-type vectors into
// each other within the same dyad family:
//   first index:  D1 x L_X = sigmaL(X) * kc * L_{flip X}
//   second index: D2 x R_Y = sigmaR(Y) * kc * R_{flip Y}
// so the magnetic correlation stays in the same dyad basis with weight kc^2.
struct DyadTerm {
    Vec3c L_E, L_B, R_E, R_B;
    cplx g_EE, g_EB, g_BE, g_BB;
    cplx scale;       // common factor of C (1/2w in the gap)
    cplx f;           // x-profile value
    double sigmaL_E;  // sigmaL(B) = -sigmaL(E); sigmaR(E) = -1, sigmaR(B) = +1
};

// Accumulates the electric and magnetic field-correlation pieces of one term:
//   P += ee_weight * f * sym(C) + bb_weight * kc^2 * f * sym(K)
// where K has the curl-mapped dyads.
void accumulate_term(const DyadTerm& t, cplx ee_weight, cplx bb_weight_kc2, Mat3c* P) {
    Mat3c C = t.g_EE * outer(t.L_E, t.R_E) + t.g_EB * outer(t.L_E, t.R_B) +
              t.g_BE * outer(t.L_B, t.R_E) + t.g_BB * outer(t.L_B, t.R_B);
    const double sLE = t.sigmaL_E, sLB = -t.sigmaL_E;
    Mat3c K = (t.g_EE * sLE * -1.0) * outer(t.L_B, t.R_B) +
              (t.g_EB * sLE * +1.0) * outer(t.L_B, t.R_E) +
              (t.g_BE * sLB * -1.0) * outer(t.L_E, t.R_B) +
              (t.g_BB * sLB * +1.0) * outer(t.L_E, t.R_E);
    *P += t.f * t.scale * (ee_weight * sym(C) + bb_weight_kc2 * sym(K));
}

Mat3c trace_adjust(const Mat3c& P) {
    return P - 0.5 * P.trace() * Mat3c::Identity();
}

struct GapData {
    FresnelSet f1, f2;
    PolarizationBasis basis;
    ExpansionCoefficients ec;
};

GapData gap_data(const ModeGeometry& mode, const PlateSystem& system) {
    if (mode.beta != system.beta) {
        throw MismatchedMode("mode beta does not match system beta");
    }
    GapData d;
    d.f1 = fresnel_plate1(system.plate1, mode);
    d.f2 = fresnel_plate2(system.plate2, mode);
    d.basis = polarization_basis(mode);
    d.ec = expansion_coefficients(mode, d.f1, d.f2, d.basis, system.a);
    return d;
}

Mat3d fold_density(double x, const ModeGeometry& mode, const PlateSystem& system,
                   Mat3c (*density)(double, const ModeGeometry&, const PlateSystem&),
                   double* imag_diag) {
    const Mat3c plus = density(x, mode, system);
    const ModeGeometry flip_v = make_mode(mode.kappa, mode.u, -mode.v, mode.beta);
    const ModeGeometry flip_uv = make_mode(mode.kappa, -mode.u, -mode.v, mode.beta);
    const ModeGeometry flip_u = make_mode(mode.kappa, -mode.u, mode.v, mode.beta);
    const Mat3c folded = 0.25 * (plus + density(x, flip_v, system) +
                                 density(x, flip_u, system) + density(x, flip_uv, system));
    if (imag_diag != nullptr) {
        *imag_diag += folded.imag().cwiseAbs().maxCoeff();
    }
    return folded.real();
}

} // namespace

ChannelFactors channel_factors(const ModeGeometry& mode, const FresnelSet& f1,
                               const FresnelSet& f2, double a) {
    const double w = std::real(mode.w);
    const double e2aw = std::exp(2.0 * a * w);
    const double E = std::exp(-2.0 * a * w);
    ChannelFactors cf;
    auto fill = [&](cplx r1, cplx r2, cplx* A, cplx* B, cplx* D) {
        *B = e2aw - r1 * r2;
        *D = 1.0 - r1 * r2 * E;
        if (r1 == cplx(0.0) || r2 == cplx(0.0)) {
            *A = cplx(std::numeric_limits<double>::infinity(), 0.0);
        } else {
            *A = e2aw / (r1 * r2) - 1.0;
        }
    };
    fill(f1.r_E, f2.r_E, &cf.A_EE, &cf.B_EE, &cf.D_EE);
    fill(f1.r_B, f2.r_B, &cf.A_BB, &cf.B_BB, &cf.D_BB);
    fill(f1.r_E, f2.r_B, &cf.A_EB, &cf.B_EB, &cf.D_EB);
    fill(f1.r_B, f2.r_E, &cf.A_BE, &cf.B_BE, &cf.D_BE);
    return cf;
}

Mat3c stress_mode_density(double x, const ModeGeometry& mode,
                          const PlateSystem& system) {
    if (x < 0.0 || x > system.a) {
        throw ValidationError("stress density position must lie in the gap [0, a]");
    }
    const GapData d = gap_data(mode, system);
    const auto& b = d.basis;
    const auto& ec = d.ec;
    const double w = std::real(mode.w);
    const double kappa2 = mode.kappa * mode.kappa;
    const cplx half_w(1.0 / (2.0 * w), 0.0);
    const Vec3c RxE1 = reflectX() * b.n_E1, RxB1 = reflectX() * b.n_B1;
    const Vec3c RxE2 = reflectX() * b.n_E2, RxB2 = reflectX() * b.n_B2;

    Mat3c P = Mat3c::Zero();
    // cavity mixing of the right-moving wave (x-independent profile)
    accumulate_term(DyadTerm{b.n_E2, b.n_B2, b.n_E2, b.n_B2, ec.c2EE, ec.c2EB,
                             ec.c2BE, ec.c2BB, half_w, cplx(1.0), +1.0},
                    -kappa2, kappa2, &P);
    // image of the right-moving wave in plate 2
    accumulate_term(DyadTerm{RxE2, RxB2, b.n_E2, b.n_B2, ec.d2EE, ec.d2EB, ec.d2BE,
                             ec.d2BB, half_w, cplx(std::exp(2.0 * w * (x - system.a))),
                             -1.0},
                    -kappa2, kappa2, &P);
    // cavity mixing of the left-moving wave
    accumulate_term(DyadTerm{b.n_E1, b.n_B1, b.n_E1, b.n_B1, ec.c1EE, ec.c1EB,
                             ec.c1BE, ec.c1BB, half_w, cplx(1.0), +1.0},
                    -kappa2, kappa2, &P);
    // image of the left-moving wave in plate 1
    accumulate_term(DyadTerm{RxE1, RxB1, b.n_E1, b.n_B1, ec.d1EE, ec.d1EB, ec.d1BE,
                             ec.d1BB, half_w, cplx(std::exp(-2.0 * w * x)), -1.0},
                    -kappa2, kappa2, &P);
    return trace_adjust(P);
}

Mat3d stress_integrand_between(double x, const ModeGeometry& mode,
                               const PlateSystem& system, double* imag_diag) {
    return fold_density(x, mode, system, &stress_mode_density, imag_diag);
}

Mat3c stress_mode_density_in_plate(double x, const ModeGeometry& mode,
                                   const PlateSystem& system) {
    if (x > 0.0) {
        throw ValidationError("in-plate stress density requires x <= 0");
    }
    const GapData d = gap_data(mode, system);
    const auto& b = d.basis;
    const auto& ec = d.ec;
    const InterfaceOperators io = interface_operators_plate1(system.plate1, mode);
    const double w = std::real(mode.w);
    const double kappa2 = mode.kappa * mode.kappa;
    const double E = std::exp(-2.0 * system.a * w);
    const cplx eps1 = d.f1.eps;
    const cplx w1 = io.w1;
    const cplx lam = b.lambda, nu = b.nu;

    // C = (1/(2 eps1 w1)) sum g_XY L_X (x) R_Y with
    // L = {n_Em, n_Bm_minus}, R = {n_Em, n_Bm_plus}:
    //   - direct surface reflection R_m of the source wave
    //   - round trip through the gap: T_1 Rx N2 T_m, weight e^{-2aw}
    cplx g_EE = io.r_Em;
    cplx g_BB = -io.r_Bm;  // Rx n_Bm_plus = -n_Bm_minus
    cplx g_EB = 0.0, g_BE = 0.0;
    {
        const cplx aE = io.t_Em * (ec.d2EE * lam + ec.d2EB * nu);
        const cplx aB = io.t_Em * (ec.d2BE * lam + ec.d2BB * nu);
        const cplx bE = io.t_Bm * (ec.d2EE * nu - ec.d2EB * lam);
        const cplx bB = io.t_Bm * (ec.d2BE * nu - ec.d2BB * lam);
        g_EE += E * io.t_E1 * (lam * aE + nu * aB);
        g_BE += E * io.t_B1 * (nu * aE - lam * aB);
        g_EB += E * -io.t_E1 * (lam * bE + nu * bB);
        g_BB += E * -io.t_B1 * (nu * bE - lam * bB);
    }

    DyadTerm term{io.n_Em,      io.n_Bm_minus, io.n_Em, io.n_Bm_plus, g_EE, g_EB,
                  g_BE,         g_BB,          1.0 / (2.0 * eps1 * w1),
                  std::exp(2.0 * w1 * x),      +1.0};
    // electric weight -eps1 kappa^2; magnetic weight (1/mu1) (eps1 mu1 kappa^2)
    Mat3c P = Mat3c::Zero();
    accumulate_term(term, -eps1 * kappa2, eps1 * kappa2, &P);
    return trace_adjust(P);
}

Mat3d stress_integrand_in_plate(double x, const ModeGeometry& mode,
                                const PlateSystem& system, double* imag_diag) {
    return fold_density(x, mode, system, &stress_mode_density_in_plate, imag_diag);
}

cplx force_mode_density_moving(const ModeGeometry& mode, const PlateSystem& system) {
    if (mode.beta != system.beta) {
        throw MismatchedMode("mode beta does not match system beta");
    }
    const FresnelSet f1 = fresnel_plate1(system.plate1, mode);
    const FresnelSet f2 = fresnel_plate2(system.plate2, mode);
    const ChannelFactors cf = channel_factors(mode, f1, f2, system.a);
    const double w = std::real(mode.w);
    const double E = std::exp(-2.0 * system.a * w);
    const double q2 = mode.q * mode.q;
    const cplx X(q2, -mode.kappa * mode.u * mode.beta);
    const cplx X2 = X * X;
    const double wvb = w * mode.v * mode.beta;
    const double wvb2 = wvb * wvb;

    const cplx num = (cf.D_EE * f1.r_B * f2.r_B + cf.D_BB * f1.r_E * f2.r_E) * X2 -
                     (cf.D_EB * f1.r_B * f2.r_E + cf.D_BE * f1.r_E * f2.r_B) * wvb2;
    const cplx den = cf.D_EE * cf.D_BB * X2 - cf.D_EB * cf.D_BE * wvb2;
    const double den_scale = std::abs(cf.D_EE * cf.D_BB * X2) + wvb2;
    if (std::abs(den) < 1e-14 * den_scale) {
        throw PoleProximity("force density denominator vanishes");
    }
    return w * E * num / den;
}

cplx force_mode_density_static(const ModeGeometry& mode, const PlateSystem& system) {
    const ModeGeometry rest = make_mode(mode.kappa, mode.u, mode.v, 0.0);
    const FresnelSet f1 = fresnel_plate1(system.plate1, rest);
    const FresnelSet f2 = fresnel_plate2(system.plate2, rest);
    const double w = std::real(rest.w);
    const double E = std::exp(-2.0 * system.a * w);
    const cplx gE = f1.r_E * f2.r_E, gB = f1.r_B * f2.r_B;
    return w * E * (gE / (1.0 - gE * E) + gB / (1.0 - gB * E));
}

cplx force_mode_density_beta2(const ModeGeometry& mode, const PlateSystem& system) {
    const auto dispersive = [](const PlateMaterial& m) {
        return m.electric.is_dispersive() || m.magnetic.is_dispersive();
    };
    if (dispersive(system.plate1) || dispersive(system.plate2)) {
        throw DispersionNotSupported(
            "beta^2 force coefficient requires nondispersive constant-response plates");
    }
    const ModeGeometry rest = make_mode(mode.kappa, mode.u, mode.v, 0.0);
    const FresnelSet f1 = fresnel_plate1(system.plate1, rest);
    const FresnelSet f2 = fresnel_plate2(system.plate2, rest);
    const double w = std::real(rest.w);
    const double E = std::exp(-2.0 * system.a * w);
    const double kap = rest.kappa, u = rest.u, v = rest.v;
    const double q2 = rest.q * rest.q;
    const double q4 = q2 * q2;
    const cplx I(0.0, 1.0);

    // Second-order expansion of the drifting plate's reflection scalars,
    // r2(beta) = r + s*beta + t*beta^2: the boost shifts the in-plate decay
    // constant w2(beta)^2 = w^2 + (eps*mu - 1)*kappa'(beta)^2.
    const cplx P = f2.eps * f2.mu;
    const cplx w20 = f2.w_med;
    const cplx c1 = 2.0 * I * kap * u * (P - 1.0) / (w20 * w20);
    const cplx c2 = (kap * kap - u * u) * (P - 1.0) / (w20 * w20);
    const cplx W1 = 0.5 * w20 * c1;
    const cplx W2 = w20 * (0.5 * c2 - 0.125 * c1 * c1);
    const cplx dEdw = -2.0 * f2.mu * w / ((f2.mu * w + w20) * (f2.mu * w + w20));
    const cplx dEdw2 = 4.0 * f2.mu * w /
                       ((f2.mu * w + w20) * (f2.mu * w + w20) * (f2.mu * w + w20));
    const cplx dBdw = 2.0 * f2.eps * w / ((f2.eps * w + w20) * (f2.eps * w + w20));
    const cplx dBdw2 = -4.0 * f2.eps * w /
                       ((f2.eps * w + w20) * (f2.eps * w + w20) * (f2.eps * w + w20));
    const cplx sE = dEdw * W1;
    const cplx tE = dEdw * W2 + 0.5 * dEdw2 * W1 * W1;
    const cplx sB = dBdw * W1;
    const cplx tB = dBdw * W2 + 0.5 * dBdw2 * W1 * W1;

    // Channel denominators D_XY(beta) = D0 + beta*D1 + beta^2*D2.
    const cplx D0EE = 1.0 - f1.r_E * f2.r_E * E;
    const cplx D1EE = -f1.r_E * sE * E;
    const cplx D2EE = -f1.r_E * tE * E;
    const cplx D0BB = 1.0 - f1.r_B * f2.r_B * E;
    const cplx D1BB = -f1.r_B * sB * E;
    const cplx D2BB = -f1.r_B * tB * E;
    const cplx D0EB = 1.0 - f1.r_E * f2.r_B * E;
    const cplx D0BE = 1.0 - f1.r_B * f2.r_E * E;

    // Expansion of 1/X^2 with X = q^2 - i*kappa*u*beta, relative to 1/q^4.
    const cplx x1 = -2.0 * I * kap * u / q2;
    const cplx x2 = cplx(-kap * kap * u * u / q4, 0.0);

    // Numerator and denominator series of the X^2-scaled force density.
    const cplx Ta0 = D0EE * f1.r_B * f2.r_B;
    const cplx Ta1 = D1EE * f1.r_B * f2.r_B + D0EE * f1.r_B * sB;
    const cplx Ta2 = D2EE * f1.r_B * f2.r_B + D1EE * f1.r_B * sB + D0EE * f1.r_B * tB;
    const cplx Tb0 = D0BB * f1.r_E * f2.r_E;
    const cplx Tb1 = D1BB * f1.r_E * f2.r_E + D0BB * f1.r_E * sE;
    const cplx Tb2 = D2BB * f1.r_E * f2.r_E + D1BB * f1.r_E * sE + D0BB * f1.r_E * tE;
    const double vterm = w * w * v * v / q4;
    const cplx N0 = Ta0 + Tb0;
    const cplx N1 = Ta1 + Tb1 + N0 * x1;
    const cplx N2 = Ta2 + Tb2 + (Ta1 + Tb1) * x1 + N0 * x2 -
                    vterm * (D0EB * f1.r_B * f2.r_E + D0BE * f1.r_E * f2.r_B);
    const cplx M0 = D0EE * D0BB;
    const cplx M1 = D1EE * D0BB + D0EE * D1BB + M0 * x1;
    const cplx M2 = D2EE * D0BB + D0EE * D2BB + D1EE * D1BB +
                    (D1EE * D0BB + D0EE * D1BB) * x1 + M0 * x2 -
                    vterm * D0EB * D0BE;
    if (std::abs(M0) < 1e-14) {
        throw PoleProximity("beta^2 force coefficient denominator vanishes");
    }
    // d^2/dbeta^2 of N/M at beta = 0, halved: the beta^2 Taylor coefficient.
    const cplx ratio2 = N2 / M0 - N0 * M2 / (M0 * M0) - N1 * M1 / (M0 * M0) +
                        N0 * M1 * M1 / (M0 * M0 * M0);
    return w * E * ratio2;
}

namespace {

QuadSpec with_default_scale(QuadSpec spec, double a) {
    if (spec.scale <= 0.0) spec.scale = 1.0 / (2.0 * a);
    return spec;
}

double dimensionless(double F, double a) {
    return 240.0 * a * a * a * a * F /
           (constants::hbar * constants::c * constants::pi * constants::pi);
}

StressResult integrate_force(const PlateSystem& system, QuadSpec spec,
                             cplx (*density)(const ModeGeometry&, const PlateSystem&),
                             double beta) {
    system.validate();
    spec = with_default_scale(spec, system.a);
    auto f = [&](double kappa, double u, double v) -> Eigen::Matrix<cplx, 1, 1> {
        Eigen::Matrix<cplx, 1, 1> out;
        out(0) = density(make_mode(kappa, u, v, beta), system);
        return out;
    };
    const QuadResult<1> r = integrate_modes<1>(f, spec);
    StressResult res;
    res.F = kForcePrefactor * r.value(0);
    res.sigma(0, 0) = res.F;
    res.dimensionless_F = dimensionless(res.F, system.a);
    res.quad_error = kForcePrefactor * r.error;
    res.imag_residual = kForcePrefactor * r.imag_residual;
    res.evaluations = r.evaluations;
    return res;
}

StressResult integrate_stress(double x, const PlateSystem& system, QuadSpec spec,
                              Mat3c (*density)(double, const ModeGeometry&,
                                               const PlateSystem&)) {
    system.validate();
    spec = with_default_scale(spec, system.a);
    auto f = [&](double kappa, double u, double v) -> Eigen::Matrix<cplx, 6, 1> {
        const ModeGeometry mode = make_mode(kappa, u, v, system.beta);
        const ModeGeometry flip = make_mode(kappa, u, -v, system.beta);
        const Mat3c s = 0.5 * (density(x, mode, system) + density(x, flip, system));
        Eigen::Matrix<cplx, 6, 1> out;
        out << s(0, 0), s(1, 1), s(2, 2), s(0, 1), s(0, 2), s(1, 2);
        return out;
    };
    const QuadResult<6> r = integrate_modes<6>(f, spec);
    StressResult res;
    const Eigen::Matrix<double, 6, 1> val = kForcePrefactor * r.value;
    res.sigma << val(0), val(3), val(4),
                 val(3), val(1), val(5),
                 val(4), val(5), val(2);
    res.F = val(0);
    res.dimensionless_F = dimensionless(res.F, system.a);
    res.quad_error = kForcePrefactor * r.error;
    res.imag_residual = kForcePrefactor * r.imag_residual;
    res.evaluations = r.evaluations;
    return res;
}

} // namespace

StressResult stress_tensor(double x, const PlateSystem& system, QuadSpec spec) {
    return integrate_stress(x, system, spec, &stress_mode_density);
}

StressResult stress_in_plate(double x, const PlateSystem& system, QuadSpec spec) {
    return integrate_stress(x, system, spec, &stress_mode_density_in_plate);
}

StressResult force_moving(const PlateSystem& system, QuadSpec spec) {
    return integrate_force(system, spec, &force_mode_density_moving, system.beta);
}

StressResult force_static(const PlateSystem& system, QuadSpec spec) {
    return integrate_force(system, spec, &force_mode_density_static, 0.0);
}

StressResult force_beta2(const PlateSystem& system, QuadSpec spec) {
    return integrate_force(system, spec, &force_mode_density_beta2, 0.0);
}

} // namespace casimir

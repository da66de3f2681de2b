#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <casimir/errors.hpp>
#include <casimir/green.hpp>
#include <casimir/linalg.hpp>
#include <casimir/materials.hpp>
#include <casimir/modes.hpp>
#include <casimir/system.hpp>

#include <cmath>
#include <random>

using namespace casimir;

namespace {

PlateSystem vacuum_system(double a = 1.0, double beta = 0.0) {
    PlateSystem s;
    s.plate1 = PlateMaterial{MaterialModel::vacuum(), MaterialModel::vacuum()};
    s.plate2 = s.plate1;
    s.a = a;
    s.beta = beta;
    return s;
}

PlateSystem mixed_system(double eps1, double mu1, double eps2, double mu2,
                         double a, double beta) {
    PlateSystem s;
    s.plate1 = PlateMaterial{MaterialModel::constant(eps1),
                             mu1 == 1.0 ? MaterialModel::vacuum()
                                        : MaterialModel::constant(mu1)};
    s.plate2 = PlateMaterial{MaterialModel::constant(eps2),
                             mu2 == 1.0 ? MaterialModel::vacuum()
                                        : MaterialModel::constant(mu2)};
    s.a = a;
    s.beta = beta;
    return s;
}

double max_abs(const Mat3c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("grazing modes reduce the directed dyads to the tangential projector") {
    // With u, v -> 0 at fixed kappa the transverse dyad tends to
    // diag(0, 1/2, 1/2) / w with w -> kappa = 1.
    const ModeGeometry m = make_mode(1.0, 1e-9, 0.0, 0.0);
    Mat3c expect = Mat3c::Zero();
    expect(1, 1) = 0.5;
    expect(2, 2) = 0.5;
    CHECK(max_abs(transverse_dyad_right(m) - expect) < 1e-8);
    CHECK(max_abs(transverse_dyad_left(m) - expect) < 1e-8);
}

TEST_CASE("the left dyad is the x-reversal image of the right dyad") {
    const ModeGeometry m = make_mode(1.3, 0.8, -0.6, 0.45);
    const Mat3c rx = reflectX();
    CHECK(max_abs(transverse_dyad_left(m) - rx * transverse_dyad_right(m) * rx) < 1e-15);
}

TEST_CASE("directed dyads are transverse to their propagation directions") {
    const ModeGeometry m = make_mode(0.7, 1.1, 0.9, 0.2);
    const Vec3c d_right(cplx(-m.w, 0.0), cplx(0.0, m.u), cplx(0.0, m.v));
    const Vec3c d_left(cplx(m.w, 0.0), cplx(0.0, m.u), cplx(0.0, m.v));
    CHECK((transverse_dyad_right(m) * d_right).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((transverse_dyad_left(m) * d_left).cwiseAbs().maxCoeff() < 1e-14);
    // The dyads are symmetric, so left-transversality follows identically.
    CHECK(max_abs(transverse_dyad_right(m) -
                  Mat3c(transverse_dyad_right(m).transpose())) < 1e-15);
}

TEST_CASE("bare propagation decays exponentially away from the source plane") {
    const ModeGeometry m = make_mode(1.0, 0.6, 0.4, 0.0);
    const GreenBlock g_right = bare_green(0.9, 0.2, m);
    CHECK(max_abs(g_right.matrix -
                  std::exp(-m.w * 0.7) * transverse_dyad_right(m)) < 1e-15);
    const GreenBlock g_left = bare_green(0.2, 0.9, m);
    CHECK(max_abs(g_left.matrix -
                  std::exp(-m.w * 0.7) * transverse_dyad_left(m)) < 1e-15);
    CHECK_FALSE(g_right.regularized);
    CHECK_THROWS_AS((void)bare_green(0.5, 0.5, m), CoincidenceUnregularized);
}

TEST_CASE("between vacuum plates the Green tensor is the bare one") {
    const PlateSystem s = vacuum_system(1.0, 0.3);
    const ModeGeometry m = make_mode(0.9, 0.7, -0.5, s.beta);
    const GreenBlock bare = bare_green(0.4, 0.6, m);
    CHECK(max_abs(green_direct(0.4, 0.6, m, s).matrix - bare.matrix) < 1e-16);
    CHECK(max_abs(green_expanded(0.4, 0.6, m, s).matrix - bare.matrix) < 1e-16);
    CHECK(max_abs(green_reflected(0.4, 0.6, m, s).matrix) == 0.0);
    CHECK(green_reflected(0.4, 0.4, m, s).regularized);
}

TEST_CASE("vacuum expansion coefficients vanish and the denominator is trivial") {
    const PlateSystem s = vacuum_system(1.0, 0.3);
    const ModeGeometry m = make_mode(0.9, 0.7, -0.5, s.beta);
    const PolarizationBasis b = polarization_basis(m);
    const ExpansionCoefficients ec = expansion_coefficients(
        m, fresnel_plate1(s.plate1, m), fresnel_plate2(s.plate2, m), b, s.a);
    CHECK(std::abs(ec.alpha - std::exp(-4.0 * m.w * s.a)) < 1e-15);
    CHECK(std::abs(ec.alpha_scaled - 1.0) < 1e-15);
    for (const cplx& c : {ec.c2EE, ec.c2BB, ec.c2EB, ec.c2BE, ec.c1EE, ec.c1BB,
                          ec.c1EB, ec.c1BE, ec.d1EE, ec.d1BB, ec.d1EB, ec.d1BE,
                          ec.d2EE, ec.d2BB, ec.d2EB, ec.d2BE}) {
        CHECK(std::abs(c) == 0.0);
    }
}

TEST_CASE("at rest the polarization channels do not mix") {
    const PlateSystem s = mixed_system(2.0, 1.1, 3.0, 1.0, 1.0, 0.0);
    const ModeGeometry m = make_mode(1.2, 0.6, 0.8, 0.0);
    const PolarizationBasis b = polarization_basis(m);
    const ExpansionCoefficients ec = expansion_coefficients(
        m, fresnel_plate1(s.plate1, m), fresnel_plate2(s.plate2, m), b, s.a);
    CHECK(std::abs(ec.c2EB) == 0.0);
    CHECK(std::abs(ec.c2BE) == 0.0);
    CHECK(std::abs(ec.c1EB) == 0.0);
    CHECK(std::abs(ec.c1BE) == 0.0);
}

TEST_CASE("cross-channel image coefficients agree pairwise") {
    const PlateSystem s = mixed_system(2.0, 1.3, 4.0, 1.0, 0.8, 0.55);
    const ModeGeometry m = make_mode(1.1, 0.9, 0.5, s.beta);
    const PolarizationBasis b = polarization_basis(m);
    const ExpansionCoefficients ec = expansion_coefficients(
        m, fresnel_plate1(s.plate1, m), fresnel_plate2(s.plate2, m), b, s.a);
    CHECK(std::abs(ec.d1EB - ec.d1BE) == 0.0);
    CHECK(std::abs(ec.d2EB - ec.d2BE) == 0.0);
}

TEST_CASE("resummed mixing matrices invert the cavity denominators") {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> ur(0.3, 2.0);
    std::uniform_real_distribution<double> ub(0.0, 0.9);
    for (int i = 0; i < 50; ++i) {
        const PlateSystem s = mixed_system(1.0 + 2.0 * ur(rng), 1.0 + 0.2 * ur(rng),
                                           1.0 + 3.0 * ur(rng), 1.0, 1.0, ub(rng));
        const ModeGeometry m = make_mode(ur(rng), ur(rng), -ur(rng), s.beta);
        const PolarizationBasis b = polarization_basis(m);
        const FresnelSet f1 = fresnel_plate1(s.plate1, m);
        const FresnelSet f2 = fresnel_plate2(s.plate2, m);
        const ExpansionCoefficients ec = expansion_coefficients(m, f1, f2, b, s.a);
        const Mat3c R1 = operator_R1(f1, b);
        const Mat3c R2 = operator_R2(f2, b);
        const double E = std::exp(-2.0 * m.w * s.a);
        const Mat3c D12 = Mat3c::Identity() - E * R1 * R2;
        const Mat3c D21 = Mat3c::Identity() - E * R2 * R1;
        const Mat3c rx = reflectX();
        CHECK(max_abs((Mat3c::Identity() + matrix_M2(ec, b)) * D12 -
                      Mat3c::Identity()) < 1e-12);
        CHECK(max_abs((Mat3c::Identity() + matrix_M1(ec, b)) * D21 -
                      Mat3c::Identity()) < 1e-12);
        CHECK(max_abs(D12 * (rx * matrix_N1(ec, b)) - R1) < 1e-12);
        CHECK(max_abs(D21 * (rx * matrix_N2(ec, b)) - R2) < 1e-12);
    }
}

TEST_CASE("direct and resummed forms of the Green tensor agree") {
    std::mt19937_64 rng(1312);
    std::uniform_real_distribution<double> ur(0.3, 2.0);
    std::uniform_real_distribution<double> ub(0.0, 0.9);
    std::uniform_real_distribution<double> ux(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
        const PlateSystem s = mixed_system(1.0 + 2.0 * ur(rng), 1.0 + 0.2 * ur(rng),
                                           1.0 + 3.0 * ur(rng), 1.0, 1.0, ub(rng));
        const ModeGeometry m = make_mode(ur(rng), ur(rng), -ur(rng), s.beta);
        double x = ux(rng), xp = ux(rng);
        if (std::abs(x - xp) < 0.02) xp = std::clamp(xp + 0.05, 0.05, 0.95);
        const Mat3c gd = green_direct(x, xp, m, s).matrix;
        const Mat3c ge = green_expanded(x, xp, m, s).matrix;
        CHECK(max_abs(gd - ge) < 1e-12 * std::max(1e-30, max_abs(gd)));
    }
}

TEST_CASE("the reflected part equals the direct form with the bare part removed") {
    const PlateSystem s = mixed_system(2.5, 1.0, 4.0, 1.2, 1.0, 0.6);
    const ModeGeometry m = make_mode(1.0, 0.8, 0.6, s.beta);
    const Mat3c gd = green_direct(0.35, 0.75, m, s).matrix;
    const Mat3c gb = bare_green(0.35, 0.75, m).matrix;
    const Mat3c gr = green_reflected(0.35, 0.75, m, s).matrix;
    CHECK(max_abs(gd - gb - gr) < 1e-13 * std::max(1.0, max_abs(gd)));
}

TEST_CASE("flipping both tangential wavenumbers conjugates the Green tensor") {
    const PlateSystem s = mixed_system(4.0, 1.2, 2.0, 1.0, 1.0, 0.55);
    const Mat3c gp = green_direct(0.3, 0.8, make_mode(1.1, 0.9, 0.5, s.beta), s).matrix;
    const Mat3c gm = green_direct(0.3, 0.8, make_mode(1.1, -0.9, -0.5, s.beta), s).matrix;
    CHECK(max_abs(gm - gp.conjugate()) < 1e-15);
}

TEST_CASE("flipping the non-shear wavenumber mirrors the z axis") {
    const PlateSystem s = mixed_system(4.0, 1.2, 2.0, 1.0, 1.0, 0.55);
    const Mat3c gp = green_direct(0.3, 0.8, make_mode(1.1, 0.9, 0.5, s.beta), s).matrix;
    const Mat3c gv = green_direct(0.3, 0.8, make_mode(1.1, 0.9, -0.5, s.beta), s).matrix;
    Mat3c sz = Mat3c::Identity();
    sz(2, 2) = -1.0;
    CHECK(max_abs(gv - sz * gp * sz) < 1e-15);
}

TEST_CASE("symmetrization averages the two transposed evaluations") {
    const PlateSystem s = mixed_system(3.0, 1.0, 2.0, 1.1, 1.0, 0.4);
    const ModeGeometry m = make_mode(0.9, 0.6, -0.7, s.beta);
    const GreenBlock g = green_direct(0.3, 0.7, m, s);
    const GreenBlock gt = green_direct(0.7, 0.3, m, s);
    const GreenBlock sym = symmetrize(g, gt);
    CHECK(max_abs(sym.matrix - 0.5 * (g.matrix + Mat3c(gt.matrix.transpose()))) < 1e-16);
    CHECK(sym.x == 0.3);
    CHECK(sym.x_p == 0.7);

    // Positions must actually be swapped, and the mode must match.
    CHECK_THROWS_AS((void)symmetrize(g, g), MismatchedMode);
    const GreenBlock other = green_direct(0.7, 0.3, make_mode(0.9, 0.6, 0.7, s.beta), s);
    CHECK_THROWS_AS((void)symmetrize(g, other), MismatchedMode);
}

TEST_CASE("inside a transparent lower plate the gap expansion continues unchanged") {
    PlateSystem s;
    s.plate1 = PlateMaterial{MaterialModel::vacuum(), MaterialModel::vacuum()};
    s.plate2 = PlateMaterial{MaterialModel::constant(3.0), MaterialModel::vacuum()};
    s.a = 1.0;
    s.beta = 0.4;
    const ModeGeometry m = make_mode(0.9, 0.7, -0.5, s.beta);
    const double x = -0.3, xp = -0.6;
    Mat3c expect = bare_green(x, xp, m).matrix;
    for (const ReflectedTerm& t : reflected_terms(m, s)) {
        expect += std::exp(m.w * (t.sx * x + t.sxp * xp + t.shift)) * t.C;
    }
    CHECK(max_abs(green_in_plate(x, xp, m, s).matrix - expect) < 1e-15);
}

TEST_CASE("with vacuum on both sides the in-plate tensor is the bare one") {
    const PlateSystem s = vacuum_system(1.0, 0.25);
    const ModeGeometry m = make_mode(1.1, 0.5, 0.9, s.beta);
    CHECK(max_abs(green_in_plate(-0.2, -0.7, m, s).matrix -
                  bare_green(-0.2, -0.7, m).matrix) < 1e-15);
    CHECK_THROWS_AS((void)green_in_plate(-0.3, -0.3, m, s), CoincidenceUnregularized);
}

TEST_CASE("in-plate dyads reduce to the vacuum dyads for a transparent medium") {
    const ModeGeometry m = make_mode(1.2, 0.8, -0.4, 0.0);
    const cplx w1(m.w, 0.0);
    CHECK(max_abs(in_plate_dyad_right(m, 1.0, 1.0, w1) - transverse_dyad_right(m)) <
          1e-15);
    CHECK(max_abs(in_plate_dyad_left(m, 1.0, 1.0, w1) - transverse_dyad_left(m)) <
          1e-15);
}

TEST_CASE("the in-plate reflected term decays away from the interface") {
    PlateSystem s = mixed_system(2.0, 1.0, 3.0, 1.0, 1.0, 0.3);
    const ModeGeometry m = make_mode(1.0, 0.6, 0.8, s.beta);
    const InPlateTerm t = in_plate_reflected_term(m, s);
    CHECK(t.w1.real() > 0.0);
    CHECK(std::abs(t.eps1 - cplx(2.0, 0.0)) < 1e-14);
    CHECK(std::abs(t.mu1 - cplx(1.0, 0.0)) < 1e-14);
    const double reflected_near =
        max_abs(std::exp(t.w1 * (-0.1 - 0.2)) * t.C);
    const double reflected_far =
        max_abs(std::exp(t.w1 * (-2.1 - 2.2)) * t.C);
    CHECK(reflected_far < 1e-3 * reflected_near);
}

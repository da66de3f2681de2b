#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <casimir/errors.hpp>
#include <casimir/green.hpp>
#include <casimir/materials.hpp>
#include <casimir/modes.hpp>
#include <casimir/oracle.hpp>
#include <casimir/system.hpp>

#include <cmath>

using namespace casimir;

namespace {

PlateSystem make_system(double eps1, double mu1, double eps2, double mu2,
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

TEST_CASE("spectral radius of simple matrices") {
    Mat3c d = Mat3c::Zero();
    d(0, 0) = cplx(2.0, 0.0);
    d(1, 1) = cplx(0.0, -3.0);
    d(2, 2) = cplx(1.0, 0.0);
    CHECK(spectral_radius(d) == doctest::Approx(3.0).epsilon(1e-12));

    Mat3c n = Mat3c::Zero();  // nilpotent: all eigenvalues zero
    n(0, 1) = 5.0;
    n(1, 2) = -7.0;
    CHECK(spectral_radius(n) < 1e-6);
}

TEST_CASE("with no reflection the bounce series is the bare tensor at every order") {
    const ModeGeometry m = make_mode(1.0, 0.6, 0.4, 0.0);
    const Mat3c zero = Mat3c::Zero();
    for (int n : {0, 1, 5, 20}) {
        const GreenBlock s = series_green(0.4, 0.7, m, 1.0, zero, zero, n);
        CHECK(max_abs(s.matrix - bare_green(0.4, 0.7, m).matrix) == 0.0);
    }
}

TEST_CASE("the bounce series converges geometrically to the direct solution") {
    // Strong coupling and a short gap keep many orders above the rounding
    // floor so the decay rate is measurable.
    const PlateSystem s = make_system(20.0, 1.0, 30.0, 1.2, 0.4, 0.45);
    const ModeGeometry m = make_mode(0.8, 0.6, -0.5, s.beta);
    const PolarizationBasis b = polarization_basis(m);
    const Mat3c R1 = operator_R1(fresnel_plate1(s.plate1, m), b);
    const Mat3c R2 = operator_R2(fresnel_plate2(s.plate2, m), b);
    const double x = 0.15, xp = 0.25;
    const Mat3c exact = green_direct(x, xp, m, s).matrix;
    const double scale = max_abs(exact);

    auto err = [&](int n) {
        return max_abs(series_green(x, xp, m, s.a, R1, R2, n).matrix - exact);
    };
    const double e3 = err(3), e6 = err(6), e10 = err(10), e40 = err(40);
    CHECK(e6 < e3);
    CHECK(e10 < e6);
    CHECK(e40 < 1e-12 * scale);

    // Per-round-trip contraction tracks the cavity operator spectral radius.
    const double rho =
        spectral_radius(std::exp(-2.0 * m.w * s.a) * Mat3c(R1 * R2));
    CHECK(rho < 1.0);
    const double rate = std::pow(e10 / e6, 0.25);
    CHECK(std::abs(std::log(rate) - std::log(rho)) < 0.2 * std::abs(std::log(rho)));
}

TEST_CASE("a non-contracting cavity operator is rejected") {
    const ModeGeometry m = make_mode(1.0, 1.0, 1.0, 0.0);
    const Mat3c big = 3.0 * Mat3c::Identity();
    CHECK_THROWS_AS((void)series_green(0.03, 0.06, m, 0.1, big, big, 4),
                    SeriesNotConvergent);
}

TEST_CASE("wave-equation residual of the direct solution shrinks quadratically") {
    const PlateSystem s = make_system(2.0, 1.1, 4.0, 1.0, 1.0, 0.0);
    const ModeGeometry m = make_mode(1.1, 0.8, 0.6, s.beta);
    const double xp = 0.75;
    auto fn = [&](double xx) { return green_direct(xx, xp, m, s).matrix; };
    const double scale =
        m.kappa * m.kappa * green_direct(0.3, xp, m, s).matrix.norm();

    const double r1 = pde_residual(fn, 0.3, xp, m, 0.02, 0.0, 1.0);
    const double r2 = pde_residual(fn, 0.3, xp, m, 0.01, 0.0, 1.0);
    CHECK(r1 < 1e-2 * scale);
    CHECK(r2 < r1);
    const double order = std::log2(r1 / r2);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
}

TEST_CASE("wave-equation residual validates the in-plate solution with medium weights") {
    const PlateSystem s = make_system(2.0, 1.1, 3.0, 1.0, 1.0, 0.0);
    const ModeGeometry m = make_mode(0.9, 0.7, 0.5, s.beta);
    const double xp = -0.45;
    auto fn = [&](double xx) { return green_in_plate(xx, xp, m, s).matrix; };
    const double scale =
        m.kappa * m.kappa * green_in_plate(-0.2, xp, m, s).matrix.norm();
    const double r = pde_residual(fn, -0.2, xp, m, 0.005, -2.0, 0.0,
                                  cplx(2.0, 0.0), cplx(1.1, 0.0));
    CHECK(r < 1e-3 * scale);
}

TEST_CASE("residual of a constant field reduces to the mass term") {
    const ModeGeometry m = make_mode(1.7, 1e-9, 1e-9, 0.0);
    Mat3c mat = Mat3c::Zero();
    mat(0, 0) = cplx(0.3, 0.1);
    mat(1, 2) = cplx(-0.2, 0.4);
    mat(2, 2) = cplx(0.9, 0.0);
    auto fn = [&](double) { return mat; };
    const double r = pde_residual(fn, 0.5, -0.4, m, 0.01, -2.0, 2.0);
    CHECK(r == doctest::Approx(m.kappa * m.kappa * mat.norm()).epsilon(1e-6));
}

TEST_CASE("finite-difference misuse is rejected") {
    const ModeGeometry m = make_mode(1.0, 0.8, 0.6, 0.0);
    auto fn = [&](double xx) { return bare_green(xx, 0.9, m).matrix; };
    // Step too large relative to the domain.
    CHECK_THROWS_AS((void)pde_residual(fn, 0.4, 0.9, m, 0.2, 0.0, 1.0), StepTooLarge);
    // Stencil leaves the domain.
    CHECK_THROWS_AS((void)pde_residual(fn, 0.05, 0.9, m, 0.08, 0.0, 1.0),
                    StepTooLarge);
    // Stencil straddles the source plane.
    CHECK_THROWS_AS((void)pde_residual(fn, 0.85, 0.9, m, 0.03, 0.0, 1.0),
                    StepTooLarge);
    // Non-positive step.
    CHECK_THROWS_AS((void)pde_residual(fn, 0.4, 0.9, m, 0.0, 0.0, 1.0), StepTooLarge);
}

TEST_CASE("interface matching recovers the closed-form reflection coefficients") {
    const ModeGeometry m = make_mode(1.0, 1.0, 1.0, 0.0);

    PlateMaterial vac{MaterialModel::vacuum(), MaterialModel::vacuum()};
    const MatchedReflection rv = interface_matching_oracle(vac, m);
    CHECK(std::abs(rv.r_E) < 1e-12);
    CHECK(std::abs(rv.r_B) < 1e-12);
    CHECK(std::abs(rv.cross_coupling) < 1e-12);

    PlateMaterial eps2{MaterialModel::constant(2.0), MaterialModel::vacuum()};
    const MatchedReflection r2 = interface_matching_oracle(eps2, m);
    const double w = std::sqrt(3.0), w1 = 2.0;
    CHECK(std::abs(r2.r_E - (w - w1) / (w + w1)) < 1e-10);
    CHECK(std::abs(r2.r_B - (w1 - 2.0 * w) / (w1 + 2.0 * w)) < 1e-10);
    CHECK(std::abs(r2.cross_coupling) < 1e-12);

    PlateMaterial stiff{MaterialModel::constant(1e8), MaterialModel::vacuum()};
    const MatchedReflection rs = interface_matching_oracle(stiff, m);
    CHECK(std::abs(rs.r_E + 1.0) < 1e-3);
    CHECK(std::abs(rs.r_B + 1.0) < 1e-3);

    PlateMaterial mag{MaterialModel::constant(2.0), MaterialModel::constant(1.4)};
    const MatchedReflection rm = interface_matching_oracle(mag, m);
    const FresnelSet f = fresnel_plate1(mag, m);
    CHECK(std::abs(rm.r_E - f.r_E) < 1e-10);
    CHECK(std::abs(rm.r_B - f.r_B) < 1e-10);
}

TEST_CASE("the layered boundary-value solve matches the direct form in the gap") {
    const PlateSystem s = make_system(2.0, 1.1, 3.0, 1.0, 1.0, 0.0);
    const ModeGeometry m = make_mode(0.9, 0.7, -0.6, 0.0);
    for (const auto& [x, xp] : {std::pair{0.25, 0.6}, {0.7, 0.3}, {0.45, 0.5}}) {
        const Mat3c ref = static_bvp_green(x, xp, m, s).matrix;
        const Mat3c lib = green_direct(x, xp, m, s).matrix;
        CHECK(max_abs(ref - lib) < 1e-9 * max_abs(ref));
    }
}

TEST_CASE("the layered boundary-value solve matches the in-plate form") {
    const PlateSystem s = make_system(2.0, 1.0, 2.0, 1.0, 1.0, 0.0);
    const ModeGeometry m = make_mode(1.1, 0.9, 0.4, 0.0);
    for (const auto& [x, xp] : {std::pair{-0.1, -0.3}, {-0.25, -0.05}}) {
        const Mat3c ref = static_bvp_green(x, xp, m, s).matrix;
        const Mat3c lib = green_in_plate(x, xp, m, s).matrix;
        CHECK(max_abs(ref - lib) < 1e-6 * max_abs(ref));
    }
}

TEST_CASE("between vacuum plates the boundary-value solve returns the bare tensor") {
    PlateSystem s;
    s.plate1 = PlateMaterial{MaterialModel::vacuum(), MaterialModel::vacuum()};
    s.plate2 = s.plate1;
    s.a = 1.0;
    s.beta = 0.0;
    const ModeGeometry m = make_mode(1.0, 0.6, 0.8, 0.0);
    const Mat3c ref = static_bvp_green(0.3, 0.7, m, s).matrix;
    CHECK(max_abs(ref - bare_green(0.3, 0.7, m).matrix) < 1e-10);
}

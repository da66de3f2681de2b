#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <casimir/constants.hpp>
#include <casimir/errors.hpp>
#include <casimir/quadrature.hpp>

#include <cmath>

using namespace casimir;

namespace {

using Scalar = Eigen::Matrix<cplx, 1, 1>;

Scalar scalar(double x) { return Scalar(cplx(x, 0.0)); }

double mode_w(double kappa, double u, double v) {
    return std::sqrt(kappa * kappa + u * u + v * v);
}

// Integrand w e^{-2w}: exact mode integral 2 pi Int w^3 e^{-2w} dw = 3 pi / 4.
Scalar decaying_w(double kappa, double u, double v) {
    const double w = mode_w(kappa, u, v);
    return scalar(w * std::exp(-2.0 * w));
}

// Integrand 2 w / (e^{2w} - 1): exact mode integral pi^5 / 60. This is the
// ideal-mirror force density shape at unit separation.
Scalar mirror_density(double kappa, double u, double v) {
    const double w = mode_w(kappa, u, v);
    return scalar(2.0 * w / std::expm1(2.0 * w));
}

}  // namespace

TEST_CASE("smooth exponential integrand reproduces its closed form") {
    QuadSpec spec;
    spec.rel_tol = 1e-8;
    const auto r = integrate_modes<1>(decaying_w, spec);
    const double exact = 3.0 * constants::pi / 4.0;
    CHECK(std::abs(r.value[0] - exact) < 1e-7 * exact);
    CHECK(r.error < 1e-7 * exact);
    CHECK(r.imag_residual == 0.0);
    CHECK(r.leaves >= 8);
}

TEST_CASE("thermal-shape integrand reproduces its closed form") {
    QuadSpec spec;
    spec.rel_tol = 1e-7;
    const auto r = integrate_modes<1>(mirror_density, spec);
    const double exact = std::pow(constants::pi, 5) / 60.0;
    CHECK(std::abs(r.value[0] - exact) < 1e-6 * exact);
}

TEST_CASE("multi-component integration controls the joint error") {
    QuadSpec spec;
    spec.rel_tol = 1e-7;
    auto f = [](double kappa, double u, double v) {
        Eigen::Matrix<cplx, 2, 1> out;
        out[0] = decaying_w(kappa, u, v)[0];
        out[1] = mirror_density(kappa, u, v)[0];
        return out;
    };
    const auto r = integrate_modes<2>(f, spec);
    CHECK(std::abs(r.value[0] - 3.0 * constants::pi / 4.0) < 1e-5);
    CHECK(std::abs(r.value[1] - std::pow(constants::pi, 5) / 60.0) < 1e-5);
}

TEST_CASE("the zero integrand integrates to exactly zero") {
    QuadSpec spec;
    const auto r = integrate_modes<1>(
        [](double, double, double) { return scalar(0.0); }, spec);
    CHECK(r.value[0] == 0.0);
    CHECK(r.error == 0.0);
    CHECK(r.imag_residual == 0.0);
}

TEST_CASE("reported error bounds the shift under tolerance tightening") {
    QuadSpec loose;
    loose.rel_tol = 1e-4;
    QuadSpec tight;
    tight.rel_tol = 1e-7;
    const auto rl = integrate_modes<1>(mirror_density, loose);
    const auto rt = integrate_modes<1>(mirror_density, tight);
    CHECK(std::abs(rl.value[0] - rt.value[0]) <= rl.error);
    CHECK(rt.error < rl.error);
}

TEST_CASE("the result is invariant under a change of mapping scale") {
    QuadSpec s1;
    s1.rel_tol = 1e-7;
    s1.scale = 1.0;
    QuadSpec s2 = s1;
    s2.scale = 2.0;
    const auto r1 = integrate_modes<1>(mirror_density, s1);
    const auto r2 = integrate_modes<1>(mirror_density, s2);
    CHECK(std::abs(r1.value[0] - r2.value[0]) <
          2.0 * s1.rel_tol * std::abs(r1.value[0]) + r1.error + r2.error);
}

TEST_CASE("results are deterministic across repeats and thread counts") {
    QuadSpec serial;
    serial.rel_tol = 1e-6;
    serial.serial = true;
    const auto a = integrate_modes<1>(mirror_density, serial);
    const auto b = integrate_modes<1>(mirror_density, serial);
    CHECK(a.value[0] == b.value[0]);
    CHECK(a.error == b.error);
    CHECK(a.leaves == b.leaves);

    QuadSpec parallel = serial;
    parallel.serial = false;
    const auto c = integrate_modes<1>(mirror_density, parallel);
    CHECK(a.value[0] == c.value[0]);
    CHECK(a.leaves == c.leaves);
}

TEST_CASE("a fixed level integrates a uniform grid without refinement") {
    QuadSpec spec;
    spec.fixed_level = 2;
    spec.rel_tol = 1e-10;  // ignored: no refinement happens at a fixed level
    const auto r = integrate_modes<1>(mirror_density, spec);
    CHECK(r.leaves == 64);
    // 3 parity probes (two calls each... counted as 2*3) plus 64 cells at
    // 2 * (16^3 + 8^3) calls per cell.
    CHECK(r.evaluations == 6 + 64 * std::size_t(2 * (4096 + 512)));
    const double exact = std::pow(constants::pi, 5) / 60.0;
    CHECK(std::abs(r.value[0] - exact) < 5e-2 * exact);
}

TEST_CASE("an absolute floor stops refinement of negligible integrals") {
    QuadSpec spec;
    spec.rel_tol = 1e-6;
    spec.abs_floor = 1e3;  // far above the integrand scale
    const auto r = integrate_modes<1>(mirror_density, spec);
    CHECK(r.leaves == 8);  // the seed grid alone satisfies the floor
}

TEST_CASE("integrands violating the fold symmetries are rejected") {
    QuadSpec spec;
    auto odd_u = [](double kappa, double u, double v) {
        const double w = mode_w(kappa, u, v);
        return scalar(w * std::exp(-2.0 * w) + u);
    };
    CHECK_THROWS_AS((void)integrate_modes<1>(odd_u, spec), ParityViolation);
    auto odd_v = [](double kappa, double u, double v) {
        const double w = mode_w(kappa, u, v);
        return scalar(w * std::exp(-2.0 * w) + 0.1 * v);
    };
    CHECK_THROWS_AS((void)integrate_modes<1>(odd_v, spec), ParityViolation);
}

TEST_CASE("refinement exhaustion raises a divergence error") {
    QuadSpec spec;
    spec.rel_tol = 1e-10;
    spec.max_level = 3;
    auto kinked = [](double kappa, double u, double v) {
        const double w = mode_w(kappa, u, v);
        return scalar(std::exp(-2.0 * w) * std::pow(std::abs(kappa - 1.37), 0.3));
    };
    CHECK_THROWS_AS((void)integrate_modes<1>(kinked, spec), QuadratureDivergence);
}

TEST_CASE("specification limits are enforced") {
    QuadSpec spec;
    spec.rel_tol = 0.0;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.rel_tol = 2e-2;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = QuadSpec{};
    spec.max_level = 2;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.max_level = 17;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = QuadSpec{};
    spec.fixed_level = 5;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = QuadSpec{};
    spec.scale = std::nan("");
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = QuadSpec{};
    CHECK_NOTHROW(spec.validate());
}

#include "casimir/modes.hpp"

#include <cmath>
#include <sstream>

namespace casimir {

namespace {
const cplx I(0.0, 1.0);
}

ModeGeometry make_mode(double kappa, double u, double v, double beta) {
    if (!(kappa > 0.0)) {
        std::ostringstream os;
        os << "mode requires kappa > 0, got " << kappa;
        throw NonPositiveFrequency(os.str());
    }
    if (!(beta >= 0.0 && beta < 1.0)) {
        std::ostringstream os;
        os << "beta must lie in [0, 1), got " << beta;
        throw InvalidBeta(os.str());
    }
    ModeGeometry m;
    m.kappa = kappa;
    m.u = u;
    m.v = v;
    m.beta = beta;
    m.q = std::hypot(u, v);
    if (!(m.q > 0.0)) {
        throw DegenerateMode("u = v = 0: transverse polarization basis undefined");
    }
    m.w = std::hypot(m.q, kappa);
    m.gamma = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
    m.kappa_p = m.gamma * (kappa + I * beta * u);
    m.u_p = m.gamma * (u - I * beta * kappa);
    return m;
}

PolarizationBasis polarization_basis(const ModeGeometry& m) {
    const double q = m.q, u = m.u, v = m.v, w = m.w, k = m.kappa, beta = m.beta;
    if (!(q > 0.0)) {
        throw DegenerateMode("u = v = 0: transverse polarization basis undefined");
    }
    // D = q^2 - 2i*beta*kappa*u - beta^2*(kappa^2 + v^2); equals
    // (u'^2 + v^2)/gamma^2, so D = 0 is the boosted-frame degenerate mode.
    const cplx D = cplx(q * q - beta * beta * (k * k + v * v), -2.0 * beta * k * u);
    const double Dscale = q * q + beta * beta * (k * k + v * v);
    if (std::abs(D) < 1e-14 * Dscale) {
        std::ostringstream os;
        os << "co-moving transverse wavevector vanishes (kappa=" << k << ", u=" << u
           << ", v=" << v << ", beta=" << beta << ")";
        throw DegenerateMode(os.str());
    }
    const cplx sqrtD = std::sqrt(D);

    PolarizationBasis b;
    b.n_E1 = Vec3c(0.0, -v, u) / q;
    b.n_B1 = Vec3c(I * q * q, cplx(-u * w), cplx(-v * w)) / (k * q);
    const cplx den2 = k * sqrtD;
    b.n_E2 = Vec3c(cplx(beta * v * w), -v * (k + I * beta * u),
                   k * u - I * beta * (k * k + v * v)) /
             den2;
    b.n_B2 = Vec3c(I * q * q + beta * k * u, w * (u - I * beta * k), cplx(v * w)) / den2;
    b.lambda = (q * q - I * k * u * beta) / (q * sqrtD);
    b.nu = I * beta * v * w / (q * sqrtD);
    return b;
}

} // namespace casimir

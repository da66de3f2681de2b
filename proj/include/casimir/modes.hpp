#pragma once

#include "casimir/errors.hpp"
#include "casimir/linalg.hpp"

namespace casimir {

// One Fourier/imaginary-frequency mode. kappa is the imaginary wavenumber
// xi/c > 0; (u, v) are the transverse wavevector components; beta is the
// plate speed in units of c, directed along +y. Derived fields:
//   w       vacuum decay constant sqrt(u^2 + v^2 + kappa^2)
//   gamma   Lorentz factor
//   kappa_p = gamma*(kappa + i*beta*u)   boosted imaginary wavenumber
//   u_p     = gamma*(u - i*beta*kappa)   boosted transverse component
// The invariant kappa_p^2 + u_p^2 = kappa^2 + u^2 holds exactly.
struct ModeGeometry {
    double kappa = 0.0;
    double u = 0.0;
    double v = 0.0;
    double beta = 0.0;

    double q = 0.0;  // sqrt(u^2 + v^2)
    double w = 0.0;
    double gamma = 1.0;
    cplx kappa_p;
    cplx u_p;
};

ModeGeometry make_mode(double kappa, double u, double v, double beta);

// The four bilinearly normalized polarization vectors for left-moving waves
// at the resting plate (n_E1, n_B1) and right-moving waves at the moving
// plate (n_E2, n_B2), plus their overlaps:
//   lambda = n_E1 . n_E2,   nu = n_E1 . n_B2,   lambda^2 + nu^2 = 1.
// nu is evaluated from its closed form i*beta*v*w/(q*sqrt(D)) with the same
// sqrt(D) branch used inside n_E2/n_B2, never as sqrt(1 - lambda^2), so the
// relative sign against the basis vectors is exact by construction.
struct PolarizationBasis {
    Vec3c n_E1;
    Vec3c n_B1;
    Vec3c n_E2;
    Vec3c n_B2;
    cplx lambda;
    cplx nu;
};

PolarizationBasis polarization_basis(const ModeGeometry& mode);

} // namespace casimir

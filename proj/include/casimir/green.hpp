#pragma once

#include <array>

#include "casimir/linalg.hpp"
#include "casimir/modes.hpp"
#include "casimir/reflection.hpp"
#include "casimir/system.hpp"

namespace casimir {

// Fourier-space Green tensor value at (x, x_p) for one mode. Convention:
// the transform kernel is e^{+iu(y-y')+iv(z-z')} on inversion, so gradients
// act as (d/dx, +iu, +iv) on the first index and (d/dx', -iu, -iv) on the
// second.
struct GreenBlock {
    Mat3c matrix;
    double x = 0.0;
    double x_p = 0.0;
    ModeGeometry mode;
    bool regularized = false;
};

// Transverse dyads of the two directed evanescent plane waves:
//   right-moving (x > x', factor e^{-w(x-x')}):  direction d = (-w, iu, iv)
//   left-moving  (x < x', factor e^{+w(x-x')}):  direction d = (+w, iu, iv)
// Each equals -(1/2w kappa^2) [ d (x) d - kappa^2 1 ] = (1/2w)(1 - d d / kappa^2),
// a bilinear transverse projector: columns and rows live in the span of the
// matching polarization pair ({n_E2, n_B2} right, {n_E1, n_B1} left).
Mat3c transverse_dyad_right(const ModeGeometry& mode);
Mat3c transverse_dyad_left(const ModeGeometry& mode);

// Free-space Green tensor (no plates). Throws CoincidenceUnregularized at
// x == x_p where the directed branch is ambiguous.
GreenBlock bare_green(double x, double x_p, const ModeGeometry& mode);

// Scalar expansion data for the cavity resummation. alpha is the
// unscaled denominator inverse (it underflows harmlessly for very
// deep modes); alpha_scaled = alpha * e^{4aw} is the bounded form used in
// every assembled coefficient. Coefficient naming: c/d {plate index}{row
// polarization}{column polarization}.
struct ExpansionCoefficients {
    cplx alpha;
    cplx alpha_scaled;
    cplx lambda, nu;
    cplx c2EE, c2BB, c2EB, c2BE;
    cplx c1EE, c1BB, c1EB, c1BE;
    cplx d1EE, d1BB, d1EB, d1BE;
    cplx d2EE, d2BB, d2EB, d2BE;
};

ExpansionCoefficients expansion_coefficients(const ModeGeometry& mode,
                                             const FresnelSet& f1,
                                             const FresnelSet& f2,
                                             const PolarizationBasis& basis,
                                             double a);

// Cavity mixing matrices built from the coefficients:
//   (1 - e^{-2wa} R1 R2)^{-1} = 1 + M2,   (1 - e^{-2wa} R1 R2)^{-1} R1 = Rx N1,
//   (1 - e^{-2wa} R2 R1)^{-1} = 1 + M1,   (1 - e^{-2wa} R2 R1)^{-1} R2 = Rx N2.
Mat3c matrix_M1(const ExpansionCoefficients& ec, const PolarizationBasis& b);
Mat3c matrix_M2(const ExpansionCoefficients& ec, const PolarizationBasis& b);
Mat3c matrix_N1(const ExpansionCoefficients& ec, const PolarizationBasis& b);
Mat3c matrix_N2(const ExpansionCoefficients& ec, const PolarizationBasis& b);

// One reflected (bare-free) term of the between-plates Green tensor:
// contributes e^{w(sx*x + sxp*x_p + shift)} * C. sx/sxp are the signs of the
// x and x' exponents and double as the direction entries of the curl
// operators (d/dx -> sx*w on the first index, d/dx' -> sxp*w on the second).
struct ReflectedTerm {
    Mat3c C;
    double sx;
    double sxp;
    double shift;  // [m], added inside the exponent as w*shift
};

// The four reflected terms: M2/right, RxN2/right (image through plate 2),
// M1/left, RxN1/left (image through plate 1).
std::array<ReflectedTerm, 4> reflected_terms(const ModeGeometry& mode,
                                             const PlateSystem& system);

// Direct inverse-matrix form of the between-plates Green tensor.
GreenBlock green_direct(double x, double x_p, const ModeGeometry& mode,
                        const PlateSystem& system);

// Expanded (resummed-coefficient) form; equals green_direct identically.
GreenBlock green_expanded(double x, double x_p, const ModeGeometry& mode,
                          const PlateSystem& system);

// Bare-free between-plates Green value (the reflected terms only);
// well defined at coincidence x == x_p.
GreenBlock green_reflected(double x, double x_p, const ModeGeometry& mode,
                           const PlateSystem& system);

// G^S_ij(x, x_p) = [G_ij(x, x_p) + G_ji(x_p, x)]/2. The two inputs must be
// the same mode with swapped positions.
GreenBlock symmetrize(const GreenBlock& G, const GreenBlock& G_T);

// In-plate (x, x_p < 0, inside plate 1) machinery. The bare in-medium dyads
// carry the in-plate decay constant w1 and 1/(2 eps1 w1 kappa^2) prefactor.
Mat3c in_plate_dyad_right(const ModeGeometry& mode, cplx eps1, cplx mu1, cplx w1);
Mat3c in_plate_dyad_left(const ModeGeometry& mode, cplx eps1, cplx mu1, cplx w1);

// The single reflected term of the in-plate Green tensor:
// contributes e^{w1 (x + x_p)} * C for x, x_p < 0.
struct InPlateTerm {
    Mat3c C;
    cplx w1;
    cplx eps1;
    cplx mu1;
};
InPlateTerm in_plate_reflected_term(const ModeGeometry& mode, const PlateSystem& system);

GreenBlock green_in_plate(double x, double x_p, const ModeGeometry& mode,
                          const PlateSystem& system);

} // namespace casimir

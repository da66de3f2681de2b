#pragma once

#include <functional>

#include "casimir/green.hpp"
#include "casimir/linalg.hpp"
#include "casimir/materials.hpp"
#include "casimir/modes.hpp"
#include "casimir/system.hpp"

namespace casimir {

// Largest eigenvalue magnitude (used to test convergence of reflection sums).
double spectral_radius(const Mat3c& m);

// Multiple-reflection image sum for the gap Green tensor, built directly from
// bounce bookkeeping: bare wave + alternating reflections off the two plates.
// Order 0 keeps the two single-reflection terms; each further order appends
// one full round trip (two bounces) per chain, so the truncation error decays
// like the round-trip spectral radius per order. Reflection operators are
// taken as opaque matrix values so this path shares no code with the
// closed-form cavity inversion it is used to check.
// Throws SeriesNotConvergent when spectral_radius(e^{-2wa} R1 R2) >= 1.
GreenBlock series_green(double x, double x_p, const ModeGeometry& mode, double a,
                        const Mat3c& R1, const Mat3c& R2, int n_round_trips);

// Finite-difference residual of the vector Helmholtz operator applied to a
// Green column set supplied as a callable x -> 3x3 matrix:
//   (1/mu) curl curl G + eps kappa^2 G
// evaluated at x away from the source plane x_p (no delta contribution).
// h is the central-difference step; [lo, hi] is the domain on which green_at
// may be evaluated. Throws StepTooLarge when the stencil is too coarse for
// the domain, leaves it, or straddles the source plane.
double pde_residual(const std::function<Mat3c(double)>& green_at, double x,
                    double x_p, const ModeGeometry& mode, double h, double lo,
                    double hi, cplx eps = cplx(1.0), cplx mu = cplx(1.0));

// Reflection amplitudes recovered by solving the four tangential-field
// matching conditions at a single vacuum/medium interface (medium at rest
// filling x < 0). Independent of the closed-form Fresnel expressions.
// cross_coupling reports the spurious TE<->TM mixing magnitude (should be 0).
struct MatchedReflection {
    cplx r_E;
    cplx r_B;
    double cross_coupling;
};
MatchedReflection interface_matching_oracle(const PlateMaterial& mat,
                                            const ModeGeometry& mode);

// Full layered boundary-value solution of the static (beta = 0) two-plate
// problem: 12 wave amplitudes matched across the interfaces and the source
// plane. The source may sit in the gap (0 < x_p < a) or inside plate 1
// (x_p < 0); the field point x may be in either of those regions.
// Returns the regular part of the Green tensor at (x, x_p).
GreenBlock static_bvp_green(double x, double x_p, const ModeGeometry& mode,
                            const PlateSystem& system);

} // namespace casimir

#pragma once

#include <cstddef>

#include "casimir/green.hpp"
#include "casimir/modes.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"
#include "casimir/system.hpp"

namespace casimir {

// Integrated stress / force output. F is the xx component of the stress
// tensor on the gap side: positive values pull the plates together.
// dimensionless_F = 240 a^4 F / (hbar c pi^2) equals 1 for ideal mirrors.
struct StressResult {
    Mat3d sigma = Mat3d::Zero();  // [Pa]
    double F = 0.0;               // [Pa]
    double dimensionless_F = 0.0;
    double quad_error = 0.0;      // [Pa]
    double imag_residual = 0.0;   // [Pa]
    std::size_t evaluations = 0;
};

// Per-mode two-polarization cavity factors of the closed-form force density.
//   A_XY = (r_X1 r_Y2)^{-1} e^{2aw} - 1      (unscaled; needs r != 0)
//   B_XY = e^{2aw} - r_X1 r_Y2               (A_XY r_X1 r_Y2 = B_XY)
//   D_XY = 1 - r_X1 r_Y2 e^{-2aw}            (bounded form, = B_XY e^{-2aw})
struct ChannelFactors {
    cplx A_EE, A_BB, A_EB, A_BE;
    cplx B_EE, B_BB, B_EB, B_BE;
    cplx D_EE, D_BB, D_EB, D_BE;
};
ChannelFactors channel_factors(const ModeGeometry& mode, const FresnelSet& f1,
                               const FresnelSet& f2, double a);

// Trace-adjusted per-mode stress density in the gap (complex, single u sign),
// before the global hbar c / (4 pi^3) prefactor. Entries have units 1/m.
Mat3c stress_mode_density(double x, const ModeGeometry& mode,
                          const PlateSystem& system);

// u-folded, v-symmetrized real part of the density: the even integrand whose
// plain mode integral (times hbar c / 4 pi^3) is the stress tensor. The
// discarded odd/imaginary magnitude is added to *imag_diag when given.
Mat3d stress_integrand_between(double x, const ModeGeometry& mode,
                               const PlateSystem& system,
                               double* imag_diag = nullptr);

// Same quantities evaluated inside plate 1 (x <= 0), where the integrand
// uses the in-plate decay constant and material-weighted field correlations.
Mat3c stress_mode_density_in_plate(double x, const ModeGeometry& mode,
                                   const PlateSystem& system);
Mat3d stress_integrand_in_plate(double x, const ModeGeometry& mode,
                                const PlateSystem& system,
                                double* imag_diag = nullptr);

// Closed-form scalar per-mode force densities (units 1/m).
cplx force_mode_density_moving(const ModeGeometry& mode, const PlateSystem& system);
cplx force_mode_density_static(const ModeGeometry& mode, const PlateSystem& system);
// beta^2 coefficient of the density for nondispersive constant-response
// plates; throws DispersionNotSupported otherwise.
cplx force_mode_density_beta2(const ModeGeometry& mode, const PlateSystem& system);

// Integrated quantities. A non-positive spec.scale is replaced by 1/(2a).
StressResult stress_tensor(double x, const PlateSystem& system, QuadSpec spec);
StressResult stress_in_plate(double x, const PlateSystem& system, QuadSpec spec);
StressResult force_moving(const PlateSystem& system, QuadSpec spec);
StressResult force_static(const PlateSystem& system, QuadSpec spec);
// dF/d(beta^2) at beta = 0 in the F field (units Pa per unit beta^2).
StressResult force_beta2(const PlateSystem& system, QuadSpec spec);

} // namespace casimir

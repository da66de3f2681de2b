#pragma once

#include "casimir/linalg.hpp"
#include "casimir/materials.hpp"
#include "casimir/modes.hpp"

namespace casimir {

// Scalar Fresnel data for one plate at one mode. w_med is the in-medium
// decay constant (principal square root, Re > 0 asserted at runtime).
struct FresnelSet {
    cplx r_E;    // TE reflection coefficient
    cplx r_B;    // TM reflection coefficient
    cplx w_med;  // in-medium decay constant [1/m]
    cplx eps;    // permittivity at the evaluation argument
    cplx mu;     // permeability at the evaluation argument
};

using ReflectionOperator = Mat3c;

// Plate 1 (at rest): materials evaluated at the real argument zeta = c*kappa.
FresnelSet fresnel_plate1(const PlateMaterial& mat, const ModeGeometry& mode);

// Plate 2 (sliding): materials evaluated at the complex co-moving argument
// zeta = c*kappa_p, decay constant w2 = sqrt(u_p^2 + v^2 + eps*mu*kappa_p^2),
// but the vacuum-side decay in the coefficients is the lab-frame w.
FresnelSet fresnel_plate2(const PlateMaterial& mat, const ModeGeometry& mode);

// R1 = r_E1 P_E1 + r_B1 R_x P_B1   (acts on left-moving waves)
ReflectionOperator operator_R1(const FresnelSet& f, const PolarizationBasis& b);

// R2 = r_E2 R_x P_E2 + r_B2 R_x P_B2   (acts on right-moving waves)
ReflectionOperator operator_R2(const FresnelSet& f, const PolarizationBasis& b);

// Interface operators at x = 0 for waves inside plate 1 (static plate):
//   R_m reflects a right-moving in-plate wave back into the plate,
//   T_m transmits that wave into the vacuum gap,
//   T_1 transmits a left-moving vacuum wave into the plate.
struct InterfaceOperators {
    Mat3c R_m;
    Mat3c T_m;
    Mat3c T_1;
    cplx r_Em, r_Bm;       // in-plate reflection scalars (= -r_E1, -r_B1)
    cplx t_Em, t_Bm;       // plate -> vacuum transmission scalars
    cplx t_E1, t_B1;       // vacuum -> plate transmission scalars
    cplx w1;               // in-plate decay constant
    Vec3c n_Em;            // TE direction in the plate (equals n_E1)
    Vec3c n_Bm_plus;       // TM direction, right-moving in-plate wave
    Vec3c n_Bm_minus;      // TM direction, left-moving in-plate wave
};

InterfaceOperators interface_operators_plate1(const PlateMaterial& mat,
                                              const ModeGeometry& mode);

} // namespace casimir

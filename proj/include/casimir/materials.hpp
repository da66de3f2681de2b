#pragma once

#include <complex>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

using cplx = std::complex<double>;

// Dispersion model for one response function (electric or magnetic),
// evaluated on the imaginary frequency axis: the argument zeta corresponds
// to omega = i*zeta, so e.g. the plasma form 1 - wp^2/omega^2 becomes
// 1 + wp^2/zeta^2 and is real and >= 1 for real zeta > 0.
enum class ModelKind {
    Vacuum,
    Constant,
    Plasma,
    Drude,
    Lorentz,
    PerfectMirror,
};

struct MaterialModel {
    ModelKind kind = ModelKind::Vacuum;
    double value = 1.0;    // Constant: the constant response value
    double omega_p = 0.0;  // Plasma/Drude/Lorentz: plasma frequency [rad/s]
    double omega_0 = 0.0;  // Lorentz: resonance frequency [rad/s]
    double gamma_d = 0.0;  // Drude/Lorentz: damping rate [rad/s]

    static MaterialModel vacuum();
    static MaterialModel constant(double value);
    static MaterialModel plasma(double omega_p);
    static MaterialModel drude(double omega_p, double gamma_d);
    static MaterialModel lorentz(double omega_p, double omega_0, double gamma_d);
    // Large finite constant standing in for an ideal mirror; keeps every
    // formula finite while |r| deviates from 1 by < 1e-8 over the
    // quadrature support. The stiffness is chosen so the residual
    // beta-dependence of the mirror force, ~|r_TE deviation| ~ eps^{-1/2},
    // stays below 1e-7 relative (the TE response of any finite-eps plate
    // dies for kappa below q/sqrt(eps), and uniform motion shifts that
    // corner for the moving plate only, so the defect does not cancel
    // between F(beta) and F(0)).
    static MaterialModel perfect_mirror();

    bool is_dispersive() const;
    // Throws InvalidModel if parameters violate positivity rules.
    void validate() const;
};

inline constexpr double kPerfectMirrorEpsilon = 1e16;

// Electric and magnetic response of one plate.
struct PlateMaterial {
    MaterialModel electric;                          // epsilon(i zeta)
    MaterialModel magnetic = MaterialModel::vacuum(); // mu(i zeta)
};

// Evaluate the model at complex imaginary-frequency argument zeta [rad/s].
// Requires Re(zeta) > 0 (right half plane, where the rational forms are
// analytic and pole-free for passive media).
cplx eval_model(const MaterialModel& model, cplx zeta);

// Convenience: (epsilon, mu) of a plate at zeta.
struct Response {
    cplx eps;
    cplx mu;
};
Response eval_response(const PlateMaterial& plate, cplx zeta);

std::string to_string(ModelKind kind);

} // namespace casimir

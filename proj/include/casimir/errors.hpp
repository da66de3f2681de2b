#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Base for all domain errors so callers can catch the whole family at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- material / mode construction -------------------------------------------
struct NonPositiveFrequency : Error { using Error::Error; };
struct InvalidModel : Error { using Error::Error; };
struct DegenerateMode : Error { using Error::Error; };
struct InvalidBeta : Error { using Error::Error; };

// --- reflection / propagation ------------------------------------------------
struct BranchViolation : Error { using Error::Error; };

// --- Green function assembly --------------------------------------------------
struct PoleProximity : Error { using Error::Error; };
struct InversionFailure : Error { using Error::Error; };
struct CoincidenceUnregularized : Error { using Error::Error; };
struct MismatchedMode : Error { using Error::Error; };

// --- quadrature ----------------------------------------------------------------
struct QuadratureDivergence : Error { using Error::Error; };
struct ParityViolation : Error { using Error::Error; };

// --- stress / force -------------------------------------------------------------
struct DispersionNotSupported : Error { using Error::Error; };

// --- oracles ---------------------------------------------------------------------
struct SeriesNotConvergent : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };
struct SingularMatching : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };

// --- configuration ------------------------------------------------------------
struct SchemaError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

} // namespace casimir

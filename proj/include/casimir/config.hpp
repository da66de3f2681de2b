#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/quadrature.hpp"
#include "casimir/system.hpp"

namespace casimir {

// Parameter sweep request: vary beta or the separation over count points.
struct SweepSpec {
    std::string variable;      // "beta" or "separation"
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
    std::string spacing = "linear";  // or "log"
};

// Stress-profile sampling: count positions at fractions i/(count+1) of the gap.
struct ProfileSpec {
    int count = 9;
};

// Green-tensor dump request. Mode variables are expressed in units of the
// inverse separation (kappa = kappa_scaled / a, ...), positions as fractions
// of the gap.
struct GreenDumpSpec {
    std::vector<double> kappa_scaled{0.5, 1.0, 2.0, 1.0, 1.5, 3.0};
    std::vector<double> u_scaled{0.3, 1.0, 0.5, 2.0, 1.2, 0.8};
    std::vector<double> v_scaled{0.4, 0.7, 1.5, 1.0, 0.6, 2.0};
    std::vector<double> x_frac{0.2, 0.5, 0.8};
    double xp_frac = 0.35;
};

struct RunConfig {
    PlateSystem system;
    QuadSpec quad;
    std::optional<SweepSpec> sweep;
    ProfileSpec profile;
    GreenDumpSpec green_dump;
    std::optional<std::string> output;
};

// Parses and validates a config document. Schema violations (unknown keys,
// wrong types, missing required keys, malformed JSON) throw SchemaError;
// well-formed values outside their allowed range throw ValidationError.
// Both carry the JSON-pointer path of the offending entry.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Serializes every field explicitly; parse(serialize(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

} // namespace casimir

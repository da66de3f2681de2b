#pragma once

#include "casimir/errors.hpp"
#include "casimir/materials.hpp"

namespace casimir {

// Two parallel plates: plate 1 fills x < 0 and is at rest, plate 2 fills
// x > a and slides along +y with speed beta*c. The gap 0 < x < a is vacuum.
struct PlateSystem {
    PlateMaterial plate1;
    PlateMaterial plate2;
    double a = 0.0;     // separation [m]
    double beta = 0.0;  // plate-2 speed / c

    void validate() const {
        if (!(a > 0.0)) throw InvalidModel("plate separation must be > 0");
        if (!(beta >= 0.0 && beta < 1.0)) throw InvalidBeta("beta must lie in [0, 1)");
        plate1.electric.validate();
        plate1.magnetic.validate();
        plate2.electric.validate();
        plate2.magnetic.validate();
    }
};

} // namespace casimir

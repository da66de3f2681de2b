#include "casimir/materials.hpp"

#include <sstream>

namespace casimir {

MaterialModel MaterialModel::vacuum() { return MaterialModel{}; }

MaterialModel MaterialModel::constant(double value) {
    MaterialModel m;
    m.kind = ModelKind::Constant;
    m.value = value;
    m.validate();
    return m;
}

MaterialModel MaterialModel::plasma(double omega_p) {
    MaterialModel m;
    m.kind = ModelKind::Plasma;
    m.omega_p = omega_p;
    m.validate();
    return m;
}

MaterialModel MaterialModel::drude(double omega_p, double gamma_d) {
    MaterialModel m;
    m.kind = ModelKind::Drude;
    m.omega_p = omega_p;
    m.gamma_d = gamma_d;
    m.validate();
    return m;
}

MaterialModel MaterialModel::lorentz(double omega_p, double omega_0, double gamma_d) {
    MaterialModel m;
    m.kind = ModelKind::Lorentz;
    m.omega_p = omega_p;
    m.omega_0 = omega_0;
    m.gamma_d = gamma_d;
    m.validate();
    return m;
}

MaterialModel MaterialModel::perfect_mirror() {
    MaterialModel m;
    m.kind = ModelKind::PerfectMirror;
    m.value = kPerfectMirrorEpsilon;
    return m;
}

bool MaterialModel::is_dispersive() const {
    switch (kind) {
        case ModelKind::Vacuum:
        case ModelKind::Constant:
        case ModelKind::PerfectMirror:
            return false;
        case ModelKind::Plasma:
        case ModelKind::Drude:
        case ModelKind::Lorentz:
            return true;
    }
    return false;
}

void MaterialModel::validate() const {
    auto fail = [&](const std::string& why) {
        throw InvalidModel("material model " + to_string(kind) + ": " + why);
    };
    switch (kind) {
        case ModelKind::Vacuum:
            break;
        case ModelKind::Constant:
            if (!(value >= 1.0)) fail("constant response must be >= 1");
            break;
        case ModelKind::PerfectMirror:
            if (!(value >= 1.0)) fail("mirror surrogate must be >= 1");
            break;
        case ModelKind::Plasma:
            if (!(omega_p > 0.0)) fail("omega_p must be > 0");
            break;
        case ModelKind::Drude:
            if (!(omega_p > 0.0)) fail("omega_p must be > 0");
            if (!(gamma_d > 0.0)) fail("gamma_d must be > 0");
            break;
        case ModelKind::Lorentz:
            if (!(omega_p > 0.0)) fail("omega_p must be > 0");
            if (!(omega_0 > 0.0)) fail("omega_0 must be > 0");
            if (!(gamma_d >= 0.0)) fail("gamma_d must be >= 0");
            break;
    }
}

cplx eval_model(const MaterialModel& model, cplx zeta) {
    if (!(zeta.real() > 0.0)) {
        std::ostringstream os;
        os << "response requires Re(zeta) > 0, got zeta = " << zeta;
        throw NonPositiveFrequency(os.str());
    }
    switch (model.kind) {
        case ModelKind::Vacuum:
            return 1.0;
        case ModelKind::Constant:
        case ModelKind::PerfectMirror:
            return model.value;
        case ModelKind::Plasma:
            return 1.0 + model.omega_p * model.omega_p / (zeta * zeta);
        case ModelKind::Drude:
            return 1.0 + model.omega_p * model.omega_p / (zeta * (zeta + model.gamma_d));
        case ModelKind::Lorentz:
            return 1.0 + model.omega_p * model.omega_p /
                             (model.omega_0 * model.omega_0 + model.gamma_d * zeta + zeta * zeta);
    }
    throw InvalidModel("unknown material model kind");
}

Response eval_response(const PlateMaterial& plate, cplx zeta) {
    return Response{eval_model(plate.electric, zeta), eval_model(plate.magnetic, zeta)};
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Vacuum: return "vacuum";
        case ModelKind::Constant: return "constant";
        case ModelKind::Plasma: return "plasma";
        case ModelKind::Drude: return "drude";
        case ModelKind::Lorentz: return "lorentz";
        case ModelKind::PerfectMirror: return "perfect_mirror";
    }
    return "unknown";
}

} // namespace casimir

#include "casimir/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "casimir/errors.hpp"
#include "casimir/materials.hpp"

namespace casimir {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
}

[[noreturn]] void value_fail(const std::string& path, const std::string& what,
                             double value) {
    std::ostringstream os;
    os << path << ": " << what << " (got " << value << ")";
    throw ValidationError(os.str());
}

void check_object(const json& node, const std::string& path,
                  const std::set<std::string>& allowed) {
    if (!node.is_object()) schema_fail(path, "expected an object");
    for (const auto& item : node.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            schema_fail(path + "/" + item.key(), "unknown key");
        }
    }
}

double get_number(const json& node, const std::string& path, const char* key,
                  bool required, double fallback) {
    if (!node.contains(key)) {
        if (required) schema_fail(path + "/" + key, "missing required number");
        return fallback;
    }
    const json& v = node.at(key);
    if (!v.is_number()) schema_fail(path + "/" + key, "expected a number");
    return v.get<double>();
}

int get_int(const json& node, const std::string& path, const char* key,
            bool required, int fallback) {
    if (!node.contains(key)) {
        if (required) schema_fail(path + "/" + key, "missing required integer");
        return fallback;
    }
    const json& v = node.at(key);
    if (!v.is_number_integer()) schema_fail(path + "/" + key, "expected an integer");
    return v.get<int>();
}

std::string get_string(const json& node, const std::string& path, const char* key,
                       bool required, const std::string& fallback) {
    if (!node.contains(key)) {
        if (required) schema_fail(path + "/" + key, "missing required string");
        return fallback;
    }
    const json& v = node.at(key);
    if (!v.is_string()) schema_fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_number_array(const json& node, const std::string& path,
                                     const char* key,
                                     const std::vector<double>& fallback) {
    if (!node.contains(key)) return fallback;
    const json& v = node.at(key);
    if (!v.is_array()) schema_fail(path + "/" + key, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            schema_fail(path + "/" + key + "/" + std::to_string(i),
                        "expected a number");
        }
        out.push_back(v[i].get<double>());
    }
    return out;
}

MaterialModel parse_material(const json& node, const std::string& path) {
    check_object(node, path, {"model", "value", "omega_p", "omega_0", "gamma"});
    const std::string model = get_string(node, path, "model", true, "");

    auto forbid = [&](const char* key) {
        if (node.contains(key)) {
            schema_fail(path + "/" + key,
                        "key not allowed for model '" + model + "'");
        }
    };
    auto positive = [&](const char* key, double x) {
        if (!(x > 0.0)) value_fail(path + "/" + key, "must be positive", x);
        return x;
    };

    if (model == "vacuum" || model == "perfect_mirror") {
        forbid("value");
        forbid("omega_p");
        forbid("omega_0");
        forbid("gamma");
        return model == "vacuum" ? MaterialModel::vacuum()
                                 : MaterialModel::perfect_mirror();
    }
    if (model == "constant") {
        forbid("omega_p");
        forbid("omega_0");
        forbid("gamma");
        const double value = get_number(node, path, "value", true, 0.0);
        if (value < 1.0) value_fail(path + "/value", "must be >= 1", value);
        return MaterialModel::constant(value);
    }
    if (model == "plasma") {
        forbid("value");
        forbid("omega_0");
        forbid("gamma");
        return MaterialModel::plasma(
            positive("omega_p", get_number(node, path, "omega_p", true, 0.0)));
    }
    if (model == "drude") {
        forbid("value");
        forbid("omega_0");
        return MaterialModel::drude(
            positive("omega_p", get_number(node, path, "omega_p", true, 0.0)),
            positive("gamma", get_number(node, path, "gamma", true, 0.0)));
    }
    if (model == "lorentz") {
        forbid("value");
        const double gamma = get_number(node, path, "gamma", false, 0.0);
        if (gamma < 0.0) value_fail(path + "/gamma", "must be >= 0", gamma);
        return MaterialModel::lorentz(
            positive("omega_p", get_number(node, path, "omega_p", true, 0.0)),
            positive("omega_0", get_number(node, path, "omega_0", true, 0.0)), gamma);
    }
    schema_fail(path + "/model", "unknown material model '" + model + "'");
}

PlateMaterial parse_plate(const json& node, const std::string& path) {
    check_object(node, path, {"electric", "magnetic"});
    if (!node.contains("electric")) {
        schema_fail(path + "/electric", "missing required material");
    }
    PlateMaterial plate;
    plate.electric = parse_material(node.at("electric"), path + "/electric");
    if (node.contains("magnetic")) {
        plate.magnetic = parse_material(node.at("magnetic"), path + "/magnetic");
    } else {
        plate.magnetic = MaterialModel::vacuum();
    }
    return plate;
}

QuadSpec parse_quad(const json& node, const std::string& path) {
    check_object(node, path,
                 {"rel_tol", "abs_floor", "max_level", "scale", "fixed_level"});
    QuadSpec quad;
    quad.rel_tol = get_number(node, path, "rel_tol", false, quad.rel_tol);
    quad.abs_floor = get_number(node, path, "abs_floor", false, quad.abs_floor);
    quad.max_level = get_int(node, path, "max_level", false, quad.max_level);
    quad.scale = get_number(node, path, "scale", false, quad.scale);
    quad.fixed_level = get_int(node, path, "fixed_level", false, quad.fixed_level);
    if (!(quad.rel_tol > 0.0) || quad.rel_tol > 1e-2) {
        value_fail(path + "/rel_tol", "must lie in (0, 1e-2]", quad.rel_tol);
    }
    if (quad.abs_floor < 0.0) {
        value_fail(path + "/abs_floor", "must be >= 0", quad.abs_floor);
    }
    if (quad.max_level < 3 || quad.max_level > 16) {
        value_fail(path + "/max_level", "must lie in [3, 16]",
                   static_cast<double>(quad.max_level));
    }
    if (quad.fixed_level > 4) {
        value_fail(path + "/fixed_level", "must be at most 4",
                   static_cast<double>(quad.fixed_level));
    }
    if (quad.scale < 0.0) {
        value_fail(path + "/scale", "must be >= 0 (0 selects 1/(2a))", quad.scale);
    }
    return quad;
}

SweepSpec parse_sweep(const json& node, const std::string& path) {
    check_object(node, path, {"variable", "start", "stop", "count", "spacing"});
    SweepSpec sweep;
    sweep.variable = get_string(node, path, "variable", true, "");
    if (sweep.variable != "beta" && sweep.variable != "separation") {
        schema_fail(path + "/variable", "must be 'beta' or 'separation'");
    }
    sweep.start = get_number(node, path, "start", true, 0.0);
    sweep.stop = get_number(node, path, "stop", true, 0.0);
    sweep.count = get_int(node, path, "count", true, 0);
    sweep.spacing = get_string(node, path, "spacing", false, "linear");
    if (sweep.spacing != "linear" && sweep.spacing != "log") {
        schema_fail(path + "/spacing", "must be 'linear' or 'log'");
    }
    if (sweep.count < 2) {
        value_fail(path + "/count", "must be >= 2", static_cast<double>(sweep.count));
    }
    if (sweep.variable == "beta") {
        for (double b : {sweep.start, sweep.stop}) {
            if (b < 0.0 || b > 0.99) {
                value_fail(path + (b == sweep.start ? "/start" : "/stop"),
                           "beta must lie in [0, 0.99]", b);
            }
        }
    } else {
        if (!(sweep.start > 0.0)) {
            value_fail(path + "/start", "separation must be positive", sweep.start);
        }
        if (!(sweep.stop > 0.0)) {
            value_fail(path + "/stop", "separation must be positive", sweep.stop);
        }
    }
    if (sweep.spacing == "log" && (!(sweep.start > 0.0) || !(sweep.stop > 0.0))) {
        value_fail(path + "/spacing", "log spacing requires positive endpoints",
                   sweep.start);
    }
    return sweep;
}

ProfileSpec parse_profile(const json& node, const std::string& path) {
    check_object(node, path, {"count"});
    ProfileSpec profile;
    profile.count = get_int(node, path, "count", false, profile.count);
    if (profile.count < 1 || profile.count > 1000) {
        value_fail(path + "/count", "must lie in [1, 1000]",
                   static_cast<double>(profile.count));
    }
    return profile;
}

GreenDumpSpec parse_green_dump(const json& node, const std::string& path) {
    check_object(node, path,
                 {"kappa_scaled", "u_scaled", "v_scaled", "x_frac", "xp_frac"});
    GreenDumpSpec dump;
    dump.kappa_scaled = get_number_array(node, path, "kappa_scaled", dump.kappa_scaled);
    dump.u_scaled = get_number_array(node, path, "u_scaled", dump.u_scaled);
    dump.v_scaled = get_number_array(node, path, "v_scaled", dump.v_scaled);
    dump.x_frac = get_number_array(node, path, "x_frac", dump.x_frac);
    dump.xp_frac = get_number(node, path, "xp_frac", false, dump.xp_frac);
    if (dump.u_scaled.size() != dump.kappa_scaled.size() ||
        dump.v_scaled.size() != dump.kappa_scaled.size()) {
        schema_fail(path, "kappa_scaled, u_scaled, v_scaled must share one length");
    }
    if (dump.kappa_scaled.empty()) schema_fail(path + "/kappa_scaled", "must be non-empty");
    for (double k : dump.kappa_scaled) {
        if (!(k > 0.0)) value_fail(path + "/kappa_scaled", "must be positive", k);
    }
    if (dump.x_frac.empty()) schema_fail(path + "/x_frac", "must be non-empty");
    for (double xf : dump.x_frac) {
        if (xf <= 0.0 || xf >= 1.0 || xf == dump.xp_frac) {
            value_fail(path + "/x_frac",
                       "must lie in (0, 1) and avoid xp_frac", xf);
        }
    }
    if (dump.xp_frac <= 0.0 || dump.xp_frac >= 1.0) {
        value_fail(path + "/xp_frac", "must lie in (0, 1)", dump.xp_frac);
    }
    return dump;
}

RunConfig parse_root(const json& root) {
    check_object(root, "", {"separation", "beta", "plate1", "plate2", "quadrature",
                            "sweep", "profile", "green_dump", "output"});
    RunConfig config;
    config.system.a = get_number(root, "", "separation", true, 0.0);
    if (!(config.system.a > 0.0)) {
        value_fail("/separation", "must be positive", config.system.a);
    }
    config.system.beta = get_number(root, "", "beta", false, 0.0);
    if (config.system.beta < 0.0 || config.system.beta > 0.99) {
        value_fail("/beta", "must lie in [0, 0.99]", config.system.beta);
    }
    if (!root.contains("plate1")) schema_fail("/plate1", "missing required plate");
    if (!root.contains("plate2")) schema_fail("/plate2", "missing required plate");
    config.system.plate1 = parse_plate(root.at("plate1"), "/plate1");
    config.system.plate2 = parse_plate(root.at("plate2"), "/plate2");
    if (root.contains("quadrature")) {
        config.quad = parse_quad(root.at("quadrature"), "/quadrature");
    }
    if (root.contains("sweep")) {
        config.sweep = parse_sweep(root.at("sweep"), "/sweep");
    }
    if (root.contains("profile")) {
        config.profile = parse_profile(root.at("profile"), "/profile");
    }
    if (root.contains("green_dump")) {
        config.green_dump = parse_green_dump(root.at("green_dump"), "/green_dump");
    }
    if (root.contains("output")) {
        if (!root.at("output").is_string()) schema_fail("/output", "expected a string");
        config.output = root.at("output").get<std::string>();
    }
    try {
        config.system.validate();
    } catch (const Error& e) {
        throw ValidationError(std::string("/: ") + e.what());
    }
    return config;
}

json material_to_json(const MaterialModel& m) {
    json node;
    node["model"] = to_string(m.kind);
    switch (m.kind) {
        case ModelKind::Constant:
            node["value"] = m.value;
            break;
        case ModelKind::Plasma:
            node["omega_p"] = m.omega_p;
            break;
        case ModelKind::Drude:
            node["omega_p"] = m.omega_p;
            node["gamma"] = m.gamma_d;
            break;
        case ModelKind::Lorentz:
            node["omega_p"] = m.omega_p;
            node["omega_0"] = m.omega_0;
            node["gamma"] = m.gamma_d;
            break;
        default:
            break;
    }
    return node;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("/: invalid JSON: ") + e.what());
    }
    return parse_root(root);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("/: cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    json root;
    root["separation"] = config.system.a;
    root["beta"] = config.system.beta;
    for (const auto& [key, plate] :
         {std::pair<const char*, const PlateMaterial*>{"plate1", &config.system.plate1},
          std::pair<const char*, const PlateMaterial*>{"plate2", &config.system.plate2}}) {
        json node;
        node["electric"] = material_to_json(plate->electric);
        node["magnetic"] = material_to_json(plate->magnetic);
        root[key] = node;
    }
    root["quadrature"] = {{"rel_tol", config.quad.rel_tol},
                          {"abs_floor", config.quad.abs_floor},
                          {"max_level", config.quad.max_level},
                          {"scale", config.quad.scale},
                          {"fixed_level", config.quad.fixed_level}};
    if (config.sweep) {
        root["sweep"] = {{"variable", config.sweep->variable},
                         {"start", config.sweep->start},
                         {"stop", config.sweep->stop},
                         {"count", config.sweep->count},
                         {"spacing", config.sweep->spacing}};
    }
    root["profile"] = {{"count", config.profile.count}};
    root["green_dump"] = {{"kappa_scaled", config.green_dump.kappa_scaled},
                          {"u_scaled", config.green_dump.u_scaled},
                          {"v_scaled", config.green_dump.v_scaled},
                          {"x_frac", config.green_dump.x_frac},
                          {"xp_frac", config.green_dump.xp_frac}};
    if (config.output) {
        root["output"] = *config.output;
    }
    return root.dump(2);
}

} // namespace casimir

#include "esbgk/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "esbgk/errors.hpp"

#include "json.hpp"

namespace esbgk {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const char* where, std::initializer_list<const char*> known) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (!ok) throw ConfigError(std::string("unknown key \"") + item.key() + "\" in " + where);
    }
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    return v.get<int>();
}

std::array<double, 3> get_vec3(const json& obj, const char* key,
                               const std::array<double, 3>& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3) throw ConfigError(std::string(key) + " must be [x, y, z]");
    std::array<double, 3> out;
    for (int k = 0; k < 3; ++k) {
        if (!v[k].is_number()) throw ConfigError(std::string(key) + " entries must be numbers");
        out[k] = v[k].get<double>();
    }
    return out;
}

InitialCondition parse_ic(const json& obj) {
    require_keys(obj, "ic",
                 {"kind", "rho0", "u0", "temp0", "delta", "wave_k", "temp_axes", "rho_b", "u_b",
                  "temp_b"});
    std::string kind = obj.contains("kind") ? obj.at("kind").get<std::string>() : "smooth_wave";
    double rho0 = get_num(obj, "rho0", 1.0);
    std::array<double, 3> u0 = get_vec3(obj, "u0", {0.0, 0.0, 0.0});
    double temp0 = get_num(obj, "temp0", 1.0);
    if (kind == "uniform_maxwellian") return uniform_maxwellian(rho0, u0, temp0);
    if (kind == "smooth_wave")
        return smooth_wave(rho0, get_num(obj, "delta", 0.2), get_int(obj, "wave_k", 1), u0, temp0);
    if (kind == "anisotropic_gaussian")
        return anisotropic_gaussian(rho0, u0, get_vec3(obj, "temp_axes", {1.2, 0.9, 1.05}));
    if (kind == "two_maxwellian_mix")
        return two_maxwellian_mix(rho0, u0, temp0, get_num(obj, "rho_b", 0.5),
                                  get_vec3(obj, "u_b", {0.0, 0.0, 0.0}),
                                  get_num(obj, "temp_b", 1.0));
    throw ConfigError("unknown ic kind \"" + kind + "\"");
}

double env_num(const char* name, bool& present) {
    const char* s = std::getenv(name);
    present = s != nullptr;
    if (!present) return 0.0;
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ConfigError(std::string(name) + "=\"" + s + "\" is not a number");
    return v;
}

int env_int(const char* name, bool& present) {
    bool p = false;
    double v = env_num(name, p);
    present = p;
    if (!p) return 0;
    if (v != std::floor(v) || std::fabs(v) > 2e9)
        throw ConfigError(std::string(name) + " must be an integer");
    return static_cast<int>(v);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    require_keys(root, "config", {"grid", "scheme", "ic", "output", "converge", "threads", "seed"});

    RunConfig cfg;
    if (root.contains("grid")) {
        const json& g = root.at("grid");
        require_keys(g, "grid", {"n_cells", "j_half", "dv"});
        cfg.n_cells = get_int(g, "n_cells", cfg.n_cells);
        cfg.j_half = get_int(g, "j_half", cfg.j_half);
        cfg.dv = get_num(g, "dv", cfg.dv);
    }
    if (root.contains("scheme")) {
        const json& s = root.at("scheme");
        require_keys(s, "scheme", {"kappa", "nu", "dt", "final_time", "q_weight", "n_steps"});
        cfg.kappa = get_num(s, "kappa", cfg.kappa);
        cfg.nu = get_num(s, "nu", cfg.nu);
        cfg.dt = get_num(s, "dt", cfg.dt);
        cfg.final_time = get_num(s, "final_time", cfg.final_time);
        cfg.q_weight = get_num(s, "q_weight", cfg.q_weight);
        cfg.n_steps = get_int(s, "n_steps", cfg.n_steps);
    }
    if (root.contains("ic")) cfg.ic = parse_ic(root.at("ic"));
    if (root.contains("output")) {
        const json& o = root.at("output");
        require_keys(o, "output", {"dir", "state_cadence"});
        if (o.contains("dir")) cfg.output.dir = o.at("dir").get<std::string>();
        cfg.output.state_cadence = get_int(o, "state_cadence", cfg.output.state_cadence);
        if (cfg.output.state_cadence < 0) throw ConfigError("state_cadence must be >= 0");
    }
    if (root.contains("converge")) {
        const json& c = root.at("converge");
        require_keys(c, "converge", {"coupling", "steps_per_level", "n_cells_fixed", "final_time"});
        if (c.contains("coupling")) {
            std::string s = c.at("coupling").get<std::string>();
            if (s == "dx_equals_dt")
                cfg.converge.coupling = LadderCoupling::DxEqualsDt;
            else if (s == "fixed_dv_refine_dt")
                cfg.converge.coupling = LadderCoupling::FixedDvRefineDt;
            else
                throw ConfigError("unknown coupling \"" + s + "\"");
        }
        if (c.contains("steps_per_level")) {
            const json& arr = c.at("steps_per_level");
            if (!arr.is_array() || arr.empty())
                throw ConfigError("steps_per_level must be a non-empty array");
            cfg.converge.steps_per_level.clear();
            for (const json& v : arr) {
                if (!v.is_number_integer())
                    throw ConfigError("steps_per_level entries must be integers");
                cfg.converge.steps_per_level.push_back(v.get<int>());
            }
        }
        cfg.converge.n_cells_fixed = get_int(c, "n_cells_fixed", cfg.converge.n_cells_fixed);
        cfg.converge.final_time = get_num(c, "final_time", cfg.converge.final_time);
    }
    cfg.threads = get_int(root, "threads", cfg.threads);
    if (root.contains("seed")) {
        const json& v = root.at("seed");
        if (!v.is_number_unsigned() && !v.is_number_integer())
            throw ConfigError("seed must be an integer");
        cfg.seed = v.get<std::uint64_t>();
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_env_overrides(RunConfig& cfg) {
    bool p = false;
    double v;
    if ((v = env_num("ESBGK_KAPPA", p)); p) cfg.kappa = v;
    if ((v = env_num("ESBGK_NU", p)); p) cfg.nu = v;
    if ((v = env_num("ESBGK_DT", p)); p) cfg.dt = v;
    if ((v = env_num("ESBGK_FINALTIME", p)); p) cfg.final_time = v;
    if ((v = env_num("ESBGK_DV", p)); p) cfg.dv = v;
    if ((v = env_num("ESBGK_QWEIGHT", p)); p) cfg.q_weight = v;
    int n;
    if ((n = env_int("ESBGK_NSTEPS", p)); p) cfg.n_steps = n;
    if ((n = env_int("ESBGK_NCELLS", p)); p) cfg.n_cells = n;
    if ((n = env_int("ESBGK_JHALF", p)); p) cfg.j_half = n;
    if ((n = env_int("ESBGK_THREADS", p)); p) cfg.threads = n;
    if ((n = env_int("ESBGK_SEED", p)); p) cfg.seed = static_cast<std::uint64_t>(n);
    if (const char* s = std::getenv("ESBGK_OUT")) cfg.output.dir = s;
}

void finalize_config(RunConfig& cfg) {
    if (cfg.n_steps < 0) throw ConfigError("n_steps must be >= 0");
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    if (cfg.n_cells < 2) throw ConfigError("n_cells must be >= 2");
    if (cfg.dt < 0.0 || cfg.final_time < 0.0)
        throw ConfigError("dt and final_time cannot be negative");
    if (cfg.dt == 0.0) {
        cfg.dt = (cfg.final_time > 0.0 && cfg.n_steps > 0) ? cfg.final_time / cfg.n_steps
                                                           : 1.0 / cfg.n_cells;  // dx
    }
    if (cfg.final_time > 0.0) {
        double gap = std::fabs(cfg.n_steps * cfg.dt - cfg.final_time);
        if (gap > 1e-12 * std::max(1.0, std::fabs(cfg.final_time)))
            throw ConfigError("n_steps * dt differs from final_time by " + std::to_string(gap));
    }
    // range failures on config-borne values are configuration errors, not
    // solver failures; reuse the scheme's own validation
    try {
        (void)make_scheme_params(cfg.kappa, cfg.nu, cfg.dt, cfg.q_weight, cfg.n_steps);
    } catch (const ParamOutOfRange& e) {
        throw ConfigError(e.what());
    }
}

std::string config_json(const RunConfig& cfg) {
    json ic;
    switch (cfg.ic.kind) {
        case ICKind::UniformMaxwellian:
            ic = {{"kind", "uniform_maxwellian"}};
            break;
        case ICKind::SmoothWave:
            ic = {{"kind", "smooth_wave"}, {"delta", cfg.ic.delta}, {"wave_k", cfg.ic.wave_k}};
            break;
        case ICKind::AnisotropicGaussian:
            ic = {{"kind", "anisotropic_gaussian"}, {"temp_axes", cfg.ic.temp_axes}};
            break;
        case ICKind::TwoMaxwellianMix:
            ic = {{"kind", "two_maxwellian_mix"},
                  {"rho_b", cfg.ic.rho_b},
                  {"u_b", cfg.ic.u_b},
                  {"temp_b", cfg.ic.temp_b}};
            break;
    }
    ic["rho0"] = cfg.ic.rho0;
    ic["u0"] = cfg.ic.u0;
    ic["temp0"] = cfg.ic.temp0;

    json j = {
        {"grid", {{"n_cells", cfg.n_cells}, {"j_half", cfg.j_half}, {"dv", cfg.dv}}},
        {"scheme",
         {{"kappa", cfg.kappa},
          {"nu", cfg.nu},
          {"dt", cfg.dt},
          {"final_time", cfg.final_time},
          {"q_weight", cfg.q_weight},
          {"n_steps", cfg.n_steps}}},
        {"ic", ic},
        {"output", {{"dir", cfg.output.dir}, {"state_cadence", cfg.output.state_cadence}}},
        {"converge",
         {{"coupling", cfg.converge.coupling == LadderCoupling::DxEqualsDt
                           ? "dx_equals_dt"
                           : "fixed_dv_refine_dt"},
          {"steps_per_level", cfg.converge.steps_per_level},
          {"n_cells_fixed", cfg.converge.n_cells_fixed},
          {"final_time", cfg.converge.final_time}}},
        {"threads", cfg.threads},
        {"seed", cfg.seed},
    };
    return j.dump(2);
}

}  // namespace esbgk

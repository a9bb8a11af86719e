#include "srr/scenario.hpp"

#include <json.hpp>

#include <set>

namespace srr {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where, "expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where, "unknown key '" + key + "'");
}

double get_num(const json& obj, const std::string& where, const std::string& key,
               std::optional<double> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(where, "missing required field '" + key + "'");
    }
    if (!obj[key].is_number()) throw ConfigError(where + "." + key, "expected a number");
    return obj[key].get<double>();
}

std::string get_str(const json& obj, const std::string& where, const std::string& key,
                    std::optional<std::string> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(where, "missing required field '" + key + "'");
    }
    if (!obj[key].is_string()) throw ConfigError(where + "." + key, "expected a string");
    return obj[key].get<std::string>();
}

FourVector get_vec4(const json& obj, const std::string& where, const std::string& key,
                    std::optional<FourVector> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(where, "missing required field '" + key + "'");
    }
    const json& a = obj[key];
    if (!a.is_array() || a.size() != 4) throw ConfigError(where + "." + key, "expected [x0,x1,x2,x3]");
    FourVector v;
    for (int i = 0; i < 4; ++i) {
        if (!a[i].is_number()) throw ConfigError(where + "." + key, "expected numbers");
        v(i) = a[i].get<double>();
    }
    return v;
}

std::vector<double> get_num_list(const json& obj, const std::string& where,
                                 const std::string& key) {
    if (!obj.contains(key)) throw ConfigError(where, "missing required field '" + key + "'");
    const json& a = obj[key];
    if (!a.is_array() || a.empty()) throw ConfigError(where + "." + key, "expected a nonempty array");
    std::vector<double> out;
    for (const auto& x : a) {
        if (!x.is_number()) throw ConfigError(where + "." + key, "expected numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

ScenarioKind kind_of(const std::string& s, const std::string& where) {
    if (s == "qtable") return ScenarioKind::QTable;
    if (s == "nelson1d") return ScenarioKind::Nelson1D;
    if (s == "ensemble4d") return ScenarioKind::Ensemble4D;
    if (s == "classical") return ScenarioKind::Classical;
    if (s == "classical_limit_sweep") return ScenarioKind::ClassicalLimitSweep;
    throw ConfigError(where, "unknown scenario kind '" + s + "'");
}

std::string kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::QTable: return "qtable";
        case ScenarioKind::Nelson1D: return "nelson1d";
        case ScenarioKind::Ensemble4D: return "ensemble4d";
        case ScenarioKind::Classical: return "classical";
        case ScenarioKind::ClassicalLimitSweep: return "classical_limit_sweep";
    }
    return "?";
}

PhysicalParams parse_physics(const json& j) {
    reject_unknown(j, "physics", {"hbar_eff", "lambda", "tau0", "charge_e", "m0"});
    PhysicalParams p;
    p.m0 = get_num(j, "physics", "m0", 1.0);
    p.tau0 = get_num(j, "physics", "tau0", 0.0);
    p.charge_e = get_num(j, "physics", "charge_e", 1.0);
    const bool has_h = j.contains("hbar_eff"), has_l = j.contains("lambda");
    if (has_h) p.hbar_eff = get_num(j, "physics", "hbar_eff");
    if (has_l) {
        const double lam = get_num(j, "physics", "lambda");
        if (lam < 0.0) throw ConfigError("physics.lambda", "must be >= 0");
        const double h_from_l = lam * lam * p.m0;
        if (has_h && std::abs(h_from_l - p.hbar_eff) > 1e-12 * std::max(1.0, p.hbar_eff))
            throw ConfigError("physics", "lambda and hbar_eff disagree: lambda^2 m0 = " +
                                             std::to_string(h_from_l) + " vs hbar_eff = " +
                                             std::to_string(p.hbar_eff));
        p.hbar_eff = h_from_l;
    }
    if (!has_h && !has_l) p.hbar_eff = 1.0;
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw ConfigError("physics", e.what());
    }
    return p;
}

FieldSpecCfg parse_field(const json& j) {
    reject_unknown(j, "field", {"kind", "b_z", "e0", "a0", "omega", "envelope", "cycles"});
    FieldSpecCfg f;
    f.kind = get_str(j, "field", "kind");
    if (f.kind == "vacuum") {
    } else if (f.kind == "constant_magnetic") {
        f.b_z = get_num(j, "field", "b_z");
    } else if (f.kind == "constant_crossed") {
        f.e0 = get_num(j, "field", "e0");
    } else if (f.kind == "plane_wave") {
        f.a0 = get_num(j, "field", "a0");
        f.omega = get_num(j, "field", "omega", 1.0);
        if (f.omega <= 0.0) throw ConfigError("field.omega", "must be > 0");
        f.envelope = get_str(j, "field", "envelope", "infinite");
        if (f.envelope != "infinite" && f.envelope != "sin2")
            throw ConfigError("field.envelope", "expected 'infinite' or 'sin2'");
        f.cycles = get_num(j, "field", "cycles", 0.0);
        if (f.envelope == "sin2" && f.cycles <= 0.0)
            throw ConfigError("field.cycles", "sin2 envelope needs cycles > 0");
    } else {
        throw ConfigError("field.kind", "unknown field kind '" + f.kind + "'");
    }
    return f;
}

WavefunctionCfg parse_wavefunction(const json& j) {
    reject_unknown(j, "wavefunction", {"kind", "p", "sigma", "displacement"});
    WavefunctionCfg w;
    w.kind = get_str(j, "wavefunction", "kind");
    const std::set<std::string> kinds = {"free_particle",       "scalar_volkov",
                                         "oscillator_ground",   "oscillator_coherent",
                                         "oscillator_excited1", "rotor"};
    if (!kinds.count(w.kind))
        throw ConfigError("wavefunction.kind", "unknown wavefunction kind '" + w.kind + "'");
    if (w.kind == "free_particle" || w.kind == "scalar_volkov")
        w.p = get_vec4(j, "wavefunction", "p");
    if (w.kind.rfind("oscillator", 0) == 0) {
        w.sigma = get_num(j, "wavefunction", "sigma", 1.0);
        if (w.sigma <= 0.0) throw ConfigError("wavefunction.sigma", "must be > 0");
        w.displacement = get_num(j, "wavefunction", "displacement", 0.0);
    }
    return w;
}

InitialCfg parse_initial(const json& j) {
    reject_unknown(j, "initial", {"kind", "center", "sigma", "box_lo", "box_hi"});
    InitialCfg c;
    c.kind = get_str(j, "initial", "kind", "point");
    if (c.kind == "point") {
        c.center = get_vec4(j, "initial", "center", FourVector::Zero());
    } else if (c.kind == "gaussian") {
        c.center = get_vec4(j, "initial", "center", FourVector::Zero());
        c.sigma = get_num(j, "initial", "sigma");
        if (c.sigma <= 0.0) throw ConfigError("initial.sigma", "must be > 0");
    } else if (c.kind == "box") {
        c.box_lo = get_vec4(j, "initial", "box_lo");
        c.box_hi = get_vec4(j, "initial", "box_hi");
        for (int i = 0; i < 4; ++i)
            if (c.box_hi(i) < c.box_lo(i)) throw ConfigError("initial.box_hi", "must be >= box_lo");
    } else {
        throw ConfigError("initial.kind", "unknown initial kind '" + c.kind + "'");
    }
    return c;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError("document", std::string("not valid JSON: ") + e.what());
    }
    reject_unknown(j, "document",
                   {"name", "kind", "physics", "field", "wavefunction", "initial", "tau_grid",
                    "ensemble", "qtable", "nelson", "classical", "sweep", "estimators", "seed",
                    "output_dir"});
    Scenario s;
    s.name = get_str(j, "document", "name");
    s.kind = kind_of(get_str(j, "document", "kind"), "document.kind");
    if (j.contains("physics")) s.physics = parse_physics(j["physics"]);
    if (j.contains("field")) s.field = parse_field(j["field"]);
    if (j.contains("wavefunction")) s.wavefunction = parse_wavefunction(j["wavefunction"]);
    if (j.contains("initial")) s.initial = parse_initial(j["initial"]);

    if (j.contains("tau_grid")) {
        const json& g = j["tau_grid"];
        reject_unknown(g, "tau_grid", {"start", "stop", "snapshots"});
        s.tau_grid.start = get_num(g, "tau_grid", "start", 0.0);
        s.tau_grid.stop = get_num(g, "tau_grid", "stop");
        s.tau_grid.snapshots = int(get_num(g, "tau_grid", "snapshots", 11.0));
        if (s.tau_grid.stop <= s.tau_grid.start)
            throw ConfigError("tau_grid.stop", "must exceed start");
        if (s.tau_grid.snapshots < 2) throw ConfigError("tau_grid.snapshots", "need >= 2");
    }
    if (j.contains("ensemble")) {
        const json& g = j["ensemble"];
        reject_unknown(g, "ensemble", {"n_paths", "dt", "direction"});
        const double n = get_num(g, "ensemble", "n_paths");
        if (n < 1.0) throw ConfigError("ensemble.n_paths", "must be >= 1");
        s.ensemble.n_paths = std::size_t(n);
        s.ensemble.dt = get_num(g, "ensemble", "dt", 1e-3);
        if (s.ensemble.dt <= 0.0) throw ConfigError("ensemble.dt", "must be > 0");
        s.ensemble.direction = get_str(g, "ensemble", "direction", "forward");
        if (s.ensemble.direction != "forward" && s.ensemble.direction != "backward")
            throw ConfigError("ensemble.direction", "expected 'forward' or 'backward'");
    }
    if (j.contains("qtable")) {
        const json& g = j["qtable"];
        reject_unknown(g, "qtable",
                       {"intensities_W_cm2", "energies_MeV", "outer_points", "inner_points"});
        s.qtable.intensities_W_cm2 = get_num_list(g, "qtable", "intensities_W_cm2");
        s.qtable.energies_MeV = get_num_list(g, "qtable", "energies_MeV");
        s.qtable.outer_points = int(get_num(g, "qtable", "outer_points", 32.0));
        s.qtable.inner_points = int(get_num(g, "qtable", "inner_points", 32.0));
        for (double v : s.qtable.intensities_W_cm2)
            if (v <= 0.0) throw ConfigError("qtable.intensities_W_cm2", "must be > 0");
        for (double v : s.qtable.energies_MeV)
            if (v <= 0.0) throw ConfigError("qtable.energies_MeV", "must be > 0");
    }
    if (j.contains("nelson")) {
        const json& g = j["nelson"];
        reject_unknown(g, "nelson",
                       {"n_paths", "t_stop", "dt", "snapshots", "x0_center", "x0_sigma", "xmin",
                        "xmax", "bins"});
        const double n = get_num(g, "nelson", "n_paths");
        if (n < 1.0) throw ConfigError("nelson.n_paths", "must be >= 1");
        s.nelson.n_paths = std::size_t(n);
        s.nelson.t_stop = get_num(g, "nelson", "t_stop");
        if (s.nelson.t_stop <= 0.0) throw ConfigError("nelson.t_stop", "must be > 0");
        s.nelson.dt = get_num(g, "nelson", "dt", 5e-3);
        if (s.nelson.dt <= 0.0) throw ConfigError("nelson.dt", "must be > 0");
        s.nelson.snapshots = int(get_num(g, "nelson", "snapshots", 6.0));
        if (s.nelson.snapshots < 2) throw ConfigError("nelson.snapshots", "need >= 2");
        s.nelson.x0_center = get_num(g, "nelson", "x0_center", 0.0);
        s.nelson.x0_sigma = get_num(g, "nelson", "x0_sigma", 1.0);
        if (s.nelson.x0_sigma < 0.0) throw ConfigError("nelson.x0_sigma", "must be >= 0");
        s.nelson.xmin = get_num(g, "nelson", "xmin", -4.0);
        s.nelson.xmax = get_num(g, "nelson", "xmax", 4.0);
        if (s.nelson.xmax <= s.nelson.xmin) throw ConfigError("nelson.xmax", "must exceed xmin");
        s.nelson.bins = int(get_num(g, "nelson", "bins", 0.0));
        if (s.nelson.bins != 0 && s.nelson.bins < 3)
            throw ConfigError("nelson.bins", "need >= 3, or 0 for Scott's rule");
    }
    if (j.contains("classical")) {
        const json& g = j["classical"];
        reject_unknown(g, "classical", {"mode", "gamma0", "a0_magnitude", "t_stop", "dt", "radius"});
        s.classical.mode = get_str(g, "classical", "mode", "ll");
        if (s.classical.mode != "ll" && s.classical.mode != "lad_forward" &&
            s.classical.mode != "lad_reduced")
            throw ConfigError("classical.mode", "expected ll | lad_forward | lad_reduced");
        s.classical.gamma0 = get_num(g, "classical", "gamma0", 10.0);
        if (s.classical.gamma0 < 1.0) throw ConfigError("classical.gamma0", "must be >= 1");
        s.classical.a0_magnitude = get_num(g, "classical", "a0_magnitude", 0.0);
        s.classical.t_stop = get_num(g, "classical", "t_stop");
        if (s.classical.t_stop <= 0.0) throw ConfigError("classical.t_stop", "must be > 0");
        s.classical.dt = get_num(g, "classical", "dt", 1e-3);
        if (s.classical.dt <= 0.0) throw ConfigError("classical.dt", "must be > 0");
        s.classical.radius = get_num(g, "classical", "radius", 0.0);
    }
    if (j.contains("sweep")) {
        const json& g = j["sweep"];
        reject_unknown(g, "sweep", {"lambdas", "n_paths", "dt", "t_stop", "snapshots", "radius"});
        s.sweep.lambdas = get_num_list(g, "sweep", "lambdas");
        for (double l : s.sweep.lambdas)
            if (l <= 0.0) throw ConfigError("sweep.lambdas", "must be > 0");
        const double n = get_num(g, "sweep", "n_paths", 10000.0);
        if (n < 1.0) throw ConfigError("sweep.n_paths", "must be >= 1");
        s.sweep.n_paths = std::size_t(n);
        s.sweep.dt = get_num(g, "sweep", "dt", 2e-4);
        if (s.sweep.dt <= 0.0) throw ConfigError("sweep.dt", "must be > 0");
        s.sweep.t_stop = get_num(g, "sweep", "t_stop", s.sweep.t_stop);
        if (s.sweep.t_stop <= 0.0) throw ConfigError("sweep.t_stop", "must be > 0");
        s.sweep.snapshots = int(get_num(g, "sweep", "snapshots", 17.0));
        if (s.sweep.snapshots < 5) throw ConfigError("sweep.snapshots", "need >= 5");
        s.sweep.radius = get_num(g, "sweep", "radius", 1.0);
        if (s.sweep.radius <= 0.0) throw ConfigError("sweep.radius", "must be > 0");
    }
    if (j.contains("estimators")) {
        const json& g = j["estimators"];
        reject_unknown(g, "estimators",
                       {"mean_trajectory", "lorentz_invariant", "ehrenfest", "pomega", "rr_field",
                        "power", "partial_integration", "epsilon"});
        const auto flag = [&](const char* key) {
            if (!g.contains(key)) return false;
            if (!g[key].is_boolean())
                throw ConfigError(std::string("estimators.") + key, "expected a boolean");
            return g[key].get<bool>();
        };
        s.estimators.mean_trajectory = flag("mean_trajectory");
        s.estimators.lorentz_invariant = flag("lorentz_invariant");
        s.estimators.ehrenfest = flag("ehrenfest");
        s.estimators.pomega = flag("pomega");
        s.estimators.rr_field = flag("rr_field");
        s.estimators.power = flag("power");
        s.estimators.partial_integration = flag("partial_integration");
        s.estimators.epsilon = get_num(g, "estimators", "epsilon", 0.0);
        if (s.estimators.epsilon < 0.0) throw ConfigError("estimators.epsilon", "must be >= 0");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    s.output_dir = get_str(j, "document", "output_dir", "out");

    validate_scenario(s);
    return s;
}

void validate_scenario(const Scenario& s) {
    if (s.name.empty()) throw ConfigError("name", "must be nonempty");
    switch (s.kind) {
        case ScenarioKind::QTable:
            if (s.qtable.intensities_W_cm2.empty() || s.qtable.energies_MeV.empty())
                throw ConfigError("qtable", "qtable scenarios need intensity and energy grids");
            break;
        case ScenarioKind::Nelson1D:
            if (s.wavefunction.kind.rfind("oscillator", 0) != 0)
                throw ConfigError("wavefunction.kind", "nelson1d needs an oscillator state");
            break;
        case ScenarioKind::Ensemble4D:
            if (s.wavefunction.kind == "rotor" && s.field.kind != "constant_magnetic")
                throw ConfigError("wavefunction.kind", "rotor drift needs a constant_magnetic field");
            if (s.wavefunction.kind == "scalar_volkov" && s.field.kind != "plane_wave")
                throw ConfigError("wavefunction.kind", "scalar_volkov needs a plane_wave field");
            break;
        case ScenarioKind::Classical:
            if (s.classical.mode == "lad_forward" && s.physics.tau0 <= 0.0)
                throw ConfigError("physics.tau0", "lad_forward needs tau0 > 0");
            break;
        case ScenarioKind::ClassicalLimitSweep:
            if (s.sweep.lambdas.empty()) throw ConfigError("sweep.lambdas", "must be nonempty");
            if (s.field.kind != "constant_magnetic")
                throw ConfigError("field.kind", "the sweep runs in a constant magnetic field");
            break;
    }
}

std::string serialize_scenario(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["kind"] = kind_name(s.kind);
    j["physics"] = {{"m0", s.physics.m0},
                    {"hbar_eff", s.physics.hbar_eff},
                    {"tau0", s.physics.tau0},
                    {"charge_e", s.physics.charge_e}};
    j["field"] = {{"kind", s.field.kind}};
    if (s.field.kind == "constant_magnetic") j["field"]["b_z"] = s.field.b_z;
    if (s.field.kind == "constant_crossed") j["field"]["e0"] = s.field.e0;
    if (s.field.kind == "plane_wave") {
        j["field"]["a0"] = s.field.a0;
        j["field"]["omega"] = s.field.omega;
        j["field"]["envelope"] = s.field.envelope;
        if (s.field.envelope == "sin2") j["field"]["cycles"] = s.field.cycles;
    }
    j["wavefunction"] = {{"kind", s.wavefunction.kind}};
    if (s.wavefunction.kind == "free_particle" || s.wavefunction.kind == "scalar_volkov")
        j["wavefunction"]["p"] = {s.wavefunction.p(0), s.wavefunction.p(1), s.wavefunction.p(2),
                                  s.wavefunction.p(3)};
    if (s.wavefunction.kind.rfind("oscillator", 0) == 0) {
        j["wavefunction"]["sigma"] = s.wavefunction.sigma;
        j["wavefunction"]["displacement"] = s.wavefunction.displacement;
    }
    j["initial"] = {{"kind", s.initial.kind}};
    if (s.initial.kind == "point" || s.initial.kind == "gaussian")
        j["initial"]["center"] = {s.initial.center(0), s.initial.center(1), s.initial.center(2),
                                  s.initial.center(3)};
    if (s.initial.kind == "gaussian") j["initial"]["sigma"] = s.initial.sigma;
    if (s.initial.kind == "box") {
        j["initial"]["box_lo"] = {s.initial.box_lo(0), s.initial.box_lo(1), s.initial.box_lo(2),
                                  s.initial.box_lo(3)};
        j["initial"]["box_hi"] = {s.initial.box_hi(0), s.initial.box_hi(1), s.initial.box_hi(2),
                                  s.initial.box_hi(3)};
    }
    j["tau_grid"] = {{"start", s.tau_grid.start},
                     {"stop", s.tau_grid.stop},
                     {"snapshots", s.tau_grid.snapshots}};
    j["ensemble"] = {{"n_paths", s.ensemble.n_paths},
                     {"dt", s.ensemble.dt},
                     {"direction", s.ensemble.direction}};
    if (s.kind == ScenarioKind::QTable)
        j["qtable"] = {{"intensities_W_cm2", s.qtable.intensities_W_cm2},
                       {"energies_MeV", s.qtable.energies_MeV},
                       {"outer_points", s.qtable.outer_points},
                       {"inner_points", s.qtable.inner_points}};
    if (s.kind == ScenarioKind::Nelson1D)
        j["nelson"] = {{"n_paths", s.nelson.n_paths}, {"t_stop", s.nelson.t_stop},
                       {"dt", s.nelson.dt},           {"snapshots", s.nelson.snapshots},
                       {"x0_center", s.nelson.x0_center}, {"x0_sigma", s.nelson.x0_sigma},
                       {"xmin", s.nelson.xmin},       {"xmax", s.nelson.xmax},
                       {"bins", s.nelson.bins}};
    if (s.kind == ScenarioKind::Classical)
        j["classical"] = {{"mode", s.classical.mode},
                          {"gamma0", s.classical.gamma0},
                          {"a0_magnitude", s.classical.a0_magnitude},
                          {"t_stop", s.classical.t_stop},
                          {"dt", s.classical.dt},
                          {"radius", s.classical.radius}};
    if (s.kind == ScenarioKind::ClassicalLimitSweep)
        j["sweep"] = {{"lambdas", s.sweep.lambdas},   {"n_paths", s.sweep.n_paths},
                      {"dt", s.sweep.dt},             {"t_stop", s.sweep.t_stop},
                      {"snapshots", s.sweep.snapshots}, {"radius", s.sweep.radius}};
    j["estimators"] = {{"mean_trajectory", s.estimators.mean_trajectory},
                       {"lorentz_invariant", s.estimators.lorentz_invariant},
                       {"ehrenfest", s.estimators.ehrenfest},
                       {"pomega", s.estimators.pomega},
                       {"rr_field", s.estimators.rr_field},
                       {"power", s.estimators.power},
                       {"partial_integration", s.estimators.partial_integration},
                       {"epsilon", s.estimators.epsilon}};
    j["seed"] = s.seed;
    j["output_dir"] = s.output_dir;
    return j.dump(2);
}

std::uint64_t config_hash(const Scenario& s) {
    const std::string text = serialize_scenario(s);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------------------

namespace {

const char* kFigure2 = R"({
  "name": "figure2",
  "kind": "qtable",
  "physics": {"hbar_eff": 1.0, "tau0": 0.0, "charge_e": 1.0},
  "qtable": {
    "intensities_W_cm2": [1e18, 1e19, 1e20, 1e21, 1e22, 1e23],
    "energies_MeV": [1, 5, 10, 50, 100, 300, 600, 1000, 2000, 4000],
    "outer_points": 32,
    "inner_points": 32
  },
  "seed": 1,
  "output_dir": "out"
})";

const char* kNelsonHo = R"({
  "name": "nelson-ho",
  "kind": "nelson1d",
  "physics": {"hbar_eff": 1.0, "tau0": 0.0, "charge_e": 1.0},
  "wavefunction": {"kind": "oscillator_ground", "sigma": 1.0},
  "nelson": {
    "n_paths": 100000, "t_stop": 50.0, "dt": 0.005, "snapshots": 6,
    "x0_center": 0.0, "x0_sigma": 1.0, "xmin": -4.0, "xmax": 4.0, "bins": 80
  },
  "seed": 20260801,
  "output_dir": "out"
})";

const char* kClassicalLimitSweep = R"({
  "name": "classical-limit-sweep",
  "kind": "classical_limit_sweep",
  "physics": {"tau0": 0.0, "charge_e": 1.0},
  "field": {"kind": "constant_magnetic", "b_z": 1.0},
  "sweep": {
    "lambdas": [0.3, 0.1, 0.03, 0.01],
    "n_paths": 10000, "dt": 0.0002, "t_stop": 3.141592653589793,
    "snapshots": 17, "radius": 1.0
  },
  "seed": 20260802,
  "output_dir": "out"
})";

const char* kSynchrotronLl = R"({
  "name": "synchrotron-ll",
  "kind": "classical",
  "physics": {"tau0": 0.001, "charge_e": 1.0},
  "field": {"kind": "constant_magnetic", "b_z": 1.0},
  "classical": {"mode": "ll", "gamma0": 10.0, "t_stop": 6.283185307179586, "dt": 0.003141592653589793},
  "seed": 1,
  "output_dir": "out"
})";

const char* kRunawayDemo = R"({
  "name": "runaway-demo",
  "kind": "classical",
  "physics": {"tau0": 0.01, "charge_e": 1.0},
  "field": {"kind": "vacuum"},
  "classical": {"mode": "lad_forward", "gamma0": 1.0, "a0_magnitude": 1.0, "t_stop": 0.12, "dt": 5e-05},
  "seed": 1,
  "output_dir": "out"
})";

const char* kPomegaConstB = R"({
  "name": "pomega-constB",
  "kind": "ensemble4d",
  "physics": {"hbar_eff": 0.0004, "tau0": 0.001, "charge_e": 1.0},
  "field": {"kind": "constant_magnetic", "b_z": 1.0},
  "wavefunction": {"kind": "rotor"},
  "initial": {"kind": "point", "center": [0.0, 1.0, 0.0, 0.0]},
  "tau_grid": {"start": 0.0, "stop": 1.5707963267948966, "snapshots": 33},
  "ensemble": {"n_paths": 10000, "dt": 0.0002, "direction": "forward"},
  "estimators": {
    "mean_trajectory": true, "ehrenfest": true, "pomega": true,
    "rr_field": true, "power": true, "epsilon": 0.05
  },
  "seed": 20260803,
  "output_dir": "out"
})";

}  // namespace

std::vector<std::string> list_scenarios() {
    return {"figure2", "classical-limit-sweep", "nelson-ho", "synchrotron-ll", "runaway-demo",
            "pomega-constB"};
}

std::string builtin_scenario_text(const std::string& name) {
    if (name == "figure2") return kFigure2;
    if (name == "nelson-ho") return kNelsonHo;
    if (name == "classical-limit-sweep") return kClassicalLimitSweep;
    if (name == "synchrotron-ll") return kSynchrotronLl;
    if (name == "runaway-demo") return kRunawayDemo;
    if (name == "pomega-constB") return kPomegaConstB;
    throw ConfigError("builtin", "unknown scenario '" + name + "'");
}

Scenario builtin_scenario(const std::string& name) {
    return parse_scenario(builtin_scenario_text(name));
}

}  // namespace srr

#include "rabsim/scenario.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "rabsim/hamiltonian.hpp"

namespace rabsim {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_keys(const json& obj, const char* where,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

double require_number(const json& obj, const char* where, const std::string& key) {
  if (!obj.at(key).is_number())
    throw ConfigError("key '" + key + "' in " + where + " must be a number");
  return obj.at(key).get<double>();
}

std::optional<double> opt_number(const json& obj, const char* where,
                                 const std::string& key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return require_number(obj, where, key);
}

Experiment parse_experiment(const std::string& s) {
  if (s == "rabi_compare") return Experiment::RabiCompare;
  if (s == "fidelity_curve") return Experiment::FidelityCurve;
  if (s == "phase_curve") return Experiment::PhaseCurve;
  if (s == "distance_sweep") return Experiment::DistanceSweep;
  if (s == "lifetime_sweep") return Experiment::LifetimeSweep;
  throw ConfigError("unknown experiment '" + s + "'");
}

Regime parse_regime(const std::string& s) {
  if (s == "rab") return Regime::RAB;
  if (s == "broken") return Regime::Broken;
  throw ConfigError("unknown regime '" + s + "' (expected 'rab' or 'broken')");
}

PulseShape parse_pulse_shape(const std::string& s) {
  if (s == "constant") return PulseShape::ConstantAmplitude;
  if (s == "cosine") return PulseShape::CosineEnvelope;
  throw ConfigError("unknown pulse_shape '" + s + "' (expected 'constant' or 'cosine')");
}

const char* to_string(PulseShape s) {
  return s == PulseShape::ConstantAmplitude ? "constant" : "cosine";
}

std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i)
    v[i] = start + (stop - start) * i / (count - 1);
  return v;
}

json params_to_json(const SystemParams& p) {
  json j;
  j["omega0_mhz_times_2pi"] = mhz_from_angular(p.omega0_max);
  j["mod_freq_mhz_times_2pi"] = mhz_from_angular(p.mod_freq);
  j["delta_mhz_times_2pi"] = mhz_from_angular(p.delta);
  j["c6_mhz_um6_times_2pi"] = mhz_from_angular(p.c6);
  if (p.distance > 0.0) j["distance_um"] = p.distance;
  if (p.vdw_override) j["vdw_override_mhz_times_2pi"] = mhz_from_angular(*p.vdw_override);
  j["tau_us"] = p.tau;
  j["pulse_shape"] = to_string(p.pulse_shape);
  j["gate_duration_us"] = p.gate_duration;
  return j;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

const char* to_string(Regime r) { return r == Regime::RAB ? "rab" : "broken"; }

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::RabiCompare: return "rabi_compare";
    case Experiment::FidelityCurve: return "fidelity_curve";
    case Experiment::PhaseCurve: return "phase_curve";
    case Experiment::DistanceSweep: return "distance_sweep";
    case Experiment::LifetimeSweep: return "lifetime_sweep";
  }
  return "?";
}

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("scenario root must be a JSON object");

  check_keys(root, "scenario",
             {"name", "experiment", "regime", "params", "integrator", "sweep",
              "output_path"});
  if (!root.contains("experiment"))
    throw ConfigError("scenario is missing 'experiment'");

  Scenario s;
  s.experiment = parse_experiment(root.at("experiment").get<std::string>());
  if (root.contains("regime"))
    s.regime = parse_regime(root.at("regime").get<std::string>());
  s.name = root.value("name", std::string(to_string(s.experiment)));

  // --- params -----------------------------------------------------------
  SystemParams p = default_params();
  bool distance_given = false, vdw_given = false;
  bool shape_given = false, duration_given = false;
  if (root.contains("params")) {
    const json& jp = root.at("params");
    check_keys(jp, "params",
               {"omega0_mhz_times_2pi", "mod_freq_mhz_times_2pi",
                "delta_mhz_times_2pi", "c6_mhz_um6_times_2pi", "distance_um",
                "vdw_override_mhz_times_2pi", "tau_us", "pulse_shape",
                "gate_duration_us"});
    if (auto v = opt_number(jp, "params", "omega0_mhz_times_2pi"))
      p.omega0_max = angular_from_mhz(*v);
    if (auto v = opt_number(jp, "params", "mod_freq_mhz_times_2pi"))
      p.mod_freq = angular_from_mhz(*v);
    if (auto v = opt_number(jp, "params", "delta_mhz_times_2pi"))
      p.delta = angular_from_mhz(*v);
    if (auto v = opt_number(jp, "params", "c6_mhz_um6_times_2pi"))
      p.c6 = angular_from_mhz(*v);
    if (auto v = opt_number(jp, "params", "distance_um")) {
      p.distance = *v;
      distance_given = true;
    }
    if (auto v = opt_number(jp, "params", "vdw_override_mhz_times_2pi")) {
      p.vdw_override = angular_from_mhz(*v);
      vdw_given = true;
    }
    if (auto v = opt_number(jp, "params", "tau_us")) p.tau = *v;
    if (jp.contains("pulse_shape")) {
      p.pulse_shape = parse_pulse_shape(jp.at("pulse_shape").get<std::string>());
      shape_given = true;
    }
    if (auto v = opt_number(jp, "params", "gate_duration_us")) {
      p.gate_duration = *v;
      duration_given = true;
    }
  }

  // --- per-experiment requirements ---------------------------------------
  const bool is_sweep = s.experiment == Experiment::DistanceSweep ||
                        s.experiment == Experiment::LifetimeSweep;
  if (root.contains("sweep") && !is_sweep)
    throw ConfigError("'sweep' is only valid for sweep experiments");

  if (s.experiment == Experiment::LifetimeSweep) {
    if (distance_given || vdw_given || shape_given || duration_given)
      throw ConfigError(
          "lifetime_sweep derives pulse_shape, gate_duration, distance and "
          "vdw_override per regime; remove them from params");
  } else {
    if (!s.regime)
      throw ConfigError("scenario requires 'regime' ('rab' or 'broken')");
    if (s.experiment == Experiment::RabiCompare && *s.regime != Regime::RAB)
      throw ConfigError("rabi_compare runs in the 'rab' regime");
    if (s.experiment == Experiment::PhaseCurve && *s.regime != Regime::Broken)
      throw ConfigError("phase_curve runs in the 'broken' regime");

    // Regime-derived defaults.
    if (!shape_given)
      p.pulse_shape = (*s.regime == Regime::RAB) ? PulseShape::ConstantAmplitude
                                                 : PulseShape::CosineEnvelope;
    if (s.experiment == Experiment::RabiCompare &&
        p.pulse_shape != PulseShape::ConstantAmplitude)
      throw ConfigError("rabi_compare uses the constant-amplitude pulse");
    if (!duration_given)
      p.gate_duration = (*s.regime == Regime::RAB)
                            ? rabi_period(p)
                            : gate_duration_for_phase(kPi, p);

    if (s.experiment == Experiment::DistanceSweep) {
      if (vdw_given)
        throw ConfigError(
            "distance_sweep recomputes V from C6/d^6; remove vdw_override");
      if (!distance_given)
        p.distance = (*s.regime == Regime::RAB) ? rab_distance(p)
                                                : broken_distance(p);
      s.nominal_distance = p.distance;
    } else if (!distance_given && !vdw_given) {
      // Exact regime condition by default.
      p.vdw_override = (*s.regime == Regime::RAB) ? antiblockade_vdw_target(p)
                                                  : broken_vdw_target(p);
    }
  }

  // --- sweep grid ---------------------------------------------------------
  if (is_sweep) {
    std::optional<double> start, stop;
    std::optional<int> count;
    std::vector<double> values;
    if (root.contains("sweep")) {
      const json& js = root.at("sweep");
      check_keys(js, "sweep", {"start", "stop", "count", "values"});
      start = opt_number(js, "sweep", "start");
      stop = opt_number(js, "sweep", "stop");
      if (auto c = opt_number(js, "sweep", "count"))
        count = static_cast<int>(*c);
      if (js.contains("values")) {
        if (!js.at("values").is_array())
          throw ConfigError("sweep 'values' must be an array of numbers");
        for (const auto& v : js.at("values")) values.push_back(v.get<double>());
      }
      if (!values.empty() && (start || stop || count))
        throw ConfigError("sweep takes either values or start/stop/count");
      if (values.empty() && !(start && stop && count))
        throw ConfigError("sweep needs start, stop and count (or values)");
      if (count && *count < 2) throw ConfigError("sweep count must be >= 2");
    }

    if (s.experiment == Experiment::DistanceSweep) {
      if (!values.empty()) {
        s.sweep_values = values;
      } else if (start) {
        s.sweep_values = linspace(*start, *stop, *count);
      } else {
        const double half = (*s.regime == Regime::RAB) ? 0.005 : 0.050;  // um
        s.sweep_values = linspace(s.nominal_distance - half,
                                  s.nominal_distance + half, 201);
      }
    } else {  // LifetimeSweep
      if (start) {
        s.sweep_values = linspace(*start, *stop, *count);
      } else {
        s.sweep_values = {10, 20, 40, 60, 80, 100, 150, 200};
        s.sweep_values.insert(s.sweep_values.end(), values.begin(), values.end());
        std::sort(s.sweep_values.begin(), s.sweep_values.end());
        s.sweep_values.erase(
            std::unique(s.sweep_values.begin(), s.sweep_values.end()),
            s.sweep_values.end());
      }
      for (double tau : s.sweep_values)
        if (tau <= 0.0) throw ConfigError("lifetime sweep values must be positive");
    }
    if (s.sweep_values.size() < 2) throw ConfigError("sweep needs at least 2 points");
  }

  // --- validate + integrator ----------------------------------------------
  if (s.experiment != Experiment::LifetimeSweep) {
    validate(p);  // throws on hard violations
    const bool lindblad = false;
    s.integrator = lindblad ? default_lindblad_config(p, p.gate_duration)
                            : default_pure_config(p, p.gate_duration);
  } else {
    if (p.omega0_max <= 0 || p.mod_freq <= 0)
      throw ConfigError("lifetime_sweep needs positive omega0 and mod_freq");
    // Placeholder config; the runner derives per-regime settings.
    SystemParams canon = p;
    canon.vdw_override = broken_vdw_target(p);
    canon.gate_duration = gate_duration_for_phase(kPi, p);
    s.integrator = default_lindblad_config(canon, canon.gate_duration);
  }

  if (root.contains("integrator")) {
    const json& ji = root.at("integrator");
    check_keys(ji, "integrator", {"step_us", "snapshot_count"});
    if (auto v = opt_number(ji, "integrator", "step_us")) {
      if (*v <= 0.0) throw ConfigError("integrator step_us must be positive");
      s.integrator.step = *v;
      s.step_overridden = true;
    }
    if (auto v = opt_number(ji, "integrator", "snapshot_count")) {
      if (*v < 2) throw ConfigError("integrator snapshot_count must be >= 2");
      s.integrator.snapshot_count = static_cast<int>(*v);
    }
  }

  s.params = p;
  s.output_path = root.value("output_path", s.name + ".csv");

  // Canonical form for hashing: the fully resolved configuration.
  json canon;
  canon["name"] = s.name;
  canon["experiment"] = to_string(s.experiment);
  if (s.regime) canon["regime"] = to_string(*s.regime);
  canon["params"] = params_to_json(p);
  canon["integrator"] = {{"step_us", s.integrator.step},
                         {"snapshot_count", s.integrator.snapshot_count},
                         {"step_overridden", s.step_overridden}};
  if (is_sweep) canon["sweep_values"] = s.sweep_values;
  s.canonical = canon.dump();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_hash(const Scenario& s) {
  char out[17];
  std::snprintf(out, sizeof(out), "%016" PRIx64, fnv1a(s.canonical));
  return out;
}

// --- bundled presets -------------------------------------------------------

namespace {

struct Preset {
  const char* name;
  const char* description;
  const char* body;
};

// The shared constants are spelled out so the emitted files are
// self-describing; everything else resolves from the regime.
constexpr const char* kParamsBlock = R"(  "params": {
    "omega0_mhz_times_2pi": 10.0,
    "mod_freq_mhz_times_2pi": 35.0,
    "delta_mhz_times_2pi": 8.0,
    "c6_mhz_um6_times_2pi": 5.62e7,
    "tau_us": 100.0
  })";

const Preset kPresets[] = {
    {"rabi_compare",
     "populations of |11> and |rr> over one Rabi cycle, full vs effective",
     R"({
  "name": "rabi_compare",
  "experiment": "rabi_compare",
  "regime": "rab",
PARAMS,
  "output_path": "rabi_compare.csv"
})"},
    {"cz_fidelity_rab",
     "average and reference-state CZ fidelity vs time, antiblockade gate",
     R"({
  "name": "cz_fidelity_rab",
  "experiment": "fidelity_curve",
  "regime": "rab",
PARAMS,
  "output_path": "cz_fidelity_rab.csv"
})"},
    {"phase_broken",
     "phase of |11> vs time against the Stark-shift prediction",
     R"({
  "name": "phase_broken",
  "experiment": "phase_curve",
  "regime": "broken",
PARAMS,
  "output_path": "phase_broken.csv"
})"},
    {"cz_fidelity_broken",
     "average and reference-state CZ fidelity vs time, shaped-pulse gate",
     R"({
  "name": "cz_fidelity_broken",
  "experiment": "fidelity_curve",
  "regime": "broken",
PARAMS,
  "output_path": "cz_fidelity_broken.csv"
})"},
    {"distance_sweep_rab",
     "final CZ fidelity vs interatomic distance, antiblockade gate",
     R"({
  "name": "distance_sweep_rab",
  "experiment": "distance_sweep",
  "regime": "rab",
PARAMS,
  "output_path": "distance_sweep_rab.csv"
})"},
    {"distance_sweep_broken",
     "final CZ fidelity vs interatomic distance, shaped-pulse gate",
     R"({
  "name": "distance_sweep_broken",
  "experiment": "distance_sweep",
  "regime": "broken",
PARAMS,
  "output_path": "distance_sweep_broken.csv"
})"},
    {"lifetime_sweep",
     "final fidelity vs Rydberg lifetime for both gates (master equation)",
     R"({
  "name": "lifetime_sweep",
  "experiment": "lifetime_sweep",
PARAMS,
  "output_path": "lifetime_sweep.csv"
})"},
};

std::string expand(const char* body) {
  std::string s(body);
  const std::string tag = "PARAMS";
  const auto pos = s.find(tag);
  if (pos != std::string::npos) s.replace(pos, tag.size(), kParamsBlock);
  return s;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : kPresets)
    if (name == p.name) return &p;
  return nullptr;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> names;
  for (const auto& p : kPresets) names.push_back(p.name);
  return names;
}

std::string builtin_scenario_description(const std::string& name) {
  const Preset* p = find_preset(name);
  if (!p) throw ConfigError("unknown scenario '" + name + "'");
  return p->description;
}

std::string builtin_scenario_json(const std::string& name) {
  const Preset* p = find_preset(name);
  if (!p) throw ConfigError("unknown scenario '" + name + "'");
  return expand(p->body);
}

}  // namespace rabsim

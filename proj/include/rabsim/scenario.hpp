#ifndef RABSIM_SCENARIO_HPP
#define RABSIM_SCENARIO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabsim/dynamics.hpp"
#include "rabsim/params.hpp"

// Scenario configuration: named experiment setups parsed from strict
// JSON files (unknown keys are rejected), with regime-derived defaults
// for everything not given explicitly.

namespace rabsim {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Regime { RAB, Broken };

enum class Experiment {
  RabiCompare,    // populations of |11> and |rr>, full vs effective model
  FidelityCurve,  // average and reference-state CZ fidelity vs time
  PhaseCurve,     // phase of |11> vs time against the Stark prediction
  DistanceSweep,  // final fidelity vs interatomic distance
  LifetimeSweep,  // final fidelity vs Rydberg lifetime, both regimes
};

const char* to_string(Regime r);
const char* to_string(Experiment e);

struct Scenario {
  std::string name;
  Experiment experiment = Experiment::RabiCompare;
  std::optional<Regime> regime;  // unused by LifetimeSweep (runs both)
  SystemParams params;           // fully resolved
  IntegratorConfig integrator;   // resolved for the scenario's main run
  std::vector<double> sweep_values;  // um (distance) or us (lifetime)
  double nominal_distance = 0.0;     // um, distance sweeps only
  std::string output_path;
  bool step_overridden = false;
  std::string canonical;  // canonical JSON used for the provenance hash
};

/// Parse and resolve a scenario from JSON text. Throws ConfigError with
/// the offending key on unknown or ill-typed fields.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

/// Names of the bundled scenario presets.
std::vector<std::string> builtin_scenario_names();

/// One-line description of a preset.
std::string builtin_scenario_description(const std::string& name);

/// JSON text of a preset, suitable for a scenario file.
std::string builtin_scenario_json(const std::string& name);

/// FNV-1a hash of the canonical scenario text, as fixed-width hex.
std::string scenario_hash(const Scenario& s);

}  // namespace rabsim

#endif  // RABSIM_SCENARIO_HPP

#include "rabsim/params.hpp"

#include <cmath>
#include <stdexcept>

namespace rabsim {

ParamFlags validate(const SystemParams& p) {
  if (p.omega0_max <= 0.0)
    throw std::invalid_argument("SystemParams: omega0_max must be positive");
  if (p.mod_freq <= 0.0)
    throw std::invalid_argument("SystemParams: mod_freq must be positive");
  if (!p.vdw_override && p.distance <= 0.0)
    throw std::invalid_argument(
        "SystemParams: distance must be positive (or set vdw_override)");
  if (p.tau <= 0.0)
    throw std::invalid_argument("SystemParams: tau must be positive");
  if (p.gate_duration <= 0.0)
    throw std::invalid_argument("SystemParams: gate_duration must be positive");

  ParamFlags flags;
  // 2*sqrt(2)*omega >> Omega_0; warn past Omega_0/omega = 0.5.
  if (p.omega0_max / p.mod_freq > 0.5) {
    flags.effective_model_ok = false;
    flags.warnings.push_back(
        "omega0_max/mod_freq > 0.5: second-order effective model degrades");
  }
  // |delta| >> |Omega_eff|; warn past 0.2.
  if (p.delta != 0.0) {
    const double omega_eff = p.omega0_max * p.omega0_max / (4.0 * p.mod_freq);
    if (std::abs(omega_eff / p.delta) > 0.2) {
      flags.stark_model_ok = false;
      flags.warnings.push_back(
          "|Omega_eff/delta| > 0.2: Stark-shift model degrades");
    }
  }
  return flags;
}

SystemParams default_params() {
  SystemParams p;
  p.omega0_max = angular_from_mhz(10.0);
  p.mod_freq = angular_from_mhz(35.0);
  p.delta = angular_from_mhz(8.0);
  p.c6 = angular_from_mhz(56.2e6);  // MHz um^6
  p.distance = 0.0;                 // set per scenario
  p.tau = 100.0;
  p.pulse_shape = PulseShape::ConstantAmplitude;
  p.gate_duration = 0.0;            // set per scenario
  return p;
}

}  // namespace rabsim

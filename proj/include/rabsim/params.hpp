#ifndef RABSIM_PARAMS_HPP
#define RABSIM_PARAMS_HPP

#include <optional>
#include <string>
#include <vector>

// Physical constants and drive parameters of one scenario.
//
// Unit convention, used everywhere in the library:
//   * frequencies are angular, in rad/us;
//   * configuration inputs are given as "linear MHz times 2pi", i.e. an
//     input of 10 means 2pi * 10 rad/us (the usual "2pi x 10 MHz");
//   * times are in us, distances in um;
//   * C6 is in rad/us * um^6 (input convention: MHz * um^6 times 2pi).

namespace rabsim {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Convert a "linear MHz" configuration value to angular rad/us.
constexpr double angular_from_mhz(double f_mhz) { return kTwoPi * f_mhz; }

/// Inverse of angular_from_mhz, for display.
constexpr double mhz_from_angular(double w) { return w / kTwoPi; }

/// Drive envelope shape for the |1> <-> |r> field.
enum class PulseShape { ConstantAmplitude, CosineEnvelope };

struct SystemParams {
  double omega0_max = 0.0;   ///< peak Rabi amplitude (rad/us): Omega_0 or Omega_m
  double mod_freq = 0.0;     ///< amplitude-modulation frequency omega (rad/us)
  double delta = 0.0;        ///< detuning delta of the broken regime (rad/us)
  double c6 = 0.0;           ///< van der Waals coefficient (rad/us * um^6)
  double distance = 0.0;     ///< interatomic distance d (um)
  std::optional<double> vdw_override;  ///< direct V_vdw (rad/us), bypasses C6/d^6
  double tau = 0.0;          ///< Rydberg-state lifetime (us); decay rate 1/tau
  PulseShape pulse_shape = PulseShape::ConstantAmplitude;
  double gate_duration = 0.0;  ///< run length T (us)
};

/// Soft validity flags. The simulation proceeds regardless; these mark
/// parameter regimes where the effective models degrade.
struct ParamFlags {
  bool effective_model_ok = true;   // requires 2*sqrt(2)*omega >> Omega_0
  bool stark_model_ok = true;       // requires |delta| >> |Omega_eff|
  std::vector<std::string> warnings;
};

/// Check hard invariants (throws std::invalid_argument on violation)
/// and compute the soft validity flags.
ParamFlags validate(const SystemParams& p);

/// Parameter set used by the bundled scenarios: Omega = 2pi*10 MHz,
/// omega = 2pi*35 MHz, delta = 2pi*8 MHz, C6 = 2pi*56.2e6 MHz um^6
/// (87Rb 100S), tau = 100 us.
SystemParams default_params();

}  // namespace rabsim

#endif  // RABSIM_PARAMS_HPP

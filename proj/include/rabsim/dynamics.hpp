#ifndef RABSIM_DYNAMICS_HPP
#define RABSIM_DYNAMICS_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabsim/algebra.hpp"
#include "rabsim/hamiltonian.hpp"
#include "rabsim/params.hpp"

// Time propagation: Schrodinger evolution under any TimeOperator and
// Lindblad master-equation evolution with the four Rydberg decay paths.
// Both use deterministic fixed-step RK4, so identical configurations
// reproduce bit-identical trajectories.

namespace rabsim {

enum class Method { FixedStepRK4 };

struct IntegratorConfig {
  double step = 0.0;          ///< us
  Method method = Method::FixedStepRK4;
  int snapshot_count = 2000;  ///< uniformly strided snapshots per run
};

/// Base step resolving the fastest scale: min(2pi/omega, 2pi/V) / 40.
double base_step(const SystemParams& p);

/// Default configuration for pure-state runs. Short runs use base/16,
/// long runs base/6; both keep the final norm drift below 1e-8 and the
/// step-halving observable shift below 1e-7 (the bare base step does
/// neither, see the step-accuracy tests).
IntegratorConfig default_pure_config(const SystemParams& p, double total_time);

/// Default configuration for master-equation runs (base/2: the RK4
/// stages conserve the trace identically at any step; base/2 brings
/// fidelity observables to the 1e-5 level).
IntegratorConfig default_lindblad_config(const SystemParams& p, double total_time);

/// Thrown when a propagation violates its conservation gates.
class IntegratorError : public std::runtime_error {
 public:
  explicit IntegratorError(const std::string& what) : std::runtime_error(what) {}
};

/// Time grid plus state snapshots of one propagation.
struct Trajectory {
  std::vector<double> times;   ///< us; first is 0, last is the run length
  std::vector<Vec> states;     ///< pure runs
  std::vector<Mat> densities;  ///< master-equation runs
  double max_norm_drift = 0.0;   ///< max |<psi|psi> - 1| over snapshots
  double max_trace_drift = 0.0;  ///< max |tr(rho) - 1| over snapshots
  double min_eigenvalue = 1.0;   ///< most negative rho eigenvalue seen

  bool pure() const { return !states.empty(); }
  std::size_t size() const { return times.size(); }
};

/// The four decay channels |r> -> |0>, |r> -> |1| on each atom, all at
/// rate gamma/2, as 9-dim jump operators sqrt(gamma/2) |s>_j<r|.
struct JumpOperators {
  std::array<Mat, 4> ops;
  double gamma = 0.0;

  static JumpOperators decay_channels(double gamma);
};

/// Fixed-step RK4 on d psi/dt = -i H(t) psi. psi0 must be normalized and
/// match H's dimension. No renormalization is applied: norm drift above
/// 1e-6 at any snapshot raises IntegratorError.
Trajectory propagate_pure(const TimeOperator& H, const Vec& psi0,
                          const IntegratorConfig& cfg, double total_time);

/// Fixed-step RK4 on the Lindblad equation
///   d rho/dt = -i[H, rho] - 1/2 sum_k (L+L rho - 2 L rho L+ + rho L+L),
/// with rho re-symmetrized each step. Trace drift above 1e-6 or an
/// eigenvalue below -1e-6 at a snapshot raises IntegratorError.
Trajectory propagate_lindblad(const TimeOperator& H, const Mat& rho0,
                              const JumpOperators& jumps,
                              const IntegratorConfig& cfg, double total_time);

/// Computational-subspace overlap matrices M_ab(t) = <a|psi_b(t)> for
/// a, b in {|00>, |01>, |10>, |11>}, from propagating each basis state
/// under the 9-dim Hamiltonian. Column norms may fall below 1 (leakage).
struct BasisEvolution {
  std::vector<double> times;
  std::vector<Mat4> overlaps;
  double max_norm_drift = 0.0;  ///< over the four full 9-dim columns
};

BasisEvolution propagate_basis(const TimeOperator& H,
                               const IntegratorConfig& cfg, double total_time);

}  // namespace rabsim

#endif  // RABSIM_DYNAMICS_HPP

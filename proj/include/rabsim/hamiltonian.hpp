#ifndef RABSIM_HAMILTONIAN_HPP
#define RABSIM_HAMILTONIAN_HPP

#include <functional>

#include "rabsim/algebra.hpp"
#include "rabsim/params.hpp"

// Pulse envelopes and Hamiltonian builders.
//
// Four model levels of the same two-atom system:
//   * Lab (dim 9): the driven pair with the vdW shift on |rr>,
//       H(t) = sum_j Omega(t)/2 |1>_j<r| + h.c. + V |rr><rr|,
//     with Omega(t) = envelope(t) * cos(omega t).
//   * Rotated (dim 3): the {|11>, |Psi_m>, |rr>} sector after rotating
//     |rr> at omega0 = 2*omega, |Psi_m> = (|r1> + |1r>)/sqrt(2).
//   * Effective (dim 2): second-order flip-flop between |11> and |rr>,
//       H = Omega_eff(t)/2 (|11><rr| + h.c.) + V'(t) |rr><rr|,
//     Omega_eff = envelope^2/(4 omega), V' = V - 2 omega + envelope^2/(6 omega).
//   * FinalEffective (dim 2): the far-detuned limit, a pure Stark shift
//       H = -(Omega_eff(t)^2 / 4 delta) |11><11|.

namespace rabsim {

enum class Frame { Lab, Rotated, Effective, FinalEffective };

/// A time-parameterized Hermitian operator. Evaluation is reentrant;
/// instances are safe to share across threads.
class TimeOperator {
 public:
  using Filler = std::function<void(double, Mat&)>;

  TimeOperator(int dim, Frame frame, Filler fill);

  int dim() const { return dim_; }
  Frame frame() const { return frame_; }

  /// Evaluate H(t) into `out` without allocating (out must be dim x dim).
  void eval_into(double t, Mat& out) const { fill_(t, out); }

  /// Evaluate H(t), allocating the result.
  Mat at(double t) const;

 private:
  int dim_;
  Frame frame_;
  Filler fill_;
};

/// Drive envelope Omega_0(t): the constant amplitude, or the single-period
/// cosine window Omega_m (1 - cos(2 pi t / T)) / 2. Requires 0 <= t <= T.
double pulse_amplitude(double t, const SystemParams& p);

/// Instantaneous drive Omega(t) = pulse_amplitude(t) * cos(omega t).
double drive_field(double t, const SystemParams& p);

/// van der Waals strength: vdw_override if set, else C6 / d^6.
double vdw_strength(const SystemParams& p);

/// Interaction targets of the two parameter regimes.
double antiblockade_vdw_target(const SystemParams& p);  // 2w - Omega0^2/(6w)
double broken_vdw_target(const SystemParams& p);        // 2w + delta

/// Distances realizing the regime targets through C6/d^6.
/// Throws std::domain_error if the target strength is not positive.
double rab_distance(const SystemParams& p);
double broken_distance(const SystemParams& p);

/// Effective two-level quantities (time-dependent through the envelope).
double effective_rabi(double t, const SystemParams& p);      // envelope^2/(4w)
double effective_detuning(double t, const SystemParams& p);  // V'(t)

/// Rabi period of the resonant effective model with a constant envelope,
/// T0 = 2 pi / Omega_eff.
double rabi_period(const SystemParams& p);

/// Accumulated Stark phase int_0^t Omega_eff(t')^2 dt' / (4 delta),
/// in closed form for both envelope shapes.
double accumulated_stark_phase(double t, const SystemParams& p);

/// Cosine-envelope duration T giving accumulated phase phi:
/// T = 8192 phi w^2 delta / (35 Omega_m^4).
double gate_duration_for_phase(double phi, const SystemParams& p);

TimeOperator full_hamiltonian(const SystemParams& p);
TimeOperator sector_hamiltonian(const SystemParams& p);
TimeOperator effective_hamiltonian(const SystemParams& p);
TimeOperator final_effective_hamiltonian(const SystemParams& p);

/// Single-atom drive on {|1>, |r>}: H(t) = Omega(t)/2 (|1><r| + h.c.).
/// Used by the closed-form cross checks.
TimeOperator single_atom_hamiltonian(const SystemParams& p);

}  // namespace rabsim

#endif  // RABSIM_HAMILTONIAN_HPP

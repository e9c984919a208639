#ifndef RABSIM_METRICS_HPP
#define RABSIM_METRICS_HPP

#include <array>
#include <vector>

#include "rabsim/algebra.hpp"
#include "rabsim/dynamics.hpp"

// Gate targets, fidelity measures and phase extraction.

namespace rabsim {

/// Diagonal phase gate on the computational subspace: phases applied to
/// |00>, |01>, |10>, |11> in order. CZ is (0, 0, 0, pi).
struct GateTarget {
  std::array<double, 4> phases{};

  static GateTarget cz();
  static GateTarget phase_gate(double phi);  // (0, 0, 0, phi)

  /// e^{i phase_a} as a 4-vector.
  Vec4 phase_factors() const;
};

/// Angles of the two-angle product-state family
///   cos a1 cos a2 |00> + cos a1 sin a2 |01>
///   + sin a1 cos a2 |10> + sin a1 sin a2 |11>.
struct ProductStateAngles {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

/// Computational amplitudes (c00, c01, c10, c11) of the product state.
Vec4 product_amplitudes(const ProductStateAngles& a);

/// The product state embedded in the 9-dim pair space.
Vec9 product_state(const ProductStateAngles& a);

/// The fixed benchmark input 0.5|00> + 0.5|01> + sqrt(0.05)|10> + sqrt(0.45)|11>,
/// chosen so its CZ fidelity starts at 0.01.
Vec9 reference_state();

/// Fidelity |<a|U_target|b>|^2 averaged over the product-state family,
/// evaluated by a uniform tensor grid over [-pi, pi)^2. The integrand is
/// a trigonometric polynomial of degree <= 4 per angle, so any grid with
/// at least 9 nodes per axis is exact; 16 is the default.
/// M is the computational overlap matrix M_ab = <a|psi_b(t)>.
double average_fidelity(const Mat4& overlaps, const GateTarget& target,
                        int nodes_per_axis = 16);

/// |<target psi0 | psi>|^2 for psi0 supported on the computational subspace.
double state_fidelity_pure(const Vec9& psi, const Vec9& psi0,
                           const GateTarget& target);

/// <target psi0 | rho | target psi0> for a density matrix rho.
double state_fidelity_mixed(const Mat& rho, const Vec9& psi0,
                            const GateTarget& target);

/// Unwrapped phase series of a complex amplitude series. Points where
/// |amplitude| < min_abs are marked undefined (phase is meaningless near
/// a node) and skipped by the unwrapping.
struct PhaseSeries {
  std::vector<double> phase;   ///< radians, continuous (no 2 pi jumps)
  std::vector<bool> defined;
};

PhaseSeries unwrap_phase(const std::vector<Complex>& amplitudes,
                         double min_abs = 1e-3);

/// Convenience: <11|psi(t)> series from 9-dim pure snapshots.
std::vector<Complex> amplitude_11(const std::vector<Vec>& states);

/// Unwrapped phase of <11|psi(t)> along a pure 9-dim trajectory.
PhaseSeries phase_of_11(const Trajectory& traj, double min_abs = 1e-3);

}  // namespace rabsim

#endif  // RABSIM_METRICS_HPP

#include "rabsim/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rabsim/params.hpp"

namespace rabsim {

namespace {

constexpr double kPi = std::numbers::pi;

const std::array<int, 4> kCompIndex = {
    pair_index(Level::g0, Level::g0), pair_index(Level::g0, Level::g1),
    pair_index(Level::g1, Level::g0), pair_index(Level::g1, Level::g1)};

Vec4 comp_amplitudes(const Vec9& psi) {
  Vec4 c;
  for (int a = 0; a < 4; ++a) c(a) = psi(kCompIndex[a]);
  return c;
}

}  // namespace

GateTarget GateTarget::cz() { return GateTarget{{0.0, 0.0, 0.0, kPi}}; }

GateTarget GateTarget::phase_gate(double phi) { return GateTarget{{0.0, 0.0, 0.0, phi}}; }

Vec4 GateTarget::phase_factors() const {
  Vec4 f;
  for (int a = 0; a < 4; ++a) f(a) = std::exp(Complex(0.0, phases[a]));
  return f;
}

Vec4 product_amplitudes(const ProductStateAngles& a) {
  const double c1 = std::cos(a.alpha1), s1 = std::sin(a.alpha1);
  const double c2 = std::cos(a.alpha2), s2 = std::sin(a.alpha2);
  Vec4 c;
  c << c1 * c2, c1 * s2, s1 * c2, s1 * s2;
  return c;
}

Vec9 product_state(const ProductStateAngles& a) {
  const Vec4 c = product_amplitudes(a);
  Vec9 psi = Vec9::Zero();
  for (int i = 0; i < 4; ++i) psi(kCompIndex[i]) = c(i);
  return psi;
}

Vec9 reference_state() {
  Vec9 psi = Vec9::Zero();
  psi(kCompIndex[0]) = 0.5;
  psi(kCompIndex[1]) = 0.5;
  psi(kCompIndex[2]) = std::sqrt(0.05);
  psi(kCompIndex[3]) = std::sqrt(0.45);
  return psi;
}

double average_fidelity(const Mat4& overlaps, const GateTarget& target,
                        int nodes_per_axis) {
  if (nodes_per_axis < 9)
    throw std::invalid_argument("average_fidelity: needs >= 9 nodes per axis");
  const int n = nodes_per_axis;
  const Vec4 phases = target.phase_factors();

  // Uniform nodes over [-pi, pi); the periodic rectangle rule is exact
  // for the low-degree trigonometric integrand.
  std::vector<double> cosv(n), sinv(n);
  for (int j = 0; j < n; ++j) {
    const double alpha = -kPi + kTwoPi * j / n;
    cosv[j] = std::cos(alpha);
    sinv[j] = std::sin(alpha);
  }

  double total = 0.0;
  Vec4 c;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      c << cosv[j] * cosv[k], cosv[j] * sinv[k], sinv[j] * cosv[k], sinv[j] * sinv[k];
      // <ideal|psi(t)>, with the ideal amplitudes c_a e^{i phase_a}
      // conjugated by dot()'s first slot.
      const Complex overlap = (c.cwiseProduct(phases)).dot(overlaps * c);
      total += std::norm(overlap);
    }
  }
  return total / (static_cast<double>(n) * n);
}

double state_fidelity_pure(const Vec9& psi, const Vec9& psi0,
                           const GateTarget& target) {
  const Vec4 ideal = comp_amplitudes(psi0).cwiseProduct(target.phase_factors());
  const Complex overlap = ideal.dot(comp_amplitudes(psi));
  return std::norm(overlap);
}

double state_fidelity_mixed(const Mat& rho, const Vec9& psi0,
                            const GateTarget& target) {
  Vec9 ideal = Vec9::Zero();
  const Vec4 c = comp_amplitudes(psi0).cwiseProduct(target.phase_factors());
  for (int a = 0; a < 4; ++a) ideal(kCompIndex[a]) = c(a);
  const Complex val = ideal.dot(rho * ideal);
  return val.real();
}

PhaseSeries unwrap_phase(const std::vector<Complex>& amplitudes, double min_abs) {
  PhaseSeries out;
  out.phase.resize(amplitudes.size(), 0.0);
  out.defined.resize(amplitudes.size(), false);

  bool have_prev = false;
  double prev_unwrapped = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (std::abs(amplitudes[i]) < min_abs) continue;  // near a node
    double ph = std::arg(amplitudes[i]);
    if (have_prev) {
      // shift by the multiple of 2 pi closest to the previous sample
      ph += kTwoPi * std::round((prev_unwrapped - ph) / kTwoPi);
    }
    out.phase[i] = ph;
    out.defined[i] = true;
    prev_unwrapped = ph;
    have_prev = true;
  }
  return out;
}

std::vector<Complex> amplitude_11(const std::vector<Vec>& states) {
  const int idx = pair_index(Level::g1, Level::g1);
  std::vector<Complex> amps(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) amps[i] = states[i](idx);
  return amps;
}

PhaseSeries phase_of_11(const Trajectory& traj, double min_abs) {
  if (!traj.pure() || traj.states.front().size() != kPairDim)
    throw std::invalid_argument("phase_of_11: needs a pure 9-dim trajectory");
  return unwrap_phase(amplitude_11(traj.states), min_abs);
}

}  // namespace rabsim

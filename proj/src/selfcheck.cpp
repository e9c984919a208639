#include "rabsim/selfcheck.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "rabsim/dynamics.hpp"
#include "rabsim/hamiltonian.hpp"
#include "rabsim/metrics.hpp"

namespace rabsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Reporter {
  std::ostream& out;
  bool all_ok = true;

  void check(const char* name, double value, double limit) {
    const bool ok = value <= limit;
    all_ok = all_ok && ok;
    out << (ok ? "[ ok ] " : "[FAIL] ") << name << ": " << value
        << " (limit " << limit << ")\n";
  }
};

Mat3 random_mat3(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

double tensor_product_mismatch(std::mt19937& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 16; ++rep) {
    const Mat3 a = random_mat3(rng), b = random_mat3(rng);
    const Mat3 c = random_mat3(rng), d = random_mat3(rng);
    const Mat9 lhs = tensor(a, b) * tensor(c, d);
    const Mat9 rhs = tensor(a * c, b * d);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

double hermiticity_mismatch(const SystemParams& p, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, p.gate_duration);
  const TimeOperator ops[] = {full_hamiltonian(p), sector_hamiltonian(p),
                              effective_hamiltonian(p),
                              final_effective_hamiltonian(p)};
  double worst = 0.0;
  for (const auto& op : ops) {
    Mat h(op.dim(), op.dim());
    for (int rep = 0; rep < 64; ++rep) {
      op.eval_into(u(rng), h);
      worst = std::max(worst, (h - h.adjoint()).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double zero_sector_coupling(const SystemParams& p, std::mt19937& rng) {
  // The drive never touches |0>: the 9-dim matrix is block diagonal over
  // {both atoms in {1,r}}, {atom1 = 0}, {atom2 = 0}, {|00>}.
  const int group[9] = {0, 1, 1, 2, 3, 3, 2, 3, 3};
  std::uniform_real_distribution<double> u(0.0, p.gate_duration);
  const TimeOperator h = full_hamiltonian(p);
  Mat m(9, 9);
  double worst = 0.0;
  for (int rep = 0; rep < 16; ++rep) {
    h.eval_into(u(rng), m);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        if (group[i] != group[j]) worst = std::max(worst, std::abs(m(i, j)));
  }
  return worst;
}

double jump_sum_rule(double gamma) {
  const JumpOperators jumps = JumpOperators::decay_channels(gamma);
  Mat sum = Mat::Zero(9, 9);
  for (const auto& l : jumps.ops) sum += l.adjoint() * l;
  const Mat3 pr = projector(Level::ryd);
  const Mat3 eye = Mat3::Identity();
  const Mat9 expected = gamma * (tensor(pr, eye) + tensor(eye, pr));
  return (sum - expected).cwiseAbs().maxCoeff();
}

double single_atom_closed_form_error(const SystemParams& base) {
  SystemParams p = base;
  p.pulse_shape = PulseShape::ConstantAmplitude;
  p.gate_duration = 2.0;
  p.vdw_override.reset();
  p.distance = 0.0;  // base step from the modulation frequency alone
  Vec psi0(2);
  psi0 << 1.0, 0.0;
  const IntegratorConfig cfg = default_pure_config(p, p.gate_duration);
  const Trajectory traj =
      propagate_pure(single_atom_hamiltonian(p), psi0, cfg, p.gate_duration);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double theta =
        std::sin(p.mod_freq * traj.times[i]) * p.omega0_max / (2.0 * p.mod_freq);
    const Complex c1 = std::cos(theta);
    const Complex cr = Complex(0.0, -1.0) * std::sin(theta);
    worst = std::max(worst, std::abs(traj.states[i](0) - c1));
    worst = std::max(worst, std::abs(traj.states[i](1) - cr));
  }
  return worst;
}

double effective_rabi_error(const SystemParams& base, double* norm_drift_out) {
  SystemParams p = base;
  p.pulse_shape = PulseShape::ConstantAmplitude;
  p.vdw_override = antiblockade_vdw_target(p);
  p.gate_duration = rabi_period(p);
  Vec psi0(2);
  psi0 << 1.0, 0.0;
  const IntegratorConfig cfg = default_pure_config(p, p.gate_duration);
  const Trajectory traj =
      propagate_pure(effective_hamiltonian(p), psi0, cfg, p.gate_duration);
  const double omega_eff = effective_rabi(0.0, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double expected = std::pow(std::sin(omega_eff * traj.times[i] / 2.0), 2);
    worst = std::max(worst, std::abs(std::norm(traj.states[i](1)) - expected));
  }
  if (norm_drift_out) *norm_drift_out = traj.max_norm_drift;
  return worst;
}

double quadrature_invariance(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 8; ++rep) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = Complex(u(rng), u(rng));
    const GateTarget target = GateTarget::phase_gate(u(rng) * kPi);
    const double f9 = average_fidelity(m, target, 9);
    const double f16 = average_fidelity(m, target, 16);
    const double f64 = average_fidelity(m, target, 64);
    worst = std::max({worst, std::abs(f9 - f16), std::abs(f16 - f64)});
  }
  return worst;
}

struct ClosedSystemResult {
  double population_mismatch = 0.0;
  double trace_drift = 0.0;
  double eig_deficit = 0.0;
};

ClosedSystemResult closed_system_comparison(const SystemParams& base) {
  SystemParams p = base;
  p.pulse_shape = PulseShape::ConstantAmplitude;
  p.vdw_override = antiblockade_vdw_target(p);
  p.gate_duration = rabi_period(p) / 4.0;
  const Vec9 psi0 = reference_state();

  IntegratorConfig cfg = default_pure_config(p, p.gate_duration);
  const TimeOperator h = full_hamiltonian(p);
  const Trajectory pure = propagate_pure(h, psi0, cfg, p.gate_duration);
  const Trajectory mixed =
      propagate_lindblad(h, Mat(psi0 * psi0.adjoint()),
                         JumpOperators::decay_channels(0.0), cfg, p.gate_duration);

  ClosedSystemResult r;
  const Vec& psi = pure.states.back();
  const Mat& rho = mixed.densities.back();
  for (int i = 0; i < 9; ++i)
    r.population_mismatch = std::max(
        r.population_mismatch, std::abs(std::norm(psi(i)) - rho(i, i).real()));
  r.trace_drift = mixed.max_trace_drift;
  r.eig_deficit = std::max(0.0, -mixed.min_eigenvalue);
  return r;
}

double phase_inversion_error(const SystemParams& base) {
  SystemParams p = base;
  p.pulse_shape = PulseShape::CosineEnvelope;
  p.gate_duration = gate_duration_for_phase(kPi, p);
  // Simpson quadrature of Omega_eff(t)^2 / (4 delta).
  const int n = 20000;  // even
  const double h = p.gate_duration / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double f = std::pow(effective_rabi(t, p), 2) / (4.0 * p.delta);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * f;
  }
  const double phi_numeric = sum * h / 3.0;
  return std::abs(phi_numeric - kPi);
}

}  // namespace

bool run_self_check(std::ostream& out) {
  std::mt19937 rng(20240811u);
  SystemParams p = default_params();
  p.pulse_shape = PulseShape::ConstantAmplitude;
  p.vdw_override = antiblockade_vdw_target(p);
  p.gate_duration = rabi_period(p);

  Reporter r{out};
  r.check("tensor multiplicativity", tensor_product_mismatch(rng), 1e-12);
  r.check("builder hermiticity (64 random times)", hermiticity_mismatch(p, rng), 1e-12);
  r.check("undriven |0> sector coupling", zero_sector_coupling(p, rng), 0.0);
  r.check("jump-operator sum rule", jump_sum_rule(0.01), 1e-12);
  r.check("single-atom closed form", single_atom_closed_form_error(p), 1e-6);

  double eff_norm_drift = 0.0;
  r.check("effective Rabi vs sin^2", effective_rabi_error(p, &eff_norm_drift), 1e-6);
  r.check("pure-run norm drift", eff_norm_drift, 1e-8);

  r.check("quadrature node invariance", quadrature_invariance(rng), 1e-12);

  const ClosedSystemResult cs = closed_system_comparison(p);
  r.check("gamma=0 master equation vs pure", cs.population_mismatch, 1e-7);
  r.check("master-equation trace drift", cs.trace_drift, 1e-8);
  r.check("master-equation positivity deficit", cs.eig_deficit, 1e-8);

  r.check("gate duration vs integrated phase", phase_inversion_error(p), 1e-6);
  return r.all_ok;
}

}  // namespace rabsim

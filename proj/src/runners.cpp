#include "rabsim/runners.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "rabsim/hamiltonian.hpp"
#include "rabsim/metrics.hpp"
#include "rabsim/version.hpp"

namespace rabsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kQuadratureNodes = 16;

std::string format_step(double step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", step);
  return buf;
}

std::string provenance(const Scenario& s, const std::string& step_text) {
  return scenario_hash(s) + " " + step_text + " " +
         std::to_string(kQuadratureNodes) + " " + kVersion;
}

std::string provenance(const Scenario& s) {
  return provenance(s, format_step(s.integrator.step));
}

double population(const Vec& psi, int index) { return std::norm(psi(index)); }

/// Overlap <U_target psi0 | psi(t)> from the computational overlap matrix.
Complex target_overlap(const Mat4& m, const Vec4& amps, const GateTarget& target) {
  return (amps.cwiseProduct(target.phase_factors())).dot(m * amps);
}

Vec4 reference_amplitudes() {
  Vec4 c;
  c << 0.5, 0.5, std::sqrt(0.05), std::sqrt(0.45);
  return c;
}

}  // namespace

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double ThresholdWindow::symmetric_width(double nominal) const {
  return 2.0 * std::min(nominal - lo, hi - nominal);
}

std::optional<ThresholdWindow> threshold_window(const std::vector<double>& x,
                                                const std::vector<double>& f,
                                                double nominal,
                                                double threshold) {
  const std::size_t n = x.size();
  if (n != f.size() || n < 2) return std::nullopt;

  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(x[i] - nominal) < std::abs(x[i0] - nominal)) i0 = i;
  if (f[i0] <= threshold) return std::nullopt;

  ThresholdWindow w;
  std::size_t lo = i0;
  while (lo > 0 && f[lo - 1] > threshold) --lo;
  if (lo == 0) {
    w.lo = x.front();
    w.lo_bounded = false;
  } else {
    // f[lo-1] <= threshold < f[lo]
    w.lo = x[lo - 1] + (x[lo] - x[lo - 1]) * (threshold - f[lo - 1]) /
                           (f[lo] - f[lo - 1]);
  }
  std::size_t hi = i0;
  while (hi + 1 < n && f[hi + 1] > threshold) ++hi;
  if (hi + 1 == n) {
    w.hi = x.back();
    w.hi_bounded = false;
  } else {
    w.hi = x[hi] + (x[hi + 1] - x[hi]) * (f[hi] - threshold) /
                       (f[hi] - f[hi + 1]);
  }
  return w;
}

ResultTable run_rabi_compare(const Scenario& s) {
  const SystemParams& p = s.params;
  const double T = p.gate_duration;
  const int i11 = pair_index(Level::g1, Level::g1);
  const int irr = pair_index(Level::ryd, Level::ryd);

  const Trajectory full = propagate_pure(full_hamiltonian(p),
                                         pair_ket(Level::g1, Level::g1),
                                         s.integrator, T);
  Vec psi0_eff(2);
  psi0_eff << 1.0, 0.0;
  const Trajectory eff =
      propagate_pure(effective_hamiltonian(p), psi0_eff, s.integrator, T);

  ResultTable table;
  table.provenance = provenance(s);
  table.columns = {{"t", "us"},
                   {"P11_full", "1"},
                   {"Prr_full", "1"},
                   {"P11_eff", "1"},
                   {"Prr_eff", "1"}};
  double prr_peak = 0.0, dev_prr = 0.0, dev_p11 = 0.0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    const double p11f = population(full.states[i], i11);
    const double prrf = population(full.states[i], irr);
    const double p11e = std::norm(eff.states[i](0));
    const double prre = std::norm(eff.states[i](1));
    table.rows.push_back({full.times[i], p11f, prrf, p11e, prre});
    prr_peak = std::max(prr_peak, prrf);
    dev_prr = std::max(dev_prr, std::abs(prrf - prre));
    dev_p11 = std::max(dev_p11, std::abs(p11f - p11e));
  }
  table.summary = {{"Prr_peak_full", prr_peak},
                   {"max_abs_dev_Prr", dev_prr},
                   {"max_abs_dev_P11", dev_p11},
                   {"max_norm_drift", std::max(full.max_norm_drift,
                                               eff.max_norm_drift)}};
  return table;
}

ResultTable run_fidelity_curve(const Scenario& s) {
  const SystemParams& p = s.params;
  const BasisEvolution ev =
      propagate_basis(full_hamiltonian(p), s.integrator, p.gate_duration);
  const GateTarget target = GateTarget::cz();
  const Vec4 ref = reference_amplitudes();

  ResultTable table;
  table.provenance = provenance(s);
  table.columns = {{"t", "us"}, {"F_avg", "1"}, {"F_psi_prime", "1"}};
  for (std::size_t i = 0; i < ev.times.size(); ++i) {
    const double favg = average_fidelity(ev.overlaps[i], target, kQuadratureNodes);
    const double fref = std::norm(target_overlap(ev.overlaps[i], ref, target));
    table.rows.push_back({ev.times[i], favg, fref});
  }
  table.summary = {{"final_F_avg", table.rows.back()[1]},
                   {"final_F_psi_prime", table.rows.back()[2]},
                   {"initial_F_psi_prime", table.rows.front()[2]},
                   {"max_norm_drift", ev.max_norm_drift}};
  return table;
}

ResultTable run_phase_curve(const Scenario& s) {
  const SystemParams& p = s.params;
  const Trajectory traj = propagate_pure(full_hamiltonian(p),
                                         pair_ket(Level::g1, Level::g1),
                                         s.integrator, p.gate_duration);
  const PhaseSeries ps = phase_of_11(traj);

  ResultTable table;
  table.provenance = provenance(s);
  table.columns = {{"t", "us"},
                   {"phase_full", "rad"},
                   {"phase_defined", "1"},
                   {"phase_pred", "rad"}};
  double max_dev = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double pred = accumulated_stark_phase(traj.times[i], p);
    const double phase = ps.defined[i]
                             ? ps.phase[i]
                             : std::numeric_limits<double>::quiet_NaN();
    if (ps.defined[i]) max_dev = std::max(max_dev, std::abs(ps.phase[i] - pred));
    table.rows.push_back({traj.times[i], phase, ps.defined[i] ? 1.0 : 0.0, pred});
  }
  table.summary = {{"final_phase_full", table.rows.back()[1]},
                   {"final_phase_pred", table.rows.back()[3]},
                   {"max_abs_dev", max_dev},
                   {"max_norm_drift", traj.max_norm_drift}};
  return table;
}

ResultTable run_distance_sweep(const Scenario& s, int threads) {
  const std::vector<double>& grid = s.sweep_values;
  const Vec9 psi0 = reference_state();
  const GateTarget target = GateTarget::cz();

  std::vector<double> fidelity(grid.size());
  IntegratorConfig cfg = s.integrator;
  cfg.snapshot_count = 2;  // only the endpoint matters per sweep point

  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    SystemParams p = s.params;
    p.distance = grid[i];
    p.vdw_override.reset();  // V recomputed from C6/d^6
    const Trajectory traj =
        propagate_pure(full_hamiltonian(p), psi0, cfg, p.gate_duration);
    fidelity[i] = state_fidelity_pure(Vec9(traj.states.back()), psi0, target);
  });

  ResultTable table;
  table.provenance = provenance(s);
  table.columns = {{"d", "um"}, {"F_final", "1"}};
  for (std::size_t i = 0; i < grid.size(); ++i)
    table.rows.push_back({grid[i], fidelity[i]});

  const double d0 = s.nominal_distance;
  std::size_t nearest = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (std::abs(grid[i] - d0) < std::abs(grid[nearest] - d0)) nearest = i;
  table.summary.emplace_back("F_at_nominal", fidelity[nearest]);
  table.summary.emplace_back("nominal_d_um", d0);

  const struct {
    const char* tag;
    double threshold;
  } levels[] = {{"0p99", 0.99}, {"0p999", 0.999}};
  for (const auto& level : levels) {
    const auto w = threshold_window(grid, fidelity, d0, level.threshold);
    const std::string prefix = std::string("window_") + level.tag + "_";
    if (!w) {
      table.summary.emplace_back(prefix + "exists", 0.0);
      continue;
    }
    table.summary.emplace_back(prefix + "exists", 1.0);
    table.summary.emplace_back(prefix + "lo_nm", (w->lo - d0) * 1e3);
    table.summary.emplace_back(prefix + "hi_nm", (w->hi - d0) * 1e3);
    table.summary.emplace_back(prefix + "width_nm", w->symmetric_width(d0) * 1e3);
    table.summary.emplace_back(prefix + "span_nm", w->width() * 1e3);
    table.summary.emplace_back(prefix + "bounded",
                               (w->lo_bounded && w->hi_bounded) ? 1.0 : 0.0);
  }
  return table;
}

namespace {

SystemParams lifetime_regime_params(const SystemParams& shared, Regime regime,
                                    double tau) {
  SystemParams p = shared;
  p.tau = tau;
  if (regime == Regime::RAB) {
    p.pulse_shape = PulseShape::ConstantAmplitude;
    p.vdw_override = antiblockade_vdw_target(p);
    p.gate_duration = rabi_period(p);
  } else {
    p.pulse_shape = PulseShape::CosineEnvelope;
    p.vdw_override = broken_vdw_target(p);
    p.gate_duration = gate_duration_for_phase(kPi, p);
  }
  return p;
}

}  // namespace

ResultTable run_lifetime_sweep(const Scenario& s, int threads) {
  const std::vector<double>& taus = s.sweep_values;
  const int n = static_cast<int>(taus.size());
  const Vec9 psi0 = reference_state();
  const Mat rho0 = psi0 * psi0.adjoint();
  const GateTarget target = GateTarget::cz();

  std::vector<double> f_rab(n), f_broken(n);
  // Tasks: [0, n) antiblockade gate, [n, 2n) shaped-pulse gate.
  parallel_for(2 * n, threads, [&](int task) {
    const Regime regime = task < n ? Regime::RAB : Regime::Broken;
    const double tau = taus[task % n];
    const SystemParams p = lifetime_regime_params(s.params, regime, tau);
    IntegratorConfig cfg = s.step_overridden
                               ? s.integrator
                               : default_lindblad_config(p, p.gate_duration);
    cfg.snapshot_count = 2;
    const JumpOperators jumps = JumpOperators::decay_channels(1.0 / tau);
    const Trajectory traj =
        propagate_lindblad(full_hamiltonian(p), rho0, jumps, cfg, p.gate_duration);
    const double f = state_fidelity_mixed(traj.densities.back(), psi0, target);
    (task < n ? f_rab : f_broken)[task % n] = f;
  });

  const SystemParams p_rab = lifetime_regime_params(s.params, Regime::RAB, 100.0);
  const SystemParams p_broken =
      lifetime_regime_params(s.params, Regime::Broken, 100.0);
  const std::string step_text =
      "rab=" +
      format_step(s.step_overridden
                      ? s.integrator.step
                      : default_lindblad_config(p_rab, p_rab.gate_duration).step) +
      ";broken=" +
      format_step(s.step_overridden
                      ? s.integrator.step
                      : default_lindblad_config(p_broken, p_broken.gate_duration).step);

  ResultTable table;
  table.provenance = provenance(s, step_text);
  table.columns = {{"tau", "us"}, {"F_final_rab", "1"}, {"F_final_broken", "1"}};
  for (int i = 0; i < n; ++i)
    table.rows.push_back({taus[i], f_rab[i], f_broken[i]});
  for (int i = 0; i < n; ++i) {
    if (taus[i] == 40.0) table.summary.emplace_back("F_broken_tau40", f_broken[i]);
    if (taus[i] == 100.0) {
      table.summary.emplace_back("F_broken_tau100", f_broken[i]);
      table.summary.emplace_back("F_rab_tau100", f_rab[i]);
    }
  }
  return table;
}

ResultTable run_scenario(const Scenario& s, int threads) {
  switch (s.experiment) {
    case Experiment::RabiCompare: return run_rabi_compare(s);
    case Experiment::FidelityCurve: return run_fidelity_curve(s);
    case Experiment::PhaseCurve: return run_phase_curve(s);
    case Experiment::DistanceSweep: return run_distance_sweep(s, threads);
    case Experiment::LifetimeSweep: return run_lifetime_sweep(s, threads);
  }
  throw std::logic_error("run_scenario: unknown experiment");
}

}  // namespace rabsim

#include "rabsim/dynamics.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

namespace rabsim {

namespace {

constexpr double kNormErrorGate = 1e-6;    // hard failure thresholds
constexpr double kTraceErrorGate = 1e-6;
constexpr double kEigErrorGate = -1e-6;

std::vector<long> snapshot_steps(long nsteps, int count) {
  const long want = std::max<long>(2, std::min<long>(count, nsteps + 1));
  std::vector<long> snaps(want);
  for (long i = 0; i < want; ++i) snaps[i] = (i * nsteps) / (want - 1);
  return snaps;
}

long step_count(double total_time, double step) {
  if (step <= 0.0) throw std::invalid_argument("IntegratorConfig: step <= 0");
  if (total_time <= 0.0) throw std::invalid_argument("propagate: total_time <= 0");
  return std::max<long>(1, static_cast<long>(std::ceil(total_time / step - 1e-12)));
}

[[noreturn]] void fail(const char* kind, double t, const char* gate, double value) {
  std::ostringstream msg;
  msg << kind << " failure at t = " << t << " us: " << gate << " = " << value;
  throw IntegratorError(msg.str());
}

using SnapFn = std::function<void(std::size_t, double, const Mat&)>;

// RK4 over C columns of dimension N. N/C are compile-time when known,
// which keeps the 9-dim inner loop free of dispatch and allocation.
// Column norms are gated after every step (unitary dynamics only loses
// norm through truncation error).
template <int N, int C>
void rk4_columns(const TimeOperator& Hop, const Mat& y0, long nsteps, double h,
                 const std::vector<long>& snaps, const SnapFn& on_snap) {
  using StateM = Eigen::Matrix<Complex, N, C>;
  using HMap = Eigen::Map<const Eigen::Matrix<Complex, N, N>>;
  const long n = y0.rows();
  const long cols = y0.cols();
  const Complex mi(0.0, -1.0);

  Mat ht(n, n), hm(n, n), he(n, n);
  StateM y = y0, k1 = y0, k2 = y0, k3 = y0, k4 = y0, tmp = y0;
  Mat snap_copy(y0.rows(), y0.cols());

  std::size_t snap_i = 0;
  auto maybe_snap = [&](long step, double t) {
    while (snap_i < snaps.size() && snaps[snap_i] == step) {
      snap_copy = y;
      on_snap(snap_i, t, snap_copy);
      ++snap_i;
    }
  };

  Hop.eval_into(0.0, ht);
  maybe_snap(0, 0.0);
  for (long i = 0; i < nsteps; ++i) {
    const double t = i * h;
    Hop.eval_into(t + 0.5 * h, hm);
    Hop.eval_into(t + h, he);
    HMap mt(ht.data(), n, n), mm(hm.data(), n, n), me(he.data(), n, n);
    k1.noalias() = mi * (mt * y);
    tmp = y + (0.5 * h) * k1;
    k2.noalias() = mi * (mm * tmp);
    tmp = y + (0.5 * h) * k2;
    k3.noalias() = mi * (mm * tmp);
    tmp = y + h * k3;
    k4.noalias() = mi * (me * tmp);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    for (long c = 0; c < cols; ++c) {
      const double drift = std::abs(y.col(c).squaredNorm() - 1.0);
      if (drift > kNormErrorGate)
        fail("rk4 step", (i + 1) * h, "norm drift", drift);
    }
    ht.swap(he);  // H(t + h) opens the next step
    maybe_snap(i + 1, (i + 1) * h);
  }
}

void rk4_dispatch(const TimeOperator& Hop, const Mat& y0, long nsteps, double h,
                  const std::vector<long>& snaps, const SnapFn& on_snap) {
  const long n = y0.rows(), c = y0.cols();
  if (n == 9 && c == 1) return rk4_columns<9, 1>(Hop, y0, nsteps, h, snaps, on_snap);
  if (n == 9 && c == 4) return rk4_columns<9, 4>(Hop, y0, nsteps, h, snaps, on_snap);
  if (n == 3 && c == 1) return rk4_columns<3, 1>(Hop, y0, nsteps, h, snaps, on_snap);
  if (n == 2 && c == 1) return rk4_columns<2, 1>(Hop, y0, nsteps, h, snaps, on_snap);
  rk4_columns<Eigen::Dynamic, Eigen::Dynamic>(Hop, y0, nsteps, h, snaps, on_snap);
}

}  // namespace

double base_step(const SystemParams& p) {
  double fastest = p.mod_freq;
  if (p.vdw_override || p.distance > 0.0)
    fastest = std::max(fastest, std::abs(vdw_strength(p)));
  return kTwoPi / fastest / 40.0;
}

IntegratorConfig default_pure_config(const SystemParams& p, double total_time) {
  const double base = base_step(p);
  const double nbase = total_time / base;
  IntegratorConfig cfg;
  cfg.step = base / (nbase <= 6e4 ? 16.0 : 6.0);
  return cfg;
}

IntegratorConfig default_lindblad_config(const SystemParams& p, double /*total_time*/) {
  IntegratorConfig cfg;
  cfg.step = base_step(p) / 2.0;
  return cfg;
}

JumpOperators JumpOperators::decay_channels(double gamma) {
  const double amp = std::sqrt(gamma / 2.0);
  const Mat3 eye = Mat3::Identity();
  JumpOperators j;
  j.gamma = gamma;
  j.ops[0] = amp * tensor(transition(Level::g0, Level::ryd), eye);
  j.ops[1] = amp * tensor(transition(Level::g1, Level::ryd), eye);
  j.ops[2] = amp * tensor(eye, transition(Level::g0, Level::ryd));
  j.ops[3] = amp * tensor(eye, transition(Level::g1, Level::ryd));
  return j;
}

Trajectory propagate_pure(const TimeOperator& H, const Vec& psi0,
                          const IntegratorConfig& cfg, double total_time) {
  if (psi0.size() != H.dim())
    throw std::invalid_argument("propagate_pure: state/operator dimension mismatch");
  if (norm_drift(psi0) > 1e-8)
    throw std::invalid_argument("propagate_pure: psi0 is not normalized");

  const long nsteps = step_count(total_time, cfg.step);
  const double h = total_time / nsteps;
  const auto snaps = snapshot_steps(nsteps, cfg.snapshot_count);

  Trajectory traj;
  traj.times.resize(snaps.size());
  traj.states.resize(snaps.size());

  rk4_dispatch(H, psi0, nsteps, h, snaps,
               [&](std::size_t idx, double t, const Mat& y) {
                 const double drift = std::abs(y.squaredNorm() - 1.0);
                 if (drift > kNormErrorGate) fail("propagate_pure", t, "norm drift", drift);
                 traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
                 traj.times[idx] = t;
                 traj.states[idx] = y.col(0);
               });
  traj.times.back() = total_time;
  return traj;
}

BasisEvolution propagate_basis(const TimeOperator& H,
                               const IntegratorConfig& cfg, double total_time) {
  if (H.dim() != kPairDim)
    throw std::invalid_argument("propagate_basis: needs the 9-dim Hamiltonian");

  // Computational basis states |00>, |01>, |10>, |11| as columns.
  static const std::array<int, 4> comp = {
      pair_index(Level::g0, Level::g0), pair_index(Level::g0, Level::g1),
      pair_index(Level::g1, Level::g0), pair_index(Level::g1, Level::g1)};
  Mat y0 = Mat::Zero(kPairDim, 4);
  for (int b = 0; b < 4; ++b) y0(comp[b], b) = 1.0;

  const long nsteps = step_count(total_time, cfg.step);
  const double h = total_time / nsteps;
  const auto snaps = snapshot_steps(nsteps, cfg.snapshot_count);

  BasisEvolution ev;
  ev.times.resize(snaps.size());
  ev.overlaps.resize(snaps.size());

  rk4_dispatch(H, y0, nsteps, h, snaps,
               [&](std::size_t idx, double t, const Mat& y) {
                 for (int b = 0; b < 4; ++b) {
                   const double drift = std::abs(y.col(b).squaredNorm() - 1.0);
                   if (drift > kNormErrorGate)
                     fail("propagate_basis", t, "column norm drift", drift);
                   ev.max_norm_drift = std::max(ev.max_norm_drift, drift);
                 }
                 Mat4 m;
                 for (int a = 0; a < 4; ++a)
                   for (int b = 0; b < 4; ++b) m(a, b) = y(comp[a], b);
                 ev.times[idx] = t;
                 ev.overlaps[idx] = m;
               });
  ev.times.back() = total_time;
  return ev;
}

Trajectory propagate_lindblad(const TimeOperator& H, const Mat& rho0,
                              const JumpOperators& jumps,
                              const IntegratorConfig& cfg, double total_time) {
  if (H.dim() != kPairDim || rho0.rows() != kPairDim || rho0.cols() != kPairDim)
    throw std::invalid_argument("propagate_lindblad: needs 9-dim operator and state");
  if (!is_hermitian(rho0, 1e-10))
    throw std::invalid_argument("propagate_lindblad: rho0 is not Hermitian");
  if (trace_drift(rho0) > 1e-8)
    throw std::invalid_argument("propagate_lindblad: rho0 trace is not 1");
  if (min_eigenvalue(rho0) < -1e-8)
    throw std::invalid_argument("propagate_lindblad: rho0 is not positive");

  using M9 = Eigen::Matrix<Complex, 9, 9>;
  using HMap = Eigen::Map<const M9>;
  const Complex mi(0.0, -1.0);

  std::array<M9, 4> L, Ld;
  for (int k = 0; k < 4; ++k) {
    L[k] = jumps.ops[k];
    Ld[k] = jumps.ops[k].adjoint();
  }
  M9 ldl = M9::Zero();
  for (int k = 0; k < 4; ++k) ldl += Ld[k] * L[k];

  const long nsteps = step_count(total_time, cfg.step);
  const double h = total_time / nsteps;
  const auto snaps = snapshot_steps(nsteps, cfg.snapshot_count);

  Trajectory traj;
  traj.times.resize(snaps.size());
  traj.densities.resize(snaps.size());

  Mat hbuf_t(9, 9), hbuf_m(9, 9), hbuf_e(9, 9);
  M9 rho = rho0, k1, k2, k3, k4, stage, tmp, sym;

  auto rhs = [&](const Mat& hbuf, const M9& r, M9& out) {
    HMap hm(hbuf.data(), 9, 9);
    out.noalias() = mi * (hm * r);
    out.noalias() -= mi * (r * hm);
    for (int k = 0; k < 4; ++k) {
      tmp.noalias() = L[k] * r;
      out.noalias() += tmp * Ld[k];
    }
    out.noalias() -= 0.5 * (ldl * r);
    out.noalias() -= 0.5 * (r * ldl);
  };

  std::size_t snap_i = 0;
  auto maybe_snap = [&](long step, double t) {
    while (snap_i < snaps.size() && snaps[snap_i] == step) {
      const double tdrift = std::abs(rho.trace() - Complex(1.0, 0.0));
      if (tdrift > kTraceErrorGate) fail("propagate_lindblad", t, "trace drift", tdrift);
      Eigen::SelfAdjointEigenSolver<M9> es(rho, Eigen::EigenvaluesOnly);
      const double mineig = es.eigenvalues().minCoeff();
      if (mineig < kEigErrorGate) fail("propagate_lindblad", t, "min eigenvalue", mineig);
      traj.max_trace_drift = std::max(traj.max_trace_drift, tdrift);
      traj.min_eigenvalue = std::min(traj.min_eigenvalue, mineig);
      traj.times[snap_i] = t;
      traj.densities[snap_i] = rho;
      ++snap_i;
    }
  };

  H.eval_into(0.0, hbuf_t);
  maybe_snap(0, 0.0);
  for (long i = 0; i < nsteps; ++i) {
    const double t = i * h;
    H.eval_into(t + 0.5 * h, hbuf_m);
    H.eval_into(t + h, hbuf_e);
    rhs(hbuf_t, rho, k1);
    stage = rho + (0.5 * h) * k1;
    rhs(hbuf_m, stage, k2);
    stage = rho + (0.5 * h) * k2;
    rhs(hbuf_m, stage, k3);
    stage = rho + h * k3;
    rhs(hbuf_e, stage, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    // guard against slow Hermiticity drift
    sym = rho.adjoint();
    rho = 0.5 * (rho + sym);
    hbuf_t.swap(hbuf_e);
    maybe_snap(i + 1, (i + 1) * h);
  }
  traj.times.back() = total_time;
  return traj;
}

}  // namespace rabsim

#include <cmath>
#include <random>

#include "doctest.h"

#include "rabsim/dynamics.hpp"
#include "rabsim/hamiltonian.hpp"
#include "rabsim/metrics.hpp"

using namespace rabsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

SystemParams rab_params() {
  SystemParams p = default_params();
  p.pulse_shape = PulseShape::ConstantAmplitude;
  p.vdw_override = antiblockade_vdw_target(p);
  p.gate_duration = rabi_period(p);
  return p;
}

TimeOperator zero_hamiltonian(int dim) {
  return TimeOperator(dim, Frame::Lab, [](double, Mat& m) { m.setZero(); });
}

}  // namespace

TEST_CASE("zero Hamiltonian leaves the state untouched") {
  Vec psi0(3);
  psi0 << Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.0);
  IntegratorConfig cfg;
  cfg.step = 0.01;
  cfg.snapshot_count = 11;
  const Trajectory traj = propagate_pure(zero_hamiltonian(3), psi0, cfg, 1.0);
  REQUIRE(traj.size() == 11);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == 1.0);
  for (const auto& s : traj.states)
    CHECK((s - psi0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-atom run matches the closed form") {
  // theta(t) = sin(w t) Omega0 / (2 w); |psi> = cos(theta)|1> - i sin(theta)|r>
  SystemParams p = default_params();
  p.pulse_shape = PulseShape::ConstantAmplitude;
  p.gate_duration = 3.0;
  p.distance = 0.0;  // no interaction scale in this run
  Vec psi0(2);
  psi0 << 1.0, 0.0;
  const IntegratorConfig cfg = default_pure_config(p, p.gate_duration);
  const Trajectory traj =
      propagate_pure(single_atom_hamiltonian(p), psi0, cfg, p.gate_duration);

  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double theta =
        std::sin(p.mod_freq * traj.times[i]) * p.omega0_max / (2.0 * p.mod_freq);
    worst = std::max(worst, std::abs(traj.states[i](0) - Complex(std::cos(theta))));
    worst = std::max(worst,
                     std::abs(traj.states[i](1) - Complex(0, -1.0) * std::sin(theta)));
  }
  CHECK(worst < 1e-6);
  CHECK(traj.max_norm_drift < 1e-8);
}

TEST_CASE("resonant effective model reproduces the Rabi formula") {
  const SystemParams p = rab_params();
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
  CHECK(worst < 1e-6);

  // full inversion at T0/2
  const Trajectory half = propagate_pure(effective_hamiltonian(p), psi0, cfg,
                                         p.gate_duration / 2.0);
  CHECK(std::norm(half.states.back()(1)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("propagation is linear") {
  const SystemParams p = rab_params();
  const IntegratorConfig cfg = default_pure_config(p, 0.2);
  const TimeOperator h = full_hamiltonian(p);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Vec9 a = pair_ket(Level::g1, Level::g1);
  Vec9 b = Vec9::Zero();
  b(pair_index(Level::g0, Level::g1)) = Complex(0.0, 1.0);

  for (int rep = 0; rep < 4; ++rep) {
    Complex alpha(u(rng), u(rng)), beta(u(rng), u(rng));
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= norm;
    beta /= norm;
    const Vec9 mix = alpha * a + beta * b;
    const Vec out_mix =
        propagate_pure(h, Vec(mix), cfg, 0.2).states.back();
    const Vec out_a = propagate_pure(h, Vec(a), cfg, 0.2).states.back();
    const Vec out_b = propagate_pure(h, Vec(b), cfg, 0.2).states.back();
    CHECK((out_mix - (alpha * out_a + beta * out_b)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("step halving leaves observables unchanged at 1e-7") {
  const SystemParams p = rab_params();
  const IntegratorConfig cfg = default_pure_config(p, p.gate_duration);
  IntegratorConfig half = cfg;
  half.step = cfg.step / 2.0;

  const TimeOperator h = full_hamiltonian(p);
  const Vec psi0 = pair_ket(Level::g1, Level::g1);
  const Vec end1 = propagate_pure(h, psi0, cfg, p.gate_duration).states.back();
  const Vec end2 = propagate_pure(h, psi0, half, p.gate_duration).states.back();
  const int irr = pair_index(Level::ryd, Level::ryd);
  const int i11 = pair_index(Level::g1, Level::g1);
  CHECK(std::abs(std::norm(end1(irr)) - std::norm(end2(irr))) < 1e-7);
  CHECK(std::abs(std::norm(end1(i11)) - std::norm(end2(i11))) < 1e-7);
  CHECK(std::abs(end1(i11) - end2(i11)) < 1e-7);
}

TEST_CASE("norm gate trips on a hopeless step size") {
  const SystemParams p = rab_params();
  IntegratorConfig coarse;
  coarse.step = 0.05;  // ~20 points per interaction period
  coarse.snapshot_count = 50;
  CHECK_THROWS_AS(propagate_pure(full_hamiltonian(p),
                                 Vec(pair_ket(Level::g1, Level::g1)), coarse,
                                 p.gate_duration),
                  IntegratorError);
}

TEST_CASE("input contracts") {
  const SystemParams p = rab_params();
  const IntegratorConfig cfg = default_pure_config(p, 0.1);
  Vec unnormalized(9);
  unnormalized.setZero();
  unnormalized(0) = 0.5;
  CHECK_THROWS_AS(propagate_pure(full_hamiltonian(p), unnormalized, cfg, 0.1),
                  std::invalid_argument);
  Vec wrong_dim(3);
  wrong_dim << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(propagate_pure(full_hamiltonian(p), wrong_dim, cfg, 0.1),
                  std::invalid_argument);
}

TEST_CASE("jump operators satisfy the sum rule") {
  const double gamma = 1.0 / 37.0;
  const JumpOperators jumps = JumpOperators::decay_channels(gamma);
  Mat sum = Mat::Zero(9, 9);
  for (const auto& l : jumps.ops) sum += l.adjoint() * l;
  const Mat3 pr = projector(Level::ryd);
  const Mat3 eye = Mat3::Identity();
  const Mat9 expected = gamma * (tensor(pr, eye) + tensor(eye, pr));
  CHECK((sum - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("free decay of |rr> follows the two-atom cascade") {
  // Rate-equation oracle with H = 0: P_rr = e^{-2 g t}, the four singly
  // excited states carry 2 e^{-g t}(1 - e^{-g t}), the ground manifold
  // the rest.
  const double gamma = 0.05;
  const double T = 30.0;
  IntegratorConfig cfg;
  cfg.step = 0.002;
  cfg.snapshot_count = 61;

  const Vec9 rr = pair_ket(Level::ryd, Level::ryd);
  const Trajectory traj =
      propagate_lindblad(zero_hamiltonian(9), Mat(rr * rr.adjoint()),
                         JumpOperators::decay_channels(gamma), cfg, T);

  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const double s = std::exp(-gamma * t);
    const Mat& rho = traj.densities[i];
    const double p_rr = rho(8, 8).real();
    double p_single = 0.0;
    for (int idx : {2, 5, 6, 7}) p_single += rho(idx, idx).real();
    double p_ground = 0.0;
    for (int idx : {0, 1, 3, 4}) p_ground += rho(idx, idx).real();
    worst = std::max(worst, std::abs(p_rr - s * s));
    worst = std::max(worst, std::abs(p_single - 2.0 * s * (1.0 - s)));
    worst = std::max(worst, std::abs(p_ground - (1.0 - s) * (1.0 - s)));
  }
  CHECK(worst < 1e-9);
  CHECK(traj.max_trace_drift < 1e-8);
  CHECK(traj.min_eigenvalue > -1e-8);
}

TEST_CASE("|11> is decay-free") {
  const double gamma = 0.1;
  IntegratorConfig cfg;
  cfg.step = 0.01;
  cfg.snapshot_count = 11;
  const Vec9 e11 = pair_ket(Level::g1, Level::g1);
  const Trajectory traj =
      propagate_lindblad(zero_hamiltonian(9), Mat(e11 * e11.adjoint()),
                         JumpOperators::decay_channels(gamma), cfg, 5.0);
  for (const auto& rho : traj.densities)
    CHECK(std::abs(rho(4, 4).real() - 1.0) < 1e-12);
}

TEST_CASE("closed-system master equation matches pure propagation") {
  SystemParams p = rab_params();
  p.gate_duration = rabi_period(p) / 4.0;
  const IntegratorConfig cfg = default_pure_config(p, p.gate_duration);
  const TimeOperator h = full_hamiltonian(p);
  const Vec9 psi0 = reference_state();

  const Trajectory pure = propagate_pure(h, Vec(psi0), cfg, p.gate_duration);
  const Trajectory mixed =
      propagate_lindblad(h, Mat(psi0 * psi0.adjoint()),
                         JumpOperators::decay_channels(0.0), cfg, p.gate_duration);

  const Vec& psi = pure.states.back();
  const Mat& rho = mixed.densities.back();
  for (int i = 0; i < 9; ++i)
    CHECK(std::abs(std::norm(psi(i)) - rho(i, i).real()) < 1e-7);
}

TEST_CASE("master equation gates trip on a hopeless step size") {
  const SystemParams p = rab_params();
  IntegratorConfig coarse;
  coarse.step = 0.05;
  coarse.snapshot_count = 50;
  const Vec9 psi0 = reference_state();
  CHECK_THROWS_AS(
      propagate_lindblad(full_hamiltonian(p), Mat(psi0 * psi0.adjoint()),
                         JumpOperators::decay_channels(0.01), coarse,
                         p.gate_duration),
      IntegratorError);
}

TEST_CASE("master equation input contracts") {
  const SystemParams p = rab_params();
  const IntegratorConfig cfg = default_lindblad_config(p, 0.1);
  const JumpOperators jumps = JumpOperators::decay_channels(0.01);

  Mat not_hermitian = Mat::Zero(9, 9);
  not_hermitian(0, 0) = 1.0;
  not_hermitian(0, 1) = 0.5;
  CHECK_THROWS_AS(
      propagate_lindblad(full_hamiltonian(p), not_hermitian, jumps, cfg, 0.1),
      std::invalid_argument);

  Mat wrong_trace = Mat::Zero(9, 9);
  wrong_trace(0, 0) = 0.5;
  CHECK_THROWS_AS(
      propagate_lindblad(full_hamiltonian(p), wrong_trace, jumps, cfg, 0.1),
      std::invalid_argument);
}

TEST_CASE("basis propagation") {
  const SystemParams p = rab_params();
  const IntegratorConfig cfg = default_pure_config(p, p.gate_duration);
  const BasisEvolution ev =
      propagate_basis(full_hamiltonian(p), cfg, p.gate_duration);

  SUBCASE("starts at the identity") {
    CHECK((ev.overlaps.front() - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("column norms never exceed 1") {
    for (const auto& m : ev.overlaps)
      for (int b = 0; b < 4; ++b)
        CHECK(m.col(b).squaredNorm() <= 1.0 + 1e-8);
  }
  SUBCASE("the |00> column never moves") {
    for (const auto& m : ev.overlaps) {
      CHECK(std::abs(m(0, 0) - Complex(1.0, 0.0)) < 1e-12);
      CHECK(std::abs(m(1, 0)) < 1e-12);
      CHECK(std::abs(m(2, 0)) < 1e-12);
      CHECK(std::abs(m(3, 0)) < 1e-12);
    }
  }
}

TEST_CASE("snapshot schedule") {
  const SystemParams p = rab_params();

  SUBCASE("long runs get the requested snapshot count") {
    const IntegratorConfig cfg = default_pure_config(p, p.gate_duration);
    const Trajectory traj =
        propagate_pure(full_hamiltonian(p), Vec(pair_ket(Level::g1, Level::g1)),
                       cfg, p.gate_duration);
    CHECK(traj.size() == 2000);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == p.gate_duration);
    for (std::size_t i = 1; i < traj.size(); ++i)
      CHECK(traj.times[i] > traj.times[i - 1]);
  }
  SUBCASE("short runs record every step") {
    IntegratorConfig cfg;
    cfg.step = 0.01;
    cfg.snapshot_count = 2000;
    const Trajectory traj = propagate_pure(zero_hamiltonian(2),
                                           Vec(Eigen::Vector2cd(1.0, 0.0)), cfg, 0.05);
    CHECK(traj.size() == 6);  // 5 steps + initial point
  }
}

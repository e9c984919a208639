#include <cmath>
#include <random>

#include "doctest.h"

#include "rabsim/metrics.hpp"

using namespace rabsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Brute-force Riemann oracle for the product-state average, independent
// of the quadrature path under test.
double average_fidelity_oracle(const Mat4& m, const GateTarget& target, int n) {
  const Vec4 phases = target.phase_factors();
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const double a1 = -kPi + 2.0 * kPi * j / n;
    for (int k = 0; k < n; ++k) {
      const double a2 = -kPi + 2.0 * kPi * k / n;
      Vec4 c;
      c << std::cos(a1) * std::cos(a2), std::cos(a1) * std::sin(a2),
          std::sin(a1) * std::cos(a2), std::sin(a1) * std::sin(a2);
      total += std::norm((c.cwiseProduct(phases)).dot(m * c));
    }
  }
  return total / (static_cast<double>(n) * n);
}

Mat4 random_mat4(std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = scale * Complex(u(rng), u(rng));
  return m;
}

}  // namespace

TEST_CASE("product states") {
  CHECK((product_state({0.0, 0.0}) - pair_ket(Level::g0, Level::g0))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK((product_state({kPi / 2, kPi / 2}) - pair_ket(Level::g1, Level::g1))
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int rep = 0; rep < 32; ++rep) {
    const Vec9 psi = product_state({u(rng), u(rng)});
    CHECK(psi.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("reference state") {
  const Vec9 psi = reference_state();
  CHECK(psi.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::norm(psi(pair_index(Level::g1, Level::g1))) ==
        doctest::Approx(0.45));
}

TEST_CASE("average fidelity of the identity process against CZ") {
  // Frozen from the dense-grid oracle: the average is exactly 9/16.
  const Mat4 eye = Mat4::Identity();
  const double oracle = average_fidelity_oracle(eye, GateTarget::cz(), 512);
  CHECK(oracle == doctest::Approx(0.5625).epsilon(1e-10));
  CHECK(average_fidelity(eye, GateTarget::cz()) ==
        doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("exact gates have unit average fidelity") {
  Mat4 cz = Mat4::Identity();
  cz(3, 3) = -1.0;
  CHECK(average_fidelity(cz, GateTarget::cz()) == doctest::Approx(1.0));

  for (double phi : {0.3, 1.0, 2.2, -2.9}) {
    Mat4 gate = Mat4::Identity();
    gate(3, 3) = std::exp(Complex(0.0, phi));
    CHECK(average_fidelity(gate, GateTarget::phase_gate(phi)) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("quadrature is exact from 9 nodes up") {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 16; ++rep) {
    const Mat4 m = random_mat4(rng);
    const GateTarget t = GateTarget::phase_gate(0.7 * rep);
    const double f9 = average_fidelity(m, t, 9);
    const double f16 = average_fidelity(m, t, 16);
    const double f64 = average_fidelity(m, t, 64);
    CHECK(std::abs(f9 - f16) < 1e-12);
    CHECK(std::abs(f16 - f64) < 1e-12);
    // and both agree with a dense Riemann grid
    CHECK(f16 == doctest::Approx(average_fidelity_oracle(m, t, 256)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(average_fidelity(Mat4::Identity(), GateTarget::cz(), 8),
                  std::invalid_argument);
}

TEST_CASE("average fidelity ignores a global phase of the process") {
  std::mt19937 rng(37);
  const Mat4 m = random_mat4(rng, 0.5);
  const double base = average_fidelity(m, GateTarget::cz());
  for (double theta : {0.1, 1.7, 3.0}) {
    const Mat4 rotated = std::exp(Complex(0.0, theta)) * m;
    CHECK(average_fidelity(rotated, GateTarget::cz()) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("fidelities stay inside [0, 1] for physical processes") {
  std::mt19937 rng(41);
  for (int rep = 0; rep < 16; ++rep) {
    // contractions: a unitary scaled below 1 models leakage
    Mat4 m = random_mat4(rng);
    const Eigen::JacobiSVD<Mat4> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    m = svd.matrixU() * svd.matrixV().adjoint() * 0.93;
    const double f = average_fidelity(m, GateTarget::cz());
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-10);
  }
}

TEST_CASE("pure state fidelity") {
  const GateTarget cz = GateTarget::cz();
  const Vec9 psi0 = reference_state();

  SUBCASE("the ideal state scores 1") {
    Vec9 ideal = psi0;
    ideal(pair_index(Level::g1, Level::g1)) *= -1.0;
    CHECK(state_fidelity_pure(ideal, psi0, cz) == doctest::Approx(1.0));
  }
  SUBCASE("the untouched reference state scores 0.01 against CZ") {
    CHECK(state_fidelity_pure(psi0, psi0, cz) ==
          doctest::Approx(0.01).epsilon(1e-12));
  }
  SUBCASE("orthogonal states score 0") {
    const Vec9 other = pair_ket(Level::g0, Level::ryd);
    CHECK(state_fidelity_pure(other, psi0, cz) == doctest::Approx(0.0));
  }
}

TEST_CASE("mixed state fidelity") {
  const GateTarget cz = GateTarget::cz();
  const Vec9 psi0 = reference_state();
  Vec9 ideal = psi0;
  ideal(pair_index(Level::g1, Level::g1)) *= -1.0;

  CHECK(state_fidelity_mixed(Mat(ideal * ideal.adjoint()), psi0, cz) ==
        doctest::Approx(1.0));
  CHECK(state_fidelity_mixed(Mat(Mat::Identity(9, 9) / 9.0), psi0, cz) ==
        doctest::Approx(1.0 / 9.0));
}

TEST_CASE("phase of |11> along a trajectory") {
  // Free evolution keeps the phase at zero and defined everywhere.
  const TimeOperator zero(9, Frame::Lab, [](double, Mat& m) { m.setZero(); });
  IntegratorConfig cfg;
  cfg.step = 0.01;
  cfg.snapshot_count = 21;
  const Trajectory traj =
      propagate_pure(zero, Vec(pair_ket(Level::g1, Level::g1)), cfg, 1.0);
  const PhaseSeries ps = phase_of_11(traj);
  for (std::size_t i = 0; i < ps.phase.size(); ++i) {
    CHECK(ps.defined[i]);
    CHECK(ps.phase[i] == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(phase_of_11(Trajectory{}), std::invalid_argument);
}

TEST_CASE("phase unwrapping") {
  SUBCASE("winding amplitude unwraps without jumps") {
    std::vector<Complex> amps;
    const int n = 200;
    for (int i = 0; i < n; ++i) {
      const double phi = 7.5 * i / (n - 1);  // winds past pi more than once
      amps.push_back(std::exp(Complex(0.0, phi)));
    }
    const PhaseSeries ps = unwrap_phase(amps);
    CHECK(ps.phase.front() == doctest::Approx(0.0));
    CHECK(ps.phase.back() == doctest::Approx(7.5).epsilon(1e-12));
    for (int i = 1; i < n; ++i) {
      CHECK(ps.defined[i]);
      CHECK(std::abs(ps.phase[i] - ps.phase[i - 1]) < kPi);
    }
  }
  SUBCASE("near-node samples are flagged undefined") {
    std::vector<Complex> amps = {Complex(1.0, 0.0), Complex(5e-4, 0.0),
                                 Complex(-1.0, 1e-8)};
    const PhaseSeries ps = unwrap_phase(amps);
    CHECK(ps.defined[0]);
    CHECK_FALSE(ps.defined[1]);
    CHECK(ps.defined[2]);
    // unwrapping continues across the gap from the last defined sample
    CHECK(ps.phase[2] == doctest::Approx(kPi).epsilon(1e-6));
  }
}

#include <random>

#include "doctest.h"

#include "rabsim/algebra.hpp"

using namespace rabsim;

namespace {

Mat3 random_mat3(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

}  // namespace

TEST_CASE("basis order is row-major over (atom1, atom2)") {
  CHECK(pair_index(Level::g0, Level::g0) == 0);
  CHECK(pair_index(Level::g0, Level::ryd) == 2);
  CHECK(pair_index(Level::g1, Level::g1) == 4);
  CHECK(pair_index(Level::ryd, Level::g0) == 6);
  CHECK(pair_index(Level::ryd, Level::ryd) == 8);
  CHECK(pair_ket(Level::g1, Level::ryd)(5) == Complex(1.0, 0.0));
}

TEST_CASE("tensor of identities is the identity") {
  const Mat9 t = tensor(Mat3::Identity(), Mat3::Identity());
  CHECK((t - Mat9::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor acts on one slot only") {
  // (|1><r| (x) I) |r0> = |10>
  const Mat9 op = tensor(transition(Level::g1, Level::ryd), Mat3::Identity());
  const Vec9 out = op * pair_ket(Level::ryd, Level::g0);
  CHECK((out - pair_ket(Level::g1, Level::g0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("|rr> projector has trace one") {
  const Mat9 prr = tensor(projector(Level::ryd), projector(Level::ryd));
  CHECK(prr.trace() == Complex(1.0, 0.0));
  CHECK(prr(8, 8) == Complex(1.0, 0.0));
}

TEST_CASE("tensor is multiplicative: (A(x)B)(C(x)D) = AC (x) BD") {
  std::mt19937 rng(7);
  for (int rep = 0; rep < 32; ++rep) {
    const Mat3 a = random_mat3(rng), b = random_mat3(rng);
    const Mat3 c = random_mat3(rng), d = random_mat3(rng);
    const double err =
        (tensor(a, b) * tensor(c, d) - tensor(a * c, b * d)).cwiseAbs().maxCoeff();
    CHECK(err < 1e-12);
  }
}

TEST_CASE("inner product conjugates the first slot") {
  const Vec9 e11 = pair_ket(Level::g1, Level::g1);
  const Vec9 err = pair_ket(Level::ryd, Level::ryd);
  CHECK(inner(e11, e11) == Complex(1.0, 0.0));
  CHECK(inner(e11, err) == Complex(0.0, 0.0));

  const Vec9 mixed = (e11 + Complex(0.0, 1.0) * err) / std::sqrt(2.0);
  const Complex v = inner(mixed, err);
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(std::abs(v) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("expectation values") {
  const Mat9 prr = tensor(projector(Level::ryd), projector(Level::ryd));
  const Vec9 err = pair_ket(Level::ryd, Level::ryd);
  const Vec9 e11 = pair_ket(Level::g1, Level::g1);
  CHECK(expect(Mat(prr), Vec(err)) == doctest::Approx(1.0));
  CHECK(expect(Mat(prr), Vec(e11)) == doctest::Approx(0.0));

  const Mat rho = 0.5 * e11 * e11.adjoint() + 0.5 * err * err.adjoint();
  CHECK(expect(Mat(prr), rho) == doctest::Approx(0.5));
}

TEST_CASE("expect rejects non-Hermitian operators") {
  Mat m = Mat::Zero(9, 9);
  m(0, 1) = 1.0;  // no conjugate partner
  CHECK_THROWS_AS(expect(m, Vec(pair_ket(Level::g0, Level::g0))),
                  std::invalid_argument);
}

TEST_CASE("expectation of a Hermitian operator is real for random states") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 16; ++rep) {
    Mat h = Mat::Zero(9, 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) h(i, j) = Complex(u(rng), u(rng));
    h = (h + Mat(h.adjoint())).eval();
    Vec psi(9);
    for (int i = 0; i < 9; ++i) psi(i) = Complex(u(rng), u(rng));
    psi.normalize();
    // throws if the imaginary residue exceeds 1e-10
    CHECK_NOTHROW(expect(h, psi));
  }
}

#include "rabsim/algebra.hpp"

#include <stdexcept>

namespace rabsim {

Eigen::Vector3cd level_ket(Level l) {
  Eigen::Vector3cd v = Eigen::Vector3cd::Zero();
  v(static_cast<int>(l)) = 1.0;
  return v;
}

Mat3 transition(Level to, Level from) {
  Mat3 m = Mat3::Zero();
  m(static_cast<int>(to), static_cast<int>(from)) = 1.0;
  return m;
}

Mat3 projector(Level l) { return transition(l, l); }

Vec9 pair_ket(Level a, Level b) {
  Vec9 v = Vec9::Zero();
  v(pair_index(a, b)) = 1.0;
  return v;
}

Mat9 tensor(const Mat3& a, const Mat3& b) {
  Mat9 out;
  for (int i = 0; i < kLevels; ++i)
    for (int j = 0; j < kLevels; ++j)
      out.block<3, 3>(kLevels * i, kLevels * j) = a(i, j) * b;
  return out;
}

Complex inner(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner: dimension mismatch");
  return a.dot(b);  // Eigen's dot conjugates the first factor
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double expect(const Mat& op, const Vec& psi, double imag_tol) {
  if (!is_hermitian(op))
    throw std::invalid_argument("expect: operator is not Hermitian");
  const Complex val = psi.dot(op * psi);
  if (std::abs(val.imag()) > imag_tol)
    throw std::runtime_error("expect: imaginary residue above tolerance");
  return val.real();
}

double expect(const Mat& op, const Mat& rho, double imag_tol) {
  if (!is_hermitian(op))
    throw std::invalid_argument("expect: operator is not Hermitian");
  const Complex val = (op * rho).trace();
  if (std::abs(val.imag()) > imag_tol)
    throw std::runtime_error("expect: imaginary residue above tolerance");
  return val.real();
}

double norm_drift(const Vec& psi) { return std::abs(psi.squaredNorm() - 1.0); }

double trace_drift(const Mat& rho) { return std::abs(rho.trace() - Complex(1.0, 0.0)); }

double min_eigenvalue(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace rabsim

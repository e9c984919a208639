#ifndef RABSIM_ALGEBRA_HPP
#define RABSIM_ALGEBRA_HPP

#include <complex>

#include <Eigen/Dense>

// Dense complex linear algebra over the fixed two-atom Hilbert space.
// Each atom carries three levels (|0>, |1>, |r>); the pair basis is
// row-major over (atom1, atom2):
//   |00>,|01>,|0r>,|10>,|11>,|1r>,|r0>,|r1>,|rr>
// so the pair state (a, b) sits at index 3*a + b.

namespace rabsim {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Mat9 = Eigen::Matrix<Complex, 9, 9>;
using Vec9 = Eigen::Matrix<Complex, 9, 1>;
using Vec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;
using Vec = Eigen::VectorXcd;   // states of any model dimension (2, 3, 9)
using Mat = Eigen::MatrixXcd;

inline constexpr int kLevels = 3;
inline constexpr int kPairDim = 9;

/// Single-atom levels in the fixed global order (|0>, |1>, |r>).
enum class Level : int { g0 = 0, g1 = 1, ryd = 2 };

/// Index of the pair state |a b> in the fixed basis order.
constexpr int pair_index(Level a, Level b) {
  return kLevels * static_cast<int>(a) + static_cast<int>(b);
}

/// Single-atom basis ket.
Eigen::Vector3cd level_ket(Level l);

/// Single-atom transition operator |to><from|.
Mat3 transition(Level to, Level from);

/// Single-atom projector |l><l|.
Mat3 projector(Level l);

/// Two-atom basis ket |a b> as a 9-vector.
Vec9 pair_ket(Level a, Level b);

/// Kronecker product of two single-atom operators in the fixed basis
/// order, so tensor(A, B) acts as A on atom 1 and B on atom 2.
Mat9 tensor(const Mat3& a, const Mat3& b);

/// Inner product <a|b>, conjugate-linear in the FIRST argument.
/// This convention is used everywhere in the library.
Complex inner(const Vec& a, const Vec& b);

/// True if m is Hermitian to the given entrywise tolerance.
bool is_hermitian(const Mat& m, double tol = 1e-10);

/// Expectation value <psi|op|psi>. op must be Hermitian; the imaginary
/// residue is checked against `imag_tol` and discarded.
double expect(const Mat& op, const Vec& psi, double imag_tol = 1e-10);

/// Expectation value tr(op * rho) for a density matrix rho.
double expect(const Mat& op, const Mat& rho, double imag_tol = 1e-10);

/// Squared norm deviation |<psi|psi> - 1|.
double norm_drift(const Vec& psi);

/// Trace deviation |tr(rho) - 1|.
double trace_drift(const Mat& rho);

/// Smallest eigenvalue of a Hermitian matrix (positivity probe).
double min_eigenvalue(const Mat& rho);

}  // namespace rabsim

#endif  // RABSIM_ALGEBRA_HPP

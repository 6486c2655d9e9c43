#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympoc {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kSymplecticTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-9;

/// Thrown when time propagation loses symplecticity/unitarity beyond the
/// abort threshold or produces non-finite entries.
class PropagationError : public std::runtime_error {
 public:
  explicit PropagationError(const std::string& what) : std::runtime_error(what) {}
};

/// The standard symplectic form J on 2N-dimensional phase space in the
/// (q_1..q_N, p_1..p_N) ordering: +I_N upper right, -I_N lower left.
struct SymplecticForm {
  int n_modes;
  Matrix matrix;
};

SymplecticForm symplectic_form(int n_modes);

/// Bare J matrix for N modes.
Matrix form_matrix(int n_modes);

/// || S^T J S - J ||_F
double symplectic_defect(const Matrix& s);

/// || U^dag U - I ||_F
double unitary_defect(const ComplexMatrix& u);

/// A 2N x 2N real matrix satisfying S^T J S = J. The constructor validates
/// the constraint and throws std::invalid_argument when it is violated.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix entries, double tol = kSymplecticTol);

  int n_modes() const { return n_modes_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

  /// Symplectic inverse S^{-1} = -J S^T J (no factorization needed).
  SymplecticMatrix inverse() const;

  static SymplecticMatrix identity(int n_modes);

 private:
  int n_modes_;
  Matrix entries_;
};

/// Element (S, c) of the affine symplectic group acting as z -> S z + c.
struct AffineSymplectic {
  SymplecticMatrix homogeneous;
  Vector translation;

  AffineSymplectic(SymplecticMatrix s, Vector c);

  /// (2N+1) x (2N+1) block embedding with bottom row (0,...,0,1).
  Matrix embed() const;

  static AffineSymplectic identity(int n_modes);
};

/// Composition (S_a, c_a) o (S_b, c_b) = (S_a S_b, S_a c_b + c_a).
AffineSymplectic compose_affine(const AffineSymplectic& a, const AffineSymplectic& b);

/// Real symmetric matrix H of a quadratic Hamiltonian; the generator of the
/// Heisenberg-picture motion is J H. The constructor symmetrizes exactly.
class QuadraticHamiltonian {
 public:
  QuadraticHamiltonian(int n_modes, const Matrix& h);

  int n_modes() const { return n_modes_; }
  const Matrix& matrix() const { return h_; }
  Matrix generator() const;  // J H, an element of sp(2N, R)

 private:
  int n_modes_;
  Matrix h_;
};

/// d x d complex unitary; constructor validates U^dag U = I to tolerance.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix entries, double tol = kUnitaryTol);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }

  static UnitaryMatrix identity(int dim);

 private:
  ComplexMatrix entries_;
};

/// d x d complex Hermitian matrix; hermitized exactly on construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& h);

  int dim() const { return static_cast<int>(h_.rows()); }
  const ComplexMatrix& matrix() const { return h_; }

 private:
  ComplexMatrix h_;
};

}  // namespace sympoc

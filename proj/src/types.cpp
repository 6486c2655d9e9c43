#include "sympoc/types.hpp"

namespace sympoc {

SymplecticForm symplectic_form(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("symplectic_form: n_modes must be >= 1");
  }
  return SymplecticForm{n_modes, form_matrix(n_modes)};
}

Matrix form_matrix(int n_modes) {
  const int n = n_modes;
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return j;
}

double symplectic_defect(const Matrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    throw std::invalid_argument("symplectic_defect: matrix must be 2N x 2N");
  }
  const Matrix j = form_matrix(static_cast<int>(s.rows()) / 2);
  return (s.transpose() * j * s - j).norm();
}

double unitary_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw std::invalid_argument("unitary_defect: matrix must be square");
  }
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

SymplecticMatrix::SymplecticMatrix(Matrix entries, double tol)
    : n_modes_(static_cast<int>(entries.rows()) / 2), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() % 2 != 0 || entries_.rows() == 0) {
    throw std::invalid_argument("SymplecticMatrix: entries must be 2N x 2N");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("SymplecticMatrix: entries must be finite");
  }
  const double defect = symplectic_defect(entries_);
  if (defect > tol) {
    throw std::invalid_argument("SymplecticMatrix: ||S^T J S - J||_F = " +
                                std::to_string(defect) + " exceeds tolerance " +
                                std::to_string(tol));
  }
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Matrix j = form_matrix(n_modes_);
  return SymplecticMatrix(-j * entries_.transpose() * j);
}

SymplecticMatrix SymplecticMatrix::identity(int n_modes) {
  return SymplecticMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

AffineSymplectic::AffineSymplectic(SymplecticMatrix s, Vector c)
    : homogeneous(std::move(s)), translation(std::move(c)) {
  if (translation.size() != homogeneous.dim()) {
    throw std::invalid_argument("AffineSymplectic: translation must be a 2N-vector");
  }
}

Matrix AffineSymplectic::embed() const {
  const int d = homogeneous.dim();
  Matrix m = Matrix::Zero(d + 1, d + 1);
  m.topLeftCorner(d, d) = homogeneous.entries();
  m.topRightCorner(d, 1) = translation;
  m(d, d) = 1.0;
  return m;
}

AffineSymplectic AffineSymplectic::identity(int n_modes) {
  return AffineSymplectic(SymplecticMatrix::identity(n_modes), Vector::Zero(2 * n_modes));
}

AffineSymplectic compose_affine(const AffineSymplectic& a, const AffineSymplectic& b) {
  if (a.homogeneous.dim() != b.homogeneous.dim()) {
    throw std::invalid_argument("compose_affine: mode counts differ");
  }
  Matrix s = a.homogeneous.entries() * b.homogeneous.entries();
  Vector c = a.homogeneous.entries() * b.translation + a.translation;
  return AffineSymplectic(SymplecticMatrix(std::move(s)), std::move(c));
}

QuadraticHamiltonian::QuadraticHamiltonian(int n_modes, const Matrix& h) : n_modes_(n_modes) {
  if (n_modes < 1 || h.rows() != 2 * n_modes || h.cols() != 2 * n_modes) {
    throw std::invalid_argument("QuadraticHamiltonian: matrix must be 2N x 2N");
  }
  if (!h.allFinite()) {
    throw std::invalid_argument("QuadraticHamiltonian: entries must be finite");
  }
  h_ = 0.5 * (h + h.transpose());
}

Matrix QuadraticHamiltonian::generator() const { return form_matrix(n_modes_) * h_; }

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries, double tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("UnitaryMatrix: entries must be square");
  }
  const double defect = unitary_defect(entries_);
  if (!(defect <= tol)) {
    throw std::invalid_argument("UnitaryMatrix: ||U^dag U - I||_F = " +
                                std::to_string(defect) + " exceeds tolerance " +
                                std::to_string(tol));
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("HermitianMatrix: matrix must be square");
  }
  if (!h.allFinite()) {
    throw std::invalid_argument("HermitianMatrix: entries must be finite");
  }
  h_ = 0.5 * (h + h.adjoint());
}

}  // namespace sympoc

#include "sympoc/expm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace sympoc {

namespace {

// Coefficients of the (p,q) Pade approximant to e^x:
//   N(x) = sum_k (p+q-k)! p! / ((p+q)! k! (p-k)!) x^k,  D(x) = N_{q,p}(-x).
std::vector<double> pade_numerator_coeffs(int p, int q) {
  std::vector<double> c(static_cast<size_t>(p) + 1);
  c[0] = 1.0;
  for (int k = 1; k <= p; ++k) {
    // ratio c_k / c_{k-1} = (p - k + 1) / ((p + q - k + 1) k)
    c[static_cast<size_t>(k)] =
        c[static_cast<size_t>(k - 1)] * static_cast<double>(p - k + 1) /
        (static_cast<double>(p + q - k + 1) * static_cast<double>(k));
  }
  return c;
}

Matrix polyval(const std::vector<double>& coeffs, const Matrix& a) {
  const auto n = a.rows();
  Matrix acc = coeffs.back() * Matrix::Identity(n, n);
  for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k) {
    acc = acc * a + coeffs[static_cast<size_t>(k)] * Matrix::Identity(n, n);
  }
  return acc;
}

Matrix expm_pade_core(const Matrix& a, int p, int q) {
  const std::vector<double> cn = pade_numerator_coeffs(p, q);
  std::vector<double> cd = pade_numerator_coeffs(q, p);
  for (size_t k = 1; k < cd.size(); k += 2) cd[k] = -cd[k];
  const Matrix num = polyval(cn, a);
  const Matrix den = polyval(cd, a);
  return den.partialPivLu().solve(num);
}

}  // namespace

Matrix expm_pade(const Matrix& a, int p, int q) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("expm_pade: matrix must be square");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument("expm_pade: entries must be finite");
  }
  if (p < 1 || q < 1) {
    throw std::invalid_argument("expm_pade: order degrees must be positive");
  }
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int scalings = 0;
  if (norm1 > 0.5) {
    scalings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  }
  if (scalings > 200) {
    throw std::runtime_error("expm_pade: matrix norm too large to exponentiate");
  }
  Matrix r = expm_pade_core(a / std::pow(2.0, scalings), p, q);
  for (int k = 0; k < scalings; ++k) r = r * r;
  if (!r.allFinite()) {
    throw std::runtime_error("expm_pade: overflow in exponential");
  }
  return r;
}

Matrix expm_frechet(const Matrix& a, const Matrix& b, int p, int q) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument("expm_frechet: dimension mismatch");
  }
  const auto n = a.rows();
  Matrix big = Matrix::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = a;
  big.bottomRightCorner(n, n) = a;
  big.topRightCorner(n, n) = b;
  return expm_pade(big, p, q).topRightCorner(n, n);
}

UnitaryMatrix expm_hermitian_prop(const HermitianMatrix& h, double dt) {
  if (!std::isfinite(dt)) {
    throw std::invalid_argument("expm_hermitian_prop: dt must be finite");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian_prop: eigensolver failed (ill-conditioned input)");
  }
  const ComplexVector phases =
      (std::complex<double>(0.0, -dt) * es.eigenvalues().cast<std::complex<double>>()).array().exp();
  return UnitaryMatrix(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

HermitianPropDerivative expm_hermitian_prop_derivative(const ComplexMatrix& h,
                                                       const ComplexMatrix& b, double dt) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian_prop_derivative: eigensolver failed");
  }
  const auto n = h.rows();
  const Vector lam = es.eigenvalues();
  const ComplexMatrix vecs = es.eigenvectors();
  const std::complex<double> mi(0.0, -1.0);

  ComplexVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) phases(i) = std::exp(mi * lam(i) * dt);

  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  ComplexMatrix bt = vecs.adjoint() * b * vecs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double diff = lam(i) - lam(j);
      std::complex<double> f;
      if (std::abs(diff) < 1e-6 * scale) {
        f = mi * dt * std::exp(mi * 0.5 * (lam(i) + lam(j)) * dt);
      } else {
        f = (phases(i) - phases(j)) / diff;
      }
      bt(i, j) *= f;
    }
  }
  HermitianPropDerivative out;
  out.propagator = vecs * phases.asDiagonal() * vecs.adjoint();
  out.derivative = vecs * bt * vecs.adjoint();
  return out;
}

}  // namespace sympoc

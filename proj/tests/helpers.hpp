#pragma once

#include <doctest.h>

#include "sympoc/expm.hpp"
#include "sympoc/gates.hpp"
#include "sympoc/landscape.hpp"
#include "sympoc/propagate.hpp"

namespace sympoc::test {

// Small deterministic generator so expected values are stable across runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x12345678ull) {}

  double uniform() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  double symmetric() { return 2.0 * uniform() - 1.0; }

  Matrix matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m(r, c) = symmetric();
    }
    return m;
  }
  Matrix symmetric_matrix(int dim) {
    Matrix m = matrix(dim, dim);
    return 0.5 * (m + m.transpose());
  }
  ComplexMatrix complex_matrix(int rows, int cols) {
    return matrix(rows, cols) + std::complex<double>(0, 1) * matrix(rows, cols);
  }
  ComplexMatrix hermitian_matrix(int dim) {
    ComplexMatrix m = complex_matrix(dim, dim);
    return 0.5 * (m + m.adjoint());
  }
  // exp(J K) for random symmetric K of the given scale.
  Matrix symplectic(int n_modes, double scale = 0.5) {
    Matrix k = symmetric_matrix(2 * n_modes);
    k *= scale / k.norm();
    return expm_pade(form_matrix(n_modes) * k * (2 * n_modes));
  }
  ComplexMatrix unitary(int dim, double scale = 1.0) {
    ComplexMatrix h = hermitian_matrix(dim);
    h *= scale / h.norm() * dim;
    return expm_hermitian_prop(HermitianMatrix(h), 1.0).entries();
  }

 private:
  std::uint64_t state_;
};

// Central finite differences of the discrete objective with respect to each
// field grid entry; independent oracle for the analytic gradient.
inline Matrix fd_gradient(const ControlSystem& system, const ControlField& field,
                          const GateTarget& target, double t_f, double eps = 1e-6) {
  Matrix g = Matrix::Zero(field.n_controls, field.n_steps);
  for (int i = 0; i < field.n_controls; ++i) {
    for (int k = 0; k < field.n_steps; ++k) {
      Matrix up = field.amplitudes;
      up(i, k) += eps;
      Matrix down = field.amplitudes;
      down(i, k) -= eps;
      const ControlField fu(field.n_controls, field.n_steps, field.t_f, up);
      const ControlField fd(field.n_controls, field.n_steps, field.t_f, down);
      double ju, jd;
      if (system.flavor == Flavor::Symplectic) {
        ju = fidelity(propagate_symplectic(system, fu, t_f).back().entries(), target);
        jd = fidelity(propagate_symplectic(system, fd, t_f).back().entries(), target);
      } else {
        ju = fidelity(propagate_unitary(system, fu, t_f).back().entries(), target);
        jd = fidelity(propagate_unitary(system, fd, t_f).back().entries(), target);
      }
      g(i, k) = (ju - jd) / (2.0 * eps);
    }
  }
  return g;
}

inline const double kGoldenRatio = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace sympoc::test

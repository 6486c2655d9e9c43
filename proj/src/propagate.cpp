#include "sympoc/propagate.hpp"

#include "sympoc/expm.hpp"

namespace sympoc {

namespace {

void check_grid(const ControlSystem& system, const ControlField& field, double t_f) {
  if (field.n_steps < 2) {
    throw std::invalid_argument("propagate: field grid needs q >= 2 columns");
  }
  if (field.n_controls != system.num_controls()) {
    throw std::invalid_argument("propagate: field rows do not match system controls");
  }
  if (!(t_f > 0.0) || !std::isfinite(t_f)) {
    throw std::invalid_argument("propagate: t_f must be positive and finite");
  }
}

}  // namespace

std::vector<SymplecticMatrix> propagate_symplectic(const ControlSystem& system,
                                                   const ControlField& field, double t_f) {
  if (system.flavor != Flavor::Symplectic) {
    throw std::invalid_argument("propagate_symplectic: system is not continuous-flavored");
  }
  check_grid(system, field, t_f);

  const int q = field.n_steps;
  const double dt = t_f / (q - 1);
  const Matrix j = form_matrix(system.n_modes);

  std::vector<SymplecticMatrix> trajectory;
  trajectory.reserve(static_cast<size_t>(q));
  Matrix s = Matrix::Identity(system.dim(), system.dim());
  trajectory.emplace_back(s);
  for (int k = 0; k + 1 < q; ++k) {
    Matrix h = system.drift;
    for (int i = 0; i < field.n_controls; ++i) {
      h += field.amplitudes(i, k) * system.controls[i];
    }
    s = expm_pade(j * h * dt) * s;
    const double defect = symplectic_defect(s);
    if (!(defect <= kDriftAbortTol)) {
      throw PropagationError("propagate_symplectic: symplectic defect " +
                             std::to_string(defect) + " at step " + std::to_string(k + 1) +
                             " exceeds 1e-6 (Pade underresolved; reduce dt)");
    }
    trajectory.emplace_back(s, kDriftAbortTol);
  }
  return trajectory;
}

std::vector<UnitaryMatrix> propagate_unitary(const ControlSystem& system,
                                             const ControlField& field, double t_f) {
  if (system.flavor != Flavor::Unitary) {
    throw std::invalid_argument("propagate_unitary: system is not unitary-flavored");
  }
  check_grid(system, field, t_f);

  const int q = field.n_steps;
  const double dt = t_f / (q - 1);

  std::vector<UnitaryMatrix> trajectory;
  trajectory.reserve(static_cast<size_t>(q));
  ComplexMatrix u = ComplexMatrix::Identity(system.dim(), system.dim());
  trajectory.emplace_back(u);
  for (int k = 0; k + 1 < q; ++k) {
    ComplexMatrix h = system.drift_h;
    for (int i = 0; i < field.n_controls; ++i) {
      h += field.amplitudes(i, k) * system.controls_h[i];
    }
    u = expm_hermitian_prop(HermitianMatrix(h), dt).entries() * u;
    const double defect = unitary_defect(u);
    if (!(defect <= kDriftAbortTol)) {
      throw PropagationError("propagate_unitary: unitary defect " + std::to_string(defect) +
                             " at step " + std::to_string(k + 1) + " exceeds 1e-6");
    }
    trajectory.emplace_back(u, kDriftAbortTol);
  }
  return trajectory;
}

}  // namespace sympoc

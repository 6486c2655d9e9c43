#include "sympoc/control.hpp"

namespace sympoc {

std::string to_string(Flavor f) {
  return f == Flavor::Symplectic ? "symplectic" : "unitary";
}

ControlField::ControlField(int m, int q, double tf, Matrix amps)
    : n_controls(m), n_steps(q), t_f(tf), amplitudes(std::move(amps)) {
  if (m < 0 || q < 2) {
    throw std::invalid_argument("ControlField: need q >= 2 grid columns");
  }
  if (!(tf > 0.0) || !std::isfinite(tf)) {
    throw std::invalid_argument("ControlField: t_f must be positive and finite");
  }
  if (amplitudes.rows() != m || amplitudes.cols() != q) {
    throw std::invalid_argument("ControlField: amplitude grid must be m x q");
  }
  if (!amplitudes.allFinite()) {
    throw std::invalid_argument("ControlField: amplitudes must be finite");
  }
}

ControlField ControlField::zero(int m, int q, double tf) {
  return ControlField(m, q, tf, Matrix::Zero(m, q));
}

int ControlSystem::dim() const {
  return flavor == Flavor::Symplectic ? 2 * n_modes : (1 << n_qubits);
}

int ControlSystem::num_controls() const {
  return flavor == Flavor::Symplectic ? static_cast<int>(controls.size())
                                      : static_cast<int>(controls_h.size());
}

ControlSystem ControlSystem::symplectic(int n_modes, std::string label, Matrix h0,
                                        std::vector<Matrix> hs) {
  ControlSystem sys;
  sys.flavor = Flavor::Symplectic;
  sys.n_modes = n_modes;
  sys.label = std::move(label);
  sys.drift = QuadraticHamiltonian(n_modes, h0).matrix();
  for (auto& h : hs) {
    sys.controls.push_back(QuadraticHamiltonian(n_modes, h).matrix());
  }
  return sys;
}

ControlSystem ControlSystem::unitary(int n_qubits, std::string label, ComplexMatrix h0,
                                     std::vector<ComplexMatrix> hs) {
  ControlSystem sys;
  sys.flavor = Flavor::Unitary;
  sys.n_qubits = n_qubits;
  sys.label = std::move(label);
  sys.drift_h = HermitianMatrix(h0).matrix();
  for (auto& h : hs) {
    sys.controls_h.push_back(HermitianMatrix(h).matrix());
  }
  return sys;
}

}  // namespace sympoc

#pragma once

#include "sympoc/types.hpp"

namespace sympoc {

enum class Flavor { Symplectic, Unitary };

std::string to_string(Flavor f);

/// An m x q grid of control amplitudes C_i(t_k) on the uniform time grid
/// t_k = k * t_f / (q-1), k = 0..q-1. Fields are piecewise constant on the
/// left-closed subintervals [t_k, t_{k+1}).
struct ControlField {
  int n_controls = 0;
  int n_steps = 0;
  double t_f = 0.0;
  Matrix amplitudes;  // m x q

  ControlField(int m, int q, double tf, Matrix amps);
  static ControlField zero(int m, int q, double tf);

  double dt() const { return t_f / (n_steps - 1); }
};

/// Drift Hamiltonian plus control Hamiltonians; either real symmetric
/// matrices on 2N quadratures (symplectic flavor) or complex Hermitian
/// matrices on a 2^n-dimensional qubit register (unitary flavor).
struct ControlSystem {
  Flavor flavor = Flavor::Symplectic;
  int n_modes = 0;   // symplectic flavor
  int n_qubits = 0;  // unitary flavor
  std::string label;

  Matrix drift;                 // symplectic flavor, 2N x 2N symmetric
  std::vector<Matrix> controls;

  ComplexMatrix drift_h;                 // unitary flavor, d x d Hermitian
  std::vector<ComplexMatrix> controls_h;

  int dim() const;
  int num_controls() const;

  static ControlSystem symplectic(int n_modes, std::string label, Matrix h0,
                                  std::vector<Matrix> hs);
  static ControlSystem unitary(int n_qubits, std::string label, ComplexMatrix h0,
                               std::vector<ComplexMatrix> hs);
};

}  // namespace sympoc

#pragma once

#include "sympoc/control.hpp"

namespace sympoc {

/// A target gate: a homogeneous symplectic matrix W with an optional
/// phase-space translation w, or a unitary W for the discrete counterparts.
struct GateTarget {
  Flavor flavor = Flavor::Symplectic;
  Matrix w;            // symplectic flavor
  ComplexMatrix wu;    // unitary flavor
  Vector translation;  // symplectic flavor only; zero when absent
  std::string label;

  int dim() const { return flavor == Flavor::Symplectic ? static_cast<int>(w.rows())
                                                        : static_cast<int>(wu.rows()); }
  int n_modes() const { return static_cast<int>(w.rows()) / 2; }
  bool has_translation() const { return translation.size() > 0 && translation.norm() > 0.0; }

  static GateTarget symplectic(Matrix w, Vector translation, std::string label);
  static GateTarget unitary(ComplexMatrix w, std::string label);

  AffineSymplectic affine() const;
};

// Continuous-variable Clifford primitives (symplectic flavor).
GateTarget gate_fourier();
GateTarget gate_phase(double eta);
GateTarget gate_pauli_x(double q);
GateTarget gate_pauli_z(double p);
GateTarget gate_sum();
GateTarget gate_sum3();
GateTarget gate_swap();
GateTarget gate_squeeze(double lambda);

// Discrete counterparts (unitary flavor).
GateTarget gate_cnot();
GateTarget gate_toffoli();

/// True iff the homogeneous part is orthogonal-symplectic (W^T W = I),
/// i.e. the gate lies in the maximal compact subgroup OSp(2N, R).
/// Rejects unitary-flavor gates.
bool compact_part_check(const GateTarget& g, double tol = 1e-9);

/// Block embedding of Eq.-(3) type: X - iY in U(N) -> [[X, Y], [-Y, X]],
/// an orthogonal-symplectic 2N x 2N matrix.
Matrix embed_unitary_as_osp(const ComplexMatrix& u);

/// Catalog lookup by name, e.g. "sum", "swap", "fourier", "phase:0.5",
/// "squeeze:2.0", "x:1.0", "z:0.5", "cnot", "toffoli", "sum3".
GateTarget gate_from_name(const std::string& name);
std::vector<std::string> gate_names();

}  // namespace sympoc

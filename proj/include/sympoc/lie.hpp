#pragma once

#include "sympoc/control.hpp"

namespace sympoc {

enum class Controllability {
  Uncontrollable,
  RankMetNoncompactDrift,
  Controllable,
  StronglyControllable,
};

std::string to_string(Controllability c);

struct ControllabilityReport {
  int lie_dimension = 0;
  int ambient_dimension = 0;  // N(2N+1) for sp(2N,R), d^2 for u(d)
  bool rank_condition_met = false;
  bool drift_compact = false;
  bool controls_span_algebra = false;
  Controllability classification = Controllability::Uncontrollable;
  std::string model;
};

/// Dimension of the real Lie algebra generated by a set of matrices under
/// commutators, via rank-revealing orthogonalization with relative
/// singular-value cutoff tol. Throws when closure has not stabilized within
/// the iteration cap (numerical degeneracy).
int lie_closure_dimension(const std::vector<Matrix>& generators, double tol = 1e-9);
int lie_closure_dimension(const std::vector<ComplexMatrix>& generators, double tol = 1e-9);

/// Rank-condition and controllability analysis of a control system: closes
/// the generator set {J H_0, J H_1, ...} (or {-i H_0, ...}) under
/// commutators, reports drift compactness (skew-symmetric J H_0) and whether
/// the controls alone already generate the full algebra (strong
/// controllability proxy).
ControllabilityReport lie_closure(const ControlSystem& system, double tol = 1e-9);

}  // namespace sympoc

#pragma once

#include <array>
#include <optional>

#include "sympoc/control.hpp"
#include "sympoc/gates.hpp"

namespace sympoc {

enum class Domain { Sp, OSp, U };

std::string to_string(Domain d);

/// Gate fidelity functional. Symplectic flavor:
///   J(S) = Tr (S - W)^T (S - W)  [ + (s - w)^T (s - w) for affine targets ],
/// evaluated at s = 0 for homogeneous propagators. Unitary flavor:
///   J(U) = 2 d - 2 Re Tr(W^dag U).
double fidelity(const Matrix& s, const GateTarget& target);
double fidelity(const ComplexMatrix& u, const GateTarget& target);

/// Residual of the critical-point condition
///   (S^T S - W^T S) J = J (S^T S - S^T W),
/// zero exactly at the critical propagators of the symplectic landscape.
double critical_condition_residual(const Matrix& s, const GateTarget& target);

/// Analytic gradient of the fidelity with respect to each control-field grid
/// entry, returned as the raw functional-derivative density (the discrete
/// objective's gradient is this grid times dt). Matches central finite
/// differences of the objective through the exact Frechet derivative of the
/// per-step propagators.
Matrix field_gradient(const ControlSystem& system, const ControlField& field,
                      const GateTarget& target, double t_f);

/// Singular value decomposition W = U E V^T with U, V orthogonal-symplectic
/// and E = diag(e_1..e_N, 1/e_1..1/e_N), e_i >= 1 sorted descending.
struct SymplecticSvd {
  Matrix u;
  Matrix v;
  Vector e;  // per-mode singular values >= 1
  Matrix e_matrix() const;
};
SymplecticSvd symplectic_svd(const Matrix& w);

/// One singular-value block of the canonical target: value e (> 1) with
/// multiplicity (number of modes) n.
struct SingularBlock {
  double e = 1.0;
  int n = 0;
};

/// A critical submanifold S* = R^T D R, R in Stab(E), labelled by how each
/// singular-value block of the target is treated: type-I blocks copy the
/// target, type-II blocks reverse and re-squeeze, type-III blocks rotate a
/// pair of modes, and the e_0 = 1 block splits into m_0 kept and n_0 - m_0
/// reversed modes.
struct CriticalSubmanifold {
  int m0 = 0;                      // kept e=1 modes
  int n0 = 0;                      // total e=1 modes
  std::vector<int> type_one;       // modes of block k treated as type-I
  std::vector<int> type_two;       // modes of block k treated as type-II
  struct PairBlock {
    int gamma = 0;
    int delta = 0;
    int count = 0;
    int sign = +1;
  };
  std::vector<PairBlock> type_three;

  Matrix d;               // characteristic matrix in the canonical frame
  Matrix representative;  // S* = U D V^T in the target frame
  double value = 0.0;     // J(S*)
  std::array<int, 3> signature{0, 0, 0};  // (n_zero, n_plus, n_minus)
  int dimension = 0;      // manifold dimension
  std::string label;
};

/// Enumerate every critical submanifold of the fidelity landscape for a
/// symplectic target over the chosen domain (Sp: full block taxonomy;
/// OSp: the N+1 components with values 8m). Type-III sign branches are
/// reported as distinct components.
std::vector<CriticalSubmanifold> enumerate_critical(const GateTarget& target,
                                                    Domain domain = Domain::Sp);

/// Signature (n_zero, n_plus, n_minus) of the Hessian quadratic form at the
/// critical point, over the affine tangent space: N(2N+1) symmetric algebra
/// directions S -> exp(eps J K) S plus 2N translation directions (Sp domain;
/// N^2 + 2N for OSp). Throws when the representative fails the residual test.
std::array<int, 3> hessian_signature(const CriticalSubmanifold& point, const GateTarget& target,
                                     Domain domain = Domain::Sp);

/// Closed-form counts of the critical topology:
/// number of critical submanifolds of a fully degenerate N-qunit gate.
std::int64_t count_critical_degenerate(int n_qunits);
/// Upper bound N_1 for fully non-degenerate gates.
std::int64_t count_critical_bound(int n_qunits);
/// Radius of the ball around W containing every critical point:
/// R = sqrt(sum_i e_i^2 + e_i^-2 + 3 e_i^{2/3} + 3 e_i^{-2/3}).
double critical_radius(const GateTarget& target);

enum class FlowTermination { Completed, Converged, Stationary, Stiffness };

struct FlowSample {
  double s = 0.0;
  double j = 0.0;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  std::vector<Matrix> states;         // symplectic flavor
  std::vector<ComplexMatrix> states_u;  // unitary flavor
  FlowTermination termination = FlowTermination::Completed;

  /// Least-squares slope of log J over the trailing window [s_lo, s_hi],
  /// ignoring samples below j_floor.
  double log_slope(double s_lo, double s_hi, double j_floor = 1e-13) const;
};

/// Kinematic gradient flow dS/ds = -J K(S) S with K(S) = sym(S (S-W)^T J),
/// the steepest-descent direction in the trace metric on symmetric algebra
/// coordinates. Integrated by an adaptive embedded Runge-Kutta (Cash-Karp
/// 4/5) pair in the Lie-algebra chart with exponential retraction per step,
/// so every state stays symplectic. J is non-increasing along the flow.
FlowTrajectory gradient_flow(const GateTarget& target, const SymplecticMatrix& s0, double s_max,
                             double tol = 1e-12);

/// Unitary analog dU/ds = -(1/2)(U W^dag - W U^dag) U.
FlowTrajectory gradient_flow_unitary(const GateTarget& target, const UnitaryMatrix& u0,
                                     double s_max, double tol = 1e-12);

}  // namespace sympoc

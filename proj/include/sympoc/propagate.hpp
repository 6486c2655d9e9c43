#pragma once

#include "sympoc/control.hpp"

namespace sympoc {

inline constexpr double kDriftAbortTol = 1e-6;

/// Piecewise-constant propagation of dS/dt = J H(t) S with
/// H(t_k) = H_0 + sum_i C_i(t_k) H_i and local propagators
/// exp(J H(t_k) dt), dt = t_f / (q-1). Returns S at every grid point,
/// starting from S(t_0) = I. Aborts with PropagationError when the
/// symplectic defect of any step exceeds 1e-6 (Pade underresolution).
std::vector<SymplecticMatrix> propagate_symplectic(const ControlSystem& system,
                                                   const ControlField& field, double t_f);

/// Mirror of propagate_symplectic with local propagators exp(-i H(t_k) dt).
std::vector<UnitaryMatrix> propagate_unitary(const ControlSystem& system,
                                             const ControlField& field, double t_f);

}  // namespace sympoc

#pragma once

#include "sympoc/types.hpp"

namespace sympoc {

/// Matrix exponential e^A by diagonal Pade approximation of order (p, q)
/// combined with scaling-and-squaring (inputs are scaled until the 1-norm
/// drops below 0.5, then the result is squared back up). Default order is
/// the (6,6) approximant.
Matrix expm_pade(const Matrix& a, int p = 6, int q = 6);

/// exp(-i H dt) through eigendecomposition of the Hermitian matrix H.
UnitaryMatrix expm_hermitian_prop(const HermitianMatrix& h, double dt);

/// Frechet derivative of the exponential: L(A, B) = d/ds exp(A + s B) |_{s=0},
/// computed from the top-right block of exp([[A, B], [0, A]]).
Matrix expm_frechet(const Matrix& a, const Matrix& b, int p = 6, int q = 6);

/// Propagator exp(-i H dt) together with its derivative along a Hermitian
/// direction B, i.e. d/ds exp(-i (H + s B) dt) |_{s=0}, via the
/// Daleckii-Krein divided-difference formula on the eigenbasis of H.
struct HermitianPropDerivative {
  ComplexMatrix propagator;
  ComplexMatrix derivative;
};
HermitianPropDerivative expm_hermitian_prop_derivative(const ComplexMatrix& h,
                                                       const ComplexMatrix& b, double dt);

}  // namespace sympoc

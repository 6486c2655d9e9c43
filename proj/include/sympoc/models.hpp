#pragma once

#include "sympoc/control.hpp"

namespace sympoc {

/// Off-resonant light/collective-spin model: drift kappa * x1 p2 (chained
/// x1 p2 + x2 p3 for three qunits) with one local phase control
/// x_j^2 + p_j^2 per qunit. The drift generator is nilpotent, so free
/// evolution over kappa^{-1} realizes the SUM gate exactly.
ControlSystem photon_model(double kappa, int n_qunits);

/// Two uncoupled oscillators whose two controls (per-mode squeezing and a
/// mode-energy difference with a q1 p2 coupling) already generate the whole
/// algebra sp(4, R).
ControlSystem strongly_controllable_model();

/// Cavity mode a coupled to two vibrational modes b1, b2: beamsplitter
/// coupling a^dag b1 + a b1^dag and two-mode squeezing a^dag b2^dag + a b2,
/// with drift 2 nu (b1^dag b1 + b2^dag b2). Mode order (a, b1, b2).
ControlSystem ion_trap_model(double nu = 1.0, double r11 = 1.0, double r21 = 1.0);

enum class SwapVariant { Squeezing, Linear };

/// Photon-style system for the SWAP problem: drift x1 p2 (squeezing variant)
/// or x1 p2 - x2 p1 (linear-optics variant), two local phase controls.
ControlSystem swap_model(SwapVariant variant);

struct NmrCoupling {
  int i = 0;       // qubit indices, i < j
  int j = 1;
  char axis_i = 'z';
  char axis_j = 'z';
  double strength = 0.5;
};

/// NMR register: H0 = sum_i omega_i sigma_i^z + sum J_ij sigma_i^a sigma_j^b,
/// one sigma_i^x control per qubit. Defaults: omegas evenly spaced in [1,2],
/// nearest-neighbor zz couplings of 0.5.
ControlSystem nmr_model(int n_qubits, std::vector<double> omegas = {},
                        std::vector<NmrCoupling> couplings = {});

/// Registry lookup, e.g. "photon:2", "photon:3", "iontrap", "strong",
/// "swap:linear", "swap:squeezing", "nmr:2", "nmr:3".
ControlSystem model_from_name(const std::string& name);
std::vector<std::string> model_names();

}  // namespace sympoc

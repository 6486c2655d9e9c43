#pragma once

#include "sympoc/gates.hpp"
#include "sympoc/landscape.hpp"

namespace sympoc {

enum class InitKind { Random, Constant, Sine };
enum class Algorithm { CgPolakRibiere, SteepestDescent };
enum class Termination { Converged, MaxIter, LineSearchFailure, Instability };

std::string to_string(InitKind k);
std::string to_string(Algorithm a);
std::string to_string(Termination t);

/// Initial control field: i.i.d. uniform in [-A, A] from a seeded
/// deterministic generator, a constant grid, or one sine cycle
/// A sin(2 pi t_k / t_f).
ControlField initial_field(InitKind kind, int m, int q, double t_f, double amplitude,
                           std::uint64_t seed);

struct OptimizerOptions {
  Algorithm algorithm = Algorithm::CgPolakRibiere;
  int max_iterations = 5000;
  double j_tolerance = 1e-4;
  double gradient_tolerance = 1e-8;
  // Brent line minimization: each evaluation costs a full propagation.
  double brent_initial_step = 1e-3;  // times 1/||direction||
  double brent_tolerance = 1e-4;
  int brent_max_evals = 30;
  int cg_restart_interval = 0;  // 0: every m*q iterations
  double instability_cap = 1e6;  // abort when ||S||_F exceeds this
};

struct IterationRecord {
  int iteration = 0;
  double j = 0.0;
  double gradient_norm = 0.0;
  double step_size = 0.0;
  double fluence = 0.0;
};

struct OptimizationTrace {
  std::vector<IterationRecord> records;
  ControlField final_field;
  Matrix final_propagator;            // symplectic flavor
  ComplexMatrix final_propagator_u;   // unitary flavor
  Termination termination = Termination::MaxIter;

  double final_j() const { return records.back().j; }
  int iterations() const { return records.back().iteration; }
};

/// Field-space minimization of the gate fidelity by Polak-Ribiere conjugate
/// gradient (or adaptive steepest descent) with Brent line minimizations.
/// The search gradient is landscape::field_gradient scaled by dt, so it is
/// exactly the gradient of the discrete objective.
OptimizationTrace optimize(const ControlSystem& system, const GateTarget& target, double t_f,
                           const OptimizerOptions& options, const ControlField& init);

/// Time-integrated squared field strength, trapezoidal in time.
double fluence(const ControlField& field);

/// Discrete Fourier amplitude spectrum per control row; frequencies in units
/// of 1/t_f.
struct FieldSpectrum {
  std::vector<double> frequencies;
  Matrix magnitudes;  // m x (q/2 + 1)
};
FieldSpectrum fourier_spectrum(const ControlField& field);

}  // namespace sympoc

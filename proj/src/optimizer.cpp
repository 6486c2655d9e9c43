#include "sympoc/optimizer.hpp"

#include <cmath>

#include "sympoc/propagate.hpp"

namespace sympoc {

namespace {

// Deterministic uniform doubles in [0, 1) from a splitmix64 stream; identical
// grids for identical seeds on every platform.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : state_(seed) {}

  double next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

constexpr double kGolden = 1.618033988749895;

}  // namespace

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::Random: return "random";
    case InitKind::Constant: return "constant";
    case InitKind::Sine: return "sine";
  }
  return "?";
}

std::string to_string(Algorithm a) {
  return a == Algorithm::CgPolakRibiere ? "cg-pr" : "steepest";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIter: return "max-iter";
    case Termination::LineSearchFailure: return "line-search-failure";
    case Termination::Instability: return "instability";
  }
  return "?";
}

ControlField initial_field(InitKind kind, int m, int q, double t_f, double amplitude,
                           std::uint64_t seed) {
  if (amplitude < 0.0) {
    throw std::invalid_argument("initial_field: amplitude must be >= 0");
  }
  Matrix amps = Matrix::Zero(m, q);
  switch (kind) {
    case InitKind::Random: {
      UniformStream stream(seed);
      for (int i = 0; i < m; ++i) {
        for (int k = 0; k < q; ++k) {
          amps(i, k) = amplitude * (2.0 * stream.next() - 1.0);
        }
      }
      break;
    }
    case InitKind::Constant:
      amps.setConstant(amplitude);
      break;
    case InitKind::Sine: {
      for (int k = 0; k < q; ++k) {
        const double t = t_f * static_cast<double>(k) / (q - 1);
        const double v = amplitude * std::sin(2.0 * M_PI * t / t_f);
        for (int i = 0; i < m; ++i) amps(i, k) = v;
      }
      break;
    }
  }
  return ControlField(m, q, t_f, std::move(amps));
}

double fluence(const ControlField& field) {
  const double dt = field.dt();
  double sum = 0.0;
  for (int i = 0; i < field.n_controls; ++i) {
    for (int k = 0; k < field.n_steps; ++k) {
      const double weight = (k == 0 || k == field.n_steps - 1) ? 0.5 : 1.0;
      sum += weight * field.amplitudes(i, k) * field.amplitudes(i, k) * dt;
    }
  }
  return sum;
}

FieldSpectrum fourier_spectrum(const ControlField& field) {
  if (field.n_steps < 4) {
    throw std::invalid_argument("fourier_spectrum: need q >= 4 samples");
  }
  const int q = field.n_steps;
  const int nbins = q / 2 + 1;
  FieldSpectrum out;
  out.magnitudes = Matrix::Zero(field.n_controls, nbins);
  for (int b = 0; b < nbins; ++b) {
    out.frequencies.push_back(static_cast<double>(b) / field.t_f);
  }
  for (int i = 0; i < field.n_controls; ++i) {
    for (int b = 0; b < nbins; ++b) {
      std::complex<double> acc(0.0, 0.0);
      for (int k = 0; k < q; ++k) {
        const double phase = -2.0 * M_PI * b * k / q;
        acc += field.amplitudes(i, k) * std::complex<double>(std::cos(phase), std::sin(phase));
      }
      out.magnitudes(i, b) = std::abs(acc);
    }
  }
  return out;
}

namespace {

struct Evaluation {
  double j = std::numeric_limits<double>::infinity();
  bool blown = false;
  Matrix propagator;
  ComplexMatrix propagator_u;
};

Evaluation evaluate(const ControlSystem& system, const GateTarget& target,
                    const ControlField& field, double t_f, double cap) {
  Evaluation ev;
  try {
    if (system.flavor == Flavor::Symplectic) {
      const auto traj = propagate_symplectic(system, field, t_f);
      for (const auto& s : traj) {
        if (s.entries().norm() > cap) {
          ev.blown = true;
          return ev;
        }
      }
      ev.propagator = traj.back().entries();
      ev.j = fidelity(ev.propagator, target);
    } else {
      const auto traj = propagate_unitary(system, field, t_f);
      ev.propagator_u = traj.back().entries();
      ev.j = fidelity(ev.propagator_u, target);
    }
  } catch (const PropagationError&) {
    ev.blown = true;
  }
  return ev;
}

// Brent's parabolic-interpolation line minimizer on a bracketed triple.
struct BrentResult {
  double alpha = 0.0;
  double j = 0.0;
  int evals = 0;
};

template <typename F>
BrentResult brent_minimize(F f, double ax, double bx, double cx, double fbx, double rel_tol,
                           int max_evals) {
  const double cgold = 0.3819660112501051;
  double a = std::min(ax, cx);
  double b = std::max(ax, cx);
  double x = bx, w = bx, v = bx;
  double fx = fbx, fw = fbx, fv = fbx;
  double d = 0.0, e = 0.0;
  int evals = 0;
  while (evals < max_evals) {
    const double xm = 0.5 * (a + b);
    const double tol1 = rel_tol * std::abs(x) + 1e-14;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double qq = (x - v) * (fx - fw);
      double p = (x - v) * qq - (x - w) * r;
      qq = 2.0 * (qq - r);
      if (qq > 0.0) p = -p;
      qq = std::abs(qq);
      const double etemp = e;
      e = d;
      if (!(std::abs(p) >= std::abs(0.5 * qq * etemp) || p <= qq * (a - x) ||
            p >= qq * (b - x))) {
        d = p / qq;
        const double u = x + d;
        golden = false;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
      }
    }
    if (golden) {
      e = (x >= xm) ? a - x : b - x;
      d = cgold * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);
    ++evals;
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; w = x; x = u;
      fv = fw; fw = fx; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw; w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return BrentResult{x, fx, evals};
}

}  // namespace

OptimizationTrace optimize(const ControlSystem& system, const GateTarget& target, double t_f,
                           const OptimizerOptions& options, const ControlField& init) {
  if (system.flavor != target.flavor) {
    throw std::invalid_argument("optimize: system/target flavor mismatch");
  }
  if (options.max_iterations < 0 || options.j_tolerance <= 0.0 ||
      options.gradient_tolerance <= 0.0 || options.brent_tolerance <= 0.0) {
    throw std::invalid_argument("optimize: tolerances must be positive");
  }
  const int m = init.n_controls;
  const int q = init.n_steps;
  const double dt = t_f / (q - 1);
  const int restart_interval =
      options.cg_restart_interval > 0 ? options.cg_restart_interval : m * q;

  ControlField field = init;
  OptimizationTrace trace{{}, field, Matrix(), ComplexMatrix(), Termination::MaxIter};

  Evaluation current = evaluate(system, target, field, t_f, options.instability_cap);
  if (current.blown) {
    trace.records.push_back({0, std::numeric_limits<double>::infinity(), 0.0, 0.0,
                             fluence(field)});
    trace.termination = Termination::Instability;
    trace.final_field = field;
    return trace;
  }

  Matrix direction;
  Matrix grad_prev;
  int since_restart = 0;

  for (int iteration = 0; iteration <= options.max_iterations; ++iteration) {
    // Gradient of the discrete objective: functional density times dt.
    Matrix grad = field_gradient(system, field, target, t_f) * dt;
    const double grad_norm = grad.norm();
    trace.records.push_back({iteration, current.j, grad_norm, 0.0, fluence(field)});

    if (current.j <= options.j_tolerance || grad_norm <= options.gradient_tolerance) {
      trace.termination = Termination::Converged;
      break;
    }
    if (iteration == options.max_iterations) {
      trace.termination = Termination::MaxIter;
      break;
    }

    if (options.algorithm == Algorithm::CgPolakRibiere && direction.size() > 0 &&
        since_restart < restart_interval) {
      const double denom = grad_prev.squaredNorm();
      const double beta = std::max(0.0, grad.cwiseProduct(grad - grad_prev).sum() / denom);
      direction = -grad + beta * direction;
      ++since_restart;
      if (direction.cwiseProduct(grad).sum() >= 0.0) {
        direction = -grad;  // restart on non-descent direction
        since_restart = 0;
      }
    } else {
      direction = -grad;
      since_restart = 0;
    }

    const double dn = direction.norm();
    auto probe = [&](double alpha) {
      const ControlField trial(m, q, field.t_f, field.amplitudes + alpha * direction);
      return evaluate(system, target, trial, t_f, options.instability_cap).j;
    };

    // Expanding bracket from alpha = 0.
    double a = 0.0, fa = current.j;
    double b = options.brent_initial_step / dn;
    double fb = probe(b);
    int evals = 1;
    while (fb > fa && evals < options.brent_max_evals && b > 1e-16) {
      b *= 0.25;
      fb = probe(b);
      ++evals;
    }
    if (fb > fa) {
      trace.termination = Termination::LineSearchFailure;
      break;
    }
    double c = b * kGolden;
    double fc = probe(c);
    ++evals;
    while (fc < fb && evals < options.brent_max_evals) {
      a = b; fa = fb;
      b = c; fb = fc;
      c = b * kGolden;
      fc = probe(c);
      ++evals;
    }

    const BrentResult res = brent_minimize(probe, a, b, c, fb, options.brent_tolerance,
                                           options.brent_max_evals - evals);
    double alpha = res.alpha;
    double jn = res.j;
    if (jn > fb) {  // Brent never beats the bracket midpoint; keep the best seen
      alpha = b;
      jn = fb;
    }
    if (!(jn < current.j)) {
      trace.termination = Termination::LineSearchFailure;
      break;
    }

    field = ControlField(m, q, field.t_f, field.amplitudes + alpha * direction);
    Evaluation next = evaluate(system, target, field, t_f, options.instability_cap);
    if (next.blown) {
      trace.termination = Termination::Instability;
      break;
    }
    current = next;
    grad_prev = grad;
    trace.records.back().step_size = alpha;
  }

  trace.final_field = field;
  trace.final_propagator = current.propagator;
  trace.final_propagator_u = current.propagator_u;
  return trace;
}

}  // namespace sympoc

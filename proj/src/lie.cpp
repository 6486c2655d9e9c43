#include "sympoc/lie.hpp"

#include <algorithm>

namespace sympoc {

namespace {

// Incremental rank-revealing orthogonalization: a candidate extends the
// basis when its residual after (twice-repeated) projection stays above the
// relative cutoff.
class SpanBasis {
 public:
  explicit SpanBasis(double tol) : tol_(tol) {}

  bool insert(Vector v) {
    const double scale = v.norm();
    if (!(scale > 0.0) || !v.allFinite()) return false;
    v /= scale;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis_) {
        v -= b.dot(v) * b;
      }
    }
    const double residual = v.norm();
    if (residual <= tol_) return false;
    basis_.push_back(v / residual);
    return true;
  }

  int dimension() const { return static_cast<int>(basis_.size()); }

 private:
  double tol_;
  std::vector<Vector> basis_;
};

template <typename Mat>
Vector vectorize(const Mat& m);

template <>
Vector vectorize<Matrix>(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

template <>
Vector vectorize<ComplexMatrix>(const ComplexMatrix& m) {
  Vector v(2 * m.size());
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    v(2 * k) = m.data()[k].real();
    v(2 * k + 1) = m.data()[k].imag();
  }
  return v;
}

template <typename Mat>
int closure_dimension(const std::vector<Mat>& generators, double tol) {
  SpanBasis span(tol);
  std::vector<Mat> elements;
  for (const auto& g : generators) {
    const double n = g.norm();
    if (!(n > 0.0)) continue;
    Mat gn = g / n;
    if (span.insert(vectorize(gn))) elements.push_back(std::move(gn));
  }
  std::vector<Mat> frontier = elements;
  const int iteration_cap = 24;
  for (int round = 0; round < iteration_cap; ++round) {
    if (frontier.empty()) return span.dimension();
    std::vector<Mat> fresh;
    for (const auto& f : frontier) {
      for (size_t i = 0; i < elements.size(); ++i) {
        Mat c = f * elements[i] - elements[i] * f;
        const double n = c.norm();
        if (n < 1e-14) continue;
        c /= n;
        if (span.insert(vectorize(c))) fresh.push_back(std::move(c));
      }
    }
    for (auto& m : fresh) elements.push_back(m);
    frontier = std::move(fresh);
  }
  throw std::runtime_error(
      "lie_closure: commutator closure did not stabilize within the iteration cap "
      "(numerical degeneracy)");
}

bool is_skew(const Matrix& a) {
  return (a + a.transpose()).norm() <= 1e-12 * std::max(1.0, a.norm());
}

}  // namespace

std::string to_string(Controllability c) {
  switch (c) {
    case Controllability::Uncontrollable: return "uncontrollable";
    case Controllability::RankMetNoncompactDrift: return "rank-met-noncompact-drift";
    case Controllability::Controllable: return "controllable";
    case Controllability::StronglyControllable: return "strongly-controllable";
  }
  return "unknown";
}

int lie_closure_dimension(const std::vector<Matrix>& generators, double tol) {
  return closure_dimension(generators, tol);
}

int lie_closure_dimension(const std::vector<ComplexMatrix>& generators, double tol) {
  return closure_dimension(generators, tol);
}

ControllabilityReport lie_closure(const ControlSystem& system, double tol) {
  ControllabilityReport report;
  report.model = system.label;

  if (system.flavor == Flavor::Symplectic) {
    const int n = system.n_modes;
    const Matrix j = form_matrix(n);
    std::vector<Matrix> gens;
    gens.push_back(j * system.drift);
    for (const auto& h : system.controls) gens.push_back(j * h);
    std::vector<Matrix> control_gens(gens.begin() + 1, gens.end());

    report.ambient_dimension = n * (2 * n + 1);
    report.lie_dimension = lie_closure_dimension(gens, tol);
    report.rank_condition_met = (report.lie_dimension == report.ambient_dimension);
    report.drift_compact = is_skew(gens.front());
    report.controls_span_algebra =
        !control_gens.empty() &&
        lie_closure_dimension(control_gens, tol) == report.ambient_dimension;

    if (report.rank_condition_met) {
      if (report.controls_span_algebra) {
        report.classification = Controllability::StronglyControllable;
      } else if (report.drift_compact) {
        report.classification = Controllability::Controllable;
      } else {
        report.classification = Controllability::RankMetNoncompactDrift;
      }
    } else {
      // A system whose generators all sit inside osp(2N) and close to the
      // full compact subalgebra is controllable over OSp(2N, R).
      const bool all_compact =
          std::all_of(gens.begin(), gens.end(), [](const Matrix& g) { return is_skew(g); });
      if (all_compact && report.lie_dimension == n * n) {
        report.classification = Controllability::Controllable;
      } else {
        report.classification = Controllability::Uncontrollable;
      }
    }
    return report;
  }

  const int d = system.dim();
  const std::complex<double> mi(0.0, -1.0);
  std::vector<ComplexMatrix> gens;
  gens.push_back(mi * system.drift_h);
  for (const auto& h : system.controls_h) gens.push_back(mi * h);
  std::vector<ComplexMatrix> control_gens(gens.begin() + 1, gens.end());

  report.ambient_dimension = d * d;
  report.lie_dimension = lie_closure_dimension(gens, tol);
  // Traceless generators can reach at most su(d); that suffices for gates.
  report.rank_condition_met = (report.lie_dimension >= d * d - 1);
  report.drift_compact = true;  // u(d) is compact
  report.controls_span_algebra =
      !control_gens.empty() && lie_closure_dimension(control_gens, tol) >= d * d - 1;
  if (report.rank_condition_met) {
    report.classification = report.controls_span_algebra
                                ? Controllability::StronglyControllable
                                : Controllability::Controllable;
  } else {
    report.classification = Controllability::Uncontrollable;
  }
  return report;
}

}  // namespace sympoc

#include "sympoc/landscape.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>

#include "sympoc/expm.hpp"
#include "sympoc/propagate.hpp"

namespace sympoc {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kHessZeroTol = 1e-7;
constexpr double kGroupTol = 1e-8;

void require_symplectic_target(const GateTarget& target) {
  if (target.flavor != Flavor::Symplectic) {
    throw std::invalid_argument("landscape: symplectic-flavor target required");
  }
}

char sign_char(int s) { return s > 0 ? '+' : '-'; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string to_string(Domain d) {
  switch (d) {
    case Domain::Sp: return "Sp";
    case Domain::OSp: return "OSp";
    case Domain::U: return "U";
  }
  return "?";
}

double fidelity(const Matrix& s, const GateTarget& target) {
  require_symplectic_target(target);
  if (s.rows() != target.w.rows() || s.cols() != target.w.cols()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  double j = (s - target.w).squaredNorm();
  if (target.has_translation()) {
    j += target.translation.squaredNorm();  // homogeneous propagator carries s = 0
  }
  return j;
}

double fidelity(const ComplexMatrix& u, const GateTarget& target) {
  if (target.flavor != Flavor::Unitary) {
    throw std::invalid_argument("fidelity: unitary-flavor target required");
  }
  if (u.rows() != target.wu.rows() || u.cols() != target.wu.cols()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const double d = static_cast<double>(u.rows());
  return 2.0 * d - 2.0 * (target.wu.adjoint() * u).trace().real();
}

double critical_condition_residual(const Matrix& s, const GateTarget& target) {
  require_symplectic_target(target);
  const Matrix& w = target.w;
  if (s.rows() != w.rows()) {
    throw std::invalid_argument("critical_condition_residual: dimension mismatch");
  }
  const Matrix j = form_matrix(static_cast<int>(s.rows()) / 2);
  return ((s.transpose() * s - w.transpose() * s) * j -
          j * (s.transpose() * s - s.transpose() * w))
      .norm();
}

// ---------------------------------------------------------------------------
// Field gradient
// ---------------------------------------------------------------------------

Matrix field_gradient(const ControlSystem& system, const ControlField& field,
                      const GateTarget& target, double t_f) {
  if (system.flavor != target.flavor) {
    throw std::invalid_argument("field_gradient: system/target flavor mismatch");
  }
  const int m = field.n_controls;
  const int q = field.n_steps;
  const double dt = t_f / (q - 1);
  Matrix grad = Matrix::Zero(m, q);

  if (system.flavor == Flavor::Symplectic) {
    if (system.dim() != target.w.rows()) {
      throw std::invalid_argument("field_gradient: dimension mismatch");
    }
    const auto traj = propagate_symplectic(system, field, t_f);
    const Matrix j = form_matrix(system.n_modes);
    const Matrix& sf = traj.back().entries();
    const Matrix gf = 2.0 * (sf - target.w);  // dJ/dS at the endpoint
    for (int k = 0; k + 1 < q; ++k) {
      Matrix h = system.drift;
      for (int i = 0; i < m; ++i) h += field.amplitudes(i, k) * system.controls[i];
      const Matrix a = j * h * dt;
      const Matrix& sk = traj[static_cast<size_t>(k)].entries();
      const Matrix& sk1 = traj[static_cast<size_t>(k) + 1].entries();
      const Matrix phi = sf * (-j * sk1.transpose() * j);  // S_f S_{k+1}^{-1}
      const Matrix left = gf.transpose() * phi;            // common prefactor
      for (int i = 0; i < m; ++i) {
        const Matrix l = expm_frechet(a, j * system.controls[i] * dt);
        grad(i, k) = (left * l * sk).trace() / dt;
      }
    }
    return grad;
  }

  if (system.dim() != target.wu.rows()) {
    throw std::invalid_argument("field_gradient: dimension mismatch");
  }
  const auto traj = propagate_unitary(system, field, t_f);
  const ComplexMatrix& uf = traj.back().entries();
  for (int k = 0; k + 1 < q; ++k) {
    ComplexMatrix h = system.drift_h;
    for (int i = 0; i < m; ++i) h += field.amplitudes(i, k) * system.controls_h[i];
    const ComplexMatrix& uk = traj[static_cast<size_t>(k)].entries();
    const ComplexMatrix& uk1 = traj[static_cast<size_t>(k) + 1].entries();
    const ComplexMatrix phi = uf * uk1.adjoint();
    const ComplexMatrix left = target.wu.adjoint() * phi;
    for (int i = 0; i < m; ++i) {
      const auto pd = expm_hermitian_prop_derivative(h, system.controls_h[i], dt);
      grad(i, k) = -2.0 * (left * pd.derivative * uk).trace().real() / dt;
    }
  }
  return grad;
}

// ---------------------------------------------------------------------------
// Symplectic SVD
// ---------------------------------------------------------------------------

Matrix SymplecticSvd::e_matrix() const {
  const auto n = e.size();
  Vector diag(2 * n);
  diag.head(n) = e;
  diag.tail(n) = e.cwiseInverse();
  return diag.asDiagonal();
}

SymplecticSvd symplectic_svd(const Matrix& w) {
  const double defect = symplectic_defect(w);
  if (!(defect <= 1e-8)) {
    throw std::invalid_argument(
        "symplectic_svd: non-reciprocal singular spectrum (non-symplectic input)");
  }
  const int n = static_cast<int>(w.rows()) / 2;
  const Matrix j = form_matrix(n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(w.transpose() * w);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symplectic_svd: eigensolver failed");
  }
  const Vector lam = es.eigenvalues();  // ascending
  const Matrix vecs = es.eigenvectors();

  std::vector<Vector> chosen;
  std::vector<Vector> used;  // chosen columns and their J-images
  Vector evals(n);

  auto project_out = [&used](Vector v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : used) v -= u.dot(v) * u;
    }
    return v;
  };

  for (int t = 0; t < n; ++t) {
    const int idx = 2 * n - 1 - t;  // descending eigenvalues
    Vector v = project_out(vecs.col(idx));
    if (v.norm() < 1e-6) {
      // Degenerate eigenspace already partially consumed; scan for a
      // replacement eigenvector of (numerically) the same eigenvalue.
      for (int k = 2 * n - 1; k >= 0 && v.norm() < 1e-6; --k) {
        if (std::abs(lam(k) - lam(idx)) <= 1e-7 * std::max(1.0, std::abs(lam(idx)))) {
          v = project_out(vecs.col(k));
        }
      }
      if (v.norm() < 1e-6) {
        throw std::runtime_error("symplectic_svd: failed to build a symplectic eigenbasis");
      }
    }
    v.normalize();
    evals(t) = std::sqrt(std::max(lam(idx), 0.0));
    chosen.push_back(v);
    used.push_back(v);
    used.push_back(j * v);
  }

  SymplecticSvd out;
  out.e = evals;
  out.v = Matrix(2 * n, 2 * n);
  for (int t = 0; t < n; ++t) {
    out.v.col(t) = chosen[static_cast<size_t>(t)];
    out.v.col(n + t) = -j * chosen[static_cast<size_t>(t)];
  }
  out.u = w * out.v * out.e_matrix().inverse();

  if ((out.u * out.e_matrix() * out.v.transpose() - w).norm() >
      1e-7 * std::max(1.0, w.norm())) {
    throw std::runtime_error("symplectic_svd: reconstruction check failed");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tangent bases
// ---------------------------------------------------------------------------

namespace {

// Orthonormal basis of symmetric 2N x 2N matrices (dimension N(2N+1)).
std::vector<Matrix> symmetric_basis(int dim) {
  std::vector<Matrix> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    Matrix k = Matrix::Zero(dim, dim);
    k(i, i) = 1.0;
    basis.push_back(k);
  }
  for (int i = 0; i < dim; ++i) {
    for (int jj = i + 1; jj < dim; ++jj) {
      Matrix k = Matrix::Zero(dim, dim);
      k(i, jj) = k(jj, i) = inv_sqrt2;
      basis.push_back(k);
    }
  }
  return basis;
}

// Orthonormal basis of osp(2N, R) = { [[A, B], [-B, A]] : A^T = -A, B^T = B },
// dimension N^2.
std::vector<Matrix> osp_basis(int n_modes) {
  std::vector<Matrix> basis;
  const int n = n_modes;
  const double half = 0.5;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    for (int jj = i + 1; jj < n; ++jj) {
      Matrix x = Matrix::Zero(2 * n, 2 * n);
      x(i, jj) = half;
      x(jj, i) = -half;
      x(n + i, n + jj) = half;
      x(n + jj, n + i) = -half;
      basis.push_back(x);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int jj = i; jj < n; ++jj) {
      Matrix x = Matrix::Zero(2 * n, 2 * n);
      const double v = (i == jj) ? inv_sqrt2 : half;
      x(i, n + jj) = v;
      x(jj, n + i) = v;
      x(n + i, jj) = -v;
      x(n + jj, i) = -v;
      basis.push_back(x);
    }
  }
  return basis;
}

// Basis of the stabilizer algebra of E in osp(2N): so(n_k) acting jointly on
// the q and p components of each degenerate block, plus the full osp(2 n_0)
// on the unit-singular-value modes.
std::vector<Matrix> stabilizer_basis(int n_modes, const std::vector<int>& unit_modes,
                                     const std::vector<std::vector<int>>& block_modes) {
  std::vector<Matrix> basis;
  const int n = n_modes;
  auto add_rotation = [&](int a, int b) {
    Matrix x = Matrix::Zero(2 * n, 2 * n);
    x(a, b) = 0.5;
    x(b, a) = -0.5;
    x(n + a, n + b) = 0.5;
    x(n + b, n + a) = -0.5;
    basis.push_back(x);
  };
  for (const auto& modes : block_modes) {
    for (size_t i = 0; i < modes.size(); ++i) {
      for (size_t jj = i + 1; jj < modes.size(); ++jj) {
        add_rotation(modes[i], modes[jj]);
      }
    }
  }
  // osp(2 n_0) on the unit block: rotations plus the B-type generators.
  for (size_t i = 0; i < unit_modes.size(); ++i) {
    for (size_t jj = i + 1; jj < unit_modes.size(); ++jj) {
      add_rotation(unit_modes[i], unit_modes[jj]);
    }
  }
  for (size_t i = 0; i < unit_modes.size(); ++i) {
    for (size_t jj = i; jj < unit_modes.size(); ++jj) {
      const int a = unit_modes[i];
      const int b = unit_modes[jj];
      Matrix x = Matrix::Zero(2 * n, 2 * n);
      const double v = (a == b) ? 1.0 / std::sqrt(2.0) : 0.5;
      x(a, n + b) = v;
      x(b, n + a) = v;
      x(n + a, b) = -v;
      x(n + b, a) = -v;
      basis.push_back(x);
    }
  }
  return basis;
}

int orbit_rank(const Matrix& d, const std::vector<Matrix>& stab) {
  if (stab.empty()) return 0;
  Matrix tangents(d.size(), static_cast<Eigen::Index>(stab.size()));
  for (size_t a = 0; a < stab.size(); ++a) {
    const Matrix t = d * stab[a] - stab[a] * d;
    tangents.col(static_cast<Eigen::Index>(a)) = Eigen::Map<const Vector>(t.data(), t.size());
  }
  Eigen::JacobiSVD<Matrix> svd(tangents);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > 1e-9 * sv(0)) ++rank;
  }
  return rank;
}

std::array<int, 3> signature_at(const Matrix& s, const GateTarget& target, Domain domain) {
  const int n = static_cast<int>(s.rows()) / 2;
  const Matrix j = form_matrix(n);
  std::vector<Matrix> directions;
  if (domain == Domain::OSp) {
    directions = osp_basis(n);
  } else {
    for (const auto& k : symmetric_basis(2 * n)) directions.push_back(j * k);
  }
  const size_t nb = directions.size();
  const Matrix gw = s - target.w;
  Matrix quad(nb, nb);
  for (size_t a = 0; a < nb; ++a) {
    for (size_t b = a; b < nb; ++b) {
      const Matrix& aa = directions[a];
      const Matrix& ab = directions[b];
      const double v =
          0.5 * (s.transpose() * (aa.transpose() * ab + ab.transpose() * aa) * s).trace() +
          0.5 * (gw.transpose() * (aa * ab + ab * aa) * s).trace();
      quad(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
      quad(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(quad);
  const Vector ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  std::array<int, 3> sig{0, 0, 0};
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) <= kHessZeroTol * scale) {
      ++sig[0];
    } else if (ev(k) > 0) {
      ++sig[1];
    } else {
      ++sig[2];
    }
  }
  sig[1] += 2 * n;  // translation block: 2N positive directions at s = w
  return sig;
}

}  // namespace

std::array<int, 3> hessian_signature(const CriticalSubmanifold& point, const GateTarget& target,
                                     Domain domain) {
  require_symplectic_target(target);
  const double r = critical_condition_residual(point.representative, target);
  if (!(r <= kResidualTol)) {
    throw std::invalid_argument("hessian_signature: representative fails the residual test (" +
                                std::to_string(r) + ")");
  }
  return signature_at(point.representative, target, domain);
}

// ---------------------------------------------------------------------------
// Critical-topology enumeration
// ---------------------------------------------------------------------------

namespace {

struct BlockInfo {
  double e = 1.0;
  std::vector<int> modes;  // mode indices into the svd ordering
};

struct PairSpec {
  int gamma = 0;  // block index with the smaller singular value
  int delta = 0;
  int count = 0;
};

// D entries for one type-III pair of modes (a from the gamma block, b from
// the delta block), mode indices in 0..N-1.
void place_type_three(Matrix& d, int n, int a, int b, double eg, double ed, int sign) {
  const double denom = std::sqrt(ed * eg) - 1.0 / std::sqrt(ed * eg);
  const double cx = std::clamp((ed / eg - eg / ed) / denom, -1.0, 1.0);
  const double sx = std::sqrt(std::max(0.0, 1.0 - cx * cx));
  const double rho = std::sqrt(ed / eg);
  const double sg = static_cast<double>(sign);
  // block on (q_a, p_b)
  d(a, a) = rho * cx;
  d(a, n + b) = d(n + b, a) = sg * rho * sx;
  d(n + b, n + b) = -rho * cx;
  // reciprocal block on (q_b, p_a)
  d(b, b) = -cx / rho;
  d(b, n + a) = d(n + a, b) = -sg * sx / rho;
  d(n + a, n + a) = cx / rho;
}

struct Assignment {
  int m0 = 0;
  std::vector<int> type_one;   // per noncompact block
  std::vector<int> type_two;   // per noncompact block
  std::vector<std::pair<PairSpec, int>> pairs;  // (spec, sign)
};

}  // namespace

std::vector<CriticalSubmanifold> enumerate_critical(const GateTarget& target, Domain domain) {
  require_symplectic_target(target);
  if (domain == Domain::U) {
    throw std::invalid_argument(
        "enumerate_critical: the unitary landscape is reached through the OSp equivalence");
  }
  const int n = target.n_modes();
  const Matrix& w = target.w;

  std::vector<CriticalSubmanifold> out;

  if (domain == Domain::OSp) {
    if (!compact_part_check(target, 1e-8)) {
      throw std::invalid_argument(
          "enumerate_critical: OSp domain requires a compact (orthogonal-symplectic) target");
    }
    for (int m = 0; m <= n; ++m) {
      CriticalSubmanifold c;
      c.n0 = n;
      c.m0 = n - m;  // m reversed modes
      Vector diag(2 * n);
      for (int t = 0; t < n; ++t) {
        diag(t) = (t < m) ? -1.0 : 1.0;
        diag(n + t) = diag(t);
      }
      c.d = diag.asDiagonal();
      c.representative = w * c.d;
      c.value = 8.0 * m;
      c.signature = signature_at(c.representative, target, Domain::OSp);
      c.dimension = orbit_rank(c.d, osp_basis(n));
      c.label = "OSp reversal m=" + std::to_string(m);
      out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.value < b.value; });
    return out;
  }

  const SymplecticSvd svd = symplectic_svd(w);
  const Matrix e_mat = svd.e_matrix();

  // Group modes into the unit block and the distinct e > 1 blocks (ascending e).
  std::vector<int> unit_modes;
  std::vector<BlockInfo> blocks;
  for (int t = 0; t < n; ++t) {
    const double e = svd.e(t);
    if (std::abs(e - 1.0) <= kGroupTol) {
      unit_modes.push_back(t);
      continue;
    }
    bool placed = false;
    for (auto& b : blocks) {
      if (std::abs(b.e - e) <= kGroupTol * std::max(1.0, b.e)) {
        b.modes.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) blocks.push_back(BlockInfo{e, {t}});
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const BlockInfo& a, const BlockInfo& b) { return a.e < b.e; });
  const int nblocks = static_cast<int>(blocks.size());
  const int n0 = static_cast<int>(unit_modes.size());

  // Admissible type-III pairings (gamma <= delta, e_delta^{1/3} <= e_gamma).
  std::vector<std::pair<int, int>> admissible;
  for (int g = 0; g < nblocks; ++g) {
    for (int dd = g; dd < nblocks; ++dd) {
      if (blocks[static_cast<size_t>(g)].e >=
          std::cbrt(blocks[static_cast<size_t>(dd)].e) * (1.0 - 1e-12)) {
        admissible.emplace_back(g, dd);
      }
    }
  }

  std::vector<std::vector<int>> block_mode_lists;
  for (const auto& b : blocks) block_mode_lists.push_back(b.modes);
  const std::vector<Matrix> stab = stabilizer_basis(n, unit_modes, block_mode_lists);

  std::vector<Assignment> assignments;
  std::vector<PairSpec> current;

  // Recursive distribution of pair counts over admissible block pairs, then
  // type-I/type-II splits of the leftover modes and the D0 split.
  std::function<void(size_t, std::vector<int>&)> recurse_pairs =
      [&](size_t pair_index, std::vector<int>& remaining) {
        if (pair_index == admissible.size()) {
          std::vector<std::pair<PairSpec, int>> chosen_pairs;
          for (const auto& p : current) {
            if (p.count > 0) chosen_pairs.emplace_back(p, +1);
          }
          // Type-I/II splits per block.
          std::vector<Assignment> partial{Assignment{}};
          for (int k = 0; k < nblocks; ++k) {
            std::vector<Assignment> next;
            for (const auto& base : partial) {
              for (int m1 = 0; m1 <= remaining[static_cast<size_t>(k)]; ++m1) {
                Assignment a = base;
                a.type_one.push_back(m1);
                a.type_two.push_back(remaining[static_cast<size_t>(k)] - m1);
                next.push_back(std::move(a));
              }
            }
            partial = std::move(next);
          }
          // D0 split and type-III sign branches.
          for (const auto& base : partial) {
            for (int m0 = 0; m0 <= n0; ++m0) {
              const size_t nsigns = chosen_pairs.empty() ? 1 : (1u << chosen_pairs.size());
              for (size_t mask = 0; mask < nsigns; ++mask) {
                Assignment a = base;
                a.m0 = m0;
                a.pairs = chosen_pairs;
                for (size_t pb = 0; pb < chosen_pairs.size(); ++pb) {
                  a.pairs[pb].second = (mask >> pb) & 1u ? -1 : +1;
                }
                assignments.push_back(std::move(a));
              }
            }
          }
          return;
        }
        const auto [g, dd] = admissible[pair_index];
        const int cap = (g == dd) ? remaining[static_cast<size_t>(g)] / 2
                                  : std::min(remaining[static_cast<size_t>(g)],
                                             remaining[static_cast<size_t>(dd)]);
        for (int count = 0; count <= cap; ++count) {
          current.push_back(PairSpec{g, dd, count});
          remaining[static_cast<size_t>(g)] -= (g == dd) ? 2 * count : count;
          if (g != dd) remaining[static_cast<size_t>(dd)] -= count;
          recurse_pairs(pair_index + 1, remaining);
          remaining[static_cast<size_t>(g)] += (g == dd) ? 2 * count : count;
          if (g != dd) remaining[static_cast<size_t>(dd)] += count;
          current.pop_back();
        }
      };

  std::vector<int> remaining;
  for (const auto& b : blocks) remaining.push_back(static_cast<int>(b.modes.size()));
  recurse_pairs(0, remaining);

  for (const auto& a : assignments) {
    CriticalSubmanifold c;
    c.m0 = a.m0;
    c.n0 = n0;
    c.type_one = a.type_one;
    c.type_two = a.type_two;

    Matrix d = Matrix::Zero(2 * n, 2 * n);
    std::string label;
    // Unit block.
    for (int t = 0; t < n0; ++t) {
      const int mode = unit_modes[static_cast<size_t>(t)];
      const double v = (t < a.m0) ? 1.0 : -1.0;
      d(mode, mode) = v;
      d(n + mode, n + mode) = v;
    }
    if (n0 > 0) {
      label += "D0(" + std::to_string(a.m0) + "/" + std::to_string(n0) + ")";
    }
    // Track which modes of each block remain unpaired.
    std::vector<std::vector<int>> avail = block_mode_lists;
    for (const auto& [spec, sign] : a.pairs) {
      const double eg = blocks[static_cast<size_t>(spec.gamma)].e;
      const double ed = blocks[static_cast<size_t>(spec.delta)].e;
      for (int r = 0; r < spec.count; ++r) {
        int mode_a, mode_b;
        if (spec.gamma == spec.delta) {
          auto& lst = avail[static_cast<size_t>(spec.gamma)];
          mode_a = lst[0];
          mode_b = lst[1];
          lst.erase(lst.begin(), lst.begin() + 2);
        } else {
          auto& lg = avail[static_cast<size_t>(spec.gamma)];
          auto& ld = avail[static_cast<size_t>(spec.delta)];
          mode_a = lg[0];
          mode_b = ld[0];
          lg.erase(lg.begin());
          ld.erase(ld.begin());
        }
        place_type_three(d, n, mode_a, mode_b, eg, ed, sign);
      }
      if (!label.empty()) label += " + ";
      label += std::string("III(") + fmt(eg) + "," + fmt(ed) + ")x" +
               std::to_string(spec.count) + sign_char(sign);
      CriticalSubmanifold::PairBlock pb;
      pb.gamma = spec.gamma;
      pb.delta = spec.delta;
      pb.count = spec.count;
      pb.sign = sign;
      c.type_three.push_back(pb);
    }
    for (int k = 0; k < nblocks; ++k) {
      auto& lst = avail[static_cast<size_t>(k)];
      const double e = blocks[static_cast<size_t>(k)].e;
      const int m1 = a.type_one[static_cast<size_t>(k)];
      const int m2 = a.type_two[static_cast<size_t>(k)];
      for (int t = 0; t < m1; ++t) {
        const int mode = lst[static_cast<size_t>(t)];
        d(mode, mode) = e;
        d(n + mode, n + mode) = 1.0 / e;
      }
      for (int t = 0; t < m2; ++t) {
        const int mode = lst[static_cast<size_t>(m1 + t)];
        d(mode, mode) = -std::pow(e, -1.0 / 3.0);
        d(n + mode, n + mode) = -std::pow(e, 1.0 / 3.0);
      }
      if (m1 > 0) {
        if (!label.empty()) label += " + ";
        label += std::string("I(") + fmt(e) + ")x" + std::to_string(m1);
      }
      if (m2 > 0) {
        if (!label.empty()) label += " + ";
        label += std::string("II(") + fmt(e) + ")x" + std::to_string(m2);
      }
    }
    if (label.empty()) label = "D0(0/0)";

    c.d = d;
    c.representative = svd.u * d * svd.v.transpose();
    c.value = (d - e_mat).squaredNorm();
    c.signature = signature_at(c.representative, target, Domain::Sp);
    c.dimension = orbit_rank(d, stab);
    c.label = label;
    out.push_back(std::move(c));
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.label < b.label;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Counting formulas
// ---------------------------------------------------------------------------

std::int64_t count_critical_degenerate(int n_qunits) {
  if (n_qunits < 1) {
    throw std::invalid_argument("count_critical_degenerate: N >= 1 required");
  }
  const std::int64_t n = n_qunits;
  return (n % 2 == 0) ? (n + 2) * (n + 2) / 2 : (n + 1) * (n + 3) / 2;
}

std::int64_t count_critical_bound(int n_qunits) {
  if (n_qunits < 1) {
    throw std::invalid_argument("count_critical_bound: N >= 1 required");
  }
  const int n = n_qunits;
  long double sum = 0.0L;
  for (int m = 1; m <= n / 2; ++m) {
    long double term = std::exp2l(static_cast<long double>(n - 3 * m));
    for (int k = n - 2 * m + 1; k <= n; ++k) term *= k;  // N! / (N-2m)!
    for (int k = 2; k <= m; ++k) term /= k;              // / m!
    sum += term;
  }
  return static_cast<std::int64_t>(std::llroundl(sum));
}

double critical_radius(const GateTarget& target) {
  require_symplectic_target(target);
  Eigen::JacobiSVD<Matrix> svd(target.w);
  const auto& sv = svd.singularValues();
  const int n = target.n_modes();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = sv(i);  // descending; the top N are the values >= 1
    sum += e * e + 1.0 / (e * e) + 3.0 * std::pow(e, 2.0 / 3.0) + 3.0 * std::pow(e, -2.0 / 3.0);
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// Gradient flow
// ---------------------------------------------------------------------------

double FlowTrajectory::log_slope(double s_lo, double s_hi, double j_floor) const {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& p : samples) {
    if (p.s < s_lo || p.s > s_hi || !(p.j > j_floor)) continue;
    const double y = std::log(p.j);
    sx += p.s;
    sy += y;
    sxx += p.s * p.s;
    sxy += p.s * y;
    ++count;
  }
  if (count < 2) {
    throw std::runtime_error("FlowTrajectory::log_slope: not enough samples in window");
  }
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

namespace {

// Cash-Karp embedded Runge-Kutta 4(5) tableau.
constexpr double kA[6][5] = {
    {0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0},
    {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
constexpr double kB5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
constexpr double kB4[6] = {2825.0 / 27648, 0,           18575.0 / 48384,
                           13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

// The RK stages live in the Lie-algebra chart anchored at the current state:
// velocity() returns the algebra element A with dS/ds = A S, stages are
// exp(sum a_ij k_j) S, and the accepted step applies exp(Omega) S, so the
// trajectory stays on the group to the accuracy of the exponential.
template <typename State, typename Vel, typename Retract, typename Jfun>
FlowTrajectory integrate_flow(State s, double s_max, double tol, Vel velocity, Retract retract,
                              Jfun jval, std::vector<State>* states_out) {
  FlowTrajectory traj;
  double s_now = 0.0;
  double jcur = jval(s);
  traj.samples.push_back({s_now, jcur});
  if (states_out) states_out->push_back(s);

  double h = 0.05;
  const double h_min = 1e-12;
  traj.termination = FlowTermination::Completed;
  while (s_now < s_max) {
    if (jcur <= tol) {
      traj.termination = FlowTermination::Converged;
      break;
    }
    using Alg = std::decay_t<decltype(velocity(s))>;
    const Alg v0 = velocity(s);
    if (v0.norm() <= 1e-13 * std::max(1.0, s.norm())) {
      traj.termination = FlowTermination::Stationary;
      break;
    }
    h = std::min(h, s_max - s_now);

    std::vector<Alg> k;
    k.reserve(6);
    k.push_back(h * v0);
    for (int stage = 1; stage < 6; ++stage) {
      Alg omega = Alg::Zero(v0.rows(), v0.cols());
      for (int jj = 0; jj < stage; ++jj) omega += kA[stage][jj] * k[static_cast<size_t>(jj)];
      k.push_back(h * velocity(retract(omega, s)));
    }
    Alg omega5 = Alg::Zero(v0.rows(), v0.cols());
    Alg omega4 = Alg::Zero(v0.rows(), v0.cols());
    for (int stage = 0; stage < 6; ++stage) {
      omega5 += kB5[stage] * k[static_cast<size_t>(stage)];
      omega4 += kB4[stage] * k[static_cast<size_t>(stage)];
    }
    const double err = (omega5 - omega4).norm();
    const double tol_step = 1e-10 + 1e-7 * omega5.norm();
    if (err <= tol_step) {
      const State s_new = retract(omega5, s);
      const double j_new = jval(s_new);
      if (j_new <= jcur + 1e-12 * std::max(1.0, jcur)) {
        s = s_new;
        jcur = j_new;
        s_now += h;
        traj.samples.push_back({s_now, jcur});
        if (states_out) states_out->push_back(s);
      } else {
        h *= 0.5;  // monotonicity guard
      }
    }
    const double factor = (err > 0) ? 0.9 * std::pow(tol_step / err, 0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
    if (h < h_min) {
      traj.termination = FlowTermination::Stiffness;
      break;
    }
  }
  return traj;
}

}  // namespace

FlowTrajectory gradient_flow(const GateTarget& target, const SymplecticMatrix& s0, double s_max,
                             double tol) {
  require_symplectic_target(target);
  if (s0.dim() != target.w.rows()) {
    throw std::invalid_argument("gradient_flow: dimension mismatch");
  }
  const Matrix j = form_matrix(s0.n_modes());
  const Matrix& w = target.w;

  auto velocity = [&](const Matrix& s) -> Matrix {
    Matrix k = s * (s - w).transpose() * j;
    k = 0.5 * (k + k.transpose());
    return -j * k;  // steepest-descent algebra element, dS/ds = -J K(S) S
  };
  auto retract = [&](const Matrix& omega, const Matrix& s) -> Matrix {
    return expm_pade(omega) * s;
  };
  auto jval = [&](const Matrix& s) { return fidelity(s, target); };

  std::vector<Matrix> states;
  FlowTrajectory traj =
      integrate_flow(Matrix(s0.entries()), s_max, tol, velocity, retract, jval, &states);
  traj.states = std::move(states);
  return traj;
}

FlowTrajectory gradient_flow_unitary(const GateTarget& target, const UnitaryMatrix& u0,
                                     double s_max, double tol) {
  if (target.flavor != Flavor::Unitary) {
    throw std::invalid_argument("gradient_flow_unitary: unitary-flavor target required");
  }
  if (u0.dim() != target.wu.rows()) {
    throw std::invalid_argument("gradient_flow_unitary: dimension mismatch");
  }
  const ComplexMatrix& w = target.wu;

  auto velocity = [&](const ComplexMatrix& u) -> ComplexMatrix {
    return -0.5 * (u * w.adjoint() - w * u.adjoint());  // anti-Hermitian algebra element
  };
  auto retract = [&](const ComplexMatrix& omega, const ComplexMatrix& u) -> ComplexMatrix {
    const ComplexMatrix hx = std::complex<double>(0, 1) * omega;  // Hermitian
    return expm_hermitian_prop(HermitianMatrix(hx), 1.0).entries() * u;
  };
  auto jval = [&](const ComplexMatrix& u) { return fidelity(u, target); };

  std::vector<ComplexMatrix> states;
  FlowTrajectory traj =
      integrate_flow(ComplexMatrix(u0.entries()), s_max, tol, velocity, retract, jval, &states);
  traj.states_u = std::move(states);
  return traj;
}

}  // namespace sympoc

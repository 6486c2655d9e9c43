#include "sympoc/gates.hpp"

#include <cmath>

namespace sympoc {

GateTarget GateTarget::symplectic(Matrix w, Vector translation, std::string label) {
  GateTarget g;
  g.flavor = Flavor::Symplectic;
  g.w = SymplecticMatrix(std::move(w)).entries();  // validates the constraint
  if (translation.size() == 0) translation = Vector::Zero(g.w.rows());
  if (translation.size() != g.w.rows()) {
    throw std::invalid_argument("GateTarget: translation dimension mismatch");
  }
  g.translation = std::move(translation);
  g.label = std::move(label);
  return g;
}

GateTarget GateTarget::unitary(ComplexMatrix w, std::string label) {
  GateTarget g;
  g.flavor = Flavor::Unitary;
  g.wu = UnitaryMatrix(std::move(w)).entries();
  g.label = std::move(label);
  return g;
}

AffineSymplectic GateTarget::affine() const {
  if (flavor != Flavor::Symplectic) {
    throw std::invalid_argument("GateTarget::affine: unitary flavor has no affine form");
  }
  return AffineSymplectic(SymplecticMatrix(w), translation);
}

GateTarget gate_fourier() {
  Matrix w(2, 2);
  w << 0, 1, -1, 0;  // (q, p) -> (p, -q)
  return GateTarget::symplectic(w, Vector(), "fourier");
}

GateTarget gate_phase(double eta) {
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("gate_phase: eta must be finite");
  }
  Matrix w(2, 2);
  w << 1, 0, -eta, 1;  // p -> p - eta q
  return GateTarget::symplectic(w, Vector(), "phase:" + std::to_string(eta));
}

GateTarget gate_pauli_x(double q) {
  if (!std::isfinite(q)) {
    throw std::invalid_argument("gate_pauli_x: shift must be finite");
  }
  Vector c(2);
  c << q, 0;
  return GateTarget::symplectic(Matrix::Identity(2, 2), c, "x:" + std::to_string(q));
}

GateTarget gate_pauli_z(double p) {
  if (!std::isfinite(p)) {
    throw std::invalid_argument("gate_pauli_z: shift must be finite");
  }
  Vector c(2);
  c << 0, -p;
  return GateTarget::symplectic(Matrix::Identity(2, 2), c, "z:" + std::to_string(p));
}

GateTarget gate_sum() {
  // q2 -> q1 + q2, p1 -> p1 - p2 in the (q1, q2, p1, p2) ordering.
  Matrix w(4, 4);
  w << 1, 0, 0, 0,
       1, 1, 0, 0,
       0, 0, 1, -1,
       0, 0, 0, 1;
  return GateTarget::symplectic(w, Vector(), "sum");
}

GateTarget gate_sum3() {
  Matrix w = Matrix::Identity(6, 6);
  w(1, 0) = 1;
  w(2, 0) = 1;
  w(2, 1) = 1;
  w(3, 4) = -1;
  w(4, 5) = -1;
  return GateTarget::symplectic(w, Vector(), "sum3");
}

GateTarget gate_swap() {
  Matrix w = Matrix::Zero(4, 4);
  w(0, 1) = w(1, 0) = 1;  // q1 <-> q2
  w(2, 3) = w(3, 2) = 1;  // p1 <-> p2
  return GateTarget::symplectic(w, Vector(), "swap");
}

GateTarget gate_squeeze(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("gate_squeeze: lambda must be positive");
  }
  Matrix w = Matrix::Zero(2, 2);
  w(0, 0) = lambda;
  w(1, 1) = 1.0 / lambda;
  return GateTarget::symplectic(w, Vector(), "squeeze:" + std::to_string(lambda));
}

GateTarget gate_cnot() {
  ComplexMatrix w = ComplexMatrix::Identity(4, 4);
  w(2, 2) = w(3, 3) = 0;
  w(2, 3) = w(3, 2) = 1;
  return GateTarget::unitary(w, "cnot");
}

GateTarget gate_toffoli() {
  ComplexMatrix w = ComplexMatrix::Identity(8, 8);
  w(6, 6) = w(7, 7) = 0;
  w(6, 7) = w(7, 6) = 1;
  return GateTarget::unitary(w, "toffoli");
}

bool compact_part_check(const GateTarget& g, double tol) {
  if (g.flavor != Flavor::Symplectic) {
    throw std::invalid_argument("compact_part_check: symplectic flavor required");
  }
  const auto n = g.w.rows();
  return (g.w.transpose() * g.w - Matrix::Identity(n, n)).norm() <= tol;
}

Matrix embed_unitary_as_osp(const ComplexMatrix& u) {
  const auto n = u.rows();
  if (n != u.cols()) {
    throw std::invalid_argument("embed_unitary_as_osp: matrix must be square");
  }
  // u = X - iY
  Matrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = u.real();
  s.topRightCorner(n, n) = -u.imag();
  s.bottomLeftCorner(n, n) = u.imag();
  s.bottomRightCorner(n, n) = u.real();
  return s;
}

namespace {

double parse_param(const std::string& name, const std::string& text) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("gate_from_name: bad parameter '" + text + "' for gate '" +
                                name + "'");
  }
}

}  // namespace

GateTarget gate_from_name(const std::string& name) {
  std::string base = name;
  std::string param;
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    base = name.substr(0, colon);
    param = name.substr(colon + 1);
  }
  if (base == "fourier") return gate_fourier();
  if (base == "sum") return gate_sum();
  if (base == "sum3") return gate_sum3();
  if (base == "swap") return gate_swap();
  if (base == "cnot") return gate_cnot();
  if (base == "toffoli") return gate_toffoli();
  if (base == "phase") return gate_phase(param.empty() ? 1.0 : parse_param(base, param));
  if (base == "squeeze") return gate_squeeze(param.empty() ? 2.0 : parse_param(base, param));
  if (base == "x") return gate_pauli_x(param.empty() ? 1.0 : parse_param(base, param));
  if (base == "z") return gate_pauli_z(param.empty() ? 1.0 : parse_param(base, param));
  throw std::invalid_argument("gate_from_name: unknown gate '" + name + "'");
}

std::vector<std::string> gate_names() {
  return {"fourier", "phase:<eta>", "x:<q>", "z:<p>", "sum", "sum3",
          "swap", "squeeze:<lambda>", "cnot", "toffoli"};
}

}  // namespace sympoc

#include "sympoc/models.hpp"

#include <cmath>

namespace sympoc {

namespace {

// Symmetric matrix with value c at the (a, b) and (b, a) positions.
Matrix cross_term(int dim, int a, int b, double c) {
  Matrix h = Matrix::Zero(dim, dim);
  h(a, b) = c;
  h(b, a) = c;
  return h;
}

// Local phase Hamiltonian x_j^2 + p_j^2 (diagonal ones on mode j).
Matrix local_phase(int n_modes, int mode) {
  Matrix h = Matrix::Zero(2 * n_modes, 2 * n_modes);
  h(mode, mode) = 1.0;
  h(n_modes + mode, n_modes + mode) = 1.0;
  return h;
}

ComplexMatrix pauli(char axis) {
  ComplexMatrix s(2, 2);
  switch (axis) {
    case 'x': s << 0, 1, 1, 0; break;
    case 'y': s << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0; break;
    case 'z': s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("pauli: bad axis '") + axis + "'");
  }
  return s;
}

ComplexMatrix pauli_on(int n_qubits, int qubit, char axis) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int k = 0; k < n_qubits; ++k) {
    const ComplexMatrix factor = (k == qubit) ? pauli(axis) : ComplexMatrix::Identity(2, 2);
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * factor;
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

ControlSystem photon_model(double kappa, int n_qunits) {
  if (kappa == 0.0 || !std::isfinite(kappa)) {
    throw std::invalid_argument("photon_model: kappa must be nonzero and finite");
  }
  if (n_qunits != 2 && n_qunits != 3) {
    throw std::invalid_argument("photon_model: supported qunit counts are 2 and 3");
  }
  const int n = n_qunits;
  Matrix h0 = Matrix::Zero(2 * n, 2 * n);
  // kappa x_1 p_2 (+ x_2 p_3): full coefficient at both symmetric slots so
  // that free evolution over kappa^{-1} lands exactly on SUM.
  for (int m = 0; m + 1 < n; ++m) {
    h0 += cross_term(2 * n, m, n + m + 1, kappa);
  }
  std::vector<Matrix> controls;
  for (int m = 0; m < n; ++m) controls.push_back(local_phase(n, m));
  return ControlSystem::symplectic(n, "photon:" + std::to_string(n), h0, controls);
}

ControlSystem strongly_controllable_model() {
  // Drift a1^dag a1 + a2^dag a2 + 1 -> (q^2 + p^2)/2 per mode, constants dropped.
  Matrix h0 = 0.5 * Matrix::Identity(4, 4);
  // H1: Hermitian version of a^dag2 - a^2 per mode, i.e. qp + pq = 2 qp.
  Matrix h1 = cross_term(4, 0, 2, 2.0) + cross_term(4, 1, 3, 2.0);
  // H2: mode-energy difference plus the 2 q1 p2 coupling from
  // i(a1^dag + a1)(a2^dag - a2).
  Matrix h2 = Matrix::Zero(4, 4);
  h2.diagonal() << 0.5, -0.5, 0.5, -0.5;
  h2 += cross_term(4, 0, 3, 2.0);
  return ControlSystem::symplectic(2, "strong", h0, {h1, h2});
}

ControlSystem ion_trap_model(double nu, double r11, double r21) {
  const int n = 3;  // (a, b1, b2)
  Matrix h0 = Matrix::Zero(6, 6);
  h0.diagonal() << 0, nu, nu, 0, nu, nu;  // 2 nu b^dag b -> nu (q^2 + p^2) per ion mode
  // a^dag b1 + a b1^dag = q_a q_1 + p_a p_1
  Matrix h1 = r11 * (cross_term(6, 0, 1, 1.0) + cross_term(6, 3, 4, 1.0));
  // a^dag b2^dag + a b2 = q_a q_2 - p_a p_2
  Matrix h2 = r21 * (cross_term(6, 0, 2, 1.0) + cross_term(6, 3, 5, -1.0));
  return ControlSystem::symplectic(n, "iontrap", h0, {h1, h2});
}

ControlSystem swap_model(SwapVariant variant) {
  Matrix h0 = cross_term(4, 0, 3, 1.0);  // x1 p2
  std::string label = "swap:squeezing";
  if (variant == SwapVariant::Linear) {
    h0 += cross_term(4, 1, 2, -1.0);  // - x2 p1
    label = "swap:linear";
  }
  return ControlSystem::symplectic(2, label, h0, {local_phase(2, 0), local_phase(2, 1)});
}

ControlSystem nmr_model(int n_qubits, std::vector<double> omegas,
                        std::vector<NmrCoupling> couplings) {
  if (n_qubits != 2 && n_qubits != 3) {
    throw std::invalid_argument("nmr_model: supported qubit counts are 2 and 3");
  }
  if (omegas.empty()) {
    for (int i = 0; i < n_qubits; ++i) {
      omegas.push_back(n_qubits == 1 ? 1.0 : 1.0 + static_cast<double>(i) / (n_qubits - 1));
    }
  }
  if (static_cast<int>(omegas.size()) != n_qubits) {
    throw std::invalid_argument("nmr_model: need one omega per qubit");
  }
  if (couplings.empty()) {
    for (int i = 0; i + 1 < n_qubits; ++i) {
      couplings.push_back(NmrCoupling{i, i + 1, 'z', 'z', 0.5});
    }
  }
  const int d = 1 << n_qubits;
  ComplexMatrix h0 = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < n_qubits; ++i) {
    h0 += omegas[static_cast<size_t>(i)] * pauli_on(n_qubits, i, 'z');
  }
  for (const auto& c : couplings) {
    if (c.i < 0 || c.j >= n_qubits || c.i >= c.j) {
      throw std::invalid_argument("nmr_model: coupling must address qubit pair i < j");
    }
    h0 += c.strength *
          (pauli_on(n_qubits, c.i, c.axis_i) * pauli_on(n_qubits, c.j, c.axis_j));
  }
  std::vector<ComplexMatrix> controls;
  for (int i = 0; i < n_qubits; ++i) controls.push_back(pauli_on(n_qubits, i, 'x'));
  return ControlSystem::unitary(n_qubits, "nmr:" + std::to_string(n_qubits), h0, controls);
}

ControlSystem model_from_name(const std::string& name) {
  std::string base = name;
  std::string param;
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    base = name.substr(0, colon);
    param = name.substr(colon + 1);
  }
  if (base == "photon") {
    const int n = param.empty() ? 2 : std::stoi(param);
    return photon_model(1.0, n);
  }
  if (base == "strong") return strongly_controllable_model();
  if (base == "iontrap") return ion_trap_model();
  if (base == "swap") {
    if (param == "squeezing") return swap_model(SwapVariant::Squeezing);
    if (param.empty() || param == "linear") return swap_model(SwapVariant::Linear);
    throw std::invalid_argument("model_from_name: unknown swap variant '" + param + "'");
  }
  if (base == "nmr") {
    const int n = param.empty() ? 2 : std::stoi(param);
    return nmr_model(n);
  }
  throw std::invalid_argument("model_from_name: unknown model '" + name + "'");
}

std::vector<std::string> model_names() {
  return {"photon:2", "photon:3", "strong", "iontrap", "swap:linear", "swap:squeezing",
          "nmr:2", "nmr:3"};
}

}  // namespace sympoc

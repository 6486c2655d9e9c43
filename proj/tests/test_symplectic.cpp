#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "sympoc/models.hpp"

using namespace sympoc;
using test::Rng;

TEST_CASE("symplectic form definition") {
  const auto j1 = symplectic_form(1);
  CHECK(j1.matrix(0, 1) == 1.0);
  CHECK(j1.matrix(1, 0) == -1.0);
  CHECK(j1.matrix(0, 0) == 0.0);

  const auto j2 = symplectic_form(2);
  CHECK(j2.matrix(0, 2) == 1.0);
  CHECK(j2.matrix(1, 3) == 1.0);
  CHECK(j2.matrix(2, 0) == -1.0);
  CHECK(j2.matrix(3, 1) == -1.0);
  CHECK((j2.matrix * j2.matrix + Matrix::Identity(4, 4)).norm() == 0.0);
  CHECK((j2.matrix + j2.matrix.transpose()).norm() == 0.0);

  CHECK_THROWS_AS(symplectic_form(0), std::invalid_argument);
}

TEST_CASE("symplectic matrix validation") {
  CHECK_NOTHROW(SymplecticMatrix(gate_sum().w));
  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(SymplecticMatrix(bad), std::invalid_argument);
  CHECK_THROWS_AS(SymplecticMatrix(Matrix::Identity(3, 3)), std::invalid_argument);

  const SymplecticMatrix s(gate_sum().w);
  CHECK((s.inverse().entries() * s.entries() - Matrix::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("expm_pade basics") {
  CHECK((expm_pade(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() == 0.0);

  // Nilpotent SUM generator: the series truncates at first order.
  const Matrix g = gate_sum().w - Matrix::Identity(4, 4);
  for (double t : {0.25, 1.0, 3.0}) {
    const Matrix e = expm_pade(t * g);
    CHECK((e - Matrix::Identity(4, 4) - t * g).norm() < 1e-13);
  }

  const double theta = M_PI / 4.0;
  Matrix a(2, 2);
  a << 0, theta, -theta, 0;
  Matrix expect(2, 2);
  expect << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  CHECK((expm_pade(a) - expect).norm() < 1e-12);

  CHECK_THROWS_AS(expm_pade(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix nan = Matrix::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(expm_pade(nan), std::invalid_argument);
}

TEST_CASE("expm_pade against the reference exponential") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 5;
    Matrix a = rng.matrix(dim, dim);
    a *= (0.1 + 9.9 * rng.uniform()) / a.norm();  // ||A|| up to 10
    const Matrix ours = expm_pade(a);
    const Matrix ref = a.exp();
    CHECK((ours - ref).norm() / ref.norm() < 1e-10);
    // inverse consistency
    CHECK((expm_pade(a) * expm_pade(Matrix(-a)) - Matrix::Identity(dim, dim)).norm() < 1e-10);
  }
}

TEST_CASE("expm_hermitian_prop") {
  const HermitianMatrix zero(ComplexMatrix::Zero(2, 2));
  CHECK((expm_hermitian_prop(zero, 0.7).entries() - ComplexMatrix::Identity(2, 2)).norm() <
        1e-14);

  ComplexMatrix sz(2, 2);
  sz << 1, 0, 0, -1;
  const auto u = expm_hermitian_prop(HermitianMatrix(sz), M_PI);
  CHECK((u.entries() + ComplexMatrix::Identity(2, 2)).norm() < 1e-12);

  // Cross-oracle: exp(-i H dt) against the real 8x8 embedding through
  // expm_pade. For M = X + iY acting on C^4, the real form is
  // [[X, -Y], [Y, X]] acting on (Re, Im).
  Rng rng(21);
  const ComplexMatrix h = rng.hermitian_matrix(4);
  const double dt = 0.1;
  const ComplexMatrix m = std::complex<double>(0, -dt) * h;
  Matrix big(8, 8);
  big.topLeftCorner(4, 4) = m.real();
  big.topRightCorner(4, 4) = -m.imag();
  big.bottomLeftCorner(4, 4) = m.imag();
  big.bottomRightCorner(4, 4) = m.real();
  const Matrix eref = expm_pade(big);
  const ComplexMatrix ours = expm_hermitian_prop(HermitianMatrix(h), dt).entries();
  CHECK((ours.real() - eref.topLeftCorner(4, 4)).norm() < 1e-9);
  CHECK((ours.imag() - eref.bottomLeftCorner(4, 4)).norm() < 1e-9);
}

TEST_CASE("hermitian propagator derivative matches finite differences") {
  Rng rng(5);
  const ComplexMatrix h = rng.hermitian_matrix(4);
  const ComplexMatrix b = rng.hermitian_matrix(4);
  const double dt = 0.3;
  const auto pd = expm_hermitian_prop_derivative(h, b, dt);
  const double eps = 1e-6;
  const ComplexMatrix up = expm_hermitian_prop(HermitianMatrix(h + eps * b), dt).entries();
  const ComplexMatrix dn = expm_hermitian_prop(HermitianMatrix(h - eps * b), dt).entries();
  CHECK((pd.derivative - (up - dn) / (2.0 * eps)).norm() < 1e-8);
  CHECK((pd.propagator - expm_hermitian_prop(HermitianMatrix(h), dt).entries()).norm() < 1e-13);
}

TEST_CASE("propagation basics") {
  SUBCASE("zero drift, zero field is the identity") {
    auto sys = ControlSystem::symplectic(2, "null", Matrix::Zero(4, 4),
                                         {Matrix::Identity(4, 4)});
    const auto traj = propagate_symplectic(sys, ControlField::zero(1, 8, 1.0), 1.0);
    CHECK(traj.size() == 8);
    CHECK((traj.back().entries() - Matrix::Identity(4, 4)).norm() < 1e-14);
  }

  SUBCASE("photon free evolution lands exactly on SUM at t = 1/kappa") {
    const auto sys = photon_model(1.0, 2);
    const auto traj = propagate_symplectic(sys, ControlField::zero(2, 16, 1.0), 1.0);
    CHECK((traj.back().entries() - gate_sum().w).norm() < 1e-12);
  }

  SUBCASE("harmonic oscillator closes after a full period") {
    auto sys = ControlSystem::symplectic(1, "oscillator", Matrix::Identity(2, 2), {});
    const auto traj = propagate_symplectic(sys, ControlField::zero(0, 64, 2 * M_PI), 2 * M_PI);
    CHECK((traj.back().entries() - Matrix::Identity(2, 2)).norm() < 1e-9);
  }

  SUBCASE("unitary: zero Hamiltonian, sigma_z phase evolution") {
    auto zero_sys =
        ControlSystem::unitary(1, "null", ComplexMatrix::Zero(2, 2), {ComplexMatrix::Identity(2, 2)});
    const auto traj0 = propagate_unitary(zero_sys, ControlField::zero(1, 4, 1.0), 1.0);
    CHECK((traj0.back().entries() - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);

    ComplexMatrix sz(2, 2);
    sz << 1, 0, 0, -1;
    const double omega = 0.8, tf = 1.7;
    auto sys = ControlSystem::unitary(1, "qubit", omega * sz, {});
    const auto traj = propagate_unitary(sys, ControlField::zero(0, 32, tf), tf);
    ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
    expect(0, 0) = std::exp(std::complex<double>(0, -omega * tf));
    expect(1, 1) = std::exp(std::complex<double>(0, omega * tf));
    CHECK((traj.back().entries() - expect).norm() < 1e-12);
  }

  SUBCASE("NMR propagation stays unitary at every step") {
    const auto sys = nmr_model(2);
    Rng rng(3);
    const ControlField field(2, 24, 2.0, rng.matrix(2, 24));
    const auto traj = propagate_unitary(sys, field, 2.0);
    for (const auto& u : traj) {
      CHECK(unitary_defect(u.entries()) < 1e-9);
    }
  }

  SUBCASE("grid and flavor preconditions") {
    const auto sys = photon_model(1.0, 2);
    CHECK_THROWS_AS(propagate_unitary(sys, ControlField::zero(2, 8, 1.0), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(propagate_symplectic(sys, ControlField::zero(1, 8, 1.0), 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("randomized propagation invariants") {
  Rng rng(11);
  const Matrix j4 = form_matrix(2);
  for (int trial = 0; trial < 100; ++trial) {
    const bool use_photon = trial % 2 == 0;
    const auto sys = use_photon ? photon_model(1.0, 2) : strongly_controllable_model();
    const int q = 6 + static_cast<int>(rng.uniform() * 20);
    const double tf = 0.3 + rng.uniform() * 1.5;
    const ControlField field(2, q, tf, rng.matrix(2, q));
    const auto traj = propagate_symplectic(sys, field, tf);

    // Symplecticity preservation and unimodularity.
    for (const auto& s : traj) {
      CHECK(symplectic_defect(s.entries()) < 1e-8 * q);
      CHECK(std::abs(s.entries().determinant() - 1.0) < 1e-8);
    }
  }
  (void)j4;
}

TEST_CASE("piecewise split-pass composition equals single pass") {
  // Propagate over [0, t] then [t, t_f] with the same field and compare.
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sys = photon_model(1.0, 2);
    const int q = 9;  // split at a grid point
    const double tf = 0.5 + rng.uniform();
    const ControlField field(2, q, tf, rng.matrix(2, q));
    const auto full = propagate_symplectic(sys, field, tf);

    const int cut = 4;
    const double t_cut = tf * cut / (q - 1);
    const ControlField first(2, cut + 1, t_cut, field.amplitudes.leftCols(cut + 1));
    const ControlField second(2, q - cut, tf - t_cut, field.amplitudes.rightCols(q - cut));
    const auto head = propagate_symplectic(sys, first, t_cut);
    const auto tail = propagate_symplectic(sys, second, tf - t_cut);
    const Matrix combined = tail.back().entries() * head.back().entries();
    CHECK((combined - full.back().entries()).norm() < 1e-10 * full.back().entries().norm());
  }
}

TEST_CASE("affine composition") {
  const auto id = AffineSymplectic::identity(1);
  const auto x = gate_pauli_x(0.7).affine();
  const auto z = gate_pauli_z(1.3).affine();

  SUBCASE("identity is neutral") {
    const auto g = compose_affine(id, x);
    CHECK((g.embed() - x.embed()).norm() == 0.0);
  }

  SUBCASE("X(q) o Z(p) equals the product of the 3x3 embeddings") {
    const auto composed = compose_affine(x, z);
    CHECK((composed.embed() - x.embed() * z.embed()).norm() < 1e-14);
  }

  SUBCASE("SUM(2,3) o SUM(1,2) = SUM(1,2,3)") {
    auto embed_sum = [](int control, int target) {
      Matrix s = Matrix::Identity(6, 6);
      s(target, control) = 1.0;
      s(3 + control, 3 + target) = -1.0;
      return AffineSymplectic(SymplecticMatrix(s), Vector::Zero(6));
    };
    const auto sum12 = embed_sum(0, 1);
    const auto sum23 = embed_sum(1, 2);
    const auto composed = compose_affine(sum23, sum12);
    CHECK((composed.homogeneous.entries() - gate_sum3().w).norm() == 0.0);
  }

  SUBCASE("dimension mismatch is rejected") {
    const auto big = AffineSymplectic::identity(2);
    CHECK_THROWS_AS(compose_affine(id, big), std::invalid_argument);
  }
}

TEST_CASE("quadratic Hamiltonian symmetrization and generator") {
  Matrix h(2, 2);
  h << 1, 2, 0, 1;
  const QuadraticHamiltonian qh(1, h);
  CHECK((qh.matrix() - qh.matrix().transpose()).norm() == 0.0);
  const Matrix a = qh.generator();
  const Matrix j = form_matrix(1);
  CHECK((a.transpose() * j + j * a).norm() < 1e-14);
}

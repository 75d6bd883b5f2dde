#include <doctest.h>

#include <cmath>

#include "memfem/errors.hpp"
#include "memfem/material.hpp"
#include "memfem/oracles.hpp"
#include "test_helpers.hpp"

using namespace memfem;

namespace {

const MaterialParams kParams(10e6, 0.5, 0.01);   // mooney-rivlin experiment data
const MaterialParams kHookeParams(10e6, 0.3, 0.01);

Eigen::VectorXd flatten(const Mat3& m) {
  Eigen::VectorXd v(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[3 * i + j] = m(i, j);
  return v;
}

Mat3 unflatten(const Eigen::VectorXd& v) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[3 * i + j];
  return m;
}

// max_ijkl |L - L_fd| / max |L|
double tangent_fd_deviation(const Material& material, const Mat3& F) {
  const Tensor4 L = material.tangent(F);
  const double step = 1e-6 * F.norm();
  const Eigen::MatrixXd J = oracles::fd_jacobian(
      [&](const Eigen::VectorXd& x) { return flatten(material.stress(unflatten(x))); },
      flatten(F), step);
  double num = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          num = std::max(num, std::abs(L(a, b, c, d) - J(3 * a + b, 3 * c + d)));
  return num / L.max_abs();
}

double stress_fd_deviation(const Material& material, const Mat3& F) {
  const Mat3 P = material.stress(F);
  const double step = 1e-6 * F.norm();
  const Mat3 Pfd =
      oracles::fd_stress([&](const Mat3& X) { return material.psi(X); }, F, step);
  return (P - Pfd).cwiseAbs().maxCoeff() /
         std::max(P.cwiseAbs().maxCoeff(), material.params().E * 1e-9);
}

}  // namespace

TEST_CASE("derived moduli follow the defining formulas") {
  const MaterialParams p(7e6, 0.4, 0.002);
  CHECK(p.K() == doctest::Approx(7e6 * 0.4 / (1.0 - 0.16)).epsilon(1e-15));
  CHECK(p.mu() == doctest::Approx(7e6 / 2.8).epsilon(1e-15));
  CHECK(p.mu1() == doctest::Approx(0.5 * p.mu()).epsilon(1e-15));
  CHECK(p.mu2() == p.mu1());
  CHECK_THROWS_AS(MaterialParams(-1.0, 0.3, 0.01), ParameterError);
  CHECK_THROWS_AS(MaterialParams(1e6, 0.7, 0.01), ParameterError);
  CHECK_THROWS_AS(MaterialParams(1e6, 0.3, 0.0), ParameterError);
}

TEST_CASE("mooney-rivlin energy at the identity and under rotations") {
  const MooneyRivlinMaterial mr(kParams);
  const double at_identity = 1.5 * (kParams.mu1() + kParams.mu2());
  CHECK(mr.psi(Mat3::Identity()) == doctest::Approx(at_identity).epsilon(1e-15));

  for (int trial = 0; trial < 100; ++trial) {
    const Mat3 Q = test_helpers::random_rotation();
    CHECK(std::abs(mr.psi(Q) - at_identity) <= 1e-12 * at_identity);
    // objectivity on non-trivial states
    const Mat3 F = test_helpers::random_deformation(0.3, 0.5, 2.0);
    CHECK(std::abs(mr.psi(Q * F) - mr.psi(F)) <= 1e-12 * std::abs(mr.psi(F)));
  }
}

TEST_CASE("mooney-rivlin energy against an independent high-precision evaluation") {
  const MooneyRivlinMaterial mr(kParams);
  const Mat3 F = Eigen::Vector3d(1.2, 0.9, 1.0).asDiagonal();

  // Independent route in extended precision, straight from the invariants.
  const long double l1 = 1.2L, l2 = 0.9L, l3 = 1.0L;
  const long double J = l1 * l2 * l3;
  const long double I1 = l1 * l1 + l2 * l2 + l3 * l3;
  const long double I2 = 0.5L * (I1 * I1 - (l1 * l1 * l1 * l1 + l2 * l2 * l2 * l2 +
                                            l3 * l3 * l3 * l3));
  const long double E = 10e6L, nu = 0.5L;
  const long double K = E * nu / (1.0L - nu * nu);
  const long double mu = E / (2.0L * (1.0L + nu));
  const long double psi = 0.25L * mu * std::pow(J, -2.0L / 3.0L) * I1 +
                          0.25L * mu * std::pow(J, -4.0L / 3.0L) * I2 +
                          0.5L * K * (J - 1.0L) * (J - 1.0L);
  CHECK(mr.psi(F) == doctest::Approx(static_cast<double>(psi)).epsilon(1e-14));
}

TEST_CASE("mooney-rivlin stress vanishes at the identity and at rotations") {
  const MooneyRivlinMaterial mr(kParams);
  CHECK(mr.stress(Mat3::Identity()).norm() <= 1e-9 * kParams.E * 1e-6);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 Q = test_helpers::random_rotation();
    CHECK(mr.stress(Q).norm() <= 1e-12 * kParams.E);
  }
}

TEST_CASE("analytic mooney-rivlin derivatives match finite differences") {
  const MooneyRivlinMaterial mr(kParams);
  double worst_stress = 0.0, worst_tangent = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Mat3 F = test_helpers::random_deformation(0.4, 0.5, 2.0);
    worst_stress = std::max(worst_stress, stress_fd_deviation(mr, F));
    worst_tangent = std::max(worst_tangent, tangent_fd_deviation(mr, F));
  }
  CHECK(worst_stress <= 1e-6);
  CHECK(worst_tangent <= 1e-5);
}

TEST_CASE("two-point objectivity of the mooney-rivlin stress") {
  const MooneyRivlinMaterial mr(kParams);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 Q = test_helpers::random_rotation();
    const double lambda = test_helpers::uniform(0.7, 1.5);
    const Mat3 D = Eigen::Vector3d(lambda, 1.0, 1.0).asDiagonal();
    const Mat3 lhs = mr.stress(Q * D);
    const Mat3 rhs = Q * mr.stress(D);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("inverted states are rejected by mooney-rivlin") {
  const MooneyRivlinMaterial mr(kParams);
  Mat3 F = Mat3::Identity();
  F(2, 2) = -1.0;
  CHECK_THROWS_AS(mr.psi(F), InvertedElementError);
  CHECK_THROWS_AS(mr.stress(F), InvertedElementError);
  CHECK_THROWS_AS(mr.tangent(F), InvertedElementError);
}

TEST_CASE("hooke basics: zero stress at identity, symmetrized shear response") {
  const HookeMaterial hooke(kHookeParams);
  CHECK(hooke.stress(Mat3::Identity()).norm() == 0.0);

  const double gamma = 1e-3;
  Mat3 F = Mat3::Identity();
  F(0, 1) += gamma;  // F - I = gamma e1 (x) e2
  const Mat3 P = hooke.stress(F);
  Mat3 expected = Mat3::Zero();
  expected(0, 1) = expected(1, 0) = kHookeParams.mu() * gamma;
  CHECK((P - expected).norm() <= 1e-12 * kHookeParams.E * gamma);
}

TEST_CASE("hooke stress matches finite differences of the quadratic energy") {
  const HookeMaterial hooke(kHookeParams);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 F = test_helpers::random_deformation(0.5, -10.0, 10.0);
    CHECK(stress_fd_deviation(hooke, F) <= 1e-8);
    CHECK(tangent_fd_deviation(hooke, F) <= 1e-8);
  }
}

TEST_CASE("hooke rejects the incompressible limit") {
  CHECK_THROWS_AS(HookeMaterial{kParams}, ParameterError);
}

TEST_CASE("tangents possess major symmetry") {
  const MooneyRivlinMaterial mr(kParams);
  const HookeMaterial hooke(kHookeParams);
  CHECK(hooke.tangent(Mat3::Identity()).major_asymmetry() <= 1e-15);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 F = test_helpers::random_deformation(0.4, 0.5, 2.0);
    CHECK(mr.tangent(F).major_asymmetry() <= 1e-8);
  }
}

TEST_CASE("hooke tensor has minor symmetry") {
  const HookeMaterial hooke(kHookeParams);
  const Tensor4& L = hooke.hooke_tensor();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          CHECK(L(a, b, c, d) == L(b, a, c, d));
          CHECK(L(a, b, c, d) == L(a, b, d, c));
        }
}

TEST_CASE("material factory") {
  CHECK(make_material("hooke", kHookeParams)->name() == "hooke");
  CHECK(make_material("mooney-rivlin", kParams)->name() == "mooney-rivlin");
  CHECK_THROWS_AS(make_material("neo-hooke", kParams), ParameterError);
}

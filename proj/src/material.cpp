#include "memfem/material.hpp"

#include <cmath>

#include "memfem/errors.hpp"

namespace memfem {

MaterialParams::MaterialParams(double youngs, double poisson, double t)
    : E(youngs), nu(poisson), thickness(t) {
  if (!(E > 0.0)) throw ParameterError("Young's modulus must be positive");
  if (!(nu >= 0.0 && nu <= 0.5))
    throw ParameterError("Poisson ratio must lie in [0, 0.5]");
  if (!(thickness > 0.0)) throw ParameterError("thickness must be positive");
}

HookeMaterial::HookeMaterial(const MaterialParams& p) : Material(p) {
  if (p.nu >= 0.5)
    throw ParameterError(
        "hooke model is singular at nu = 0.5 (3-D Lame parameter undefined); "
        "use mooney-rivlin for incompressible-limit parameters");
  const double lam = p.lambda();
  const double mu = p.mu();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          L_(a, b, c, d) = lam * (a == b) * (c == d) +
                           mu * ((a == c) * (b == d) + (a == d) * (b == c));
}

double HookeMaterial::psi(const Mat3& F) const {
  const Mat3 H = F - Mat3::Identity();
  const Mat3 E = 0.5 * (H + H.transpose());
  const double tr = E.trace();
  return 0.5 * params_.lambda() * tr * tr + params_.mu() * E.squaredNorm();
}

Mat3 HookeMaterial::stress(const Mat3& F) const {
  const Mat3 H = F - Mat3::Identity();
  return params_.lambda() * H.trace() * Mat3::Identity() +
         params_.mu() * (H + H.transpose());
}

Tensor4 HookeMaterial::tangent(const Mat3&) const { return L_; }

double MooneyRivlinMaterial::psi(const Mat3& F) const {
  const double J = F.determinant();
  if (!(J > 0.0)) throw InvertedElementError("mooney-rivlin: det F <= 0");
  const Mat3 B = F * F.transpose();
  const double I1 = B.trace();
  const double I2 = 0.5 * (I1 * I1 - (B * B).trace());
  const double Jm23 = std::pow(J, -2.0 / 3.0);
  const double Jm43 = Jm23 * Jm23;
  return 0.5 * params_.mu1() * Jm23 * I1 + 0.5 * params_.mu2() * Jm43 * I2 +
         0.5 * params_.K() * (J - 1.0) * (J - 1.0);
}

Mat3 MooneyRivlinMaterial::stress(const Mat3& F) const {
  const double J = F.determinant();
  if (!(J > 0.0)) throw InvertedElementError("mooney-rivlin: det F <= 0");
  const Mat3 FinvT = F.inverse().transpose();
  const Mat3 B = F * F.transpose();
  const double I1 = B.trace();
  const double I2 = 0.5 * (I1 * I1 - (B * B).trace());
  const double Jm23 = std::pow(J, -2.0 / 3.0);
  const double Jm43 = Jm23 * Jm23;
  const Mat3 BF = B * F;

  return params_.mu1() * Jm23 * (F - (I1 / 3.0) * FinvT) +
         params_.mu2() * Jm43 * (I1 * F - BF - (2.0 * I2 / 3.0) * FinvT) +
         params_.K() * (J - 1.0) * J * FinvT;
}

Tensor4 MooneyRivlinMaterial::tangent(const Mat3& F) const {
  const double J = F.determinant();
  if (!(J > 0.0)) throw InvertedElementError("mooney-rivlin: det F <= 0");
  const Mat3 FinvT = F.inverse().transpose();
  const Mat3 B = F * F.transpose();
  const Mat3 C = F.transpose() * F;
  const Mat3 BF = B * F;
  const double I1 = B.trace();
  const double I2 = 0.5 * (I1 * I1 - (B * B).trace());
  const double Jm23 = std::pow(J, -2.0 / 3.0);
  const double Jm43 = Jm23 * Jm23;
  const double mu1 = params_.mu1();
  const double mu2 = params_.mu2();
  const double K = params_.K();

  Tensor4 L;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) {
          const double dac = (a == c), dbd = (b == d);
          const double t1 =
              dac * dbd -
              (2.0 / 3.0) * (FinvT(c, d) * F(a, b) + F(c, d) * FinvT(a, b)) +
              (2.0 * I1 / 9.0) * FinvT(a, b) * FinvT(c, d) +
              (I1 / 3.0) * FinvT(a, d) * FinvT(c, b);
          const double t2 =
              I1 * dac * dbd + 2.0 * F(a, b) * F(c, d) - dac * C(d, b) -
              F(a, d) * F(c, b) - B(a, c) * dbd -
              (4.0 / 3.0) * I1 * (F(a, b) * FinvT(c, d) + F(c, d) * FinvT(a, b)) +
              (4.0 / 3.0) * (BF(a, b) * FinvT(c, d) + BF(c, d) * FinvT(a, b)) +
              (8.0 * I2 / 9.0) * FinvT(a, b) * FinvT(c, d) +
              (2.0 * I2 / 3.0) * FinvT(a, d) * FinvT(c, b);
          const double t3 = J * (2.0 * J - 1.0) * FinvT(a, b) * FinvT(c, d) -
                            J * (J - 1.0) * FinvT(a, d) * FinvT(c, b);
          L(a, b, c, d) = mu1 * Jm23 * t1 + mu2 * Jm43 * t2 + K * t3;
        }
      }
    }
  }
  return L;
}

std::unique_ptr<Material> make_material(const std::string& model,
                                        const MaterialParams& params) {
  if (model == "hooke") return std::make_unique<HookeMaterial>(params);
  if (model == "mooney-rivlin") return std::make_unique<MooneyRivlinMaterial>(params);
  throw ParameterError("unknown material model '" + model +
                       "' (expected hooke or mooney-rivlin)");
}

}  // namespace memfem

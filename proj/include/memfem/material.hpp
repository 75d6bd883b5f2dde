#ifndef MEMFEM_MATERIAL_HPP
#define MEMFEM_MATERIAL_HPP

#include <memory>
#include <string>
#include <string_view>

#include "memfem/tensor4.hpp"

namespace memfem {

// Engineering constants and the derived moduli used by both models.
struct MaterialParams {
  double E;          // Young's modulus [Pa]
  double nu;         // Poisson ratio
  double thickness;  // membrane thickness [m]

  MaterialParams(double youngs, double poisson, double t);

  double K() const { return E * nu / (1.0 - nu * nu); }
  double mu() const { return E / (2.0 * (1.0 + nu)); }
  double mu1() const { return 0.5 * mu(); }
  double mu2() const { return 0.5 * mu(); }
  // 3-D Lame parameter; undefined at nu = 1/2 (callers must guard).
  double lambda() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
};

// Hyperelastic model: energy density psi(F), first Piola-Kirchhoff stress
// P(F) = d psi / dF, and tangent L(F) = dP/dF. Stateless; safe to share
// across threads.
class Material {
 public:
  virtual ~Material() = default;

  virtual double psi(const Mat3& F) const = 0;
  virtual Mat3 stress(const Mat3& F) const = 0;
  virtual Tensor4 tangent(const Mat3& F) const = 0;
  virtual std::string_view name() const = 0;
  // Whether F with non-positive determinant is outside the model's domain.
  virtual bool requires_positive_det() const = 0;

  const MaterialParams& params() const { return params_; }

 protected:
  explicit Material(const MaterialParams& p) : params_(p) {}
  MaterialParams params_;
};

// Linear model P(F) = L_Hooke : (F - I) with the constant isotropic Hooke
// tensor (major and minor symmetry). Rejects nu = 1/2.
class HookeMaterial final : public Material {
 public:
  explicit HookeMaterial(const MaterialParams& p);

  double psi(const Mat3& F) const override;
  Mat3 stress(const Mat3& F) const override;
  Tensor4 tangent(const Mat3& F) const override;
  std::string_view name() const override { return "hooke"; }
  bool requires_positive_det() const override { return false; }

  const Tensor4& hooke_tensor() const { return L_; }

 private:
  Tensor4 L_;
};

// Compressible isotropic Mooney-Rivlin model,
//   psi = mu1/2 * J^(-2/3) I1 + mu2/2 * J^(-4/3) I2 + K/2 (J-1)^2,
// with I1, I2 the invariants of B = F F^T. The constant offset
// 3(mu1+mu2)/2 at F = I is retained; energies are compared by differences.
class MooneyRivlinMaterial final : public Material {
 public:
  explicit MooneyRivlinMaterial(const MaterialParams& p) : Material(p) {}

  double psi(const Mat3& F) const override;
  Mat3 stress(const Mat3& F) const override;
  Tensor4 tangent(const Mat3& F) const override;
  std::string_view name() const override { return "mooney-rivlin"; }
  bool requires_positive_det() const override { return true; }
};

std::unique_ptr<Material> make_material(const std::string& model,
                                        const MaterialParams& params);

}  // namespace memfem

#endif

#ifndef MEMFEM_PLANE_STRESS_HPP
#define MEMFEM_PLANE_STRESS_HPP

#include <optional>
#include <vector>

#include "memfem/material.hpp"
#include "memfem/tensor4.hpp"

namespace memfem {

// Converged local plane-stress state at one quadrature point.
struct PlaneStressState {
  Vec3 director;       // u_bar, the through-thickness displacement-gradient column
  Mat3 F;              // full deformation gradient F_Gamma + u_bar (x) N
  Mat3 stress;         // P(F), satisfies |P.N| <= tol after the solve
  int iterations = 0;  // local Newton iterations used
};

struct PlaneStressOptions {
  double tol;             // absolute tolerance on |P(F).N| [Pa]
  int max_iters = 30;
  int max_halvings = 10;  // step halving when det F would turn non-positive
};

// Default tolerance is relative to the elastic modulus: P.N scales with E,
// an absolute value would not survive a change of material scale.
inline PlaneStressOptions default_plane_stress_options(const Material& material,
                                                       double tol_rel = 1e-9) {
  return PlaneStressOptions{tol_rel * material.params().E, 30, 10};
}

// Local Newton solve for the director: find u_bar with
// P(F_Gamma + u_bar (x) N).N = 0, updates from L_NN . du = -P.N.
// `warm_start` seeds the iteration (zero otherwise); the converged state is
// independent of the seed for well-posed inputs.
// Throws CondensationSingularityError, InvertedElementError, or
// ConvergenceError (with residual history).
PlaneStressState solve_director(const Mat3& F_gamma, const Vec3& normal,
                                const Material& material,
                                const PlaneStressOptions& opts,
                                std::optional<Vec3> warm_start = std::nullopt,
                                std::vector<double>* residual_history = nullptr);

// Consistent tangent of the implicit map F_Gamma -> P(F_Gamma + u_bar{F_Gamma} (x) N):
// the Schur complement L - L_{.N} . L_NN^{-1} . L_{N.} evaluated at the
// converged state. Inherits major symmetry from the material tangent.
Tensor4 condensed_tangent(const PlaneStressState& state, const Vec3& normal,
                          const Material& material);

// Current-configuration normal n = F^{-T} N / |F^{-T} N|.
Vec3 current_normal(const Mat3& F, const Vec3& normal);

}  // namespace memfem

#endif

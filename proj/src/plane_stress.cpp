#include "memfem/plane_stress.hpp"

#include <cmath>

#include "memfem/errors.hpp"

namespace memfem {

namespace {

Vec3 solve_3x3(const Mat3& A, const Vec3& rhs) {
  Eigen::PartialPivLU<Mat3> lu(A);
  const double scale = A.cwiseAbs().maxCoeff();
  const double det = lu.determinant();
  if (!(std::abs(det) > 1e-14 * scale * scale * scale))
    throw CondensationSingularityError("singular L_NN block in plane-stress solve");
  return lu.solve(rhs);
}

}  // namespace

PlaneStressState solve_director(const Mat3& F_gamma, const Vec3& normal,
                                const Material& material,
                                const PlaneStressOptions& opts,
                                std::optional<Vec3> warm_start,
                                std::vector<double>* residual_history) {
  const bool guard_det = material.requires_positive_det();
  Vec3 u_bar = warm_start.value_or(Vec3::Zero());
  Mat3 F = F_gamma + u_bar * normal.transpose();
  if (guard_det && !(F.determinant() > 0.0)) {
    // A stale warm start can propose an inverted state; restart from zero.
    u_bar.setZero();
    F = F_gamma;
    if (!(F.determinant() > 0.0))
      throw InvertedElementError("plane-stress solve: initial det F <= 0");
  }

  std::vector<double> history;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const Mat3 P = material.stress(F);
    const Vec3 residual = P * normal;
    const double rnorm = residual.norm();
    history.push_back(rnorm);
    if (residual_history) residual_history->push_back(rnorm);
    if (rnorm <= opts.tol) {
      PlaneStressState state;
      state.director = u_bar;
      state.F = F;
      state.stress = P;
      state.iterations = iter;
      return state;
    }

    const Tensor4 L = material.tangent(F);
    const Mat3 Lnn = normal_normal_block(L, normal);
    const Vec3 du = solve_3x3(Lnn, -residual);

    double step = 1.0;
    if (guard_det) {
      int halvings = 0;
      while (!((F_gamma + (u_bar + step * du) * normal.transpose()).determinant() >
               0.0)) {
        step *= 0.5;
        if (++halvings > opts.max_halvings)
          throw InvertedElementError(
              "plane-stress solve: step halving failed to keep det F positive");
      }
    }
    u_bar += step * du;
    F = F_gamma + u_bar * normal.transpose();
  }
  throw ConvergenceError("plane-stress director iteration did not converge",
                         std::move(history));
}

Tensor4 condensed_tangent(const PlaneStressState& state, const Vec3& normal,
                          const Material& material) {
  const Tensor4 L = material.tangent(state.F);
  const Mat3 Lnn = normal_normal_block(L, normal);

  // L_{.N}(a,b,c) = L_abcd N_d and L_{N.}(c,p,q) = L_cbpq N_b.
  std::array<Mat3, 3> L_dotN;
  std::array<Mat3, 3> L_Ndot;
  for (int c = 0; c < 3; ++c) {
    L_dotN[static_cast<std::size_t>(c)].setZero();
    L_Ndot[static_cast<std::size_t>(c)].setZero();
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double sn = 0.0, ns = 0.0;
        for (int d = 0; d < 3; ++d) {
          sn += L(a, b, c, d) * normal(d);
          ns += L(c, d, a, b) * normal(d);
        }
        L_dotN[static_cast<std::size_t>(c)](a, b) = sn;
        // L_{N.}(c,a,b) = L_cdab N_d
        L_Ndot[static_cast<std::size_t>(c)](a, b) = ns;
      }

  // Solve L_NN X = L_{N.} for the three right-hand-side slabs instead of
  // forming the inverse.
  Eigen::PartialPivLU<Mat3> lu(Lnn);
  const double scale = Lnn.cwiseAbs().maxCoeff();
  if (!(std::abs(lu.determinant()) > 1e-14 * scale * scale * scale))
    throw CondensationSingularityError("singular L_NN block in condensation");
  Eigen::Matrix<double, 3, 9> rhs;
  for (int m = 0; m < 3; ++m)
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        rhs(m, p * 3 + q) = L_Ndot[static_cast<std::size_t>(m)](p, q);
  const Eigen::Matrix<double, 3, 9> X = lu.solve(rhs);

  Tensor4 out = L;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          double corr = 0.0;
          for (int c = 0; c < 3; ++c)
            corr += L_dotN[static_cast<std::size_t>(c)](a, b) * X(c, p * 3 + q);
          out(a, b, p, q) -= corr;
        }
  return out;
}

Vec3 current_normal(const Mat3& F, const Vec3& normal) {
  const Vec3 n = F.inverse().transpose() * normal;
  return n / n.norm();
}

}  // namespace memfem

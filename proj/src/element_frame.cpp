#include "memfem/element_frame.hpp"

#include <cmath>
#include <string>

#include "memfem/errors.hpp"

namespace memfem {

std::vector<ElementFrame> element_frames(const SurfaceMesh& mesh, int element_index,
                                         const ReferenceElement& geom_ref,
                                         const ReferenceElement& disp_ref) {
  if (geom_ref.degree() != mesh.geometry_order)
    throw ParameterError("geometry reference degree does not match mesh order");
  if (disp_ref.degree() > geom_ref.degree())
    throw ParameterError("displacement degree above geometry degree is not supported");

  const auto& elem = mesh.elements[static_cast<std::size_t>(element_index)];
  const int n_geom = geom_ref.node_count();
  const int n_disp = disp_ref.node_count();
  const auto& rule = geom_ref.quadrature();

  std::vector<ElementFrame> frames;
  frames.reserve(rule.size());

  std::array<double, 6> psi{}, phi{};
  std::array<std::array<double, 2>, 6> dpsi{}, dphi{};

  for (const auto& qp : rule) {
    geom_ref.shape(qp.xi, qp.eta, psi);
    geom_ref.shape_gradient(qp.xi, qp.eta, dpsi);
    disp_ref.shape(qp.xi, qp.eta, phi);
    disp_ref.shape_gradient(qp.xi, qp.eta, dphi);

    Eigen::Vector3d pos = Eigen::Vector3d::Zero();
    Eigen::Vector3d t_xi = Eigen::Vector3d::Zero();
    Eigen::Vector3d t_eta = Eigen::Vector3d::Zero();
    for (int i = 0; i < n_geom; ++i) {
      const Eigen::Vector3d& X = mesh.nodes[static_cast<std::size_t>(elem[i])];
      pos += psi[i] * X;
      t_xi += dpsi[i][0] * X;
      t_eta += dpsi[i][1] * X;
    }

    const Eigen::Vector3d cross = t_xi.cross(t_eta);
    const double surf_jac = cross.norm();
    if (!(surf_jac > 1e-14 * (t_xi.norm() * t_eta.norm() + 1e-300)))
      throw GeometryError("degenerate element " + std::to_string(element_index) +
                          ": zero surface Jacobian at a quadrature point");
    const Eigen::Vector3d normal = cross / surf_jac;

    Eigen::Matrix3d J;
    J.row(0) = t_xi.transpose();
    J.row(1) = t_eta.transpose();
    J.row(2) = normal.transpose();
    // det J = (t_xi x t_eta) . N = |cross| > 0, so J is invertible here.
    const Eigen::Matrix3d Jinv = J.inverse();

    ElementFrame frame;
    frame.position = pos;
    frame.normal = normal;
    frame.projector = Eigen::Matrix3d::Identity() - normal * normal.transpose();
    frame.jacobian_inv = Jinv;
    frame.area_weight = qp.weight * surf_jac;
    frame.n_shape = n_disp;
    frame.shape = phi;
    for (int j = 0; j < n_disp; ++j)
      frame.grad[static_cast<std::size_t>(j)] =
          Jinv * Eigen::Vector3d(dphi[j][0], dphi[j][1], 0.0);
    for (int j = n_disp; j < 6; ++j)
      frame.grad[static_cast<std::size_t>(j)].setZero();
    frames.push_back(frame);
  }
  return frames;
}

Eigen::Matrix3d surface_gradient(const ElementFrame& frame,
                                 std::span<const Eigen::Vector3d> nodal_vectors) {
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  for (int j = 0; j < frame.n_shape; ++j)
    g += nodal_vectors[static_cast<std::size_t>(j)] *
         frame.grad[static_cast<std::size_t>(j)].transpose();
  return g;
}

FrameCache build_frame_cache(const SurfaceMesh& mesh, const ReferenceElement& geom_ref,
                             const ReferenceElement& disp_ref, bool parallel) {
  FrameCache cache;
  cache.frames_per_element = static_cast<int>(geom_ref.quadrature().size());
  const int ne = mesh.element_count();
  cache.frames.resize(static_cast<std::size_t>(ne) * cache.frames_per_element);

  // Exceptions may not cross the OpenMP region; capture and rethrow.
  std::exception_ptr error;
#pragma omp parallel for schedule(static) if (parallel)
  for (int e = 0; e < ne; ++e) {
    try {
      auto frames = element_frames(mesh, e, geom_ref, disp_ref);
      std::copy(frames.begin(), frames.end(),
                cache.frames.begin() +
                    static_cast<std::ptrdiff_t>(e) * cache.frames_per_element);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return cache;
}

}  // namespace memfem

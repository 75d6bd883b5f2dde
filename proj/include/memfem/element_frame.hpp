#ifndef MEMFEM_ELEMENT_FRAME_HPP
#define MEMFEM_ELEMENT_FRAME_HPP

#include <Eigen/Dense>
#include <array>
#include <span>
#include <vector>

#include "memfem/reference_element.hpp"
#include "memfem/surface_mesh.hpp"

namespace memfem {

// Per-quadrature-point geometric data on the reference configuration.
//
// The extended Jacobian J stacks the two parametric tangents of the discrete
// surface and the discrete unit normal; physical shape-function gradients are
// J^{-1} applied to (d/dxi, d/deta, 0) and are therefore tangential by
// construction. The method is total-Lagrangian, so frames are computed once
// per solve on the reference mesh and cached.
struct ElementFrame {
  Eigen::Vector3d position;      // X^h at the quadrature point
  Eigen::Vector3d normal;        // N^h, unit, orientation from element winding
  Eigen::Matrix3d projector;     // I - N^h (x) N^h
  Eigen::Matrix3d jacobian_inv;  // inverse extended Jacobian at zeta = 0
  double area_weight;            // quadrature weight x surface Jacobian [m^2]

  // Displacement-basis data at this point (first `n_shape` entries valid).
  int n_shape;
  std::array<double, 6> shape;
  std::array<Eigen::Vector3d, 6> grad;  // physical tangential gradients
};

// Frames for one element, one per quadrature point of `geom_ref`'s rule.
// `disp_ref` selects the displacement basis (equal-order or lower).
std::vector<ElementFrame> element_frames(const SurfaceMesh& mesh, int element_index,
                                         const ReferenceElement& geom_ref,
                                         const ReferenceElement& disp_ref);

inline std::vector<ElementFrame> element_frames(const SurfaceMesh& mesh,
                                                int element_index,
                                                const ReferenceElement& ref) {
  return element_frames(mesh, element_index, ref, ref);
}

// (Grad_Gamma u)^h = sum_j u_j (x) grad(phi_j); rows are displacement
// components, columns derivative directions. The second leg is tangential.
Eigen::Matrix3d surface_gradient(const ElementFrame& frame,
                                 std::span<const Eigen::Vector3d> nodal_vectors);

// All frames of a mesh, flattened element-major; frames_per_element is the
// quadrature size. Parallelizes over elements.
struct FrameCache {
  std::vector<ElementFrame> frames;
  int frames_per_element = 0;

  std::span<const ElementFrame> element(int e) const {
    return {frames.data() + static_cast<std::ptrdiff_t>(e) * frames_per_element,
            static_cast<std::size_t>(frames_per_element)};
  }
};

FrameCache build_frame_cache(const SurfaceMesh& mesh, const ReferenceElement& geom_ref,
                             const ReferenceElement& disp_ref, bool parallel = true);

}  // namespace memfem

#endif

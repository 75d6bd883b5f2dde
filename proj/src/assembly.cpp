#include "memfem/assembly.hpp"

#include <exception>

#include "memfem/errors.hpp"

namespace memfem {

void gather_element_u(const SurfaceMesh& mesh, const DofMap& dofs, int element,
                      const Eigen::VectorXd& u, std::span<Eigen::Vector3d> out) {
  const auto& elem = mesh.elements[static_cast<std::size_t>(element)];
  const int local = dofs.nodes_per_element();
  for (int j = 0; j < local; ++j) {
    const int base = dofs.dof_index(elem[j], 0);
    out[static_cast<std::size_t>(j)] = Eigen::Vector3d(u[base], u[base + 1], u[base + 2]);
  }
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> element_internal(
    std::span<const ElementFrame> frames, std::span<const Eigen::Vector3d> u_element,
    const Material& material, const PlaneStressOptions& ps_opts, Vec3* ps_row,
    double* energy, int* ps_iterations) {
  const int n_en = frames.empty() ? 0 : frames.front().n_shape;
  const int n_dof = 3 * n_en;
  const double t = material.params().thickness;

  Eigen::VectorXd f = Eigen::VectorXd::Zero(n_dof);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n_dof, n_dof);

  for (std::size_t q = 0; q < frames.size(); ++q) {
    const ElementFrame& frame = frames[q];
    const Mat3 F_gamma =
        Mat3::Identity() + surface_gradient(frame, u_element);

    std::optional<Vec3> warm;
    if (ps_row) warm = ps_row[q];
    const PlaneStressState state =
        solve_director(F_gamma, frame.normal, material, ps_opts, warm);
    if (ps_row) ps_row[q] = state.director;
    if (ps_iterations) *ps_iterations = std::max(*ps_iterations, state.iterations);

    const Tensor4 L = condensed_tangent(state, frame.normal, material);
    const double tw = t * frame.area_weight;
    if (energy) *energy += tw * material.psi(state.F);

    for (int j = 0; j < n_en; ++j) {
      const Vec3 fj = state.stress * frame.grad[static_cast<std::size_t>(j)];
      f.segment<3>(3 * j) += tw * fj;
    }
    for (int j = 0; j < n_en; ++j) {
      const Vec3& gj = frame.grad[static_cast<std::size_t>(j)];
      for (int k = 0; k < n_en; ++k) {
        const Vec3& gk = frame.grad[static_cast<std::size_t>(k)];
        for (int c = 0; c < 3; ++c) {
          for (int d = 0; d < 3; ++d) {
            double s = 0.0;
            for (int b = 0; b < 3; ++b)
              for (int qq = 0; qq < 3; ++qq) s += gj(b) * L(c, b, d, qq) * gk(qq);
            K(3 * j + c, 3 * k + d) += tw * s;
          }
        }
      }
    }
  }
  return {std::move(f), std::move(K)};
}

namespace {

struct ElementContribution {
  Eigen::VectorXd f;
  Eigen::MatrixXd K;
  double energy = 0.0;
  int ps_iterations = 0;
};

}  // namespace

InternalAssembly assemble_internal(const SurfaceMesh& mesh, const FrameCache& frames,
                                   const DofMap& dofs, const Material& material,
                                   const Eigen::VectorXd& u,
                                   const PlaneStressOptions& ps_opts,
                                   PlaneStressCache& ps_cache, Execution mode) {
  const int ne = mesh.element_count();
  const int local = dofs.nodes_per_element();
  std::vector<ElementContribution> contributions(static_cast<std::size_t>(ne));

  const bool parallel = mode == Execution::parallel;
  std::exception_ptr error;
#pragma omp parallel for schedule(static) if (parallel)
  for (int e = 0; e < ne; ++e) {
    try {
      std::array<Eigen::Vector3d, 6> ue;
      gather_element_u(mesh, dofs, e, u, std::span<Eigen::Vector3d>(ue.data(), 6));
      auto& c = contributions[static_cast<std::size_t>(e)];
      auto [f, K] = element_internal(
          frames.element(e),
          std::span<const Eigen::Vector3d>(ue.data(), static_cast<std::size_t>(local)),
          material, ps_opts, &ps_cache.at(e, 0), &c.energy, &c.ps_iterations);
      c.f = std::move(f);
      c.K = std::move(K);
    } catch (const std::exception& ex) {
#pragma omp critical
      if (!error)
        error = std::make_exception_ptr(
            SolverError("element " + std::to_string(e) + ": " + ex.what()));
    }
  }
  if (error) std::rethrow_exception(error);

  // Ordered reduction: scatter in element order so the result is independent
  // of the thread count.
  InternalAssembly out;
  out.force = Eigen::VectorXd::Zero(dofs.dof_count());
  out.triplets.reserve(static_cast<std::size_t>(ne) * static_cast<std::size_t>(3 * local) *
                       static_cast<std::size_t>(3 * local));
  for (int e = 0; e < ne; ++e) {
    const auto& elem = mesh.elements[static_cast<std::size_t>(e)];
    const auto& c = contributions[static_cast<std::size_t>(e)];
    out.strain_energy += c.energy;
    out.max_ps_iterations = std::max(out.max_ps_iterations, c.ps_iterations);
    for (int j = 0; j < local; ++j) {
      const int row = dofs.dof_index(elem[j], 0);
      out.force.segment<3>(row) += c.f.segment<3>(3 * j);
      for (int k = 0; k < local; ++k) {
        const int col = dofs.dof_index(elem[k], 0);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            out.triplets.emplace_back(row + a, col + b, c.K(3 * j + a, 3 * k + b));
      }
    }
  }
  return out;
}

Eigen::VectorXd load_conservative(const SurfaceMesh& mesh, const FrameCache& frames,
                                  const DofMap& dofs,
                                  const std::function<double(const Eigen::Vector3d&)>& g) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(dofs.dof_count());
  const int local = dofs.nodes_per_element();
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& elem = mesh.elements[static_cast<std::size_t>(e)];
    for (const ElementFrame& frame : frames.element(e)) {
      const double gw = g(frame.position) * frame.area_weight;
      for (int j = 0; j < local; ++j)
        load.segment<3>(dofs.dof_index(elem[j], 0)) +=
            gw * frame.shape[static_cast<std::size_t>(j)] * frame.normal;
    }
  }
  return load;
}

Eigen::VectorXd load_pressure(const SurfaceMesh& mesh, const FrameCache& frames,
                              const DofMap& dofs, const Material& material,
                              const Eigen::VectorXd& u,
                              const PlaneStressOptions& ps_opts,
                              PlaneStressCache& ps_cache, double pressure,
                              Execution mode) {
  const int ne = mesh.element_count();
  const int local = dofs.nodes_per_element();
  Eigen::VectorXd load = Eigen::VectorXd::Zero(dofs.dof_count());
  if (pressure == 0.0) return load;

  // Per-element nodal forces computed in parallel, scattered in order.
  std::vector<Eigen::VectorXd> contributions(static_cast<std::size_t>(ne));
  const bool parallel = mode == Execution::parallel;
  std::exception_ptr error;
#pragma omp parallel for schedule(static) if (parallel)
  for (int e = 0; e < ne; ++e) {
    try {
      std::array<Eigen::Vector3d, 6> ue;
      gather_element_u(mesh, dofs, e, u, std::span<Eigen::Vector3d>(ue.data(), 6));
      Eigen::VectorXd fe = Eigen::VectorXd::Zero(3 * local);
      const auto elem_frames = frames.element(e);
      for (int q = 0; q < static_cast<int>(elem_frames.size()); ++q) {
        const ElementFrame& frame = elem_frames[static_cast<std::size_t>(q)];
        const Mat3 F_gamma =
            Mat3::Identity() +
            surface_gradient(frame, std::span<const Eigen::Vector3d>(
                                        ue.data(), static_cast<std::size_t>(local)));
        const PlaneStressState state = solve_director(
            F_gamma, frame.normal, material, ps_opts, ps_cache.at(e, q));
        ps_cache.at(e, q) = state.director;
        // Nanson: n da = cof(F) . N dA with cof(F) = det(F) F^{-T}.
        const Mat3 cof = state.F.determinant() * state.F.inverse().transpose();
        const Vec3 pn = pressure * frame.area_weight * (cof * frame.normal);
        for (int j = 0; j < local; ++j)
          fe.segment<3>(3 * j) += frame.shape[static_cast<std::size_t>(j)] * pn;
      }
      contributions[static_cast<std::size_t>(e)] = std::move(fe);
    } catch (const std::exception& ex) {
#pragma omp critical
      if (!error)
        error = std::make_exception_ptr(
            SolverError("pressure load, element " + std::to_string(e) + ": " + ex.what()));
    }
  }
  if (error) std::rethrow_exception(error);

  for (int e = 0; e < ne; ++e) {
    const auto& elem = mesh.elements[static_cast<std::size_t>(e)];
    for (int j = 0; j < local; ++j)
      load.segment<3>(dofs.dof_index(elem[j], 0)) +=
          contributions[static_cast<std::size_t>(e)].segment<3>(3 * j);
  }
  return load;
}

GlobalSystem assemble(const SurfaceMesh& mesh, const FrameCache& frames,
                      const DofMap& dofs, const Material& material,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& external,
                      const std::vector<bool>& dirichlet_mask,
                      const PlaneStressOptions& ps_opts, PlaneStressCache& ps_cache,
                      Execution mode, double* strain_energy) {
  const int n = dofs.dof_count();
  if (external.size() != n || u.size() != n ||
      static_cast<int>(dirichlet_mask.size()) != n)
    throw ParameterError("assemble: vector length does not match DOF count");

  InternalAssembly internal =
      assemble_internal(mesh, frames, dofs, material, u, ps_opts, ps_cache, mode);
  if (strain_energy) *strain_energy = internal.strain_energy;

  GlobalSystem sys;
  sys.dirichlet_mask = dirichlet_mask;
  sys.residual = internal.force - external;
  for (int i = 0; i < n; ++i)
    if (dirichlet_mask[static_cast<std::size_t>(i)]) sys.residual[i] = 0.0;

  // Symmetric elimination: drop constrained rows and columns, unit diagonal.
  std::vector<Eigen::Triplet<double>> kept;
  kept.reserve(internal.triplets.size() + static_cast<std::size_t>(n));
  for (const auto& t : internal.triplets) {
    if (!dirichlet_mask[static_cast<std::size_t>(t.row())] &&
        !dirichlet_mask[static_cast<std::size_t>(t.col())])
      kept.push_back(t);
  }
  for (int i = 0; i < n; ++i)
    if (dirichlet_mask[static_cast<std::size_t>(i)]) kept.emplace_back(i, i, 1.0);

  sys.tangent.resize(n, n);
  sys.tangent.setFromTriplets(kept.begin(), kept.end());
  return sys;
}

}  // namespace memfem

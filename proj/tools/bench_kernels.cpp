// Timing harness comparing the serial reference kernels against the
// OpenMP-parallel paths on a representative mesh. The parallel assembly
// scatters per-element contributions in element order, so both paths must
// produce identical systems; this also cross-checks that claim.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "memfem/assembly.hpp"
#include "memfem/material.hpp"
#include "memfem/surface_mesh.hpp"

using namespace memfem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    fn();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int refinement = 4;
  int reps = 3;
  if (argc > 1) refinement = std::stoi(argv[1]);
  if (argc > 2) reps = std::stoi(argv[2]);

  const SurfaceMesh mesh = generate_spheroid(1.0, 0.5, refinement, 2);
  const ReferenceElement geom_ref(2), disp_ref(1);
  const DofMap dofs(mesh, 1);
  const MooneyRivlinMaterial material(MaterialParams(1e7, 0.5, 0.01));
  const PlaneStressOptions ps_opts = default_plane_stress_options(material);

  // A smooth nonzero state so the plane-stress solves do real work.
  Eigen::VectorXd u(dofs.dof_count());
  for (int dn = 0; dn < dofs.dof_node_count(); ++dn) {
    const Eigen::Vector3d x = mesh.nodes[static_cast<std::size_t>(dofs.mesh_node(dn))];
    u.segment<3>(3 * dn) = 0.05 * Eigen::Vector3d(x.y() * x.z(), x.z() * x.x(),
                                                  x.x() * x.y());
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("mesh: %d elements, %d dofs, %d thread(s)\n", mesh.element_count(),
              dofs.dof_count(), threads);

  const double t_frames_serial =
      time_best_of(reps, [&] { build_frame_cache(mesh, geom_ref, disp_ref, false); });
  const double t_frames_parallel =
      time_best_of(reps, [&] { build_frame_cache(mesh, geom_ref, disp_ref, true); });

  const FrameCache frames = build_frame_cache(mesh, geom_ref, disp_ref);
  PlaneStressCache cache_serial(mesh.element_count(), frames.frames_per_element);
  PlaneStressCache cache_parallel(mesh.element_count(), frames.frames_per_element);

  InternalAssembly serial, parallel;
  const double t_internal_serial = time_best_of(reps, [&] {
    serial = assemble_internal(mesh, frames, dofs, material, u, ps_opts, cache_serial,
                               Execution::serial);
  });
  const double t_internal_parallel = time_best_of(reps, [&] {
    parallel = assemble_internal(mesh, frames, dofs, material, u, ps_opts,
                                 cache_parallel, Execution::parallel);
  });

  const double force_diff = (serial.force - parallel.force).norm();
  std::printf("\n%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");
  std::printf("%-28s %10.4f %10.4f %7.2fx\n", "frame cache", t_frames_serial,
              t_frames_parallel, t_frames_serial / t_frames_parallel);
  std::printf("%-28s %10.4f %10.4f %7.2fx\n", "internal force + tangent",
              t_internal_serial, t_internal_parallel,
              t_internal_serial / t_internal_parallel);
  std::printf("\nserial vs openmp force vector difference: %.3g (expect 0)\n",
              force_diff);
  return force_diff == 0.0 ? 0 : 1;
}

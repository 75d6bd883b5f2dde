#include <doctest.h>

#include <cmath>

#include "memfem/assembly.hpp"
#include "memfem/errors.hpp"
#include "memfem/oracles.hpp"
#include "test_helpers.hpp"

using namespace memfem;

namespace {

const MaterialParams kMrParams(10e6, 0.5, 0.01);
const MaterialParams kHookeParams(10e6, 0.3, 0.01);

struct Setup {
  SurfaceMesh mesh;
  ReferenceElement geom_ref;
  ReferenceElement disp_ref;
  DofMap dofs;
  FrameCache frames;

  Setup(SurfaceMesh m, int disp_order)
      : mesh(std::move(m)),
        geom_ref(mesh.geometry_order),
        disp_ref(disp_order),
        dofs(mesh, disp_order),
        frames(build_frame_cache(mesh, geom_ref, disp_ref)) {}
};

// Flat unit square split into two triangles in the z = 0 plane.
SurfaceMesh flat_two_element_patch() {
  SurfaceMesh mesh;
  mesh.nodes = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  mesh.elements = {{0, 1, 2, -1, -1, -1}, {0, 2, 3, -1, -1, -1}};
  mesh.geometry_order = 1;
  mesh.compute_boundary_flags();
  return mesh;
}

// Flat square with one interior node, 4 triangles around the center.
SurfaceMesh flat_four_element_patch() {
  SurfaceMesh mesh;
  mesh.nodes = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0.45, 0.55, 0}};
  mesh.elements = {{0, 1, 4, -1, -1, -1},
                   {1, 2, 4, -1, -1, -1},
                   {2, 3, 4, -1, -1, -1},
                   {3, 0, 4, -1, -1, -1}};
  mesh.geometry_order = 1;
  mesh.compute_boundary_flags();
  return mesh;
}

Eigen::VectorXd displacement_from_map(const Setup& s,
                                      const std::function<Eigen::Vector3d(
                                          const Eigen::Vector3d&)>& map) {
  Eigen::VectorXd u(s.dofs.dof_count());
  for (int dn = 0; dn < s.dofs.dof_node_count(); ++dn)
    u.segment<3>(3 * dn) =
        map(s.mesh.nodes[static_cast<std::size_t>(s.dofs.mesh_node(dn))]);
  return u;
}

}  // namespace

TEST_CASE("zero displacement produces zero internal force") {
  Setup s(generate_cylinder(0.5, 0.6, 3, 6, 2), 1);
  const MooneyRivlinMaterial mr(kMrParams);
  PlaneStressCache cache(s.mesh.element_count(), s.frames.frames_per_element);
  const auto out =
      assemble_internal(s.mesh, s.frames, s.dofs, mr, Eigen::VectorXd::Zero(s.dofs.dof_count()),
                        default_plane_stress_options(mr), cache);
  CHECK(out.force.norm() <= 1e-9 * kMrParams.E * kMrParams.thickness);
}

TEST_CASE("rigid translations and rotations produce no internal force") {
  Setup s(generate_cylinder(0.5, 0.6, 3, 6, 2), 1);
  const MooneyRivlinMaterial mr(kMrParams);
  const double area = 0.6 * M_PI;
  const double scale = kMrParams.E * kMrParams.thickness * area;

  PlaneStressCache cache(s.mesh.element_count(), s.frames.frames_per_element);
  const Eigen::VectorXd translation =
      displacement_from_map(s, [](const Eigen::Vector3d&) {
        return Eigen::Vector3d(0.4, -0.2, 1.1);
      });
  auto out = assemble_internal(s.mesh, s.frames, s.dofs, mr, translation,
                               default_plane_stress_options(mr), cache);
  CHECK(out.force.norm() <= 1e-9 * scale);

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Matrix3d Q = test_helpers::random_rotation();
    const Eigen::VectorXd rotation = displacement_from_map(
        s, [&Q](const Eigen::Vector3d& X) { return (Q - Eigen::Matrix3d::Identity()) * X; });
    out = assemble_internal(s.mesh, s.frames, s.dofs, mr, rotation,
                            default_plane_stress_options(mr), cache);
    CHECK(out.force.norm() <= 1e-9 * scale);
  }
}

TEST_CASE("element stiffness is the exact derivative of the element force") {
  Setup s(generate_cylinder(0.5, 0.6, 3, 6, 2), 1);
  const MooneyRivlinMaterial mr(kMrParams);
  const auto opts = default_plane_stress_options(mr);
  const int element = 7;

  std::array<Eigen::Vector3d, 6> ue{};
  for (int j = 0; j < 3; ++j)
    ue[static_cast<std::size_t>(j)] =
        0.02 * Eigen::Vector3d(test_helpers::uniform(-1, 1), test_helpers::uniform(-1, 1),
                               test_helpers::uniform(-1, 1));

  auto force_at = [&](const Eigen::VectorXd& x) {
    std::array<Eigen::Vector3d, 6> local{};
    for (int j = 0; j < 3; ++j) local[static_cast<std::size_t>(j)] = x.segment<3>(3 * j);
    return element_internal(s.frames.element(element),
                            std::span<const Eigen::Vector3d>(local.data(), 3), mr, opts,
                            nullptr)
        .first;
  };

  Eigen::VectorXd x0(9);
  for (int j = 0; j < 3; ++j) x0.segment<3>(3 * j) = ue[static_cast<std::size_t>(j)];
  const auto [f, K] = element_internal(s.frames.element(element),
                                       std::span<const Eigen::Vector3d>(ue.data(), 3),
                                       mr, opts, nullptr);
  const Eigen::MatrixXd K_fd = oracles::fd_jacobian(force_at, x0, 1e-7);
  CHECK((K - K_fd).cwiseAbs().maxCoeff() <= 1e-5 * K.cwiseAbs().maxCoeff());
}

TEST_CASE("conservative load on a flat patch splits the total force by area") {
  Setup s(flat_two_element_patch(), 1);
  const double g = 250.0;
  const Eigen::VectorXd load = load_conservative(
      s.mesh, s.frames, s.dofs, [g](const Eigen::Vector3d&) { return g; });
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  for (int dn = 0; dn < s.dofs.dof_node_count(); ++dn) total += load.segment<3>(3 * dn);
  CHECK((total - Eigen::Vector3d(0, 0, g * 1.0)).norm() <= 1e-12 * g);
}

TEST_CASE("axial load profile integrates to the analytic total") {
  // total of g(x) = 4000 x (L - x) over a radius-R length-L cylinder:
  // 4000 * 2 pi R * L^3/6.
  const double R = 0.5, L = 4.0;
  SurfaceMesh mesh = generate_cylinder(R, L, 24, 48, 2);
  Eigen::Matrix3d rot;
  rot << 0, 0, 1, 0, 1, 0, -1, 0, 0;  // z axis -> x axis
  mesh = transform_mesh(mesh, rot, Eigen::Vector3d(L / 2, 0, 0));
  Setup s(std::move(mesh), 1);

  const Eigen::VectorXd load =
      load_conservative(s.mesh, s.frames, s.dofs, [L](const Eigen::Vector3d& X) {
        return 4000.0 * X.x() * (L - X.x());
      });
  // Radial resultants cancel; recover the scalar total by projecting each
  // nodal force onto the local outward direction.
  double total = 0.0;
  for (int dn = 0; dn < s.dofs.dof_node_count(); ++dn) {
    const Eigen::Vector3d X = s.mesh.nodes[static_cast<std::size_t>(s.dofs.mesh_node(dn))];
    const Eigen::Vector3d radial = Eigen::Vector3d(0.0, X.y(), X.z()).normalized();
    total += load.segment<3>(3 * dn).dot(radial);
  }
  const double expected = 4000.0 * 2.0 * M_PI * R * L * L * L / 6.0;
  CHECK(total == doctest::Approx(expected).epsilon(2e-3));
}

TEST_CASE("antisymmetric magnitude on a symmetric mesh yields zero resultant") {
  Setup s(generate_cylinder(0.5, 0.6, 4, 8, 2), 1);
  const Eigen::VectorXd load = load_conservative(
      s.mesh, s.frames, s.dofs, [](const Eigen::Vector3d& X) { return X.z(); });
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  for (int dn = 0; dn < s.dofs.dof_node_count(); ++dn) total += load.segment<3>(3 * dn);
  CHECK(total.norm() <= 1e-12);
}

TEST_CASE("pressure load: closed-surface resultant vanishes, zero pressure is zero") {
  Setup s(generate_spheroid(1.0, 0.5, 3, 2), 1);
  const MooneyRivlinMaterial mr(kMrParams);
  PlaneStressCache cache(s.mesh.element_count(), s.frames.frames_per_element);
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(s.dofs.dof_count());

  const Eigen::VectorXd zero =
      load_pressure(s.mesh, s.frames, s.dofs, mr, u, default_plane_stress_options(mr),
                    cache, 0.0);
  CHECK(zero.norm() == 0.0);

  const double p = 1000.0;
  const Eigen::VectorXd load = load_pressure(
      s.mesh, s.frames, s.dofs, mr, u, default_plane_stress_options(mr), cache, p);
  CHECK(load.norm() > 0.0);
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  for (int dn = 0; dn < s.dofs.dof_node_count(); ++dn) total += load.segment<3>(3 * dn);
  const double area = 4.0;  // order of magnitude of the spheroid area
  CHECK(total.norm() <= 1e-10 * p * area);
}

TEST_CASE("uniform sphere inflation scales the pressure load by the area factor") {
  // With u = (alpha - 1) X on an isoparametric sphere mesh, cof(F).N = alpha^2 N
  // exactly at every quadrature point, whatever the director does.
  Setup s(generate_spheroid(1.0, 1.0, 3, 1), 1);
  const MooneyRivlinMaterial mr(kMrParams);
  PlaneStressCache cache(s.mesh.element_count(), s.frames.frames_per_element);
  const auto opts = default_plane_stress_options(mr);

  const double alpha = 1.17;
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.dofs.dof_count());
  const Eigen::VectorXd u_inflated = displacement_from_map(
      s, [alpha](const Eigen::Vector3d& X) { return (alpha - 1.0) * X; });

  const double p = 2000.0;
  const Eigen::VectorXd base =
      load_pressure(s.mesh, s.frames, s.dofs, mr, u0, opts, cache, p);
  const Eigen::VectorXd inflated =
      load_pressure(s.mesh, s.frames, s.dofs, mr, u_inflated, opts, cache, p);
  CHECK((inflated - alpha * alpha * base).norm() <= 1e-9 * base.norm());
}

TEST_CASE("single flat element reproduces the textbook plane-stress stiffness") {
  SurfaceMesh mesh;
  mesh.nodes = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  mesh.elements = {{0, 1, 2, -1, -1, -1}};
  mesh.geometry_order = 1;
  mesh.compute_boundary_flags();
  Setup s(std::move(mesh), 1);

  const HookeMaterial hooke(kHookeParams);
  const auto opts = default_plane_stress_options(hooke);
  std::array<Eigen::Vector3d, 6> ue{};  // reference state
  const auto [f, K] = element_internal(s.frames.element(0),
                                       std::span<const Eigen::Vector3d>(ue.data(), 3),
                                       hooke, opts, nullptr);

  // Constant-strain-triangle oracle: K = t A B^T D B with the plane-stress
  // moduli, B from the hat-function gradients of this triangle.
  const double lam = kHookeParams.lambda();
  const double mu = kHookeParams.mu();
  const double lam_star = 2.0 * lam * mu / (lam + 2.0 * mu);
  Eigen::Matrix3d D;
  D << lam_star + 2.0 * mu, lam_star, 0.0, lam_star, lam_star + 2.0 * mu, 0.0, 0.0, 0.0,
      mu;
  const double area = 0.5;
  const double dphi[3][2] = {{-1, -1}, {1, 0}, {0, 1}};
  Eigen::Matrix<double, 3, 6> B = Eigen::Matrix<double, 3, 6>::Zero();
  for (int j = 0; j < 3; ++j) {
    B(0, 2 * j) = dphi[j][0];
    B(1, 2 * j + 1) = dphi[j][1];
    B(2, 2 * j) = dphi[j][1];
    B(2, 2 * j + 1) = dphi[j][0];
  }
  const Eigen::MatrixXd K_cst =
      kHookeParams.thickness * area * B.transpose() * D * B;

  // compare the in-plane block; out-of-plane rows vanish for a flat membrane
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          CHECK(K(3 * j + a, 3 * k + b) ==
                doctest::Approx(K_cst(2 * j + a, 2 * k + b))
                    .epsilon(1e-12)
                    .scale(K_cst.cwiseAbs().maxCoeff()));
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(K(3 * j + 2, 3 * k + 2)) <= 1e-10 * K_cst.cwiseAbs().maxCoeff());
}

TEST_CASE("patch test: linear boundary data gives the exact field and constant stress") {
  Setup s(flat_four_element_patch(), 1);
  const HookeMaterial hooke(kHookeParams);
  const auto opts = default_plane_stress_options(hooke);

  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();  // small in-plane linear map
  A(0, 0) = 2e-4;
  A(0, 1) = -1e-4;
  A(1, 0) = 5e-5;
  A(1, 1) = 1.3e-4;
  const Eigen::VectorXd exact =
      displacement_from_map(s, [&A](const Eigen::Vector3d& X) { return A * X; });

  // Impose the field on the boundary; the interior node (index 4) is free
  // in-plane, with the flat membrane's null normal direction pinned.
  std::vector<bool> mask = s.dofs.boundary_dirichlet_mask(s.mesh);
  mask[static_cast<std::size_t>(s.dofs.dof_index(4, 2))] = true;

  Eigen::VectorXd u = exact;
  u.segment<3>(s.dofs.dof_index(4, 0)) = Eigen::Vector3d::Zero();  // unknown interior

  PlaneStressCache cache(s.mesh.element_count(), s.frames.frames_per_element);
  for (int iter = 0; iter < 3; ++iter) {
    GlobalSystem sys = assemble(s.mesh, s.frames, s.dofs, hooke, u,
                                Eigen::VectorXd::Zero(s.dofs.dof_count()), mask, opts,
                                cache, Execution::serial);
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(sys.tangent);
    u += ldlt.solve(Eigen::VectorXd(-sys.residual));
  }
  CHECK((u - exact).cwiseAbs().maxCoeff() <= 1e-10 * exact.cwiseAbs().maxCoeff());

  // constant stress across every element and quadrature point
  Mat3 P_ref = Mat3::Zero();
  bool first = true;
  for (int e = 0; e < s.mesh.element_count(); ++e) {
    std::array<Eigen::Vector3d, 6> ue{};
    gather_element_u(s.mesh, s.dofs, e, u, std::span<Eigen::Vector3d>(ue.data(), 6));
    for (const ElementFrame& frame : s.frames.element(e)) {
      const Mat3 F_gamma =
          Mat3::Identity() +
          surface_gradient(frame, std::span<const Eigen::Vector3d>(ue.data(), 3));
      const auto state = solve_director(F_gamma, frame.normal, hooke, opts);
      if (first) {
        P_ref = state.stress;
        first = false;
      } else {
        CHECK((state.stress - P_ref).cwiseAbs().maxCoeff() <=
              1e-10 * P_ref.cwiseAbs().maxCoeff());
      }
    }
  }
}

TEST_CASE("all-Dirichlet mesh produces the identity system with zero residual") {
  Setup s(flat_two_element_patch(), 1);
  const HookeMaterial hooke(kHookeParams);
  std::vector<bool> mask(static_cast<std::size_t>(s.dofs.dof_count()), true);
  PlaneStressCache cache(s.mesh.element_count(), s.frames.frames_per_element);
  const GlobalSystem sys = assemble(
      s.mesh, s.frames, s.dofs, hooke, Eigen::VectorXd::Zero(s.dofs.dof_count()),
      Eigen::VectorXd::Zero(s.dofs.dof_count()), mask,
      default_plane_stress_options(hooke), cache);
  CHECK(sys.residual.norm() == 0.0);
  const Eigen::MatrixXd dense = Eigen::MatrixXd(sys.tangent);
  CHECK((dense - Eigen::MatrixXd::Identity(dense.rows(), dense.cols())).norm() == 0.0);
}

TEST_CASE("global tangent: symmetry, FD consistency, translation invariance") {
  Setup s(flat_four_element_patch(), 1);
  const MooneyRivlinMaterial mr(kMrParams);
  const auto opts = default_plane_stress_options(mr);
  std::vector<bool> mask(static_cast<std::size_t>(s.dofs.dof_count()), false);

  Eigen::VectorXd u(s.dofs.dof_count());
  for (int i = 0; i < u.size(); ++i) u[i] = 0.01 * test_helpers::uniform(-1, 1);

  PlaneStressCache cache(s.mesh.element_count(), s.frames.frames_per_element);
  const Eigen::VectorXd ext = Eigen::VectorXd::Zero(s.dofs.dof_count());
  GlobalSystem sys =
      assemble(s.mesh, s.frames, s.dofs, mr, u, ext, mask, opts, cache,
               Execution::serial);

  const Eigen::MatrixXd K = Eigen::MatrixXd(sys.tangent);
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-8 * K.cwiseAbs().maxCoeff());

  auto residual_at = [&](const Eigen::VectorXd& x) {
    PlaneStressCache c2(s.mesh.element_count(), s.frames.frames_per_element);
    return assemble(s.mesh, s.frames, s.dofs, mr, x, ext, mask, opts, c2,
                    Execution::serial)
        .residual;
  };
  const Eigen::MatrixXd K_fd = oracles::fd_jacobian(residual_at, u, 1e-7);
  CHECK((K - K_fd).cwiseAbs().maxCoeff() <= 1e-5 * K.cwiseAbs().maxCoeff());

  Eigen::VectorXd translated = u;
  for (int dn = 0; dn < s.dofs.dof_node_count(); ++dn)
    translated.segment<3>(3 * dn) += Eigen::Vector3d(0.7, -1.2, 0.4);
  const Eigen::VectorXd r2 = residual_at(translated);
  CHECK((r2 - sys.residual).norm() <= 1e-10 * (sys.residual.norm() + 1.0));
}

TEST_CASE("serial and parallel assembly agree exactly") {
  Setup s(generate_spheroid(1.0, 0.5, 2, 2), 1);
  const MooneyRivlinMaterial mr(kMrParams);
  const auto opts = default_plane_stress_options(mr);

  Eigen::VectorXd u(s.dofs.dof_count());
  for (int i = 0; i < u.size(); ++i) u[i] = 0.05 * test_helpers::uniform(-1, 1);

  PlaneStressCache cache_a(s.mesh.element_count(), s.frames.frames_per_element);
  PlaneStressCache cache_b(s.mesh.element_count(), s.frames.frames_per_element);
  const auto serial =
      assemble_internal(s.mesh, s.frames, s.dofs, mr, u, opts, cache_a, Execution::serial);
  const auto parallel = assemble_internal(s.mesh, s.frames, s.dofs, mr, u, opts, cache_b,
                                          Execution::parallel);
  CHECK((serial.force - parallel.force).norm() == 0.0);
  CHECK(serial.strain_energy == parallel.strain_energy);
  REQUIRE(serial.triplets.size() == parallel.triplets.size());
  for (std::size_t i = 0; i < serial.triplets.size(); i += 97)
    CHECK(serial.triplets[i].value() == parallel.triplets[i].value());
}

TEST_CASE("assembly failures name the element") {
  Setup s(flat_two_element_patch(), 1);
  const MooneyRivlinMaterial mr(kMrParams);
  PlaneStressOptions opts = default_plane_stress_options(mr);
  opts.max_iters = 0;  // force a local failure
  PlaneStressCache cache(s.mesh.element_count(), s.frames.frames_per_element);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(s.dofs.dof_count());
  u[0] = 0.5;
  CHECK_THROWS_WITH_AS(
      assemble_internal(s.mesh, s.frames, s.dofs, mr, u, opts, cache, Execution::serial),
      doctest::Contains("element"), SolverError);
}

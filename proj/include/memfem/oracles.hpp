#ifndef MEMFEM_ORACLES_HPP
#define MEMFEM_ORACLES_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

// Independent brute-force and analytic oracles for the test and acceptance
// suites. Deliberately decoupled from the production kernels: nothing here
// may include material, assembly, or solver headers, so consistency checks
// against those modules stay non-circular.

namespace memfem::oracles {

// Central-difference gradient of a scalar function, error O(step^2).
Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& fn,
                            const Eigen::VectorXd& point, double step);

// Central-difference Jacobian of a vector function, column j = d fn / d x_j.
Eigen::MatrixXd fd_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
    const Eigen::VectorXd& point, double step);

// Matrix-argument conveniences (row-major 3x3 flattening).
Eigen::Matrix3d fd_stress(const std::function<double(const Eigen::Matrix3d&)>& psi,
                          const Eigen::Matrix3d& F, double step);

struct CatenoidReference {
  double waist;  // a, with r(z) = a cosh(z/a)
  double area;
  double residual;  // |a cosh(h/a) - R| at the returned root
};

// Catenoid spanning two coaxial rings of the given radius at z = +-
// half_height: 1-D Newton (bisection-bracketed) on a cosh(h/a) = R for the
// larger root, then the closed-form area 2 pi a (h + a/2 sinh(2h/a)).
// Throws std::domain_error when the rings are too far apart for a catenoid.
CatenoidReference catenoid_reference(double radius, double half_height);

// Oblate spheroid (x^2+y^2)/a^2 + z^2/c^2 = 1 surface area by adaptive
// Simpson quadrature of the surface-of-revolution integral.
double spheroid_area_quadrature(double r_max, double r_min, double tol = 1e-12);

struct ConvergenceFit {
  double order = 0.0;       // least-squares slope of log e against log h
  double r_squared = 0.0;
  bool monotone = true;     // whether the error sequence decreases throughout
  int levels_used = 0;      // the finest ceil(n/2) levels enter the fit
};

// Fit the convergence order from mesh sizes and errors (>= 3 levels); uses
// the finest half of the levels to avoid preasymptotic pollution.
ConvergenceFit fit_order(const std::vector<double>& h, const std::vector<double>& e);

struct GoldenValue {
  std::string name;
  double value;
  double residual;  // residual of the value's defining equation
};

// Plain-text golden-value file: name, value (15 significant digits),
// defining-equation residual, generation date.
void write_golden_file(const std::vector<GoldenValue>& values, const std::string& path);

}  // namespace memfem::oracles

#endif

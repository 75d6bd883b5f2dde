#include "memfem/oracles.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace memfem::oracles {

Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& fn,
                            const Eigen::VectorXd& point, double step) {
  Eigen::VectorXd g(point.size());
  Eigen::VectorXd x = point;
  for (int i = 0; i < point.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + step;
    const double fp = fn(x);
    x[i] = orig - step;
    const double fm = fn(x);
    x[i] = orig;
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

Eigen::MatrixXd fd_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
    const Eigen::VectorXd& point, double step) {
  Eigen::VectorXd x = point;
  Eigen::MatrixXd J;
  for (int j = 0; j < point.size(); ++j) {
    const double orig = x[j];
    x[j] = orig + step;
    const Eigen::VectorXd fp = fn(x);
    x[j] = orig - step;
    const Eigen::VectorXd fm = fn(x);
    x[j] = orig;
    if (J.size() == 0) J.resize(fp.size(), point.size());
    J.col(j) = (fp - fm) / (2.0 * step);
  }
  return J;
}

Eigen::Matrix3d fd_stress(const std::function<double(const Eigen::Matrix3d&)>& psi,
                          const Eigen::Matrix3d& F, double step) {
  Eigen::Matrix3d P;
  Eigen::Matrix3d X = F;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double orig = X(i, j);
      X(i, j) = orig + step;
      const double fp = psi(X);
      X(i, j) = orig - step;
      const double fm = psi(X);
      X(i, j) = orig;
      P(i, j) = (fp - fm) / (2.0 * step);
    }
  return P;
}

CatenoidReference catenoid_reference(double radius, double half_height) {
  if (!(radius > 0.0) || !(half_height > 0.0))
    throw std::domain_error("catenoid: radius and half height must be positive");
  const double R = radius;
  const double h = half_height;
  const auto g = [&](double a) { return a * std::cosh(h / a) - R; };

  // g attains its minimum where cosh(x) = x sinh(x), x = h/a; below-zero
  // minimum means two roots, the larger being the stable catenoid.
  double x = 1.2;  // root of cosh(x) - x sinh(x) near 1.1997
  for (int i = 0; i < 60; ++i) {
    const double f = std::cosh(x) - x * std::sinh(x);
    const double df = -x * std::cosh(x);
    x -= f / df;
  }
  const double a_min = h / x;
  if (g(a_min) >= 0.0)
    throw std::domain_error("catenoid does not exist: rings too far apart");

  // Larger root lies in [a_min, b] with g(b) > 0; expand b geometrically.
  double lo = a_min;
  double hi = std::max(R, a_min * 2.0);
  while (g(hi) <= 0.0) hi *= 2.0;
  double a = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double f = g(a);
    if (f > 0.0)
      hi = a;
    else
      lo = a;
    const double df = std::cosh(h / a) - (h / a) * std::sinh(h / a);
    double next = a - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    if (std::abs(next - a) <= 4e-16 * a && std::abs(f) <= 1e-14 * R) {
      a = next;
      break;
    }
    a = next;
  }

  CatenoidReference out;
  out.waist = a;
  out.area = 2.0 * M_PI * a * (h + 0.5 * a * std::sinh(2.0 * h / a));
  out.residual = std::abs(g(a));
  return out;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth > 60) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth + 1) +
         simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth + 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, tol, 0);
}

}  // namespace

double spheroid_area_quadrature(double r_max, double r_min, double tol) {
  if (!(r_max >= r_min && r_min > 0.0))
    throw std::domain_error("spheroid radii must satisfy r_max >= r_min > 0");
  // Parametrize by latitude t: r(t) = r_max cos t, z(t) = r_min sin t,
  // dA = 2 pi r sqrt(r'^2 + z'^2) dt over t in [-pi/2, pi/2].
  const auto integrand = [&](double t) {
    const double r = r_max * std::cos(t);
    const double dr = -r_max * std::sin(t);
    const double dz = r_min * std::cos(t);
    return 2.0 * M_PI * r * std::hypot(dr, dz);
  };
  return adaptive_simpson(integrand, -0.5 * M_PI, 0.5 * M_PI,
                          tol * r_max * r_max);
}

ConvergenceFit fit_order(const std::vector<double>& h, const std::vector<double>& e) {
  if (h.size() != e.size()) throw std::invalid_argument("fit_order: size mismatch");
  const int n = static_cast<int>(h.size());
  if (n < 3) throw std::invalid_argument("fit_order: need at least 3 levels");
  for (int i = 0; i < n; ++i)
    if (!(h[static_cast<std::size_t>(i)] > 0.0) || !(e[static_cast<std::size_t>(i)] > 0.0))
      throw std::invalid_argument("fit_order: sizes and errors must be positive");

  ConvergenceFit fit;
  for (int i = 0; i + 1 < n; ++i)
    if (e[static_cast<std::size_t>(i + 1)] >= e[static_cast<std::size_t>(i)])
      fit.monotone = false;

  // Levels are ordered coarse to fine; fit on the finest ceil(n/2).
  const int used = (n + 1) / 2;
  fit.levels_used = used;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = n - used; i < n; ++i) {
    const double x = std::log(h[static_cast<std::size_t>(i)]);
    const double y = std::log(e[static_cast<std::size_t>(i)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double m = used;
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-30)
    throw std::invalid_argument("fit_order: degenerate mesh-size sequence");
  fit.order = (m * sxy - sx * sy) / denom;
  const double sst = syy - sy * sy / m;
  const double ssr = sst - fit.order * (sxy - sx * sy / m);
  fit.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
  return fit;
}

void write_golden_file(const std::vector<GoldenValue>& values, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write golden file: " + path);
  std::time_t now = std::time(nullptr);
  char date[32];
  std::strftime(date, sizeof(date), "%Y-%m-%d", std::gmtime(&now));
  out << "# golden values; columns: name value defining_equation_residual date\n";
  for (const auto& v : values) {
    char value[32], res[32];
    std::snprintf(value, sizeof(value), "%.15g", v.value);
    std::snprintf(res, sizeof(res), "%.3g", v.residual);
    out << v.name << ' ' << value << ' ' << res << ' ' << date << '\n';
  }
}

}  // namespace memfem::oracles

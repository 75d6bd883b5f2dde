#include "memfem/reference_element.hpp"

#include <cmath>

#include "memfem/errors.hpp"

namespace memfem {

namespace {

std::vector<QuadraturePoint> make_rule(int degree) {
  std::vector<QuadraturePoint> q;
  if (degree == 1) {
    // 3-point rule, exact to polynomial degree 2.
    const double w = 1.0 / 6.0;
    q = {{1.0 / 6.0, 1.0 / 6.0, w},
         {2.0 / 3.0, 1.0 / 6.0, w},
         {1.0 / 6.0, 2.0 / 3.0, w}};
  } else {
    // 7-point rule, exact to polynomial degree 5.
    const double s = std::sqrt(15.0);
    const double a1 = (6.0 - s) / 21.0;
    const double a2 = (6.0 + s) / 21.0;
    const double w1 = 0.5 * (155.0 - s) / 1200.0;
    const double w2 = 0.5 * (155.0 + s) / 1200.0;
    const double b1 = 1.0 - 2.0 * a1;
    const double b2 = 1.0 - 2.0 * a2;
    q = {{1.0 / 3.0, 1.0 / 3.0, 0.5 * 9.0 / 40.0},
         {a1, a1, w1},
         {b1, a1, w1},
         {a1, b1, w1},
         {a2, a2, w2},
         {b2, a2, w2},
         {a2, b2, w2}};
  }
  return q;
}

}  // namespace

ReferenceElement::ReferenceElement(int degree) : degree_(degree) {
  if (degree != 1 && degree != 2)
    throw ParameterError("reference element degree must be 1 or 2, got " +
                         std::to_string(degree));
  quadrature_ = make_rule(degree);
}

std::array<double, 2> ReferenceElement::node(int i) const {
  static constexpr std::array<std::array<double, 2>, 6> kNodes = {
      {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}, {0.0, 0.5}, {0.5, 0.0}}};
  return kNodes[static_cast<std::size_t>(i)];
}

void ReferenceElement::shape(double xi, double eta, std::array<double, 6>& v) const {
  const double l0 = 1.0 - xi - eta;
  const double l1 = xi;
  const double l2 = eta;
  if (degree_ == 1) {
    v[0] = l0;
    v[1] = l1;
    v[2] = l2;
    v[3] = v[4] = v[5] = 0.0;
    return;
  }
  v[0] = l0 * (2.0 * l0 - 1.0);
  v[1] = l1 * (2.0 * l1 - 1.0);
  v[2] = l2 * (2.0 * l2 - 1.0);
  v[3] = 4.0 * l1 * l2;
  v[4] = 4.0 * l2 * l0;
  v[5] = 4.0 * l0 * l1;
}

void ReferenceElement::shape_gradient(double xi, double eta,
                                      std::array<std::array<double, 2>, 6>& g) const {
  const double l0 = 1.0 - xi - eta;
  const double l1 = xi;
  const double l2 = eta;
  if (degree_ == 1) {
    g[0] = {-1.0, -1.0};
    g[1] = {1.0, 0.0};
    g[2] = {0.0, 1.0};
    g[3] = g[4] = g[5] = {0.0, 0.0};
    return;
  }
  // d(l0)/d(xi,eta) = (-1,-1), d(l1) = (1,0), d(l2) = (0,1)
  g[0] = {-(4.0 * l0 - 1.0), -(4.0 * l0 - 1.0)};
  g[1] = {4.0 * l1 - 1.0, 0.0};
  g[2] = {0.0, 4.0 * l2 - 1.0};
  g[3] = {4.0 * l2, 4.0 * l1};
  g[4] = {-4.0 * l2, 4.0 * (l0 - l2)};
  g[5] = {4.0 * (l0 - l1), -4.0 * l1};
}

}  // namespace memfem

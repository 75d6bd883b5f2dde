#ifndef MEMFEM_REFERENCE_ELEMENT_HPP
#define MEMFEM_REFERENCE_ELEMENT_HPP

#include <array>
#include <vector>

namespace memfem {

struct QuadraturePoint {
  double xi;
  double eta;
  double weight;  // weights sum to the reference-triangle area 1/2
};

// Lagrange basis on the reference triangle (0,0)-(1,0)-(0,1), degree 1 or 2.
//
// Degree-2 node layout: vertices 0,1,2 first, then midside nodes ordered so
// that midside node 3+k sits on the edge opposite vertex k, i.e.
//   node 3 = mid(v1,v2), node 4 = mid(v2,v0), node 5 = mid(v0,v1).
//
// The attached quadrature rule is the 3-point degree-2 rule for degree 1 and
// the 7-point degree-5 rule for degree 2.
class ReferenceElement {
 public:
  explicit ReferenceElement(int degree);

  int degree() const { return degree_; }
  int node_count() const { return degree_ == 1 ? 3 : 6; }

  std::array<double, 2> node(int i) const;

  // Shape-function values; only the first node_count() entries are filled.
  void shape(double xi, double eta, std::array<double, 6>& vals) const;
  // Reference gradients (d/dxi, d/deta) per shape function.
  void shape_gradient(double xi, double eta,
                      std::array<std::array<double, 2>, 6>& grads) const;

  const std::vector<QuadraturePoint>& quadrature() const { return quadrature_; }

 private:
  int degree_;
  std::vector<QuadraturePoint> quadrature_;
};

}  // namespace memfem

#endif

#ifndef MEMFEM_TENSOR4_HPP
#define MEMFEM_TENSOR4_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace memfem {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Fourth-order tensor on R^3, dense 81-entry storage, index order (i,j,k,l).
// Used for material tangents dP/dF and their plane-stress condensation.
class Tensor4 {
 public:
  Tensor4() { data_.fill(0.0); }

  double& operator()(int i, int j, int k, int l) {
    return data_[static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l)];
  }
  double operator()(int i, int j, int k, int l) const {
    return data_[static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l)];
  }

  Tensor4& operator+=(const Tensor4& o) {
    for (std::size_t n = 0; n < 81; ++n) data_[n] += o.data_[n];
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    for (std::size_t n = 0; n < 81; ++n) data_[n] -= o.data_[n];
    return *this;
  }
  Tensor4& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(double s, Tensor4 a) { return a *= s; }

  // (L : M)_ij = L_ijkl M_kl
  Mat3 contract(const Mat3& m) const {
    Mat3 r = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) s += (*this)(i, j, k, l) * m(k, l);
        r(i, j) = s;
      }
    return r;
  }

  // Swap the first and second index pair.
  Tensor4 major_transpose() const {
    Tensor4 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) t(i, j, k, l) = (*this)(k, l, i, j);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  // max |L_ijkl - L_klij| / max |L_ijkl|
  double major_asymmetry() const {
    double num = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            num = std::max(num, std::abs((*this)(i, j, k, l) - (*this)(k, l, i, j)));
    double den = max_abs();
    return den > 0.0 ? num / den : 0.0;
  }

 private:
  std::array<double, 81> data_;
};

// L_NN(F)_ik = L_ijkl N_j N_l ; the Jacobian of P.N with respect to the director.
inline Mat3 normal_normal_block(const Tensor4& L, const Vec3& N) {
  Mat3 r = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) s += L(i, j, k, l) * N(j) * N(l);
      r(i, k) = s;
    }
  return r;
}

}  // namespace memfem

#endif

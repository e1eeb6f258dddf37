#pragma once

#include <span>
#include <vector>

#include "dchain/poly.hpp"

namespace dchain {

// Dense coefficient box for small (n, d): index(alpha) = sum alpha_i (d+1)^i.
// Used by the certification inner loops, where the sparse map is too slow.
class DensePoly {
 public:
  DensePoly(int dim, int degree);
  explicit DensePoly(const MultiPoly& p);

  int dim() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return c_.size(); }

  cplx& at(std::size_t idx) { return c_[idx]; }
  cplx at(std::size_t idx) const { return c_[idx]; }
  int exponent(std::size_t idx, int axis) const;

  cplx operator()(std::span<const cplx> z) const;

  /// In-place Taylor shift: p(z) -> p(z + b).
  void shift(std::span<const cplx> b);

  /// q(x) = p(M x) with M given row-major (n x n).
  DensePoly linear_substitute(std::span<const cplx> m) const;

  /// sum over alpha != 0 of |c_alpha| r^alpha: bound on |p(y) - p(0)| for
  /// |y_i| <= r_i.
  double remainder_bound(std::span<const double> r) const;

  /// Per-axis share of remainder_bound (terms involving axis i, weighted by
  /// alpha_i / |alpha|).
  std::vector<double> axis_contributions(std::span<const double> r) const;

 private:
  int n_;
  int d_;
  std::vector<std::size_t> stride_;
  std::vector<cplx> c_;
};

}  // namespace dchain

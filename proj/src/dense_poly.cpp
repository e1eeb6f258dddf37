#include "dchain/dense_poly.hpp"

#include <cmath>

#include "dchain/error.hpp"

namespace dchain {

DensePoly::DensePoly(int dim, int degree) : n_(dim), d_(degree) {
  require(dim >= 1 && degree >= 0, ErrorCode::kInvalidArgument, "bad dense polynomial shape");
  stride_.resize(static_cast<std::size_t>(n_));
  std::size_t s = 1;
  for (int i = 0; i < n_; ++i) {
    stride_[static_cast<std::size_t>(i)] = s;
    s *= static_cast<std::size_t>(d_ + 1);
    require(s <= (1u << 22), ErrorCode::kInvalidArgument,
            "dense polynomial too large (reduce dimension or degree)");
  }
  c_.assign(s, cplx(0.0));
}

DensePoly::DensePoly(const MultiPoly& p) : DensePoly(p.dim(), p.degree()) {
  for (const auto& t : p.terms()) {
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i)
      idx += static_cast<std::size_t>(t.alpha[static_cast<std::size_t>(i)]) * stride_[static_cast<std::size_t>(i)];
    c_[idx] += t.coeff;
  }
}

int DensePoly::exponent(std::size_t idx, int axis) const {
  return static_cast<int>((idx / stride_[static_cast<std::size_t>(axis)]) % static_cast<std::size_t>(d_ + 1));
}

cplx DensePoly::operator()(std::span<const cplx> z) const {
  require(static_cast<int>(z.size()) == n_, ErrorCode::kDimensionMismatch, "dense eval dimension");
  // Nested Horner, last axis outermost.
  std::vector<cplx> work(c_);
  std::size_t len = c_.size();
  const auto base = static_cast<std::size_t>(d_ + 1);
  for (int axis = 0; axis < n_; ++axis) {
    const std::size_t groups = len / base;
    for (std::size_t g = 0; g < groups; ++g) {
      cplx acc = 0.0;
      for (std::size_t e = base; e-- > 0;) acc = acc * z[static_cast<std::size_t>(axis)] + work[g * base + e];
      work[g] = acc;
    }
    len = groups;
  }
  return work[0];
}

void DensePoly::shift(std::span<const cplx> b) {
  require(static_cast<int>(b.size()) == n_, ErrorCode::kDimensionMismatch, "dense shift dimension");
  const auto base = static_cast<std::size_t>(d_ + 1);
  for (int axis = 0; axis < n_; ++axis) {
    const cplx bi = b[static_cast<std::size_t>(axis)];
    if (bi == cplx(0.0)) continue;
    const std::size_t st = stride_[static_cast<std::size_t>(axis)];
    for (std::size_t start = 0; start < c_.size(); ++start) {
      if ((start / st) % base != 0) continue;  // first element of a line along axis
      // Taylor shift of the coefficient line by synthetic division.
      for (std::size_t k = 0; k + 1 < base; ++k)
        for (std::size_t j = base - 1; j > k; --j) c_[start + (j - 1) * st] += bi * c_[start + j * st];
    }
  }
}

namespace {

DensePoly mul_truncated(const DensePoly& a, const DensePoly& b) {
  DensePoly r(a.dim(), a.degree());
  const int n = a.dim();
  const int d = a.degree();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.at(i) == cplx(0.0)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b.at(j) == cplx(0.0)) continue;
      int tot = 0;
      bool ok = true;
      std::size_t idx = 0, st = 1;
      for (int ax = 0; ax < n; ++ax) {
        const int e = a.exponent(i, ax) + b.exponent(j, ax);
        tot += e;
        if (e > d) {
          ok = false;
          break;
        }
        idx += static_cast<std::size_t>(e) * st;
        st *= static_cast<std::size_t>(d + 1);
      }
      if (!ok || tot > d) continue;
      r.at(idx) += a.at(i) * b.at(j);
    }
  }
  return r;
}

}  // namespace

DensePoly DensePoly::linear_substitute(std::span<const cplx> m) const {
  require(m.size() == static_cast<std::size_t>(n_ * n_), ErrorCode::kDimensionMismatch,
          "substitution matrix must be n x n");
  // lin_pow[i][e] = (sum_k m_ik x_k)^e
  std::vector<std::vector<DensePoly>> lin_pow(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    auto& lp = lin_pow[static_cast<std::size_t>(i)];
    DensePoly one(n_, d_);
    one.at(0) = 1.0;
    lp.push_back(one);
    if (d_ == 0) continue;
    DensePoly lin(n_, d_);
    for (int k = 0; k < n_; ++k) lin.at(stride_[static_cast<std::size_t>(k)]) = m[static_cast<std::size_t>(i * n_ + k)];
    for (int e = 1; e <= d_; ++e) lp.push_back(mul_truncated(lp.back(), lin));
  }
  DensePoly out(n_, d_);
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    if (c_[idx] == cplx(0.0)) continue;
    DensePoly prod(n_, d_);
    prod.at(0) = c_[idx];
    for (int i = 0; i < n_; ++i) {
      const int e = exponent(idx, i);
      if (e > 0) prod = mul_truncated(prod, lin_pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]);
    }
    for (std::size_t j = 0; j < out.size(); ++j) out.c_[j] += prod.c_[j];
  }
  return out;
}

double DensePoly::remainder_bound(std::span<const double> r) const {
  double s = 0.0;
  for (std::size_t idx = 1; idx < c_.size(); ++idx) {
    if (c_[idx] == cplx(0.0)) continue;
    double m = std::abs(c_[idx]);
    for (int i = 0; i < n_; ++i) {
      const int e = exponent(idx, i);
      if (e > 0) m *= std::pow(r[static_cast<std::size_t>(i)], e);
    }
    s += m;
  }
  return s;
}

std::vector<double> DensePoly::axis_contributions(std::span<const double> r) const {
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (std::size_t idx = 1; idx < c_.size(); ++idx) {
    if (c_[idx] == cplx(0.0)) continue;
    double m = std::abs(c_[idx]);
    int tot = 0;
    for (int i = 0; i < n_; ++i) {
      const int e = exponent(idx, i);
      tot += e;
      if (e > 0) m *= std::pow(r[static_cast<std::size_t>(i)], e);
    }
    for (int i = 0; i < n_; ++i) {
      const int e = exponent(idx, i);
      if (e > 0) out[static_cast<std::size_t>(i)] += m * e / tot;
    }
  }
  return out;
}

}  // namespace dchain

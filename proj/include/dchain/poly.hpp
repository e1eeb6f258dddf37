#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dchain {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using MultiIndex = std::vector<int>;

struct Term {
  MultiIndex alpha;
  cplx coeff;
};

int total_degree(const MultiIndex& alpha);

/// Sparse polynomial in n complex variables, sum of a_alpha z^alpha.
///
/// Terms are kept sorted by multi-index with duplicates merged and exact
/// zeros dropped, so two polynomials with equal coefficients have equal
/// term lists.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int dim);
  MultiPoly(int dim, std::vector<Term> terms);

  static MultiPoly constant(int dim, cplx value);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }

  double norm1() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree_ <= 0; }

  cplx operator()(std::span<const cplx> z) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::vector<Term> terms_;
};

cplx eval(const MultiPoly& p, std::span<const cplx> z);

/// Scale by 1/norm1 so the coefficient l1 norm is one.
MultiPoly normalize(const MultiPoly& p);
bool is_normalized(const MultiPoly& p, double tol = 1e-12);

/// Q(z) = P(z + b) by multinomial expansion. For |b_i| <= 1 the l1 norm grows
/// by at most 2^d.
MultiPoly shift(const MultiPoly& p, std::span<const cplx> b);

/// Univariate polynomial c_0 + c_1 t + ... + c_m t^m with c_m != 0 (the zero
/// polynomial is the single coefficient 0).
class UniPoly {
 public:
  UniPoly() : c_{cplx(0.0)} {}
  explicit UniPoly(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx operator[](std::size_t j) const { return c_[j]; }
  cplx leading() const { return c_.back(); }
  double norm1() const;
  bool is_zero() const { return c_.size() == 1 && c_[0] == cplx(0.0); }

  cplx operator()(cplx t) const;
  /// Value and first derivative by Horner.
  void eval_with_derivative(cplx t, cplx& value, cplx& deriv) const;

  UniPoly derivative() const;
  /// q(s) = p(center + scale * s).
  UniPoly compose_affine(cplx center, cplx scale) const;

 private:
  std::vector<cplx> c_;
};

/// Complex line {base + direction * t}; direction has unit Euclidean norm.
struct CLine {
  CVec base;
  CVec direction;

  int dim() const { return static_cast<int>(base.size()); }
  CVec at(cplx t) const;
};

/// Builds a line, normalising `direction`. Throws on zero direction or
/// mismatched sizes.
CLine make_line(CVec base, CVec direction);

double vec_norm(std::span<const cplx> v);

/// p(t) = P(base + direction t). Exact coefficient expansion when P has at
/// most `exact_term_limit` terms, otherwise interpolation at degree+1
/// Chebyshev nodes.
UniPoly restrict_to_line(const MultiPoly& p, const CLine& line,
                         std::size_t exact_term_limit = 10000);

}  // namespace dchain

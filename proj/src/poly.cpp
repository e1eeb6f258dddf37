#include "dchain/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "dchain/error.hpp"

namespace dchain {

int total_degree(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

MultiPoly::MultiPoly(int dim) : dim_(dim) {
  require(dim >= 1, ErrorCode::kInvalidArgument, "polynomial dimension must be >= 1");
}

MultiPoly::MultiPoly(int dim, std::vector<Term> terms) : MultiPoly(dim) {
  std::map<MultiIndex, cplx> merged;
  for (auto& t : terms) {
    require(static_cast<int>(t.alpha.size()) == dim, ErrorCode::kDimensionMismatch,
            "multi-index length differs from polynomial dimension");
    for (int a : t.alpha)
      require(a >= 0, ErrorCode::kInvalidArgument, "negative exponent in multi-index");
    require(std::isfinite(t.coeff.real()) && std::isfinite(t.coeff.imag()),
            ErrorCode::kInvalidArgument, "non-finite coefficient");
    merged[t.alpha] += t.coeff;
  }
  for (auto& [alpha, c] : merged) {
    if (c == cplx(0.0)) continue;
    degree_ = std::max(degree_, total_degree(alpha));
    terms_.push_back({alpha, c});
  }
}

MultiPoly MultiPoly::constant(int dim, cplx value) {
  return MultiPoly(dim, {Term{MultiIndex(static_cast<std::size_t>(dim), 0), value}});
}

double MultiPoly::norm1() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

cplx MultiPoly::operator()(std::span<const cplx> z) const {
  require(static_cast<int>(z.size()) == dim_, ErrorCode::kDimensionMismatch,
          "point dimension differs from polynomial dimension");
  // powers[i][e] = z_i^e
  std::vector<std::vector<cplx>> powers(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    auto& pw = powers[static_cast<std::size_t>(i)];
    pw.resize(static_cast<std::size_t>(degree_) + 1);
    pw[0] = 1.0;
    for (int e = 1; e <= degree_; ++e) pw[static_cast<std::size_t>(e)] = pw[static_cast<std::size_t>(e - 1)] * z[static_cast<std::size_t>(i)];
  }
  cplx acc = 0.0;
  for (const auto& t : terms_) {
    cplx m = t.coeff;
    for (int i = 0; i < dim_; ++i)
      m *= powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.alpha[static_cast<std::size_t>(i)])];
    acc += m;
  }
  return acc;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].alpha != b.terms_[k].alpha || a.terms_[k].coeff != b.terms_[k].coeff)
      return false;
  }
  return true;
}

cplx eval(const MultiPoly& p, std::span<const cplx> z) { return p(z); }

MultiPoly normalize(const MultiPoly& p) {
  const double n1 = p.norm1();
  require(n1 > 0.0, ErrorCode::kZeroPolynomial, "cannot normalize the zero polynomial");
  // Polynomials already normalized up to rounding are returned untouched, so
  // normalize(normalize(P)) == normalize(P) bit for bit.
  if (std::abs(n1 - 1.0) <= 1e-13) return p;
  std::vector<Term> terms = p.terms();
  for (auto& t : terms) t.coeff /= n1;
  return MultiPoly(p.dim(), std::move(terms));
}

bool is_normalized(const MultiPoly& p, double tol) {
  return std::abs(p.norm1() - 1.0) <= tol;
}

namespace {

std::vector<std::vector<double>> binomial_table(int d) {
  std::vector<std::vector<double>> c(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    auto& row = c[static_cast<std::size_t>(k)];
    row.assign(static_cast<std::size_t>(k) + 1, 1.0);
    for (int j = 1; j < k; ++j)
      row[static_cast<std::size_t>(j)] =
          c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)] +
          c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)];
  }
  return c;
}

}  // namespace

MultiPoly shift(const MultiPoly& p, std::span<const cplx> b) {
  const int n = p.dim();
  require(static_cast<int>(b.size()) == n, ErrorCode::kDimensionMismatch,
          "shift vector dimension differs from polynomial dimension");
  const int d = p.degree();
  const auto binom = binomial_table(d);
  std::vector<std::vector<cplx>> bpow(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& pw = bpow[static_cast<std::size_t>(i)];
    pw.assign(static_cast<std::size_t>(d) + 1, 1.0);
    for (int e = 1; e <= d; ++e) pw[static_cast<std::size_t>(e)] = pw[static_cast<std::size_t>(e - 1)] * b[static_cast<std::size_t>(i)];
  }

  std::map<MultiIndex, cplx> out;
  MultiIndex beta(static_cast<std::size_t>(n));
  for (const auto& t : p.terms()) {
    // Enumerate beta <= alpha componentwise.
    std::fill(beta.begin(), beta.end(), 0);
    while (true) {
      cplx c = t.coeff;
      for (int i = 0; i < n; ++i) {
        const auto ai = static_cast<std::size_t>(t.alpha[static_cast<std::size_t>(i)]);
        const auto bi = static_cast<std::size_t>(beta[static_cast<std::size_t>(i)]);
        c *= binom[ai][bi] * bpow[static_cast<std::size_t>(i)][ai - bi];
      }
      out[beta] += c;
      int i = 0;
      for (; i < n; ++i) {
        if (beta[static_cast<std::size_t>(i)] < t.alpha[static_cast<std::size_t>(i)]) {
          ++beta[static_cast<std::size_t>(i)];
          break;
        }
        beta[static_cast<std::size_t>(i)] = 0;
      }
      if (i == n) break;
    }
  }
  std::vector<Term> terms;
  terms.reserve(out.size());
  for (auto& [alpha, c] : out) terms.push_back({alpha, c});
  return MultiPoly(n, std::move(terms));
}

// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  while (c_.size() > 1 && c_.back() == cplx(0.0)) c_.pop_back();
  if (c_.empty()) c_.push_back(0.0);
}

double UniPoly::norm1() const {
  double s = 0.0;
  for (auto c : c_) s += std::abs(c);
  return s;
}

cplx UniPoly::operator()(cplx t) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

void UniPoly::eval_with_derivative(cplx t, cplx& value, cplx& deriv) const {
  value = 0.0;
  deriv = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    deriv = deriv * t + value;
    value = value * t + *it;
  }
}

UniPoly UniPoly::derivative() const {
  if (c_.size() == 1) return UniPoly();
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t j = 1; j < c_.size(); ++j) d[j - 1] = c_[j] * static_cast<double>(j);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::compose_affine(cplx center, cplx scale) const {
  // Taylor shift by repeated synthetic division, then scale.
  std::vector<cplx> a = c_;
  const std::size_t m = a.size();
  for (std::size_t k = 0; k + 1 < m; ++k)
    for (std::size_t j = m - 1; j > k; --j) a[j - 1] += center * a[j];
  cplx s = 1.0;
  for (auto& x : a) {
    x *= s;
    s *= scale;
  }
  return UniPoly(std::move(a));
}

// ---------------------------------------------------------------------------

double vec_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (auto x : v) s += std::norm(x);
  return std::sqrt(s);
}

CVec CLine::at(cplx t) const {
  CVec z(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) z[i] = base[i] + direction[i] * t;
  return z;
}

CLine make_line(CVec base, CVec direction) {
  require(!base.empty() && base.size() == direction.size(), ErrorCode::kDimensionMismatch,
          "line base and direction must have the same nonzero dimension");
  const double nv = vec_norm(direction);
  require(nv > 0.0 && std::isfinite(nv), ErrorCode::kInvalidArgument,
          "line direction must be a nonzero finite vector");
  for (auto& x : direction) x /= nv;
  return CLine{std::move(base), std::move(direction)};
}

namespace {

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> r(a.size() + b.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

UniPoly trim_relative(std::vector<cplx> c) {
  double n1 = 0.0;
  for (auto x : c) n1 += std::abs(x);
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * n1) c.pop_back();
  return UniPoly(std::move(c));
}

UniPoly restrict_exact(const MultiPoly& p, const CLine& line) {
  const int n = p.dim();
  const int d = p.degree();
  // lin_pow[i][e] = (b_i + v_i t)^e
  std::vector<std::vector<std::vector<cplx>>> lin_pow(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& lp = lin_pow[static_cast<std::size_t>(i)];
    lp.resize(static_cast<std::size_t>(d) + 1);
    lp[0] = {cplx(1.0)};
    const std::vector<cplx> lin{line.base[static_cast<std::size_t>(i)],
                                line.direction[static_cast<std::size_t>(i)]};
    for (int e = 1; e <= d; ++e) lp[static_cast<std::size_t>(e)] = poly_mul(lp[static_cast<std::size_t>(e - 1)], lin);
  }
  std::vector<cplx> acc(static_cast<std::size_t>(d) + 1, cplx(0.0));
  for (const auto& t : p.terms()) {
    std::vector<cplx> prod{t.coeff};
    for (int i = 0; i < n; ++i)
      prod = poly_mul(prod, lin_pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.alpha[static_cast<std::size_t>(i)])]);
    for (std::size_t j = 0; j < prod.size(); ++j) acc[j] += prod[j];
  }
  return trim_relative(std::move(acc));
}

UniPoly restrict_interpolate(const MultiPoly& p, const CLine& line) {
  const int m = p.degree();
  const auto count = static_cast<std::size_t>(m) + 1;
  std::vector<double> nodes(count);
  std::vector<cplx> vals(count);
  for (std::size_t k = 0; k < count; ++k) {
    nodes[k] = std::cos(std::numbers::pi * (2.0 * static_cast<double>(k) + 1.0) /
                        (2.0 * static_cast<double>(count)));
    vals[k] = p(line.at(nodes[k]));
  }
  // Newton divided differences, then expand the Newton form into monomials.
  std::vector<cplx> dd = vals;
  for (std::size_t j = 1; j < count; ++j)
    for (std::size_t k = count - 1; k >= j; --k) {
      dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - j]);
      if (k == j) break;
    }
  std::vector<cplx> coeffs{dd[count - 1]};
  for (std::size_t jj = count - 1; jj-- > 0;) {
    // coeffs = coeffs * (t - nodes[jj]) + dd[jj]
    std::vector<cplx> next(coeffs.size() + 1, cplx(0.0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i];
      next[i] -= coeffs[i] * nodes[jj];
    }
    next[0] += dd[jj];
    coeffs = std::move(next);
  }
  return trim_relative(std::move(coeffs));
}

}  // namespace

UniPoly restrict_to_line(const MultiPoly& p, const CLine& line, std::size_t exact_term_limit) {
  require(line.dim() == p.dim(), ErrorCode::kDimensionMismatch,
          "line dimension differs from polynomial dimension");
  if (p.is_zero()) return UniPoly();
  if (p.terms().size() <= exact_term_limit) return restrict_exact(p, line);
  return restrict_interpolate(p, line);
}

}  // namespace dchain

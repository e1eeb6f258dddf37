#include "dchain/geom.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include "dchain/dense_poly.hpp"
#include "dchain/error.hpp"
#include "dchain/inequalities.hpp"
#include "dchain/roots.hpp"

namespace dchain {

CMat CMat::identity(int n) {
  CMat m{n, std::vector<cplx>(static_cast<std::size_t>(n * n), cplx(0.0))};
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double CMat::unitarity_error() const {
  double err = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) s += (*this)(i, k) * std::conj((*this)(j, k));
      err = std::max(err, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return err;
}

CMat complete_frame(std::span<const cplx> direction) {
  const int n = static_cast<int>(direction.size());
  require(n >= 1, ErrorCode::kInvalidArgument, "empty direction");
  const double nd = vec_norm(direction);
  require(nd > 0.0, ErrorCode::kInvalidArgument, "zero direction");
  std::vector<CVec> cols;
  CVec first(direction.begin(), direction.end());
  for (auto& x : first) x /= nd;
  cols.push_back(first);
  for (int e = 0; e < n && static_cast<int>(cols.size()) < n; ++e) {
    CVec v(static_cast<std::size_t>(n), cplx(0.0));
    v[static_cast<std::size_t>(e)] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : cols) {
        cplx dot = 0.0;
        for (int k = 0; k < n; ++k) dot += std::conj(c[static_cast<std::size_t>(k)]) * v[static_cast<std::size_t>(k)];
        for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] -= dot * c[static_cast<std::size_t>(k)];
      }
    const double nv = vec_norm(v);
    if (nv < 1e-8) continue;  // e is (nearly) in the span already
    for (auto& x : v) x /= nv;
    cols.push_back(v);
  }
  CMat m{n, std::vector<cplx>(static_cast<std::size_t>(n * n))};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return m;
}

double c4_constant(int n, int d) { return c_d_constant(d) / markov_gradient_bound(n, d); }

bool in_unit_cube(std::span<const cplx> v, double tol) {
  for (auto x : v)
    if (x.real() < -tol || x.real() > 1.0 + tol || x.imag() < -tol || x.imag() > 1.0 + tol)
      return false;
  return true;
}

DistanceLower dist_lower(const MultiPoly& p, std::span<const cplx> v) {
  require(static_cast<int>(v.size()) == p.dim(), ErrorCode::kDimensionMismatch,
          "point dimension differs from polynomial dimension");
  require(is_normalized(p), ErrorCode::kInvalidArgument, "dist_lower needs a normalized polynomial");
  require(in_unit_cube(v, 1e-12), ErrorCode::kInvalidArgument, "dist_lower needs v in the unit cube");
  if (p.is_constant()) return {1.0, true};
  return {std::abs(p(v)) / markov_gradient_bound(p.dim(), p.degree()), false};
}

DistanceBracket dist_upper(const MultiPoly& p, std::span<const cplx> v, int num_lines,
                           std::uint64_t seed) {
  const int n = p.dim();
  require(static_cast<int>(v.size()) == n, ErrorCode::kDimensionMismatch,
          "point dimension differs from polynomial dimension");
  require(!p.is_constant(), ErrorCode::kInvalidArgument, "dist_upper needs a nonconstant polynomial");
  require(num_lines >= 1, ErrorCode::kInvalidArgument, "num_lines must be >= 1");

  DistanceBracket out;
  out.point.assign(v.begin(), v.end());
  out.upper = std::numeric_limits<double>::infinity();
  if (is_normalized(p) && in_unit_cube(v, 1e-12)) out.lower = dist_lower(p, v).value;

  // Conjugate gradient direction: the Newton line for P at v.
  CVec grad(static_cast<std::size_t>(n), cplx(0.0));
  for (const auto& t : p.terms())
    for (int i = 0; i < n; ++i) {
      const int ai = t.alpha[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      cplx m = t.coeff * static_cast<double>(ai);
      for (int k = 0; k < n; ++k) {
        const int e = t.alpha[static_cast<std::size_t>(k)] - (k == i ? 1 : 0);
        m *= std::pow(v[static_cast<std::size_t>(k)], e);
      }
      grad[static_cast<std::size_t>(i)] += m;
    }

  for (int attempt = 0; attempt < 2 && out.lines_used == 0; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int l = 0; l < num_lines; ++l) {
      CVec dir(static_cast<std::size_t>(n));
      if (l == 0 && attempt == 0 && vec_norm(grad) > 0.0) {
        for (int i = 0; i < n; ++i) dir[static_cast<std::size_t>(i)] = std::conj(grad[static_cast<std::size_t>(i)]);
      } else {
        for (auto& x : dir) {
          const double re = gauss(rng);
          const double im = gauss(rng);
          x = cplx(re, im);
        }
      }
      const CLine line = make_line(out.point, dir);
      const UniPoly q = restrict_to_line(p, line);
      if (q.degree() < 1) continue;
      RootSet roots;
      try {
        roots = find_roots(q, 1e-10);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kNonConvergence || e.code() == ErrorCode::kDegenerateLeading) continue;
        throw;
      }
      ++out.lines_used;
      cplx best = roots.roots.front();
      for (auto t : roots.roots)
        if (std::abs(t) < std::abs(best)) best = t;
      CVec w = line.at(best);
      if (std::abs(best) < out.upper) {
        out.upper = std::abs(best);
        out.witness = w;
      }
      out.line_witnesses.push_back(std::move(w));
    }
  }
  require(out.lines_used > 0, ErrorCode::kUnsupported,
          "every probed line restricts P to a constant");
  return out;
}

// ---------------------------------------------------------------------------

const char* chart_kind_name(ChartKind kind) {
  switch (kind) {
    case ChartKind::kDisk: return "disk";
    case ChartKind::kTransition: return "transition";
    case ChartKind::kBall: return "ball";
  }
  return "disk";
}

ChartKind chart_kind_from_name(const std::string& name) {
  if (name == "disk") return ChartKind::kDisk;
  if (name == "transition") return ChartKind::kTransition;
  if (name == "ball") return ChartKind::kBall;
  fail(ErrorCode::kParse, "unknown chart kind: " + name);
}

bool EllipsoidChart::is_round() const {
  const double a0 = semi_axes.front();
  for (double a : semi_axes)
    if (std::abs(a - a0) > 1e-15 * a0) return false;
  return true;
}

CVec EllipsoidChart::map(std::span<const cplx> x, double scale) const {
  const int n = dim();
  CVec z = center;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      z[static_cast<std::size_t>(i)] += frame(i, k) * (semi_axes[static_cast<std::size_t>(k)] * scale) * x[static_cast<std::size_t>(k)];
  return z;
}

CVec EllipsoidChart::preimage(std::span<const cplx> z) const {
  const int n = dim();
  require(static_cast<int>(z.size()) == n, ErrorCode::kDimensionMismatch, "chart preimage dimension");
  CVec x(static_cast<std::size_t>(n), cplx(0.0));
  for (int k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(frame(i, k)) * (z[static_cast<std::size_t>(i)] - center[static_cast<std::size_t>(i)]);
    x[static_cast<std::size_t>(k)] = s / semi_axes[static_cast<std::size_t>(k)];
  }
  return x;
}

bool EllipsoidChart::contains(std::span<const cplx> z) const { return vec_norm(preimage(z)) < 1.0; }

EllipsoidChart make_chart(CVec center, CMat frame, std::vector<double> semi_axes, ChartKind kind,
                          double c6_line) {
  const int n = static_cast<int>(center.size());
  require(n >= 1 && frame.n == n && static_cast<int>(semi_axes.size()) == n,
          ErrorCode::kDimensionMismatch, "chart center, frame and semi-axes disagree in dimension");
  for (double a : semi_axes)
    require(a > 0.0 && std::isfinite(a), ErrorCode::kInvalidArgument, "semi-axes must be positive");
  require(frame.unitarity_error() <= 1e-10, ErrorCode::kInvalidArgument, "chart frame is not unitary");
  return EllipsoidChart{std::move(center), std::move(frame), std::move(semi_axes), c6_line, kind};
}

EllipsoidChart lift_disk(const CLine& line, cplx t0, double radius, double c6_line, int d,
                         double transverse_ratio) {
  require(radius > 0.0 && c6_line > 0.0 && transverse_ratio >= 0.0, ErrorCode::kInvalidArgument,
          "lift_disk needs positive radius and c6_line");
  const int n = line.dim();
  const double h = std::max(c6_line * std::pow(radius, d) / 4.0, transverse_ratio * radius);
  std::vector<double> axes(static_cast<std::size_t>(n), h);
  axes[0] = radius;
  return make_chart(line.at(t0), complete_frame(line.direction), std::move(axes), ChartKind::kDisk,
                    c6_line);
}

EllipsoidChart make_ball_chart(CVec center, double radius) {
  const int n = static_cast<int>(center.size());
  return make_chart(std::move(center), CMat::identity(n),
                    std::vector<double>(static_cast<std::size_t>(n), radius), ChartKind::kBall);
}

// ---------------------------------------------------------------------------

namespace {

struct Cell {
  CVec center;
  std::vector<double> half_re;
  std::vector<double> half_im;
};

double box_distance_to_origin(const Cell& c) {
  double s = 0.0;
  for (std::size_t k = 0; k < c.center.size(); ++k) {
    const double dr = std::max(0.0, std::abs(c.center[k].real()) - c.half_re[k]);
    const double di = std::max(0.0, std::abs(c.center[k].imag()) - c.half_im[k]);
    s += dr * dr + di * di;
  }
  return std::sqrt(s);
}

}  // namespace

ClearanceCertificate certify_clearance(const EllipsoidChart& chart, double scale, const MultiPoly& p,
                                       int budget) {
  const int n = chart.dim();
  require(p.dim() == n, ErrorCode::kDimensionMismatch, "chart and polynomial dimensions differ");
  require(scale > 0.0, ErrorCode::kInvalidArgument, "scale must be positive");
  require(budget >= (1 << std::min(2 * n, 20)), ErrorCode::kBudget,
          "certification budget below 2 points per real axis");

  ClearanceCertificate cert;
  cert.chart = chart;
  cert.scale = scale;
  cert.budget = budget;
  cert.min_abs_p = std::numeric_limits<double>::infinity();

  // g(x) = P(psi(scale x)) as a dense polynomial in preimage coordinates.
  DensePoly g(p);
  g.shift(chart.center);
  std::vector<cplx> m(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      m[static_cast<std::size_t>(i * n + k)] = chart.frame(i, k) * (chart.semi_axes[static_cast<std::size_t>(k)] * scale);
  g = g.linear_substitute(m);

  double margin = std::numeric_limits<double>::infinity();
  std::deque<Cell> queue;
  queue.push_back(Cell{CVec(static_cast<std::size_t>(n), cplx(0.0)),
                       std::vector<double>(static_cast<std::size_t>(n), 1.0),
                       std::vector<double>(static_cast<std::size_t>(n), 1.0)});
  std::vector<double> r(static_cast<std::size_t>(n));
  bool exhausted = false;
  while (!queue.empty()) {
    Cell cell = std::move(queue.front());
    queue.pop_front();
    if (box_distance_to_origin(cell) > 1.0) continue;
    if (cert.cells >= budget) {
      exhausted = true;
      break;
    }
    ++cert.cells;
    DensePoly local = g;
    local.shift(cell.center);
    const double value = std::abs(local.at(0));
    cert.min_abs_p = std::min(cert.min_abs_p, value);
    for (int k = 0; k < n; ++k)
      r[static_cast<std::size_t>(k)] = std::hypot(cell.half_re[static_cast<std::size_t>(k)], cell.half_im[static_cast<std::size_t>(k)]);
    const double rem = local.remainder_bound(r);
    if (value > rem) {
      margin = std::min(margin, value - rem);
      continue;
    }
    // Split the axis carrying most of the remainder, along its wider side.
    const auto contrib = local.axis_contributions(r);
    int axis = 0;
    for (int k = 1; k < n; ++k)
      if (contrib[static_cast<std::size_t>(k)] > contrib[static_cast<std::size_t>(axis)]) axis = k;
    const auto ua = static_cast<std::size_t>(axis);
    const bool split_re = cell.half_re[ua] >= cell.half_im[ua];
    for (int side = -1; side <= 1; side += 2) {
      Cell child = cell;
      if (split_re) {
        child.half_re[ua] *= 0.5;
        child.center[ua] += cplx(side * child.half_re[ua], 0.0);
      } else {
        child.half_im[ua] *= 0.5;
        child.center[ua] += cplx(0.0, side * child.half_im[ua]);
      }
      queue.push_back(std::move(child));
    }
  }
  cert.certified = !exhausted && std::isfinite(margin) && margin > 0.0;
  cert.margin = cert.certified ? margin : 0.0;
  if (!std::isfinite(cert.min_abs_p)) cert.min_abs_p = 0.0;
  return cert;
}

// ---------------------------------------------------------------------------

namespace {

// Best ball radius in chart a's preimage for a ball whose image lies in chart
// b, centred on the preimage of the segment from a's centre towards b's.
double side_radius(const std::vector<double>& a, const std::vector<double>& b, const CVec& g,
                   double& theta_out) {
  double A = 0.0, B = 0.0, K = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    A += std::norm(g[k] / a[k]);
    B += std::norm(g[k] / b[k]);
    K = std::max(K, a[k] / b[k]);
  }
  A = std::sqrt(A);
  B = std::sqrt(B);
  auto s = [&](double th) { return std::min(1.0 - th * A, (1.0 - (1.0 - th) * B) / K); };
  double best = -1.0, best_th = 0.0;
  std::vector<double> cands{0.0, 1.0};
  if (K * A + B > 0.0) cands.push_back(std::clamp((K - 1.0 + B) / (K * A + B), 0.0, 1.0));
  for (double th : cands) {
    const double v = s(th);
    if (v > best) {
      best = v;
      best_th = th;
    }
  }
  theta_out = best_th;
  return std::max(0.0, best);
}

}  // namespace

IntersectionWitness intersection_radius_witness(const EllipsoidChart& ci, const EllipsoidChart& cj) {
  const int n = ci.dim();
  require(cj.dim() == n, ErrorCode::kDimensionMismatch, "charts of different dimension");
  IntersectionWitness w;
  CVec diff(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) diff[static_cast<std::size_t>(k)] = cj.center[static_cast<std::size_t>(k)] - ci.center[static_cast<std::size_t>(k)];
  const double max_i = *std::max_element(ci.semi_axes.begin(), ci.semi_axes.end());
  const double max_j = *std::max_element(cj.semi_axes.begin(), cj.semi_axes.end());
  if (vec_norm(diff) > max_i + max_j) return w;

  // A round chart is unchanged by a unitary change of its frame, so it can
  // adopt the other chart's frame.
  const CMat* frame = nullptr;
  if (!ci.is_round())
    frame = &ci.frame;
  else
    frame = &cj.frame;
  if (!ci.is_round() && !cj.is_round()) {
    double dev = 0.0;
    for (std::size_t k = 0; k < ci.frame.a.size(); ++k) dev = std::max(dev, std::abs(ci.frame.a[k] - cj.frame.a[k]));
    require(dev <= 1e-9, ErrorCode::kUnsupported,
            "intersection radius needs a shared frame or a round chart");
  }
  CVec g(static_cast<std::size_t>(n), cplx(0.0));  // frame coordinates of cj.center - ci.center
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(k)] += std::conj((*frame)(i, k)) * diff[static_cast<std::size_t>(i)];
  CVec gneg(g);
  for (auto& x : gneg) x = -x;

  double th_i = 0.0, th_j = 0.0;
  w.radius_i = side_radius(ci.semi_axes, cj.semi_axes, g, th_i);
  w.radius_j = side_radius(cj.semi_axes, ci.semi_axes, gneg, th_j);
  w.center_i.resize(static_cast<std::size_t>(n));
  w.center_j.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    w.center_i[uk] = th_i * g[uk] / ci.semi_axes[uk];
    w.center_j[uk] = th_j * gneg[uk] / cj.semi_axes[uk];
  }
  // Express the witness centres in each chart's own frame when it differs
  // from the shared one (only possible for a round chart).
  auto to_own_frame = [&](const EllipsoidChart& c, CVec& x) {
    if (&c.frame == frame) return;
    CVec y(static_cast<std::size_t>(n), cplx(0.0));
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          y[static_cast<std::size_t>(k)] += std::conj(c.frame(i, k)) * (*frame)(i, l) * x[static_cast<std::size_t>(l)];
    x = std::move(y);
  };
  to_own_frame(ci, w.center_i);
  to_own_frame(cj, w.center_j);
  w.radius = std::min(w.radius_i, w.radius_j);
  return w;
}

double intersection_radius_lower(const EllipsoidChart& ci, const EllipsoidChart& cj) {
  return intersection_radius_witness(ci, cj).radius;
}

}  // namespace dchain

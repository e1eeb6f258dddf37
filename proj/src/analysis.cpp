#include "dchain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dchain/clear_ball.hpp"
#include "dchain/error.hpp"
#include "dchain/inequalities.hpp"
#include "dchain/parallel.hpp"
#include "dchain/roots.hpp"

namespace dchain {

double kobayashi_upper(const DoublingChain& chain) {
  require(chain.report.all_certified, ErrorCode::kInvalidArgument,
          "Kobayashi bound needs a verified chain");
  return 3.0 * static_cast<double>(chain.charts.size());
}

double kobayashi_length_bound(int d, double delta) {
  require(d >= 1 && delta > 0.0, ErrorCode::kInvalidArgument, "bound needs d >= 1 and delta > 0");
  return 180.0 * d * std::log(180.0 * d / delta);
}

// ---------------------------------------------------------------------------

namespace {

bool lex_less(const CVec& a, const CVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

cplx rational_value(const MultiPoly& a, const MultiPoly& p, int k, std::span<const cplx> z) {
  return a(z) / std::pow(p(z), k);
}

// Coordinate pattern search for a larger |f| inside `domain`, step halving.
double refine_max(const std::function<double(const CVec&)>& f, const std::function<bool(const CVec&)>& domain,
                  CVec& at, double value, double spacing) {
  if (!domain || !(spacing > 0.0)) return value;
  double step = 0.5 * spacing;
  const std::size_t n = at.size();
  while (step > 1e-6 * spacing) {
    bool moved = false;
    for (std::size_t k = 0; k < 2 * n; ++k)
      for (double sgn : {1.0, -1.0}) {
        CVec trial = at;
        trial[k / 2] += (k % 2 == 0) ? cplx(sgn * step, 0.0) : cplx(0.0, sgn * step);
        if (!domain(trial)) continue;
        const double v = f(trial);
        if (v > value) {
          value = v;
          at = std::move(trial);
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  return value;
}

struct GridMax {
  double value = -1.0;
  CVec at;
};

GridMax max_over(const std::vector<CVec>& pts, const std::function<double(const CVec&)>& f, int workers) {
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), workers, [&](std::size_t i) { vals[i] = f(pts[i]); });
  GridMax m;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (vals[i] > m.value) {
      m.value = vals[i];
      m.at = pts[i];
    }
  return m;
}

}  // namespace

void validate_query(const DoublingQuery& q) {
  const int n = q.denominator.dim();
  require(q.numerator.dim() == n && n >= 1, ErrorCode::kDimensionMismatch, "numerator and denominator dimensions differ");
  require(q.power >= 0, ErrorCode::kInvalidArgument, "power must be >= 0");
  require(!q.G.empty() && !q.omega.empty(), ErrorCode::kInvalidArgument, "empty grid");
  std::vector<CVec> sorted = q.G;
  for (const auto& z : sorted)
    require(static_cast<int>(z.size()) == n, ErrorCode::kDimensionMismatch, "grid point dimension");
  std::sort(sorted.begin(), sorted.end(), lex_less);
  for (const auto& z : q.omega) {
    require(static_cast<int>(z.size()) == n, ErrorCode::kDimensionMismatch, "grid point dimension");
    require(std::binary_search(sorted.begin(), sorted.end(), z, lex_less), ErrorCode::kInvalidArgument,
            "Omega is not contained in G");
  }
  for (const auto& z : q.G)
    require(q.power == 0 || std::abs(q.denominator(z)) > 0.0, ErrorCode::kInvalidArgument,
            "P vanishes at a grid point of G");
  if (q.omega_center) {
    const int d = std::max(1, q.denominator.degree());
    require(q.omega_radius >= rho_const(n, d) / 10.0, ErrorCode::kInvalidArgument,
            "declared ball in Omega is smaller than rho(n, d) / 10");
  }
}

cplx evaluate_query(const DoublingQuery& q, std::span<const cplx> z) {
  return rational_value(q.numerator, q.denominator, q.power, z);
}

DoublingResult doubling_constant(const DoublingQuery& q, int workers) {
  validate_query(q);
  auto f = [&](const CVec& z) { return std::abs(evaluate_query(q, z)); };
  GridMax g = max_over(q.G, f, workers);
  GridMax o = max_over(q.omega, f, workers);
  DoublingResult r;
  r.argmax_G = g.at;
  r.argmax_omega = o.at;
  r.max_G = refine_max(f, q.in_G, r.argmax_G, g.value, q.spacing);
  r.max_omega = refine_max(f, q.in_omega, r.argmax_omega, o.value, q.spacing);
  // Omega is part of G, so its refined maximum is a value over G too.
  r.max_G = std::max(r.max_G, r.max_omega);
  require(r.max_omega > 0.0, ErrorCode::kInvalidArgument, "f vanishes on the Omega grid");
  r.dc = r.max_G / r.max_omega;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Two-sided 97.5% Student t quantiles for 1..30 degrees of freedom.
constexpr double kT975[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                            2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                            2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};

}  // namespace

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  const std::size_t m = std::min(x.size(), y.size());
  fit.points = static_cast<int>(m);
  if (m < 3) return fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return fit;
  fit.defined = true;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 1.0;
  double sse = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += e * e;
  }
  const std::size_t dof = m - 2;
  fit.slope_se = std::sqrt(sse / static_cast<double>(dof) / sxx);
  fit.slope_ci95 = (dof <= 30 ? kT975[dof - 1] : 1.96) * fit.slope_se;
  return fit;
}

ScalingStudy run_scaling_study(const MultiPoly& p, std::optional<CVec> v_far, const std::vector<double>& deltas,
                               const StudyConfig& config) {
  require(!deltas.empty(), ErrorCode::kInvalidArgument, "empty delta list");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    require(deltas[i] > 0.0, ErrorCode::kInvalidArgument, "deltas must be positive");
    if (i > 0) require(deltas[i] < deltas[i - 1], ErrorCode::kInvalidArgument, "deltas must be strictly decreasing");
  }
  const MultiPoly pn = normalize(p);
  require(!pn.is_constant(), ErrorCode::kInvalidArgument, "scaling study needs a nonconstant polynomial");
  const int n = pn.dim();
  const int d = pn.degree();
  const double rho = rho_const(n, d);

  ChainConfig ccfg = config.chain;
  ccfg.allow_delta_above_rho = true;
  ccfg.workers = 1;
  ClearBallConfig bcfg = ccfg.ball;
  bcfg.budget = ccfg.budget;
  const ClearBall ball = find_clear_ball(pn, ccfg.seed, bcfg);
  const CVec far = v_far ? *v_far : ball.center;
  require(static_cast<int>(far.size()) == n, ErrorCode::kDimensionMismatch, "v_far dimension");
  // A zero of P near v_far; every v_delta sits on the ray from it to v_far.
  const DistanceBracket near = dist_upper(pn, far, 64, ccfg.seed);
  CVec ray(far.size());
  for (std::size_t k = 0; k < far.size(); ++k) ray[k] = far[k] - near.witness[k];
  const double ray_len = vec_norm(ray);
  for (auto& x : ray) x /= ray_len;

  // Distance to H used for G membership: exact for n = 1, certified lower
  // bound otherwise.
  std::vector<cplx> roots1;
  if (n == 1) {
    std::vector<cplx> c(static_cast<std::size_t>(d + 1), cplx(0.0));
    for (const auto& t : pn.terms()) c[static_cast<std::size_t>(t.alpha[0])] = t.coeff;
    roots1 = find_roots(UniPoly(c), 1e-12).roots;
  }
  auto dist_h = [&](const CVec& z) {
    if (n == 1) {
      double m = std::numeric_limits<double>::infinity();
      for (cplx r : roots1) m = std::min(m, std::abs(z[0] - r));
      return m;
    }
    return std::abs(pn(z)) / markov_gradient_bound(n, d);
  };
  auto f = [&](const CVec& z) { return 1.0 / std::abs(pn(z)); };

  const int density = config.grid_density > 0 ? config.grid_density : (n == 1 ? 256 : 64);
  const double spacing = 1.0 / (density - 1);
  std::vector<CVec> omega;
  {
    const int od = std::max(2, config.omega_density);
    std::vector<int> idx(static_cast<std::size_t>(2 * n), 0);
    for (;;) {
      CVec z(static_cast<std::size_t>(n));
      double r2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double a = -1.0 + 2.0 * idx[static_cast<std::size_t>(2 * k)] / (od - 1);
        const double b = -1.0 + 2.0 * idx[static_cast<std::size_t>(2 * k + 1)] / (od - 1);
        r2 += a * a + b * b;
        z[static_cast<std::size_t>(k)] = ball.center[static_cast<std::size_t>(k)] + ball.radius * cplx(a, b);
      }
      if (r2 < 1.0) omega.push_back(std::move(z));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == od) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  auto in_omega = [&](const CVec& z) {
    CVec dz(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) dz[k] = z[k] - ball.center[k];
    return vec_norm(dz) < ball.radius;
  };
  GridMax om = max_over(omega, f, config.workers);
  const double max_omega = refine_max(f, in_omega, om.at, om.value, 2.0 * ball.radius / config.omega_density);

  ScalingStudy study;
  study.rows.resize(deltas.size());
  parallel_for(deltas.size(), config.workers, [&](std::size_t li) {
    const double delta = deltas[li];
    StudyRow& row = study.rows[li];
    row.delta = delta;
    row.delta_above_rho = delta > rho;
    row.bound = chain_length_bound(d, delta);
    row.kobayashi_bound = kobayashi_length_bound(d, delta);
    CVec vd(far.size());
    for (std::size_t k = 0; k < far.size(); ++k) vd[k] = near.witness[k] + delta * (1.0 + 1e-9) * ray[k];
    try {
      require(in_unit_cube(vd, 1e-12), ErrorCode::kInvalidArgument, "v_delta leaves the unit cube");
      for (auto& x : vd) x = cplx(std::clamp(x.real(), 0.0, 1.0), std::clamp(x.imag(), 0.0, 1.0));
      DoublingChain chain = build_chain(pn, vd, far, delta, ccfg);
      row.length = chain.report.length;
      row.min_clearance = chain.report.min_clearance;
      row.certified = chain.report.all_certified;
      if (row.certified) row.kobayashi_upper = kobayashi_upper(chain);

      auto in_g = [&](const CVec& z) { return in_unit_cube(z) && dist_h(z) >= delta; };
      // Max of |1/P| over the Q^delta grid, streamed over the grid.
      GridMax g;
      std::vector<int> idx(static_cast<std::size_t>(2 * n), 0);
      for (;;) {
        CVec z(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
          z[static_cast<std::size_t>(k)] = cplx(idx[static_cast<std::size_t>(2 * k)] * spacing, idx[static_cast<std::size_t>(2 * k + 1)] * spacing);
        if (dist_h(z) >= delta) {
          const double v = f(z);
          if (v > g.value) {
            g.value = v;
            g.at = z;
          }
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == density) idx[k++] = 0;
        if (k == idx.size()) break;
      }
      if (in_g(vd) && f(vd) > g.value) {
        g.value = f(vd);
        g.at = vd;
      }
      double max_g = g.value > 0.0 ? refine_max(f, in_g, g.at, g.value, spacing) : 0.0;
      max_g = std::max(max_g, max_omega);  // Omega is part of G
      row.dc = max_g / max_omega;
    } catch (const Error& e) {
      row.error = std::string(error_code_name(e.code())) + ": " + e.what();
      row.certified = false;
    }
  });

  std::vector<double> x_dc, y_dc, y_len, x_cl, y_cl;
  for (const auto& row : study.rows) {
    if (!row.certified) continue;
    x_dc.push_back(std::log(1.0 / row.delta));
    y_dc.push_back(std::log(row.dc));
    y_len.push_back(static_cast<double>(row.length));
    if (row.min_clearance > 0.0) {
      x_cl.push_back(std::log(row.delta));
      y_cl.push_back(std::log(row.min_clearance));
    }
  }
  study.dc_fit = fit_line(x_dc, y_dc);
  study.length_fit = fit_line(x_dc, y_len);
  study.clearance_fit = fit_line(x_cl, y_cl);
  study.design_ok = deltas.size() >= 4 && deltas.front() / deltas.back() >= 100.0;
  return study;
}

}  // namespace dchain

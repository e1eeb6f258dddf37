#include "dchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dchain/error.hpp"
#include "dchain/inequalities.hpp"
#include "dchain/parallel.hpp"
#include "dchain/roots.hpp"

namespace dchain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return r;
}

CVec sub(std::span<const cplx> a, std::span<const cplx> b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::string format_point(std::span<const cplx> z) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < z.size(); ++i) os << (i ? ", " : "") << z[i].real() << ", " << z[i].imag();
  os << ']';
  return os.str();
}

}  // namespace

double chain_length_bound(int d, double delta) {
  if (d <= 0) return 1.0;
  return 36.0 * d * std::log(180.0 * d / delta) + 1.0;
}

double chain_rho_bound(int d) { return std::pow(2.0, -std::max(0, d)) / 3.0; }

LineSelection select_line(const MultiPoly& p, std::span<const cplx> v, const ClearBall& ball,
                          int num_samples, std::uint64_t seed) {
  const int n = p.dim();
  require(static_cast<int>(v.size()) == n && ball.center.size() == v.size(), ErrorCode::kDimensionMismatch,
          "select_line dimensions differ");
  require(num_samples >= 32, ErrorCode::kInvalidArgument, "select_line needs at least 32 samples");
  LineSelection best;
  if (vec_norm(sub(v, ball.center)) < ball.radius) {
    best.trivial = true;
    best.z_star.assign(v.begin(), v.end());
    return best;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> rot(static_cast<std::size_t>(2 * n));
  for (auto& r : rot) r = u(rng);
  best.norm_pl = -1.0;
  int taken = 0;
  for (std::uint64_t s = 1; taken < num_samples; ++s) {
    std::vector<double> x(static_cast<std::size_t>(2 * n));
    double r2 = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
      double h = radical_inverse(s, kPrimes[k]) + rot[static_cast<std::size_t>(k)];
      h -= std::floor(h);
      x[static_cast<std::size_t>(k)] = 2.0 * h - 1.0;
      r2 += x[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
    }
    if (r2 >= 1.0) continue;
    ++taken;
    CVec z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      z[static_cast<std::size_t>(k)] = ball.center[static_cast<std::size_t>(k)] +
                                        0.5 * ball.radius * cplx(x[static_cast<std::size_t>(2 * k)], x[static_cast<std::size_t>(2 * k + 1)]);
    CVec dir = sub(z, v);
    CLine line = make_line(CVec(v.begin(), v.end()), dir);
    const double norm = restrict_to_line(p, line).norm1();
    if (norm > best.norm_pl) {
      best.norm_pl = norm;
      best.t_star = vec_norm(dir);
      best.z_star = std::move(z);
      best.line = std::move(line);
    }
  }
  return best;
}

std::vector<EllipsoidChart> transition_charts(const EllipsoidChart& from, double target) {
  require(target > 0.0, ErrorCode::kInvalidArgument, "transition target must be positive");
  std::vector<EllipsoidChart> out;
  std::vector<double> axes = from.semi_axes;
  auto push = [&] {
    out.push_back(make_chart(from.center, from.frame, axes, ChartKind::kTransition, from.c6_line));
  };
  while (axes[0] != target) {
    axes[0] = axes[0] > target ? std::max(target, axes[0] / 4.0) : std::min(target, axes[0] * 4.0);
    push();
  }
  for (;;) {
    bool changed = false;
    for (std::size_t k = 1; k < axes.size(); ++k) {
      if (axes[k] == target) continue;
      axes[k] = axes[k] < target ? std::min(target, axes[k] * 4.0) : std::max(target, axes[k] / 4.0);
      changed = true;
    }
    if (!changed) break;
    push();
  }
  if (out.empty()) push();
  out.back().kind = ChartKind::kTransition;
  return out;
}

namespace {

EndpointAdmission admit(const MultiPoly& pn, std::span<const cplx> v, double delta, const ChainConfig& cfg,
                        std::uint64_t seed) {
  require(in_unit_cube(v, 1e-12), ErrorCode::kInvalidArgument, "endpoint outside the unit cube");
  EndpointAdmission a;
  a.lower = dist_lower(pn, v).value;
  const DistanceBracket db = dist_upper(pn, v, cfg.admission_lines, seed);
  a.upper = db.upper;
  if (db.upper < delta) {
    std::ostringstream os;
    os.precision(17);
    os << "endpoint_within_delta: point " << format_point(v) << " has a zero of P at distance " << db.upper
       << " < delta " << delta << "; witness " << format_point(db.witness);
    fail(ErrorCode::kEndpointWithinDelta, os.str());
  }
  a.verified = a.lower >= delta;
  a.unverified_margin = !a.verified;
  return a;
}

ChainSide build_side(const MultiPoly& pn, std::span<const cplx> v, const ClearBall& ball, double delta,
                     double rmax_factor, const ChainConfig& cfg, std::uint64_t seed,
                     std::vector<EllipsoidChart>& charts) {
  ChainSide side;
  const int n = pn.dim();
  const int d = pn.degree();
  side.selection = select_line(pn, v, ball, cfg.select_samples, seed);
  if (side.selection.trivial) {
    side.trivial = true;
    return side;
  }
  const CLine& line = side.selection.line;
  side.restricted = restrict_to_line(pn, line);
  std::vector<cplx> roots;
  if (side.restricted.degree() >= 1) roots = find_roots(side.restricted, 1e-10).roots;

  const double rho = ball.radius;
  const double rad = std::max(1.0, side.selection.t_star + 2.0 * rho);
  side.disk = PuncturedDisk{0.0, rad, roots, delta_prime(delta, d)};
  const Polyline path = find_path(side.disk, 0.0, side.selection.t_star, cfg.resolution, cfg.path_margin);
  side.cover = build_disk_chain(side.disk, path, rad / 8.0 * rmax_factor);
  side.audit = audit_cover(side.cover, side.disk);
  side.c6_line = c4_constant(n, d) * side.selection.norm_pl;

  // For d >= 2 the exact transverse axis c6 R^d / 4 can fall below the
  // rounding error of the chart centres, and then neighbouring charts stop
  // overlapping in double precision. A floor proportional to R keeps the
  // charts representable; the largest floor under which every lifted chart
  // still certifies is used.
  auto lift_all = [&](double ratio) {
    std::vector<EllipsoidChart> out;
    out.reserve(side.cover.disks.size());
    for (const Disk& D : side.cover.disks)
      out.push_back(lift_disk(line, D.center, D.radius, side.c6_line, d, ratio));
    return out;
  };
  std::vector<EllipsoidChart> lifted;
  if (n >= 2) {
    for (int k = 3; k <= 30 && lifted.empty(); k += 3) {
      const double ratio = std::ldexp(1.0, -k);
      auto trial = lift_all(ratio);
      bool ok = true;
      for (const auto& c : trial) {
        if (!certify_clearance(c, 4.0, pn, cfg.budget).certified) {
          ok = false;
          break;
        }
      }
      if (ok) {
        side.transverse_ratio = ratio;
        lifted = std::move(trial);
      }
    }
  }
  if (lifted.empty()) lifted = lift_all(0.0);
  for (auto& c : lifted) charts.push_back(std::move(c));
  side.disk_charts = static_cast<int>(side.cover.disks.size());
  // The last disk is centred at z*; walk its chart down to the round chart of
  // radius rho/2 there, which lies inside the clear ball's enlargement.
  auto trans = transition_charts(charts.back(), 0.5 * rho);
  side.transition_count = static_cast<int>(trans.size());
  for (auto& c : trans) charts.push_back(std::move(c));
  return side;
}

}  // namespace

DoublingChain build_chain(const MultiPoly& p, std::span<const cplx> v1, std::span<const cplx> v2, double delta,
                          const ChainConfig& cfg) {
  const int n = p.dim();
  require(n >= 1 && static_cast<int>(v1.size()) == n && static_cast<int>(v2.size()) == n,
          ErrorCode::kDimensionMismatch, "endpoint dimension differs from polynomial dimension");
  require(delta > 0.0, ErrorCode::kInvalidArgument, "delta must be positive");
  require(!p.is_zero(), ErrorCode::kZeroPolynomial, "zero polynomial");
  const MultiPoly pn = normalize(p);
  DoublingChain chain;
  chain.v1.assign(v1.begin(), v1.end());
  chain.v2.assign(v2.begin(), v2.end());
  chain.delta = delta;
  VerifyConfig vcfg{cfg.budget, cfg.workers};

  if (pn.is_constant()) {
    CVec mid(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) mid[static_cast<std::size_t>(k)] = 0.5 * (v1[static_cast<std::size_t>(k)] + v2[static_cast<std::size_t>(k)]);
    const double r = std::max(vec_norm(sub(v1, v2)), 1e-3);
    chain.charts.push_back(make_ball_chart(std::move(mid), r));
    chain.single_chart = true;
    chain.report = verify_chain(chain, pn, delta, vcfg);
    return chain;
  }
  const int d = pn.degree();
  const double rho = rho_const(n, d);
  if (delta > rho && !cfg.allow_delta_above_rho) {
    std::ostringstream os;
    os << "delta " << delta << " exceeds rho(n, d) = " << rho;
    fail(ErrorCode::kDeltaTooLarge, os.str());
  }
  chain.admission1 = admit(pn, v1, delta, cfg, cfg.seed ^ 0xA5A5A5A5ull);
  chain.admission2 = admit(pn, v2, delta, cfg, cfg.seed ^ 0x5A5A5A5Aull);

  ClearBallConfig bcfg = cfg.ball;
  bcfg.workers = cfg.workers;
  bcfg.budget = cfg.budget;
  chain.ball = find_clear_ball(pn, cfg.seed, bcfg);
  const ClearBall& ball = *chain.ball;
  const EllipsoidChart ball_chart = make_ball_chart(ball.center, ball.radius);

  std::string last_failure;
  for (double rmax_factor : {1.0, 0.5}) {
    std::vector<EllipsoidChart> c1, c2;
    ChainSide s1, s2;
    parallel_for(2, cfg.workers, [&](std::size_t k) {
      if (k == 0)
        s1 = build_side(pn, v1, ball, delta, rmax_factor, cfg, cfg.seed + 1, c1);
      else
        s2 = build_side(pn, v2, ball, delta, rmax_factor, cfg, cfg.seed + 2, c2);
    });
    std::vector<EllipsoidChart> charts = std::move(c1);
    charts.push_back(ball_chart);
    for (auto it = c2.rbegin(); it != c2.rend(); ++it) charts.push_back(std::move(*it));

    std::vector<ClearanceCertificate> certs(charts.size());
    parallel_for(charts.size(), cfg.workers,
                 [&](std::size_t i) { certs[i] = certify_clearance(charts[i], 4.0, pn, cfg.budget); });
    std::vector<std::size_t> failed;
    for (std::size_t i = 0; i < certs.size(); ++i)
      if (!certs[i].certified) failed.push_back(i);
    if (!failed.empty()) {
      std::ostringstream os;
      os << failed.size() << " of " << charts.size() << " charts failed certification (first index " << failed[0]
         << ", smallest sampled |P| " << certs[failed[0]].min_abs_p << ")";
      last_failure = os.str();
      continue;
    }
    // A single certified chart containing both endpoints is a chain by itself.
    for (std::size_t i = 0; i < charts.size(); ++i)
      if (charts[i].contains(v1) && charts[i].contains(v2)) {
        charts = {charts[i]};
        chain.single_chart = true;
        break;
      }
    chain.charts = std::move(charts);
    chain.side1 = std::move(s1);
    chain.side2 = std::move(s2);
    for (std::size_t i = 0; i + 1 < chain.charts.size(); ++i)
      chain.junction_radii.push_back(intersection_radius_lower(chain.charts[i], chain.charts[i + 1]));
    chain.report = verify_chain(chain, pn, delta, vcfg);
    return chain;
  }
  fail(ErrorCode::kCertificationFailed, last_failure);
}

ChainReport verify_chain(const DoublingChain& chain, const MultiPoly& p, double delta, const VerifyConfig& cfg) {
  ChainReport r;
  r.length = static_cast<int>(chain.charts.size());
  if (p.is_zero() || chain.charts.empty()) {
    r.failing_charts.push_back(-1);
    return r;
  }
  const MultiPoly pn = normalize(p);
  const int n = pn.dim();
  const int d = pn.degree();
  r.length_bound = chain_length_bound(d, delta);
  r.rho_bound = chain_rho_bound(d);
  bool shapes_ok = true;
  for (const auto& c : chain.charts)
    if (c.dim() != n || c.frame.n != n || static_cast<int>(c.semi_axes.size()) != n) shapes_ok = false;
  if (!shapes_ok || static_cast<int>(chain.v1.size()) != n || static_cast<int>(chain.v2.size()) != n) {
    r.failing_charts.push_back(-1);
    return r;
  }
  // Membership of the endpoints in Q^delta, from the certified lower bound.
  auto margin_verified = [&](const CVec& v) {
    return in_unit_cube(v, 1e-12) && dist_lower(pn, v).value >= delta;
  };
  r.unverified_margin = !margin_verified(chain.v1) || !margin_verified(chain.v2);

  std::vector<int> ok4(chain.charts.size(), 0);
  std::vector<double> margin1(chain.charts.size(), 0.0);
  parallel_for(chain.charts.size(), cfg.workers, [&](std::size_t i) {
    try {
      ok4[i] = certify_clearance(chain.charts[i], 4.0, pn, cfg.budget).certified ? 1 : 0;
      const ClearanceCertificate c1 = certify_clearance(chain.charts[i], 1.0, pn, cfg.budget);
      margin1[i] = c1.certified ? c1.margin : 0.0;
    } catch (const Error&) {
      ok4[i] = 0;
    }
  });
  r.charts_certified = true;
  r.min_clearance = kInf;
  for (std::size_t i = 0; i < chain.charts.size(); ++i) {
    if (!ok4[i]) {
      r.charts_certified = false;
      r.failing_charts.push_back(static_cast<int>(i));
    }
    r.min_clearance = std::min(r.min_clearance, margin1[i] / markov_gradient_bound(n, std::max(1, d)));
  }

  r.junctions_positive = true;
  r.rho_chain = kInf;
  for (std::size_t i = 0; i + 1 < chain.charts.size(); ++i) {
    double jr = 0.0;
    try {
      jr = intersection_radius_lower(chain.charts[i], chain.charts[i + 1]);
    } catch (const Error&) {
      jr = 0.0;
    }
    r.rho_chain = std::min(r.rho_chain, jr);
    if (!(jr > 0.0)) r.junctions_positive = false;
  }
  r.endpoints_contained = chain.charts.front().contains(chain.v1) && chain.charts.back().contains(chain.v2);
  r.length_ok = r.length <= r.length_bound;
  r.rho_ok = r.rho_chain >= r.rho_bound * (1.0 - 1e-9);

  for (const auto& c : chain.charts) {
    const double amax = *std::max_element(c.semi_axes.begin(), c.semi_axes.end());
    for (int k = 0; k < n; ++k) {
      // Coordinate extent of the ellipsoid: semi-axis a_j along column j.
      double ext = 0.0;
      for (int j = 0; j < n; ++j) ext += std::norm(c.frame(k, j)) * c.semi_axes[static_cast<std::size_t>(j)] * c.semi_axes[static_cast<std::size_t>(j)];
      ext = std::min(std::sqrt(ext), amax);
      const cplx z = c.center[static_cast<std::size_t>(k)];
      for (double x : {z.real(), z.imag()})
        r.cube_excess = std::max({r.cube_excess, -(x - ext), x + ext - 1.0});
    }
  }
  r.all_certified = r.charts_certified && r.junctions_positive && r.endpoints_contained && r.length_ok && r.rho_ok;
  return r;
}

}  // namespace dchain

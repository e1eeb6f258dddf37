// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Detail lines start with two spaces.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dchain/analysis.hpp"
#include "dchain/chain.hpp"
#include "dchain/clear_ball.hpp"
#include "dchain/error.hpp"
#include "dchain/geom.hpp"
#include "dchain/inequalities.hpp"
#include "dchain/json_io.hpp"
#include "dchain/parallel.hpp"
#include "dchain/punctured_disk.hpp"
#include "dchain/roots.hpp"
#include "../oracles.hpp"
#include "../test_util.hpp"

using namespace dchain;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ------------------------------------------------------------------ harness

constexpr int kInstances = 50;

struct Instance {
  MultiPoly p;
  int d = 0;
  double delta = 0.0;
  CVec v1, v2;
  std::uint64_t seed = 0;
};

// Endpoints are drawn until the certified lower bound puts them in Q^delta.
CVec admissible_point(const MultiPoly& p, double delta, std::mt19937_64& rng) {
  for (;;) {
    CVec v = testutil::rand_in_cube(rng, p.dim());
    if (dist_lower(p, v).value >= delta) return v;
  }
}

std::vector<Instance> harness_instances() {
  std::vector<Instance> out;
  for (int i = 0; i < kInstances; ++i) {
    std::mt19937_64 rng(0x5eed0000ull + static_cast<std::uint64_t>(i));
    Instance in;
    in.d = 1 + i % 3;
    in.p = normalize(testutil::random_poly(rng, 2, in.d));
    in.delta = rho_const(2, in.d) / 2.0;
    in.v1 = admissible_point(in.p, in.delta, rng);
    in.v2 = admissible_point(in.p, in.delta, rng);
    in.seed = 1 + static_cast<std::uint64_t>(i);
    out.push_back(std::move(in));
  }
  return out;
}

struct Built {
  bool ok = false;
  std::string error;
  DoublingChain chain;
  ChainReport audit;
  std::string json;
  double seconds = 0.0;
};

std::vector<Built> build_all(const std::vector<Instance>& inst, int outer_workers, int inner_workers) {
  std::vector<Built> out(inst.size());
  parallel_for(inst.size(), outer_workers, [&](std::size_t i) {
    const auto t0 = Clock::now();
    ChainConfig cfg;
    cfg.seed = inst[i].seed;
    cfg.workers = inner_workers;
    cfg.ball.workers = inner_workers;
    try {
      out[i].chain = build_chain(inst[i].p, inst[i].v1, inst[i].v2, inst[i].delta, cfg);
      out[i].json = dump_json(chain_to_json(out[i].chain));
      // Audit from the serialized chain, not from the builder's state.
      const DoublingChain reread = chain_from_json(parse_json(out[i].json));
      out[i].audit = verify_chain(reread, inst[i].p, inst[i].delta, {cfg.budget, inner_workers});
      out[i].ok = true;
    } catch (const Error& e) {
      out[i].error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    out[i].seconds = seconds_since(t0);
  });
  return out;
}

// ------------------------------------------------------------------ 1

Outcome criterion1(const std::vector<Instance>& inst, const std::vector<Built>& built, double secs) {
  Outcome o;
  int good = 0;
  double worst_len_ratio = 0.0, worst_rho_ratio = INFINITY;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Built& b = built[i];
    if (!b.ok) {
      o.details.push_back(fmt("instance %zu: build failed: %s", i, b.error.c_str()));
      continue;
    }
    const ChainReport& r = b.audit;
    const double len_bound = chain_length_bound(inst[i].d, inst[i].delta);
    const double rho_bound = chain_rho_bound(inst[i].d);
    const bool len_ok = r.length <= len_bound;
    const bool rho_ok = r.rho_chain >= rho_bound * (1.0 - 1e-9);
    worst_len_ratio = std::max(worst_len_ratio, r.length / len_bound);
    worst_rho_ratio = std::min(worst_rho_ratio, r.rho_chain / rho_bound);
    if (r.charts_certified && r.junctions_positive && r.endpoints_contained && len_ok && rho_ok && r.all_certified) {
      ++good;
    } else {
      o.details.push_back(fmt("instance %zu (d=%d): charts=%d junctions=%d endpoints=%d all=%d length %d/%.1f rho %.4g/%.4g",
                              i, inst[i].d, r.charts_certified ? 1 : 0, r.junctions_positive ? 1 : 0,
                              r.endpoints_contained ? 1 : 0, r.all_certified ? 1 : 0, r.length, len_bound,
                              r.rho_chain, rho_bound));
    }
  }
  o.pass = good == static_cast<int>(inst.size()) && secs <= 600.0;
  o.summary = fmt("%d/%zu chains verified (n=2, d=1..3, delta=rho/2); max length/bound %.3f; min rho/bound %.3f; %.1f s",
                  good, inst.size(), worst_len_ratio, worst_rho_ratio, secs);
  return o;
}

// ------------------------------------------------------------------ 2

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 rng(2000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int fails = 0, near_root = 0, rescaled = 0;
  double worst_ratio = INFINITY;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const int d = 1 + t % 6;
    const UniPoly p = testutil::random_unipoly(rng, d);
    const std::vector<cplx> roots = oracle::companion_roots(p.coeffs());
    cplx v;
    if (t % 4 == 0) {
      // Close to a root, where the inequality is tight in its power of dist.
      const cplx r = roots[static_cast<std::size_t>(rng() % roots.size())];
      v = r + std::polar(std::pow(10.0, -1.0 - 6.0 * u(rng)), 2.0 * std::numbers::pi * u(rng));
      ++near_root;
    } else {
      v = std::polar(std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
    }
    // Independent evaluation with oracle roots and Horner's rule.
    double eta = INFINITY;
    for (cplx r : roots) eta = std::min(eta, std::abs(v - r));
    const double lambda = std::max({1.0, std::abs(v), eta});
    if (lambda > 1.0) ++rescaled;
    double qnorm = 0.0;
    for (int j = 0; j <= d; ++j) qnorm += std::abs(p[static_cast<std::size_t>(j)]) * std::pow(lambda, j);
    cplx pv = 0.0;
    for (int j = d; j >= 0; --j) pv = pv * v + p[static_cast<std::size_t>(j)];
    const double cd = 1.0 / (4.0 * (d + 1) * std::pow(48.0, d));
    const double rhs = cd * qnorm * std::pow(eta / lambda, d);
    const double tol = 1e-10 * p.norm1() * std::pow(std::max(1.0, std::abs(v)), d);
    const bool oracle_ok = std::abs(pv) + tol >= rhs;
    const UnivariateLowerCheck lib = check_univariate_lower(p, v);
    if (rhs > 0.0) worst_ratio = std::min(worst_ratio, std::abs(pv) / rhs);
    if (!oracle_ok || !lib.holds) {
      ++fails;
      if (o.details.size() < 5)
        o.details.push_back(fmt("trial %d: |p(v)| %.3e rhs %.3e library %d", t, std::abs(pv), rhs, lib.holds ? 1 : 0));
    }
  }
  o.pass = fails == 0;
  o.summary = fmt("%d/%d trials hold (degree 1..6, %d near a root, %d rescaled); min |p(v)|/rhs %.3g", trials - fails,
                  trials, near_root, rescaled, worst_ratio);
  return o;
}

// ------------------------------------------------------------------ 3

// Sampled circle maximum. For degree d and N samples the true maximum is at
// most sampled / (1 - pi d / N), by Bernstein's inequality on the circle.
double sampled_circle_max(const UniPoly& p, cplx c, double r, int samples) {
  double m = 0.0;
  for (int k = 0; k < samples; ++k) m = std::max(m, std::abs(p(c + std::polar(r, 2.0 * std::numbers::pi * k / samples))));
  return m;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(3000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int trials = 500;
  int fails = 0;
  double tightest = INFINITY;
  for (int t = 0; t < trials; ++t) {
    const int d = 1 + t % 6;
    const UniPoly p = testutil::random_unipoly(rng, d);
    const double kappa = 0.02 + 0.96 * u(rng);
    const cplx c = std::polar((1.0 - kappa) * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
    const RemezDiskCheck lib = check_remez_disk(p, c, kappa);
    const int N = 8192;
    const double outer = sampled_circle_max(p, 0.0, 1.0, N) / (1.0 - std::numbers::pi * d / N);
    const double inner = sampled_circle_max(p, c, kappa, N);
    const double bound = std::pow(12.0 / kappa, d);
    const bool oracle_ok = outer <= bound * inner;
    tightest = std::min(tightest, bound * inner / outer);
    if (!oracle_ok || !lib.holds) {
      ++fails;
      if (o.details.size() < 5) o.details.push_back(fmt("trial %d: outer %.4g bound*inner %.4g", t, outer, bound * inner));
    }
  }
  o.pass = fails == 0;
  o.summary = fmt("%d/%d trials hold (degree 1..6, kappa in [0.02, 0.98]); min (bound*inner)/outer %.3g", trials - fails,
                  trials, tightest);
  return o;
}

// ------------------------------------------------------------------ 4

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4000);
  const int trials = 500;
  int fails = 0;
  double worst_witness = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int n = 1 + t % 3;
    const int d = 1 + (t / 3) % 4;
    const MultiPoly p = normalize(testutil::random_poly(rng, n, d));
    const CVec v = testutil::rand_in_cube(rng, n);
    const DistanceLower lo = dist_lower(p, v);
    const DistanceBracket br = dist_upper(p, v, 16, 4000 + static_cast<std::uint64_t>(t));
    bool ok = lo.value <= br.upper;
    std::vector<CVec> witnesses = br.line_witnesses;
    witnesses.push_back(br.witness);
    for (const auto& w : witnesses) {
      const double r = std::abs(p(w)) / p.norm1();
      worst_witness = std::max(worst_witness, r);
      if (!(r <= 1e-8)) ok = false;
    }
    if (!ok) {
      ++fails;
      if (o.details.size() < 5) o.details.push_back(fmt("trial %d: lower %.4g upper %.4g", t, lo.value, br.upper));
    }
  }
  o.pass = fails == 0;
  o.summary = fmt("%d/%d trials (n=1..3, d=1..4): lower <= upper and witnesses on H; max |P(w)|/||P|| %.2e",
                  trials - fails, trials, worst_witness);
  return o;
}

// ------------------------------------------------------------------ 5

Outcome criterion5(int workers) {
  Outcome o;
  const int trials = 200;
  const int res = 2048;
  struct Trial {
    bool connected = false;
    bool diam_ok = false;
    double worst = 0.0;
    int m = 0;
    std::string error;
  };
  std::vector<Trial> out(static_cast<std::size_t>(trials));
  parallel_for(out.size(), workers, [&](std::size_t t) {
    std::mt19937_64 rng(5000 + t);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int m = 1 + static_cast<int>(t % 6);
    const double delta = (0.05 + 0.94 * u(rng)) / (2.0 * m);
    const double dp = delta / (10.0 * m);
    std::vector<cplx> Z;
    if (t % 2 == 0) {
      for (int k = 0; k < m; ++k) Z.push_back(std::polar(std::sqrt(u(rng)) * 0.95, 2.0 * std::numbers::pi * u(rng)));
    } else {
      // A chain of points whose dp-neighbourhoods overlap: the diameter
      // bound is nearly attained.
      cplx z = std::polar(0.5 * u(rng), 2.0 * std::numbers::pi * u(rng));
      const double dir = 2.0 * std::numbers::pi * u(rng);
      for (int k = 0; k < m; ++k) {
        Z.push_back(z);
        z += std::polar(dp * (1.0 + 0.9 * u(rng)), dir + 0.3 * (u(rng) - 0.5));
      }
    }
    PuncturedDisk pd{0.0, 1.0, Z, dp};
    PuncturedDisk big{0.0, 1.0, Z, delta};
    auto sample = [&] {
      for (;;) {
        const cplx v = std::polar(std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
        if (std::abs(v) < 1.0 - 1e-3 && clearance(big, v) >= delta) return v;
      }
    };
    Trial& tr = out[t];
    tr.m = m;
    try {
      const cplx v1 = sample(), v2 = sample();
      tr.connected = same_component_grid(pd, v1, v2, res);
      const ComponentDiameters cd = puncture_component_diameters(pd, res);
      tr.diam_ok = true;
      for (double dm : cd.diameters) {
        const double lim = 2.0 * m * dp + 2.0 * cd.pixel;
        tr.worst = std::max(tr.worst, dm / lim);
        if (dm > lim) tr.diam_ok = false;
      }
    } catch (const Error& e) {
      tr.error = e.what();
    }
  });
  int conn = 0, diam = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < out.size(); ++t) {
    conn += out[t].connected ? 1 : 0;
    diam += out[t].diam_ok ? 1 : 0;
    worst = std::max(worst, out[t].worst);
    if ((!out[t].connected || !out[t].diam_ok) && o.details.size() < 5)
      o.details.push_back(fmt("trial %zu (|Z|=%d): connected %d diameter ok %d %s", t, out[t].m, out[t].connected ? 1 : 0,
                              out[t].diam_ok ? 1 : 0, out[t].error.c_str()));
  }
  o.pass = conn == trials && diam == trials;
  o.summary = fmt("%d/%d connected at resolution %d; %d/%d with component diameters <= 2 d delta' + 2 px (max ratio %.3f)",
                  conn, trials, res, diam, trials, worst);
  return o;
}

// ------------------------------------------------------------------ 6

Outcome criterion6(const std::vector<Instance>& inst, int workers) {
  Outcome o;
  const auto t0 = Clock::now();
  // Clear balls, found afresh for every harness polynomial.
  std::vector<int> ball_ok(inst.size(), 0);
  parallel_for(inst.size(), workers, [&](std::size_t i) {
    try {
      const ClearBall b = find_clear_ball(inst[i].p, inst[i].seed);
      const EllipsoidChart four = make_ball_chart(b.center, b.radius);
      const bool recert = certify_clearance(four, 4.0, inst[i].p, 1 << 16).certified;
      ball_ok[i] = b.radius == rho_const(2, inst[i].d) && b.certificate.certified && recert && in_unit_cube(b.center);
    } catch (const Error&) {
      ball_ok[i] = 0;
    }
  });
  const int balls = static_cast<int>(std::count(ball_ok.begin(), ball_ok.end(), 1));

  // Cube counts: the harness polynomials plus n = 1 instances.
  std::vector<MultiPoly> polys;
  std::vector<int> dims;
  for (const auto& in : inst) polys.push_back(in.p);
  std::mt19937_64 rng(6000);
  for (int d = 1; d <= 3; ++d)
    for (int k = 0; k < 4; ++k) polys.push_back(normalize(testutil::random_poly(rng, 1, d)));
  std::vector<VitushkinReport> reps(polys.size());
  std::vector<std::string> errs(polys.size());
  parallel_for(polys.size(), workers, [&](std::size_t i) {
    const int n = polys[i].dim(), d = polys[i].degree();
    try {
      reps[i] = vitushkin_count(polys[i], clip_epsilon(epsilon_const(n, d), n), 1 + i, 1);
    } catch (const Error& e) {
      errs[i] = e.what();
    }
  });
  int within = 0;
  std::int64_t max_count = 0;
  double max_frac = 0.0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const bool ok = errs[i].empty() && static_cast<double>(reps[i].count) <= reps[i].bound && reps[i].count >= 0;
    within += ok ? 1 : 0;
    max_count = std::max(max_count, reps[i].count);
    if (errs[i].empty()) max_frac = std::max(max_frac, static_cast<double>(reps[i].count) / reps[i].bound);
    if (!ok && o.details.size() < 5) o.details.push_back(fmt("vitushkin %zu: %s", i, errs[i].c_str()));
  }
  o.details.push_back(fmt("epsilon for n=2 clipped to %.6g (grid %d); largest count %lld; largest count/bound %.3g",
                          reps[0].epsilon, reps[0].grid, static_cast<long long>(max_count), max_frac));
  o.pass = balls == static_cast<int>(inst.size()) && within == static_cast<int>(polys.size());
  o.summary = fmt("%d/%zu clear balls certified with radius rho(2,d); %d/%zu cube counts within bound; %.1f s", balls,
                  inst.size(), within, polys.size(), seconds_since(t0));
  return o;
}

// ------------------------------------------------------------------ 7

Outcome criterion7(const std::vector<Instance>& inst, const std::vector<Built>& built) {
  Outcome o;
  int covers = 0, passed = 0, within = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!built[i].ok) continue;
    for (const ChainSide* side : {&built[i].chain.side1, &built[i].chain.side2}) {
      if (side->trivial) continue;
      ++covers;
      const CoverAudit a = audit_cover(side->cover, side->disk);
      const int d = inst[i].d;
      const double budget = 18.0 * d * std::log(18.0 / side->disk.delta);
      const bool count_ok = a.count <= 3.0 * budget;
      worst = std::max(worst, a.count / budget);
      passed += a.all() ? 1 : 0;
      within += count_ok ? 1 : 0;
      if ((!a.all() || !count_ok) && o.details.size() < 5)
        o.details.push_back(fmt("instance %zu: audit %d count %d budget %.1f", i, a.all() ? 1 : 0, a.count, budget));
    }
  }
  o.pass = covers > 0 && passed == covers && within == covers;
  o.summary = fmt("%d/%d covers pass the audit; %d/%d counts <= 3 x 18 d ln(18/delta') (max count/budget %.3f)", passed,
                  covers, within, covers, worst);
  return o;
}

// ------------------------------------------------------------------ 8

Outcome criterion8(int workers) {
  Outcome o;
  const auto t0 = Clock::now();
  const MultiPoly z(1, {{{1}, 1.0}});
  std::vector<double> deltas;
  for (int k = 5; k <= 12; ++k) deltas.push_back(std::ldexp(1.0, -k));
  StudyConfig cfg;
  cfg.workers = workers;
  const ScalingStudy s = run_scaling_study(z, std::nullopt, deltas, cfg);
  const double secs = seconds_since(t0);
  bool all_rows = true, kob = true;
  for (const auto& r : s.rows) {
    all_rows = all_rows && r.certified;
    if (r.certified && r.length <= r.bound && std::log(180.0 / r.delta) >= 1.0)
      kob = kob && r.kobayashi_upper <= r.kobayashi_bound;
    o.details.push_back(fmt("delta 2^%d: length %d dc %.4g min_clearance %.4g", static_cast<int>(std::log2(r.delta)),
                            r.length, r.dc, r.min_clearance));
  }
  const bool dc_ok = s.dc_fit.defined && s.dc_fit.slope >= 0.95 && s.dc_fit.slope <= 1.05;
  const bool len_ok = s.length_fit.defined && s.length_fit.r >= 0.99 && s.length_fit.slope > 0.0;
  const bool clr_ok = s.clearance_fit.defined && s.clearance_fit.slope >= 1.0 - 0.2;
  o.pass = all_rows && dc_ok && len_ok && clr_ok && kob && s.design_ok && secs <= 300.0;
  o.summary = fmt("P=z, k=5..12: DC slope %.4f (+-%.2g); length slope %.3f r %.5f; clearance exponent %.4f; "
                  "Kobayashi consistent %d; %.2f s",
                  s.dc_fit.slope, s.dc_fit.slope_ci95, s.length_fit.slope, s.length_fit.r, s.clearance_fit.slope,
                  kob ? 1 : 0, secs);
  return o;
}

// ------------------------------------------------------------------ 9

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(9000);
  const int trials = 500;
  int fails = 0;
  double worst_match = 0.0, worst_res = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int d = 1 + t % 8;
    const UniPoly p = testutil::random_unipoly(rng, d);
    try {
      const RootSet rs = find_roots(p, 1e-10);
      const std::vector<cplx> ref = oracle::companion_roots(p.coeffs());
      const double md = oracle::match_distance(rs.roots, ref);
      // Residual from Horner evaluation here, relative to ||p|| as in the
      // finder's contract.
      double res = 0.0;
      for (cplx r : rs.roots) {
        cplx v = 0.0;
        for (int j = d; j >= 0; --j) v = v * r + p[static_cast<std::size_t>(j)];
        res = std::max(res, std::abs(v) / (p.norm1() * std::pow(std::max(1.0, std::abs(r)), d)));
      }
      worst_match = std::max(worst_match, md);
      worst_res = std::max(worst_res, res);
      if (!(md <= 1e-6) || !(res <= 1e-10)) {
        ++fails;
        if (o.details.size() < 5) o.details.push_back(fmt("trial %d (d=%d): match %.3g residual %.3g", t, d, md, res));
      }
    } catch (const Error& e) {
      ++fails;
      if (o.details.size() < 5) o.details.push_back(fmt("trial %d: %s", t, e.what()));
    }
  }
  o.pass = fails == 0;
  o.summary = fmt("%d/%d polynomials (degree 1..8) match the companion-matrix oracle; max distance %.2e, max residual %.2e",
                  trials - fails, trials, worst_match, worst_res);
  return o;
}

// ------------------------------------------------------------------ 10

Outcome criterion10(const std::vector<Instance>& inst, const std::vector<Built>& w1, int workers) {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<Built> again = build_all(inst, workers, 1);
  const std::vector<Built> w4 = build_all(inst, 1, 4);
  int same = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const bool eq = w1[i].ok && again[i].ok && w4[i].ok && w1[i].json == again[i].json && w1[i].json == w4[i].json;
    same += eq ? 1 : 0;
    if (!eq && o.details.size() < 5) o.details.push_back(fmt("instance %zu differs", i));
  }
  o.pass = same == static_cast<int>(inst.size());
  o.summary = fmt("%d/%zu chain JSON files byte-identical across reruns and workers {1, 4}; %.1f s", same, inst.size(),
                  seconds_since(t0));
  return o;
}

void report(int id, const Outcome& o) {
  std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.summary.c_str());
  for (const auto& d : o.details) std::printf("  %s\n", d.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  int workers = default_workers();
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--workers") == 0) workers = std::max(1, std::atoi(argv[i + 1]));
  std::printf("acceptance run with %d workers\n", workers);

  int failed = 0;
  auto record = [&](int id, const Outcome& o) {
    report(id, o);
    failed += o.pass ? 0 : 1;
  };

  const std::vector<Instance> inst = harness_instances();
  const auto t0 = Clock::now();
  const std::vector<Built> built = build_all(inst, workers, 1);
  // Serial-equivalent time: the sum over instances.
  double serial = 0.0;
  for (const auto& b : built) serial += b.seconds;
  std::printf("  harness: %zu chains in %.1f s wall, %.1f s summed over instances\n", inst.size(), seconds_since(t0),
              serial);

  record(1, criterion1(inst, built, serial));
  record(2, criterion2());
  record(3, criterion3());
  record(4, criterion4());
  record(5, criterion5(workers));
  record(6, criterion6(inst, workers));
  record(7, criterion7(inst, built));
  record(8, criterion8(workers));
  record(9, criterion9());
  record(10, criterion10(inst, built, workers));

  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

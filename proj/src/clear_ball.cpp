#include "dchain/clear_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "dchain/error.hpp"
#include "dchain/parallel.hpp"

namespace dchain {

double rho_const(int n, int d) {
  require(n >= 1 && d >= 1, ErrorCode::kInvalidArgument, "rho needs n, d >= 1");
  return 1.0 / (4.0 * std::pow(16.0 * (d + n), n));
}

double epsilon_const(int n, int d) {
  require(n >= 1 && d >= 1, ErrorCode::kInvalidArgument, "epsilon needs n, d >= 1");
  return 1.0 / std::pow(16.0 * (d + n), n);
}

namespace {

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

}  // namespace

ClearBall find_clear_ball(const MultiPoly& p, std::uint64_t seed, const ClearBallConfig& config) {
  require(is_normalized(p), ErrorCode::kInvalidArgument, "find_clear_ball needs a normalized polynomial");
  const int n = p.dim();
  const int d = std::max(1, p.degree());
  require(2 * n <= static_cast<int>(std::size(kPrimes)), ErrorCode::kUnsupported, "dimension too large");
  const double rho = rho_const(n, d);
  const auto m = static_cast<std::int64_t>(std::llround(1.0 / epsilon_const(n, d)));
  const double eps = 1.0 / static_cast<double>(m);

  double total = 1.0;
  for (int k = 0; k < 2 * n; ++k) total *= static_cast<double>(m);
  const bool exhaustive = total <= static_cast<double>(config.max_enumerated);

  // Candidate cube indices, one integer per real axis.
  std::vector<std::vector<std::int64_t>> cubes;
  if (exhaustive) {
    const auto count = static_cast<std::int64_t>(total);
    cubes.reserve(static_cast<std::size_t>(count));
    for (std::int64_t c = 0; c < count; ++c) {
      std::vector<std::int64_t> idx(static_cast<std::size_t>(2 * n));
      std::int64_t r = c;
      for (auto& x : idx) {
        x = r % m;
        r /= m;
      }
      cubes.push_back(std::move(idx));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> rot(static_cast<std::size_t>(2 * n));
    for (auto& r : rot) r = u(rng);
    for (int s = 1; s <= config.samples; ++s) {
      std::vector<std::int64_t> idx(static_cast<std::size_t>(2 * n));
      for (int k = 0; k < 2 * n; ++k) {
        double x = radical_inverse(static_cast<std::uint64_t>(s), kPrimes[k]) + rot[static_cast<std::size_t>(k)];
        x -= std::floor(x);
        idx[static_cast<std::size_t>(k)] = std::min<std::int64_t>(m - 1, static_cast<std::int64_t>(x * static_cast<double>(m)));
      }
      cubes.push_back(std::move(idx));
    }
    std::sort(cubes.begin(), cubes.end());
    cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
  }

  auto centre_of = [&](const std::vector<std::int64_t>& idx) {
    CVec c(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      c[static_cast<std::size_t>(k)] = cplx((static_cast<double>(idx[static_cast<std::size_t>(2 * k)]) + 0.5) * eps,
                                            (static_cast<double>(idx[static_cast<std::size_t>(2 * k + 1)]) + 0.5) * eps);
    return c;
  };
  std::vector<double> value(cubes.size());
  parallel_for(cubes.size(), config.workers, [&](std::size_t i) { value[i] = std::abs(p(centre_of(cubes[i]))); });
  std::vector<std::size_t> order(cubes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });

  double best_margin = 0.0;
  const int limit = std::min<int>(config.max_candidates, static_cast<int>(order.size()));
  for (int k = 0; k < limit; ++k) {
    CVec c = centre_of(cubes[order[static_cast<std::size_t>(k)]]);
    EllipsoidChart chart = make_ball_chart(c, rho);
    ClearanceCertificate cert = certify_clearance(chart, 4.0, p, config.budget);
    best_margin = std::max(best_margin, cert.min_abs_p);
    if (!cert.certified) continue;
    ClearBall ball;
    ball.center = std::move(c);
    ball.radius = rho;
    ball.margin = cert.margin;
    ball.certificate = std::move(cert);
    ball.candidates_tried = k + 1;
    ball.exhaustive = exhaustive;
    return ball;
  }
  std::ostringstream os;
  os << "no certified clear ball among " << limit << " candidates (best |P| " << best_margin << ")";
  fail(ErrorCode::kCertificationFailed, os.str());
}

// ---------------------------------------------------------------------------

double clip_epsilon(double eps, int n, double max_cubes) {
  require(eps > 0.0 && eps <= 1.0 && n >= 1, ErrorCode::kInvalidArgument, "bad epsilon");
  const auto want = std::max<std::int64_t>(1, std::llround(1.0 / eps));
  auto cap = static_cast<std::int64_t>(std::floor(std::pow(max_cubes, 1.0 / (2 * n))));
  // Guard against pow rounding just below an exact integer root.
  while (std::pow(static_cast<double>(cap + 1), 2 * n) <= max_cubes) ++cap;
  return 1.0 / static_cast<double>(std::min(want, std::max<std::int64_t>(1, cap)));
}

namespace {

struct Box {
  std::vector<std::int64_t> lo, hi;  // half-open index ranges per real axis
};

class VitushkinCounter {
 public:
  VitushkinCounter(const MultiPoly& p, double eps) : p_(p), eps_(eps) {}

  std::int64_t count(const Box& b) const {
    const std::size_t axes = b.lo.size();
    const int n = p_.dim();
    CVec centre(static_cast<std::size_t>(n));
    double r2 = 0.0;
    std::size_t widest = 0;
    std::int64_t cells = 1;
    for (std::size_t k = 0; k < axes; ++k) {
      const auto w = b.hi[k] - b.lo[k];
      cells *= w;
      if (w > b.hi[widest] - b.lo[widest]) widest = k;
      const double half = 0.5 * static_cast<double>(w) * eps_;
      r2 += half * half;
    }
    for (int k = 0; k < n; ++k) {
      const auto re = static_cast<std::size_t>(2 * k), im = re + 1;
      centre[static_cast<std::size_t>(k)] =
          cplx(0.5 * static_cast<double>(b.lo[re] + b.hi[re]) * eps_, 0.5 * static_cast<double>(b.lo[im] + b.hi[im]) * eps_);
    }
    const double radius = std::sqrt(r2);
    const EllipsoidChart ball = make_ball_chart(centre, radius);
    // Boxes get only the initial certification layer before being split.
    // A single cube that still cannot be proved clear is counted; a zero
    // nearby would only confirm the flag, so no witness search is done.
    const int inner = 1 << std::min(2 * n, 20);
    if (cells == 1) return certify_clearance(ball, 1.0, p_, std::max(64, 4 * inner)).certified ? 0 : 1;
    if (certify_clearance(ball, 1.0, p_, inner).certified) return 0;
    const std::int64_t mid = (b.lo[widest] + b.hi[widest]) / 2;
    Box left = b, right = b;
    left.hi[widest] = mid;
    right.lo[widest] = mid;
    return count(left) + count(right);
  }

 private:
  const MultiPoly& p_;
  double eps_;
};

}  // namespace

VitushkinReport vitushkin_count(const MultiPoly& p, double eps, std::uint64_t /*seed*/, int workers) {
  require(eps > 0.0 && eps <= 1.0, ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1]");
  const int n = p.dim();
  require(!p.is_zero(), ErrorCode::kZeroPolynomial, "zero polynomial");
  const auto m = std::max<std::int64_t>(1, std::llround(1.0 / eps));
  double cubes = 1.0;
  for (int k = 0; k < 2 * n; ++k) cubes *= static_cast<double>(m);
  if (cubes > 1e7) {
    std::ostringstream os;
    os << "epsilon grid has " << cubes << " cubes (limit 1e7); use epsilon >= " << clip_epsilon(eps, n);
    fail(ErrorCode::kGridTooLarge, os.str());
  }
  VitushkinReport rep;
  rep.grid = static_cast<int>(m);
  rep.epsilon = 1.0 / static_cast<double>(m);
  const int d = std::max(1, p.degree());
  rep.bound = std::pow(16.0 * (d + n), 2 * n) / std::pow(rep.epsilon, 2 * n - 2);
  if (p.is_constant()) return rep;

  // Split the grid into a few hundred top-level boxes for the workers.
  std::vector<Box> boxes{Box{std::vector<std::int64_t>(static_cast<std::size_t>(2 * n), 0),
                             std::vector<std::int64_t>(static_cast<std::size_t>(2 * n), m)}};
  for (int pass = 0; pass < 8 && boxes.size() < 256; ++pass) {
    std::vector<Box> next;
    for (const Box& b : boxes) {
      std::size_t widest = 0;
      for (std::size_t k = 1; k < b.lo.size(); ++k)
        if (b.hi[k] - b.lo[k] > b.hi[widest] - b.lo[widest]) widest = k;
      if (b.hi[widest] - b.lo[widest] < 2) {
        next.push_back(b);
        continue;
      }
      const std::int64_t mid = (b.lo[widest] + b.hi[widest]) / 2;
      Box l = b, r = b;
      l.hi[widest] = mid;
      r.lo[widest] = mid;
      next.push_back(l);
      next.push_back(r);
    }
    boxes = std::move(next);
  }
  const VitushkinCounter counter(p, rep.epsilon);
  std::vector<std::int64_t> counts(boxes.size(), 0);
  parallel_for(boxes.size(), workers, [&](std::size_t i) { counts[i] = counter.count(boxes[i]); });
  rep.count = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  return rep;
}

}  // namespace dchain

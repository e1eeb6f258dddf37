#include "dchain/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dchain/error.hpp"

namespace dchain {

double root_residual(const UniPoly& p, cplx t) {
  const double scale = std::pow(std::max(1.0, std::abs(t)), p.degree());
  return std::abs(p(t)) / (p.norm1() * scale);
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// One Aberth run from the given starting points. Returns the iteration count.
int aberth(const UniPoly& p, std::vector<cplx>& z, int max_iterations) {
  const std::size_t m = z.size();
  std::vector<bool> done(m, false);
  int it = 0;
  for (; it < max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (done[k]) continue;
      cplx val, der;
      p.eval_with_derivative(z[k], val, der);
      if (val == cplx(0.0)) {
        done[k] = true;
        continue;
      }
      cplx sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == k) continue;
        const cplx diff = z[k] - z[j];
        if (diff != cplx(0.0)) sum += 1.0 / diff;
      }
      const cplx ratio = val / der;
      cplx step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        // p'(z) = 0 or a degenerate denominator: nudge off the critical point.
        step = cplx(1e-3 * (1.0 + std::abs(z[k])), 1e-3);
      }
      z[k] -= step;
      if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(z[k])))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) return it + 1;
  }
  return it;
}

void polish(const UniPoly& p, std::vector<cplx>& z) {
  for (auto& t : z) {
    for (int k = 0; k < 3; ++k) {
      cplx val, der;
      p.eval_with_derivative(t, val, der);
      if (der == cplx(0.0)) break;
      const cplx cand = t - val / der;
      if (root_residual(p, cand) < root_residual(p, t))
        t = cand;
      else
        break;
    }
  }
}

double residual_bound(const UniPoly& p, const std::vector<cplx>& z) {
  double r = 0.0;
  for (auto t : z) r = std::max(r, root_residual(p, t));
  return r;
}

std::vector<cplx> circle_start(std::size_t m, double radius) {
  std::vector<cplx> z(m);
  // Fixed angular offset keeps the start off lines of symmetry of real data.
  const double offset = 0.4;
  for (std::size_t k = 0; k < m; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                  static_cast<double>(m) + offset);
  return z;
}

}  // namespace

RootSet find_roots(const UniPoly& p, double tol, int max_iterations) {
  const int m = p.degree();
  require(m >= 1, ErrorCode::kInvalidArgument, "find_roots needs degree >= 1");
  require(std::abs(p.leading()) / p.norm1() >= 1e-14, ErrorCode::kDegenerateLeading,
          "near-zero leading coefficient");

  double cauchy = 0.0;
  for (int j = 0; j < m; ++j) cauchy = std::max(cauchy, std::abs(p[static_cast<std::size_t>(j)] / p.leading()));

  RootSet out;
  auto z = circle_start(static_cast<std::size_t>(m), 1.0 + cauchy);
  out.iterations = aberth(p, z, max_iterations);
  polish(p, z);
  double res = residual_bound(p, z);
  if (!(res <= tol)) {
    // Second attempt from the geometric-mean root modulus; helps when the
    // Cauchy radius is orders of magnitude above the typical root.
    const double gm = std::pow(std::abs(p[0] / p.leading()), 1.0 / m);
    auto z2 = circle_start(static_cast<std::size_t>(m), std::max(gm, 1e-3));
    const int it2 = aberth(p, z2, max_iterations);
    polish(p, z2);
    const double res2 = residual_bound(p, z2);
    if (res2 < res) {
      z = std::move(z2);
      res = res2;
      out.iterations += it2;
    }
  }
  if (!(res <= tol)) {
    std::ostringstream msg;
    msg << "root finding did not converge: residual " << res << " > tol " << tol;
    fail(ErrorCode::kNonConvergence, msg.str());
  }
  out.roots = std::move(z);
  out.residual_bound = res;
  return out;
}

double dist_to_roots(const RootSet& roots, cplx v) {
  require(!roots.roots.empty(), ErrorCode::kInvalidArgument, "empty root set");
  double best = std::numeric_limits<double>::infinity();
  for (auto t : roots.roots) best = std::min(best, std::abs(t - v));
  return best;
}

}  // namespace dchain

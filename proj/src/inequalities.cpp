#include "dchain/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dchain/error.hpp"
#include "dchain/roots.hpp"

namespace dchain {

double c_d_constant(int d) {
  require(d >= 1, ErrorCode::kInvalidArgument, "c_d needs d >= 1");
  return 1.0 / (4.0 * (d + 1) * std::pow(48.0, d));
}

double markov_gradient_bound(int n, int d) {
  require(n >= 1 && d >= 1, ErrorCode::kInvalidArgument, "markov bound needs n, d >= 1");
  return n * static_cast<double>(d) * d * std::pow(2.0, d);
}

UnivariateLowerCheck check_univariate_lower(const UniPoly& p, cplx v) {
  UnivariateLowerCheck out;
  const int d = p.degree();
  require(d >= 1, ErrorCode::kInvalidArgument, "lower-bound check needs degree >= 1");
  const RootSet roots = find_roots(p, 1e-10);
  out.lhs = std::abs(p(v));
  out.dist = dist_to_roots(roots, v);
  out.scale = std::max({1.0, std::abs(v), out.dist});
  const UniPoly q = p.compose_affine(0.0, out.scale);
  out.rhs = c_d_constant(d) * q.norm1() * std::pow(out.dist / out.scale, d);
  // Root error of order residual * ||p|| moves both sides; fold it in.
  const double slack = 1.0 - 1e-6;
  out.holds = out.lhs >= out.rhs * slack - roots.residual_bound * p.norm1();
  return out;
}

double max_on_circle(const UniPoly& p, cplx center, double radius, int samples) {
  require(samples >= 8, ErrorCode::kInvalidArgument, "need at least 8 circle samples");
  const double step = 2.0 * std::numbers::pi / samples;
  auto f = [&](double theta) { return std::abs(p(center + std::polar(radius, theta))); };
  std::vector<std::pair<double, int>> vals(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) vals[static_cast<std::size_t>(k)] = {f(k * step), k};
  const int keep = std::min(8, samples);
  std::partial_sort(vals.begin(), vals.begin() + keep, vals.end(),
                    [](const auto& a, const auto& b) {
                      return a.first > b.first || (a.first == b.first && a.second < b.second);
                    });
  double best = vals[0].first;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 0; k < keep; ++k) {
    double a = (vals[static_cast<std::size_t>(k)].second - 1) * step;
    double b = (vals[static_cast<std::size_t>(k)].second + 1) * step;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = f(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = f(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

RemezDiskCheck check_remez_disk(const UniPoly& p, cplx center, double kappa) {
  require(kappa > 0.0 && kappa < 1.0, ErrorCode::kInvalidArgument, "kappa must lie in (0,1)");
  require(std::abs(center) + kappa <= 1.0 + 1e-15, ErrorCode::kInvalidArgument,
          "inner disk is not contained in the unit disk");
  RemezDiskCheck out;
  out.max_outer = max_on_circle(p, 0.0, 1.0);
  out.max_inner = max_on_circle(p, center, kappa);
  out.bound = std::pow(12.0 / kappa, std::max(p.degree(), 0));
  out.holds = out.max_outer <= out.bound * out.max_inner * (1.0 + 1e-9);
  return out;
}

}  // namespace dchain

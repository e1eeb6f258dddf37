#pragma once

#include "dchain/poly.hpp"

namespace dchain {

/// c_d = 1 / (4 (d+1) 48^d).
double c_d_constant(int d);

/// n d^2 2^d: gradient bound for a normalized polynomial on the doubled cube.
double markov_gradient_bound(int n, int d);

struct UnivariateLowerCheck {
  double lhs = 0.0;   // |p(v)|
  double rhs = 0.0;   // c_d ||q|| (eta/lambda)^d
  double dist = 0.0;  // eta = dist(v, Z)
  double scale = 1.0; // lambda
  bool holds = false;
};

/// Checks |p(v)| >= c_d ||q|| (eta/lambda)^d with q(s) = p(lambda s) and
/// lambda = max(1, |v|, eta), so that v and its nearest root lie in the
/// closed unit disk of the rescaled variable. When |v| <= 1 and eta <= 1 this
/// is the plain inequality |p(v)| >= c_d ||p|| eta^d.
UnivariateLowerCheck check_univariate_lower(const UniPoly& p, cplx v);

struct RemezDiskCheck {
  double max_outer = 0.0;  // max over the unit disk
  double max_inner = 0.0;  // max over the disk of radius kappa
  double bound = 0.0;      // (12/kappa)^d
  bool holds = false;
};

/// max_{D_1}|p| <= (12/kappa)^d max_{D_kappa(center)}|p|, maxima taken on the
/// boundary circles.
RemezDiskCheck check_remez_disk(const UniPoly& p, cplx center, double kappa);

/// Max of |p| on a circle: `samples` equispaced points, then golden-section
/// refinement around the best eight.
double max_on_circle(const UniPoly& p, cplx center, double radius, int samples = 4096);

}  // namespace dchain

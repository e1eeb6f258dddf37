#pragma once

#include <vector>

#include "dchain/poly.hpp"

namespace dchain {

struct RootSet {
  std::vector<cplx> roots;
  /// max over roots of |p(t)| / (||p|| max(1,|t|)^m). For roots in the closed
  /// unit disk this is exactly |p(t)|/||p||.
  double residual_bound = 0.0;
  int iterations = 0;
};

/// Aberth-Ehrlich simultaneous iteration. Starts from equally spaced points
/// on the circle of radius 1 + max|c_j/c_m|; deterministic. Throws
/// kNonConvergence (with the achieved residual in the message) rather than
/// returning roots above `tol`, and kDegenerateLeading when
/// |c_m|/||p|| < 1e-14.
RootSet find_roots(const UniPoly& p, double tol = 1e-10, int max_iterations = 200);

double root_residual(const UniPoly& p, cplx t);

/// min_s |t_s - v|.
double dist_to_roots(const RootSet& roots, cplx v);

}  // namespace dchain

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dchain/chain.hpp"
#include "dchain/poly.hpp"

namespace dchain {

/// 3 l(Ch). Throws kInvalidArgument for a chain whose report is not
/// all_certified.
double kobayashi_upper(const DoublingChain& chain);

/// 180 d ln(180 d / delta).
double kobayashi_length_bound(int d, double delta);

/// f = A / P^k sampled on finite grids G and Omega.
struct DoublingQuery {
  MultiPoly numerator;
  MultiPoly denominator;
  int power = 1;
  std::vector<CVec> G;
  std::vector<CVec> omega;
  /// Declared ball inside Omega (radius checked against rho(n, d) / 10).
  std::optional<CVec> omega_center;
  double omega_radius = 0.0;
  /// Grid spacing, used as the initial step of the refinement pass.
  double spacing = 0.0;
  /// Domain predicates for refined points. Without them no refinement
  /// happens.
  std::function<bool(const CVec&)> in_G;
  std::function<bool(const CVec&)> in_omega;
};

/// Checks the query invariants: Omega is a subset of G (as point sets), P
/// does not vanish on either grid, the declared ball is large enough.
void validate_query(const DoublingQuery& q);

cplx evaluate_query(const DoublingQuery& q, std::span<const cplx> z);

struct DoublingResult {
  double max_G = 0.0;
  double max_omega = 0.0;
  double dc = 0.0;
  CVec argmax_G;
  CVec argmax_omega;
};

/// Grid maxima of |f| over G and Omega, each followed by one pattern-search
/// refinement around the best grid point; dc = max_G / max_omega.
DoublingResult doubling_constant(const DoublingQuery& q, int workers = 1);

struct LinearFit {
  bool defined = false;
  int points = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  double slope_se = 0.0;
  /// Half-width of the 95% confidence interval of the slope (Student t).
  double slope_ci95 = 0.0;
};

/// Ordinary least squares y = intercept + slope x; undefined below 3 points.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct StudyRow {
  double delta = 0.0;
  int length = 0;
  double bound = 0.0;
  double dc = 0.0;
  double min_clearance = 0.0;
  double kobayashi_upper = 0.0;
  double kobayashi_bound = 0.0;
  bool delta_above_rho = false;
  bool certified = false;
  std::string error;
};

struct ScalingStudy {
  std::vector<StudyRow> rows;
  /// ln DC against ln(1/delta).
  LinearFit dc_fit;
  /// l(Ch) against ln(1/delta).
  LinearFit length_fit;
  /// ln(min_clearance) against ln(delta).
  LinearFit clearance_fit;
  /// At least four deltas spanning two decades.
  bool design_ok = false;
};

struct StudyConfig {
  ChainConfig chain;
  /// Grid points per real dimension of the unit cube (0: 256 for n = 1,
  /// 64 for n = 2).
  int grid_density = 0;
  /// Grid points per real dimension across the clear ball.
  int omega_density = 32;
  int workers = 1;
};

/// For every delta: a point v_delta at distance about delta from H (moved
/// from a zero of P towards v_far), a verified chain v_delta -> v_far, and
/// DC_{1/P}(Q^delta grid, clear-ball grid). Failed legs are recorded and
/// excluded from the fits. Without v_far the clear ball's centre is used.
ScalingStudy run_scaling_study(const MultiPoly& p, std::optional<CVec> v_far,
                               const std::vector<double>& deltas, const StudyConfig& config = {});

}  // namespace dchain

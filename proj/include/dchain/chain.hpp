#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dchain/clear_ball.hpp"
#include "dchain/geom.hpp"
#include "dchain/poly.hpp"
#include "dchain/punctured_disk.hpp"

namespace dchain {

struct LineSelection {
  CVec z_star;
  CLine line;
  /// Line parameter of z_star (real and positive).
  double t_star = 0.0;
  /// l1 norm of P restricted to the line based at the endpoint.
  double norm_pl = 0.0;
  /// The endpoint already lies in the clear ball; no line is needed.
  bool trivial = false;
};

/// Samples `num_samples` points of the clear ball within half its radius of
/// the centre (Halton sequence with a seeded rotation, so smaller sample sets
/// are prefixes of larger ones) and returns the line through v maximizing
/// the restricted norm.
LineSelection select_line(const MultiPoly& p, std::span<const cplx> v, const ClearBall& ball,
                          int num_samples, std::uint64_t seed);

/// Co-centred charts leading from `from` to the round chart of radius
/// `target` at the same centre. The long axis moves towards `target` by a
/// factor of at most 4 per step, then the transverse axes grow by 4 per step.
/// The round end chart is included.
std::vector<EllipsoidChart> transition_charts(const EllipsoidChart& from, double target);

struct ChainConfig {
  std::uint64_t seed = 1;
  int select_samples = 64;
  int admission_lines = 256;
  int budget = 1 << 14;
  int resolution = 2048;
  int workers = 1;
  double path_margin = 0.01;
  /// Accept delta above rho(n, d) (used by the scaling study).
  bool allow_delta_above_rho = false;
  ClearBallConfig ball;
};

struct EndpointAdmission {
  double lower = 0.0;
  double upper = 0.0;
  /// dist_lower >= delta: membership in Q^delta is certified.
  bool verified = false;
  /// Neither certified nor refuted by the probe lines.
  bool unverified_margin = false;
};

struct ChainSide {
  bool trivial = false;
  LineSelection selection;
  UniPoly restricted;
  PuncturedDisk disk;
  DiskCover cover;
  CoverAudit audit;
  double c6_line = 0.0;
  /// Floor ratio used for the transverse semi-axes of the lifted disks.
  double transverse_ratio = 0.0;
  int disk_charts = 0;
  int transition_count = 0;
};

struct ChainReport {
  int length = 0;
  double length_bound = 0.0;
  double rho_chain = 0.0;  // +inf for a single chart
  double rho_bound = 0.0;
  double min_clearance = 0.0;
  /// Largest distance by which a chart's bounding box leaves the unit cube.
  double cube_excess = 0.0;
  bool charts_certified = false;
  bool junctions_positive = false;
  bool endpoints_contained = false;
  bool length_ok = false;
  bool rho_ok = false;
  bool unverified_margin = false;
  std::vector<int> failing_charts;
  bool all_certified = false;
};

struct DoublingChain {
  CVec v1, v2;
  double delta = 0.0;
  std::vector<EllipsoidChart> charts;
  std::vector<double> junction_radii;
  /// Filled by build_chain only.
  std::optional<ClearBall> ball;
  ChainSide side1, side2;
  EndpointAdmission admission1, admission2;
  bool single_chart = false;
  ChainReport report;
};

/// Builds a certified doubling chain joining v1 and v2 in the complement of
/// {P = 0}. Throws kEndpointWithinDelta (with a witness point in the
/// message), kDeltaTooLarge, kPathNotFound or kCertificationFailed.
DoublingChain build_chain(const MultiPoly& p, std::span<const cplx> v1, std::span<const cplx> v2,
                          double delta, const ChainConfig& config = {});

struct VerifyConfig {
  int budget = 1 << 14;
  int workers = 1;
};

/// Independent audit of an arbitrary chain: re-certifies every chart at
/// scale 4 and 1, recomputes junction radii and endpoint membership and
/// compares with the length and radius bounds. Never throws on a bad chain.
ChainReport verify_chain(const DoublingChain& chain, const MultiPoly& p, double delta,
                         const VerifyConfig& config = {});

/// 36 d ln(180 d / delta) + 1 (1 for d = 0).
double chain_length_bound(int d, double delta);
/// 2^{-d} / 3.
double chain_rho_bound(int d);

}  // namespace dchain

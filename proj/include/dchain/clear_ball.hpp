#pragma once

#include <cstdint>

#include "dchain/geom.hpp"
#include "dchain/poly.hpp"

namespace dchain {

/// 1 / (4 (16 (d+n))^n).
double rho_const(int n, int d);
/// 1 / (16 (d+n))^n, which equals 4 rho_const(n, d).
double epsilon_const(int n, int d);

struct ClearBall {
  CVec center;
  double radius = 0.0;
  /// Certified lower bound for |P| on the 4x ball.
  double margin = 0.0;
  ClearanceCertificate certificate;
  /// Candidate cubes whose 4x ball went through certification.
  int candidates_tried = 0;
  /// True when every epsilon-cube was ranked; false when a sample was used.
  bool exhaustive = false;
};

struct ClearBallConfig {
  /// Exhaustive ranking when the epsilon-grid has at most this many cubes.
  std::int64_t max_enumerated = 1 << 20;
  /// Sampled cube centres otherwise.
  int samples = 8192;
  int max_candidates = 256;
  int budget = 1 << 14;
  int workers = 1;
};

/// Ranks epsilon-cubes of the unit cube by |P| at their centres (largest
/// first) and returns the first whose concentric ball of radius 4 rho is
/// certified clear of H. The returned ball has radius exactly rho(n, d).
/// Throws kCertificationFailed with the best margin seen when no candidate
/// certifies.
ClearBall find_clear_ball(const MultiPoly& p, std::uint64_t seed, const ClearBallConfig& config = {});

struct VitushkinReport {
  double epsilon = 0.0;
  std::int64_t count = 0;
  double bound = 0.0;
  /// Cubes per real axis.
  int grid = 0;
};

/// 1 / min(round(1/eps), floor(max_cubes^{1/(2n)})) so that the grid has at
/// most max_cubes cubes.
double clip_epsilon(double eps, int n, double max_cubes = 1e7);

/// Counts epsilon-cubes flagged as meeting H: a cube is flagged when its
/// circumscribed ball cannot be certified clear, so the count is an upper
/// bound for the number of cubes that meet H. Boxes of cubes whose
/// circumscribed ball certifies are discarded wholesale. The count is
/// deterministic; `seed` is kept for interface stability. bound =
/// (16(d+n))^{2n} / eps^{2n-2}. Throws kGridTooLarge above 1e7 cubes.
VitushkinReport vitushkin_count(const MultiPoly& p, double eps, std::uint64_t seed = 1,
                                int workers = 1);

}  // namespace dchain

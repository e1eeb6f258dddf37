#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dchain/poly.hpp"

namespace dchain {

/// Square complex matrix, row-major.
struct CMat {
  int n = 0;
  std::vector<cplx> a;

  static CMat identity(int n);
  cplx operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  /// max |(M M^H - I)_ij|.
  double unitarity_error() const;
};

/// Unitary frame whose first column is `direction` (unit norm); remaining
/// columns by complex Gram-Schmidt against e_1..e_n in index order.
CMat complete_frame(std::span<const cplx> direction);

double c4_constant(int n, int d);

bool in_unit_cube(std::span<const cplx> v, double tol = 0.0);

struct DistanceLower {
  double value = 0.0;
  /// Constant P: H is empty and `value` is the floor 1.
  bool degenerate = false;
};

/// |P(v)| / (n d^2 2^d), a lower bound for dist(v, H) when ||P|| = 1 and
/// v in the unit cube [0,1]^{2n}.
DistanceLower dist_lower(const MultiPoly& p, std::span<const cplx> v);

struct DistanceBracket {
  double lower = 0.0;
  double upper = 0.0;
  CVec point;
  /// Nearest line-root found; |witness - point| == upper.
  CVec witness;
  /// Best root image on every probed line, kept for audit.
  std::vector<CVec> line_witnesses;
  int lines_used = 0;
};

/// Restricts P to `num_lines` lines through v (the conjugate-gradient
/// direction first, then seeded Gaussian directions) and takes the nearest
/// root. `lower` comes from dist_lower when v is in the unit cube (and P is
/// normalized), else 0.
DistanceBracket dist_upper(const MultiPoly& p, std::span<const cplx> v, int num_lines,
                           std::uint64_t seed);

enum class ChartKind { kDisk, kTransition, kBall };

const char* chart_kind_name(ChartKind kind);
ChartKind chart_kind_from_name(const std::string& name);

/// Affine chart psi(x) = center + frame diag(semi_axes) x on the unit ball.
struct EllipsoidChart {
  CVec center;
  CMat frame;
  std::vector<double> semi_axes;
  double c6_line = 0.0;
  ChartKind kind = ChartKind::kDisk;

  int dim() const { return static_cast<int>(center.size()); }
  bool is_round() const;
  CVec map(std::span<const cplx> x, double scale = 1.0) const;
  CVec preimage(std::span<const cplx> z) const;
  /// |psi^{-1}(z)| < 1.
  bool contains(std::span<const cplx> z) const;
};

/// Chart over the disk (line(t0), R): semi-axes (R, h, ..., h) with
/// h = max(c6_line R^d / 4, transverse_ratio R).
EllipsoidChart lift_disk(const CLine& line, cplx t0, double radius, double c6_line, int d,
                         double transverse_ratio = 0.0);

EllipsoidChart make_ball_chart(CVec center, double radius);

/// Chart with an explicit frame and semi-axes (used for transition charts).
EllipsoidChart make_chart(CVec center, CMat frame, std::vector<double> semi_axes,
                          ChartKind kind, double c6_line = 0.0);

struct ClearanceCertificate {
  EllipsoidChart chart;
  double scale = 4.0;
  /// Smallest |P| seen at a cell centre.
  double min_abs_p = 0.0;
  /// Certified lower bound for |P| over the scaled chart (0 unless certified).
  double margin = 0.0;
  int cells = 0;
  int budget = 0;
  bool certified = false;
};

/// Proves |P| > 0 on psi(scale * B_1) by adaptive subdivision of the preimage
/// box [-1,1]^{2n}: each cell is discharged by a Taylor enclosure of P o psi
/// at its centre. Cells are processed breadth first; running out of budget
/// yields certified = false, which means inconclusive.
ClearanceCertificate certify_clearance(const EllipsoidChart& chart, double scale,
                                       const MultiPoly& p, int budget);

struct IntersectionWitness {
  double radius = 0.0;  // min(radius_i, radius_j)
  CVec center_i;        // ball centre in chart i's preimage
  double radius_i = 0.0;
  CVec center_j;
  double radius_j = 0.0;
};

/// Lower bound for the intersection radius of two charts sharing a frame (or
/// where one is round). Each side places a ball on the preimage of the
/// segment between the centres and grows it while a sufficient containment
/// condition holds. Returns radius 0 for charts too far apart to meet.
IntersectionWitness intersection_radius_witness(const EllipsoidChart& ci,
                                                const EllipsoidChart& cj);
double intersection_radius_lower(const EllipsoidChart& ci, const EllipsoidChart& cj);

}  // namespace dchain

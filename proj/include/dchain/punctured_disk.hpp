#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dchain/poly.hpp"

namespace dchain {

/// Disk in C with a finite puncture set Z; `delta` is the radius of the
/// removed neighbourhood Z^delta.
struct PuncturedDisk {
  cplx center = 0.0;
  double radius = 1.0;
  std::vector<cplx> punctures;
  double delta = 0.0;
};

/// delta / (10 d).
double delta_prime(double delta, int d);

/// min_s |z - Z_s|, +inf for an empty puncture set.
double clearance(const PuncturedDisk& pd, cplx z);
/// Distance from the segment [a, b] to the puncture set.
double segment_clearance(const PuncturedDisk& pd, cplx a, cplx b);

/// Brute-force connectivity oracle: rasterizes the disk at
/// resolution x resolution pixels (a pixel is free iff its centre lies in the
/// open disk and outside Z^delta), labels free pixels by 4-connected flood
/// fill and compares the labels of v1 and v2. A point whose own pixel is not
/// free is attached to the nearest free pixel within two pixels that it sees
/// along a clear segment.
bool same_component_grid(const PuncturedDisk& pd, cplx v1, cplx v2, int resolution);

struct ComponentDiameters {
  std::vector<double> diameters;
  double pixel = 0.0;
};

/// Diameters of the 8-connected components of the rasterized Z^delta inside
/// the disk (pixel centres in the open delta-neighbourhood).
ComponentDiameters puncture_component_diameters(const PuncturedDisk& pd, int resolution);

using Polyline = std::vector<cplx>;

/// Polyline from v1 to v2 inside the disk keeping distance at least
/// delta (1 + margin) from Z. Uses the direct segment when it is no closer
/// to Z than the endpoints; otherwise 8-connected grid BFS followed by
/// greedy shortcutting that never lowers the clearance of the replaced
/// stretch. Doubles the resolution on failure up to 4x, then throws
/// kPathNotFound.
Polyline find_path(const PuncturedDisk& pd, cplx v1, cplx v2, int resolution = 2048,
                   double margin = 0.01);

double polyline_length(const Polyline& path);
/// Minimum distance from the polyline to Z (exact, per segment).
double polyline_clearance(const PuncturedDisk& pd, const Polyline& path);

struct Disk {
  cplx center;
  double radius = 0.0;
};

struct DiskCover {
  std::vector<Disk> disks;
  /// Chain adjacency: consecutive index pairs.
  std::vector<std::pair<int, int>> adjacency;
  double beta = 6.0;
  double r_max = 0.0;
  Polyline path;
};

/// Greedy path-following chain of dyadic disks R_max 2^{-k}. Each disk's
/// radius is at most dist(centre, Z)/6; consecutive radii differ by a factor
/// in {1/2, 1, 2} and consecutive centres are at most (2/3) min(R_i, R_j)
/// apart along the path. The first disk is centred at the path start and
/// the last at the path end.
DiskCover build_disk_chain(const PuncturedDisk& pd, const Polyline& path, double r_max);

struct CoverAudit {
  bool beta_clearance = true;  // dist(centre, Z) >= beta R
  bool dyadic = true;
  bool ratios = true;          // adjacent ratios in {1/2, 1, 2}
  bool overlap = true;         // adjacent lens holds a disk of radius min(R)/3
  bool connected = true;       // adjacency links every consecutive pair
  bool coverage = true;        // union of disks contains the path
  bool endpoints = true;
  int count = 0;
  /// 18 d ln(18 / delta) with d = |Z|.
  double count_budget = 0.0;
  std::vector<std::string> failures;

  bool all() const {
    return beta_clearance && dyadic && ratios && overlap && connected && coverage && endpoints;
  }
};

CoverAudit audit_cover(const DiskCover& cover, const PuncturedDisk& pd);

/// Largest radius of a disk inside the intersection of two disks (0 if
/// disjoint).
double lens_inradius(const Disk& a, const Disk& b);

}  // namespace dchain

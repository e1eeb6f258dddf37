#include "dchain/punctured_disk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <sstream>

#include "dchain/error.hpp"

namespace dchain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0.0 ? std::real((p - a) * std::conj(ab)) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Square pixel grid over the bounding box of the disk.
struct Grid {
  cplx origin;
  double h = 0.0;
  int res = 0;

  Grid(const PuncturedDisk& pd, int resolution)
      : origin(pd.center - cplx(pd.radius, pd.radius)), h(2.0 * pd.radius / resolution), res(resolution) {}

  cplx centre(int i, int j) const { return origin + cplx(h * (i + 0.5), h * (j + 0.5)); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * static_cast<std::size_t>(res) + static_cast<std::size_t>(i); }
  std::size_t size() const { return static_cast<std::size_t>(res) * static_cast<std::size_t>(res); }
  std::pair<int, int> locate(cplx z) const {
    const cplx u = (z - origin) / h;
    return {std::clamp(static_cast<int>(std::floor(u.real())), 0, res - 1),
            std::clamp(static_cast<int>(std::floor(u.imag())), 0, res - 1)};
  }
};

// free[idx] = 1 iff the pixel centre is within `inner` of the disk centre
// and at distance >= block from every puncture.
std::vector<std::uint8_t> rasterize_free(const PuncturedDisk& pd, const Grid& g, double inner,
                                         double block) {
  std::vector<std::uint8_t> free_px(g.size(), 0);
  for (int j = 0; j < g.res; ++j)
    for (int i = 0; i < g.res; ++i)
      if (std::abs(g.centre(i, j) - pd.center) < inner) free_px[g.index(i, j)] = 1;
  for (cplx z : pd.punctures) {
    const auto [i0, j0] = g.locate(z - cplx(block, block));
    const auto [i1, j1] = g.locate(z + cplx(block, block));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (std::abs(g.centre(i, j) - z) < block) free_px[g.index(i, j)] = 0;
  }
  return free_px;
}

// Free pixels within `reach` pixels of z that z sees along a segment of
// clearance >= need, nearest first.
std::vector<std::size_t> attach(const PuncturedDisk& pd, const Grid& g,
                                const std::vector<std::uint8_t>& free_px, cplx z, int reach,
                                double need) {
  const auto [ci, cj] = g.locate(z);
  std::vector<std::pair<double, std::size_t>> cands;
  for (int j = std::max(0, cj - reach); j <= std::min(g.res - 1, cj + reach); ++j)
    for (int i = std::max(0, ci - reach); i <= std::min(g.res - 1, ci + reach); ++i) {
      const std::size_t idx = g.index(i, j);
      if (!free_px[idx]) continue;
      const cplx c = g.centre(i, j);
      if (std::abs(c - pd.center) >= pd.radius) continue;
      if (segment_clearance(pd, z, c) < need) continue;
      cands.emplace_back(std::abs(c - z), idx);
    }
  std::sort(cands.begin(), cands.end());
  std::vector<std::size_t> out;
  for (const auto& c : cands) out.push_back(c.second);
  return out;
}

std::vector<int> label_components(const std::vector<std::uint8_t>& mask, int res, bool eight) {
  std::vector<int> label(mask.size(), -1);
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < mask.size(); ++s) {
    if (!mask[s] || label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(cur % static_cast<std::size_t>(res));
      const int j = static_cast<int>(cur / static_cast<std::size_t>(res));
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          if (!eight && di != 0 && dj != 0) continue;
          const int ni = i + di, nj = j + dj;
          if (ni < 0 || nj < 0 || ni >= res || nj >= res) continue;
          const std::size_t nidx = static_cast<std::size_t>(nj) * static_cast<std::size_t>(res) + static_cast<std::size_t>(ni);
          if (mask[nidx] && label[nidx] < 0) {
            label[nidx] = next;
            stack.push_back(nidx);
          }
        }
    }
    ++next;
  }
  return label;
}

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

double point_set_diameter(std::vector<cplx> pts) {
  if (pts.size() < 2) return 0.0;
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<cplx> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double best = 0.0;
  for (std::size_t a = 0; a < hull.size(); ++a)
    for (std::size_t b = a + 1; b < hull.size(); ++b) best = std::max(best, std::abs(hull[a] - hull[b]));
  return best;
}

void check_disk(const PuncturedDisk& pd) {
  require(pd.radius > 0.0 && std::isfinite(pd.radius), ErrorCode::kInvalidArgument,
          "disk radius must be positive");
  require(pd.delta >= 0.0, ErrorCode::kInvalidArgument, "neighbourhood radius must be >= 0");
}

}  // namespace

double delta_prime(double delta, int d) {
  require(delta > 0.0 && d >= 1, ErrorCode::kInvalidArgument, "delta_prime needs delta > 0, d >= 1");
  return delta / (10.0 * d);
}

double clearance(const PuncturedDisk& pd, cplx z) {
  double c = kInf;
  for (cplx p : pd.punctures) c = std::min(c, std::abs(z - p));
  return c;
}

double segment_clearance(const PuncturedDisk& pd, cplx a, cplx b) {
  double c = kInf;
  for (cplx p : pd.punctures) c = std::min(c, point_segment_distance(p, a, b));
  return c;
}

bool same_component_grid(const PuncturedDisk& pd, cplx v1, cplx v2, int resolution) {
  check_disk(pd);
  require(resolution >= 512, ErrorCode::kInvalidArgument, "resolution must be >= 512");
  for (cplx v : {v1, v2}) {
    require(std::abs(v - pd.center) < pd.radius, ErrorCode::kInvalidArgument, "point outside the disk");
    require(clearance(pd, v) >= pd.delta, ErrorCode::kInvalidArgument,
            "point inside a puncture neighbourhood");
  }
  if (v1 == v2) return true;
  const Grid g(pd, resolution);
  const auto free_px = rasterize_free(pd, g, pd.radius, pd.delta);
  const auto a1 = attach(pd, g, free_px, v1, 2, pd.delta);
  const auto a2 = attach(pd, g, free_px, v2, 2, pd.delta);
  if (a1.empty() || a2.empty()) return false;
  const auto label = label_components(free_px, resolution, false);
  for (auto p : a1)
    for (auto q : a2)
      if (label[p] == label[q]) return true;
  return false;
}

ComponentDiameters puncture_component_diameters(const PuncturedDisk& pd, int resolution) {
  check_disk(pd);
  const Grid g(pd, resolution);
  std::vector<std::uint8_t> mask(g.size(), 0);
  for (cplx z : pd.punctures) {
    const auto [i0, j0] = g.locate(z - cplx(pd.delta, pd.delta));
    const auto [i1, j1] = g.locate(z + cplx(pd.delta, pd.delta));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        const cplx c = g.centre(i, j);
        if (std::abs(c - z) < pd.delta && std::abs(c - pd.center) < pd.radius) mask[g.index(i, j)] = 1;
      }
  }
  const auto label = label_components(mask, resolution, true);
  std::vector<std::vector<cplx>> comps;
  for (std::size_t idx = 0; idx < label.size(); ++idx) {
    if (label[idx] < 0) continue;
    const auto l = static_cast<std::size_t>(label[idx]);
    if (comps.size() <= l) comps.resize(l + 1);
    comps[l].push_back(g.centre(static_cast<int>(idx % static_cast<std::size_t>(resolution)),
                                static_cast<int>(idx / static_cast<std::size_t>(resolution))));
  }
  ComponentDiameters out;
  out.pixel = g.h;
  for (auto& c : comps) out.diameters.push_back(point_set_diameter(std::move(c)));
  return out;
}

double polyline_length(const Polyline& path) {
  double s = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) s += std::abs(path[i] - path[i - 1]);
  return s;
}

double polyline_clearance(const PuncturedDisk& pd, const Polyline& path) {
  if (path.size() == 1) return clearance(pd, path[0]);
  double c = kInf;
  for (std::size_t i = 1; i < path.size(); ++i) c = std::min(c, segment_clearance(pd, path[i - 1], path[i]));
  return c;
}

namespace {

Polyline grid_path(const PuncturedDisk& pd, cplx v1, cplx v2, int resolution, double need) {
  const Grid g(pd, resolution);
  const double half_diag = g.h * std::sqrt(0.5);
  const auto free_px = rasterize_free(pd, g, pd.radius - half_diag, need + half_diag);
  const auto s1 = attach(pd, g, free_px, v1, 3, need);
  const auto s2 = attach(pd, g, free_px, v2, 3, need);
  if (s1.empty() || s2.empty()) return {};

  // dir: 0 unvisited, 9 source, else 1 + index of the step taken to arrive.
  static constexpr int kDi[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  std::vector<std::uint8_t> dir(g.size(), 0);
  std::vector<std::uint8_t> goal(g.size(), 0);
  for (auto q : s2) goal[q] = 1;
  std::deque<std::size_t> queue;
  for (auto p : s1) {
    dir[p] = 9;
    queue.push_back(p);
  }
  std::size_t hit = g.size();
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    if (goal[cur]) {
      hit = cur;
      break;
    }
    const int i = static_cast<int>(cur % static_cast<std::size_t>(g.res));
    const int j = static_cast<int>(cur / static_cast<std::size_t>(g.res));
    for (int k = 0; k < 8; ++k) {
      const int ni = i + kDi[k], nj = j + kDj[k];
      if (ni < 0 || nj < 0 || ni >= g.res || nj >= g.res) continue;
      const std::size_t nidx = g.index(ni, nj);
      if (!free_px[nidx] || dir[nidx]) continue;
      dir[nidx] = static_cast<std::uint8_t>(k + 1);
      queue.push_back(nidx);
    }
  }
  if (hit == g.size()) return {};
  Polyline rev{v2};
  std::size_t cur = hit;
  for (;;) {
    const int i = static_cast<int>(cur % static_cast<std::size_t>(g.res));
    const int j = static_cast<int>(cur / static_cast<std::size_t>(g.res));
    rev.push_back(g.centre(i, j));
    if (dir[cur] == 9) break;
    const int k = dir[cur] - 1;
    cur = g.index(i - kDi[k], j - kDj[k]);
  }
  rev.push_back(v1);
  return Polyline(rev.rbegin(), rev.rend());
}

Polyline shortcut(const PuncturedDisk& pd, const Polyline& raw, double need) {
  Polyline out{raw.front()};
  std::size_t i = 0;
  while (i + 1 < raw.size()) {
    std::size_t best = i + 1;
    // Smallest vertex clearance on the stretch i..j; a shortcut may not go
    // below it.
    double stretch = clearance(pd, raw[i]);
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      stretch = std::min(stretch, clearance(pd, raw[j]));
      if (j == i + 1) continue;
      const double c = segment_clearance(pd, raw[i], raw[j]);
      if (c < need) break;
      if (c >= stretch) best = j;
    }
    out.push_back(raw[best]);
    i = best;
  }
  return out;
}

}  // namespace

Polyline find_path(const PuncturedDisk& pd, cplx v1, cplx v2, int resolution, double margin) {
  check_disk(pd);
  require(resolution >= 16 && margin >= 0.0, ErrorCode::kInvalidArgument, "bad path parameters");
  const double need = pd.delta * (1.0 + margin);
  for (cplx v : {v1, v2}) {
    require(std::abs(v - pd.center) < pd.radius, ErrorCode::kInvalidArgument, "path endpoint outside the disk");
    require(clearance(pd, v) >= need, ErrorCode::kInvalidArgument, "path endpoint too close to a puncture");
  }
  const double direct = segment_clearance(pd, v1, v2);
  if (direct >= need && direct >= std::min(clearance(pd, v1), clearance(pd, v2))) return {v1, v2};
  for (int res = resolution; res <= 4 * resolution; res *= 2) {
    Polyline raw = grid_path(pd, v1, v2, res, need);
    if (!raw.empty()) return shortcut(pd, raw, need);
  }
  fail(ErrorCode::kPathNotFound, "no clear path between the endpoints at the available resolutions");
}

// ---------------------------------------------------------------------------

namespace {

// Arc-length parametrisation of a polyline.
struct ArcPath {
  const Polyline& p;
  std::vector<double> cum;

  explicit ArcPath(const Polyline& path) : p(path), cum(path.size(), 0.0) {
    for (std::size_t i = 1; i < p.size(); ++i) cum[i] = cum[i - 1] + std::abs(p[i] - p[i - 1]);
  }
  double length() const { return cum.back(); }
  cplx at(double s) const {
    if (s <= 0.0) return p.front();
    if (s >= length()) return p.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), s);
    const std::size_t k = static_cast<std::size_t>(it - cum.begin());
    const double seg = cum[k] - cum[k - 1];
    const double t = seg > 0.0 ? (s - cum[k - 1]) / seg : 0.0;
    return p[k - 1] + t * (p[k] - p[k - 1]);
  }
};

// Largest R_max 2^{-k} <= min(r_max, c / beta).
double dyadic_target(double r_max, double c, double beta) {
  const double cap = std::min(r_max, c / beta);
  if (!(cap > 0.0)) return 0.0;
  double r = r_max;
  while (r > cap) r *= 0.5;
  return r;
}

double dyadic_level(double r, double r_max) { return std::log2(r_max / r); }

}  // namespace

DiskCover build_disk_chain(const PuncturedDisk& pd, const Polyline& path, double r_max) {
  require(!path.empty(), ErrorCode::kInvalidArgument, "empty path");
  require(r_max > 0.0, ErrorCode::kInvalidArgument, "r_max must be positive");
  constexpr double kBeta = 6.0;
  DiskCover cover;
  cover.r_max = r_max;
  cover.path = path;
  const ArcPath arc(path);
  const double total = arc.length();

  double s = 0.0;
  double r = dyadic_target(r_max, clearance(pd, path.front()), kBeta);
  require(r > 0.0, ErrorCode::kInvalidArgument, "path starts on a puncture");
  cover.disks.push_back({path.front(), r});
  while (s < total) {
    bool placed = false;
    for (double factor : {2.0, 1.0, 0.5}) {
      const double rn = r * factor;
      if (rn > r_max) continue;
      double s_next = std::min(total, s + (2.0 / 3.0) * std::min(r, rn));
      if (total - s_next <= 1e-12 * total) s_next = total;
      const cplx c = arc.at(s_next);
      if (rn <= dyadic_target(r_max, clearance(pd, c), kBeta)) {
        cover.disks.push_back({c, rn});
        s = s_next;
        r = rn;
        placed = true;
        break;
      }
    }
    if (!placed) fail(ErrorCode::kInvalidArgument, "path comes too close to a puncture for the cover");
  }
  for (int i = 0; i + 1 < static_cast<int>(cover.disks.size()); ++i) cover.adjacency.emplace_back(i, i + 1);
  return cover;
}

double lens_inradius(const Disk& a, const Disk& b) {
  const double d = std::abs(a.center - b.center);
  const double lo = std::min(a.radius, b.radius), hi = std::max(a.radius, b.radius);
  if (d >= a.radius + b.radius) return 0.0;
  if (d <= hi - lo) return lo;
  return 0.5 * (a.radius + b.radius - d);
}

namespace {

// Parameter interval of the segment a + t (b - a), t in [0,1], inside the disk.
bool chord(cplx a, cplx b, const Disk& D, double& t0, double& t1) {
  const cplx ab = b - a;
  const cplx ac = a - D.center;
  const double A = std::norm(ab);
  if (A == 0.0) {
    if (std::abs(ac) < D.radius) {
      t0 = 0.0;
      t1 = 1.0;
      return true;
    }
    return false;
  }
  const double B = 2.0 * std::real(ac * std::conj(ab));
  const double C = std::norm(ac) - D.radius * D.radius;
  const double disc = B * B - 4.0 * A * C;
  if (disc <= 0.0) return false;
  const double sq = std::sqrt(disc);
  t0 = std::max(0.0, (-B - sq) / (2.0 * A));
  t1 = std::min(1.0, (-B + sq) / (2.0 * A));
  return t0 < t1;
}

}  // namespace

CoverAudit audit_cover(const DiskCover& cover, const PuncturedDisk& pd) {
  CoverAudit a;
  a.count = static_cast<int>(cover.disks.size());
  const int d = static_cast<int>(pd.punctures.size());
  a.count_budget = (d > 0 && pd.delta > 0.0) ? 18.0 * d * std::log(18.0 / pd.delta) : 0.0;
  auto note = [&](bool& flag, const std::string& what) {
    flag = false;
    if (a.failures.size() < 32) a.failures.push_back(what);
  };
  if (cover.disks.empty()) {
    note(a.endpoints, "empty cover");
    return a;
  }
  for (std::size_t i = 0; i < cover.disks.size(); ++i) {
    const Disk& D = cover.disks[i];
    const double c = clearance(pd, D.center);
    if (!(c >= cover.beta * D.radius)) {
      std::ostringstream os;
      os << "beta_clearance: disk " << i << " radius " << D.radius << " at distance " << c << " from Z";
      note(a.beta_clearance, os.str());
    }
    const double lvl = dyadic_level(D.radius, cover.r_max);
    if (!(lvl >= -1e-9 && std::abs(lvl - std::round(lvl)) <= 1e-9)) {
      std::ostringstream os;
      os << "dyadic: disk " << i << " radius " << D.radius << " is not r_max 2^-k";
      note(a.dyadic, os.str());
    }
  }
  std::vector<std::uint8_t> linked(cover.disks.size(), 0);
  for (const auto& [i, j] : cover.adjacency) {
    if (i < 0 || j < 0 || i >= a.count || j >= a.count) {
      note(a.connected, "adjacency index out of range");
      continue;
    }
    const Disk& A = cover.disks[static_cast<std::size_t>(i)];
    const Disk& B = cover.disks[static_cast<std::size_t>(j)];
    const double ratio = A.radius / B.radius;
    if (!(std::abs(ratio - 1.0) < 1e-12 || std::abs(ratio - 2.0) < 1e-12 || std::abs(ratio - 0.5) < 1e-12)) {
      std::ostringstream os;
      os << "ratios: disks " << i << "," << j << " have radius ratio " << ratio;
      note(a.ratios, os.str());
    }
    const double inr = lens_inradius(A, B);
    if (!(inr >= std::min(A.radius, B.radius) / 3.0 * (1.0 - 1e-12))) {
      std::ostringstream os;
      os << "overlap: disks " << i << "," << j << " share an inscribed disk of radius " << inr;
      note(a.overlap, os.str());
    }
    if (std::abs(i - j) == 1 && inr > 0.0) linked[static_cast<std::size_t>(std::min(i, j))] = 1;
  }
  for (std::size_t i = 0; i + 1 < cover.disks.size(); ++i)
    if (!linked[i]) {
      note(a.connected, "connected: disks " + std::to_string(i) + "," + std::to_string(i + 1) + " not linked");
    }

  const Polyline& path = cover.path;
  if (!path.empty()) {
    auto inside = [&](cplx z, const Disk& D) { return std::abs(z - D.center) < D.radius; };
    if (!inside(path.front(), cover.disks.front()) || !inside(path.back(), cover.disks.back()))
      note(a.endpoints, "endpoints: path ends not inside the first/last disk");
    for (std::size_t k = 0; k + 1 < path.size() || (path.size() == 1 && k == 0); ++k) {
      const cplx p0 = path[k];
      const cplx p1 = path.size() == 1 ? path[0] : path[k + 1];
      std::vector<std::pair<double, double>> iv;
      for (const Disk& D : cover.disks) {
        double t0, t1;
        if (chord(p0, p1, D, t0, t1)) iv.emplace_back(t0, t1);
      }
      std::sort(iv.begin(), iv.end());
      double reach = 0.0;
      bool ok = !iv.empty() && iv.front().first <= 0.0;
      for (const auto& [t0, t1] : iv) {
        if (t0 > reach) break;
        reach = std::max(reach, t1);
      }
      ok = ok && reach >= 1.0;
      if (!ok) {
        std::ostringstream os;
        os << "coverage: path segment " << k << " is not covered (reached t = " << reach << ")";
        note(a.coverage, os.str());
      }
      if (path.size() == 1) break;
    }
  }
  return a;
}

}  // namespace dchain

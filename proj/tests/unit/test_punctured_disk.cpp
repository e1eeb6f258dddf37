#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dchain/error.hpp"
#include "dchain/punctured_disk.hpp"
#include "dchain/svg.hpp"
#include "../oracles.hpp"

using namespace dchain;

TEST_CASE("delta_prime") {
  CHECK(delta_prime(0.1, 1) == doctest::Approx(0.01));
  CHECK(delta_prime(0.05, 5) == doctest::Approx(0.001));
  CHECK(delta_prime(0.3, 1) < 0.3);
  CHECK_THROWS_AS(delta_prime(0.0, 1), Error);
}

TEST_CASE("same_component_grid") {
  PuncturedDisk pd{0.0, 1.0, {0.5}, 0.02};
  CHECK(same_component_grid(pd, -0.5, 0.9, 1024));
  CHECK(same_component_grid(pd, cplx(0.1, 0.2), cplx(0.1, 0.2), 1024));

  // Six overlapping neighbourhoods along a diameter cut the disk in two.
  PuncturedDisk wall{0.0, 1.0, {-5.0 / 6, -0.5, -1.0 / 6, 1.0 / 6, 0.5, 5.0 / 6}, 0.2};
  CHECK_FALSE(same_component_grid(wall, cplx(0, 0.6), cplx(0, -0.6), 1024));
  CHECK(same_component_grid(wall, cplx(0.3, 0.6), cplx(-0.3, 0.6), 1024));
  CHECK_THROWS_AS(same_component_grid(pd, 0.51, 0.9, 1024), Error);
  CHECK_THROWS_AS(same_component_grid(pd, 1.2, 0.9, 1024), Error);
  CHECK_THROWS_AS(same_component_grid(pd, -0.5, 0.9, 256), Error);
}

TEST_CASE("component diameters of the wall") {
  PuncturedDisk wall{0.0, 1.0, {-5.0 / 6, -0.5, -1.0 / 6, 1.0 / 6, 0.5, 5.0 / 6}, 0.2};
  ComponentDiameters cd = puncture_component_diameters(wall, 1024);
  REQUIRE(cd.diameters.size() == 1);
  CHECK(cd.diameters[0] <= 2 * 6 * 0.2 + 2 * cd.pixel);
  CHECK(cd.diameters[0] >= 1.9);
}

TEST_CASE("find_path") {
  PuncturedDisk empty{0.0, 1.0, {}, 0.01};
  Polyline straight = find_path(empty, -0.5, cplx(0.3, 0.4));
  CHECK(straight.size() == 2);

  PuncturedDisk hole{0.0, 1.0, {0.0}, 0.01};
  Polyline p = find_path(hole, -0.5, 0.5);
  CHECK(p.front() == cplx(-0.5));
  CHECK(p.back() == cplx(0.5));
  CHECK(polyline_length(p) < 1.0 + 2 * std::numbers::pi * 2 * 0.01);
  // Dense sampling audit of the clearance.
  double worst = 1e9;
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    for (int s = 0; s <= 200; ++s) {
      const cplx z = p[k] + (p[k + 1] - p[k]) * (s / 200.0);
      worst = std::min(worst, std::abs(z));
      CHECK(std::abs(z) < 1.0);
    }
  CHECK(worst >= 0.01 * 1.01);
  CHECK(polyline_clearance(hole, p) >= 0.01 * 1.01 - 1e-15);

  PuncturedDisk wall{0.0, 1.0, {-5.0 / 6, -0.5, -1.0 / 6, 1.0 / 6, 0.5, 5.0 / 6}, 0.2};
  try {
    find_path(wall, cplx(0, 0.6), cplx(0, -0.6), 256);
    FAIL("expected kPathNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPathNotFound);
  }
}

TEST_CASE("disk chain along a free segment") {
  PuncturedDisk empty{0.0, 1.0, {}, 0.01};
  DiskCover c = build_disk_chain(empty, {-0.5, 0.5}, 0.1);
  CHECK(c.disks.size() == 16);  // stride (2/3) 0.1 over length 1
  for (const auto& D : c.disks) CHECK(D.radius == 0.1);
  CoverAudit a = audit_cover(c, empty);
  CHECK(a.all());
}

TEST_CASE("disk chain around a puncture") {
  PuncturedDisk pd{0.0, 1.0, {0.0}, 0.01};
  Polyline half;
  for (int k = 0; k <= 200; ++k) half.push_back(0.05 * std::polar(1.0, std::numbers::pi * k / 200));
  DiskCover c = build_disk_chain(pd, half, 0.125);
  for (const auto& D : c.disks) CHECK(D.radius == 0.125 / 16);  // largest dyadic <= 0.05/6
  CoverAudit a = audit_cover(c, pd);
  CHECK(a.all());
  CHECK(a.count <= a.count_budget);

  // Path from far away into the puncture's neighbourhood.
  Polyline in{0.9, 0.0101};
  DiskCover c2 = build_disk_chain(pd, in, 0.125);
  CoverAudit a2 = audit_cover(c2, pd);
  CHECK(a2.all());
  CHECK(c2.disks.back().center == cplx(0.0101));
  CHECK(a2.count <= 3 * a2.count_budget);
  const std::string svg = cover_svg(pd, c2);
  CHECK(svg.find("<svg") == 0);
}

TEST_CASE("audit detects violations") {
  PuncturedDisk pd{0.0, 1.0, {0.0}, 0.01};
  DiskCover bad;
  bad.r_max = 0.125;
  bad.disks = {{0.5, 0.125}, {0.6, 0.125}};
  bad.adjacency = {{0, 1}};
  bad.path = {0.5, 0.6};
  CoverAudit a = audit_cover(bad, pd);
  CHECK_FALSE(a.beta_clearance);
  CHECK_FALSE(a.failures.empty());

  DiskCover ratio;
  ratio.r_max = 0.125;
  ratio.disks = {{cplx(0, 0.9), 0.125}, {cplx(0.05, 0.9), 0.125 / 4}};
  ratio.adjacency = {{0, 1}};
  ratio.path = {cplx(0, 0.9), cplx(0.05, 0.9)};
  CoverAudit b = audit_cover(ratio, PuncturedDisk{0.0, 1.0, {}, 0.01});
  CHECK_FALSE(b.ratios);
  CHECK(b.beta_clearance);

  DiskCover gap = ratio;
  gap.disks = {{cplx(0, 0.9), 0.125}, {cplx(0.5, 0.9), 0.125}};
  gap.path = {cplx(0, 0.9), cplx(0.5, 0.9)};
  CoverAudit g = audit_cover(gap, PuncturedDisk{0.0, 1.0, {}, 0.01});
  CHECK_FALSE(g.coverage);
  CHECK_FALSE(g.connected);
}

TEST_CASE("random configurations: path and cover audits") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 5;
    PuncturedDisk pd{0.0, 1.0, {}, 0.0};
    for (int k = 0; k < d; ++k) {
      const double re = u(rng);
      const double im = u(rng);
      pd.punctures.push_back({re, im});
    }
    pd.delta = delta_prime(0.5 / (2 * d), d);
    cplx v1, v2;
    do {
      const double a = u(rng), b = u(rng), c = u(rng), e = u(rng);
      v1 = {a, b};
      v2 = {c, e};
    } while (std::abs(v1) > 0.95 || std::abs(v2) > 0.95 || clearance(pd, v1) < 10 * d * pd.delta ||
             clearance(pd, v2) < 10 * d * pd.delta);
    Polyline p = find_path(pd, v1, v2, 1024);
    CHECK(polyline_clearance(pd, p) >= pd.delta * 1.01 * (1 - 1e-12));
    DiskCover c = build_disk_chain(pd, p, 0.125);
    CoverAudit a = audit_cover(c, pd);
    CHECK(a.all());
    CHECK(a.count <= 3 * a.count_budget);
  }
}

#include <random>

#include "doctest.h"
#include "dchain/error.hpp"
#include "dchain/json_io.hpp"
#include "../test_util.hpp"

using namespace dchain;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("polynomial JSON") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const MultiPoly p = testutil::random_poly(rng, 1 + trial % 3, 1 + trial % 4);
    const MultiPoly q = poly_from_json(parse_json(dump_json(poly_to_json(p))));
    CHECK(q == p);
  }
  const char* ok = R"({"dim":2,"terms":[{"alpha":[1,0],"re":1},{"alpha":[0,2],"re":0.5,"im":-2}]})";
  const MultiPoly p = poly_from_json(parse_json(ok));
  CHECK(p.degree() == 2);
  CHECK(p.terms().size() == 2);

  const char* too_high = R"({"dim":2,"degree":1,"terms":[{"alpha":[1,1],"re":1}]})";
  CHECK(code_of([&] { poly_from_json(parse_json(too_high)); }) == ErrorCode::kParse);
  CHECK(code_of([&] { poly_from_json(parse_json(R"({"dim":2,"terms":[{"alpha":[1],"re":1}]})")); }) == ErrorCode::kParse);
  CHECK(code_of([&] { poly_from_json(parse_json(R"({"dim":1,"terms":[{"alpha":[-1],"re":1}]})")); }) == ErrorCode::kParse);
  CHECK(code_of([&] { poly_from_json(parse_json(R"({"terms":[]})")); }) == ErrorCode::kParse);
  CHECK(code_of([&] { parse_json("{not json"); }) == ErrorCode::kParse);
}

TEST_CASE("chart JSON is exact") {
  std::mt19937_64 rng(3);
  CVec dir{testutil::rand_c(rng), testutil::rand_c(rng)};
  double nrm = std::sqrt(std::norm(dir[0]) + std::norm(dir[1]));
  for (auto& x : dir) x /= nrm;
  const EllipsoidChart c = make_chart(CVec{cplx(0.1, 0.7), cplx(1.0 / 3, 0.2)}, complete_frame(dir),
                                      {0.0123456789, 1e-7}, ChartKind::kTransition, 0.37);
  const EllipsoidChart d = chart_from_json(parse_json(dump_json(chart_to_json(c))));
  CHECK(d.center == c.center);
  CHECK(d.frame.a == c.frame.a);
  CHECK(d.semi_axes == c.semi_axes);
  CHECK(d.c6_line == c.c6_line);
  CHECK(d.kind == ChartKind::kTransition);

  Json bad = chart_to_json(c);
  bad["frame"].erase(0);
  CHECK(code_of([&] { chart_from_json(bad); }) == ErrorCode::kParse);
}

TEST_CASE("chain JSON round trip") {
  const MultiPoly z(1, {{{1}, 1.0}});
  ChainConfig cfg;
  cfg.allow_delta_above_rho = true;
  const DoublingChain chain = build_chain(z, CVec{cplx(0.06, 0.0)}, CVec{cplx(0.9, 0.8)}, 0.05, cfg);
  const std::string text = dump_json(chain_to_json(chain));
  const DoublingChain back = chain_from_json(parse_json(text));
  REQUIRE(back.charts.size() == chain.charts.size());
  CHECK(back.junction_radii == chain.junction_radii);
  CHECK(back.v1 == chain.v1);
  CHECK(back.delta == chain.delta);
  const ChainReport r1 = verify_chain(chain, z, 0.05);
  const ChainReport r2 = verify_chain(back, z, 0.05);
  CHECK(r1.all_certified == r2.all_certified);
  CHECK(r2.all_certified);
  CHECK(dump_json(report_to_json(r1)) == dump_json(report_to_json(r2)));

  // Junctions dropped from the file are recomputed by the verifier.
  Json j = parse_json(text);
  j.erase("junction_radii");
  const DoublingChain nojunction = chain_from_json(j);
  CHECK(nojunction.junction_radii.empty());
  CHECK(verify_chain(nojunction, z, 0.05).all_certified);

  // A chart moved onto the zero is caught.
  j = parse_json(text);
  j["charts"][3]["center"] = Json::array({0.0, 0.0});
  CHECK_FALSE(verify_chain(chain_from_json(j), z, 0.05).all_certified);
}

TEST_CASE("infinite radius survives as null") {
  const DoublingChain single = build_chain(MultiPoly::constant(2, 1.0), CVec{0.1, 0.2}, CVec{0.3, 0.4}, 1e-3);
  const Json j = chain_to_json(single);
  CHECK(j["report"]["rho_chain"].is_null());
  CHECK(dump_json(j).find("inf") == std::string::npos);
}

TEST_CASE("cover and query JSON") {
  PuncturedDisk pd = punctured_disk_from_json(parse_json(R"({"center":[0,0],"radius":1,"punctures":[[0,0]],"delta":0.04})"));
  CHECK(pd.punctures.size() == 1);
  const Polyline path = find_path(pd, cplx(-0.9, 0.0), cplx(0.9, 0.0));
  const DiskCover cover = build_disk_chain(pd, path, 0.125);
  const DiskCover back = cover_from_json(parse_json(dump_json(cover_to_json(cover))));
  CHECK(back.disks.size() == cover.disks.size());
  CHECK(audit_cover(back, pd).all());

  const char* q = R"({"denominator":{"dim":1,"terms":[{"alpha":[1],"re":1}]},
                     "G":[[0.5,0],[0.3,0.4]],"omega":[[0.5,0],[0.3,0.4]]})";
  const DoublingQuery dq = query_from_json(parse_json(q));
  CHECK(dq.power == 1);
  CHECK(doubling_constant(dq).dc == doctest::Approx(1.0));
}

#include "dchain/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dchain/error.hpp"

namespace dchain {

namespace {

// JSON has no infinity; non-finite values are written as null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double read_num(const Json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  require(j.is_number(), ErrorCode::kParse, std::string(what) + " must be a number");
  return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), ErrorCode::kParse, std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  require(it != j.end(), ErrorCode::kParse, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_number(), ErrorCode::kParse, std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

int integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_number_integer(), ErrorCode::kParse, std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

const Json& array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_array(), ErrorCode::kParse, std::string("field \"") + key + "\" must be an array");
  return v;
}

cplx pair_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), ErrorCode::kParse,
          "expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json pair_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

std::vector<CVec> points_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::kParse, "expected an array of points");
  std::vector<CVec> out;
  out.reserve(j.size());
  for (const auto& p : j) out.push_back(cvec_from_json(p));
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(); }

Json cvec_to_json(const CVec& v) {
  Json a = Json::array();
  for (cplx z : v) {
    a.push_back(z.real());
    a.push_back(z.imag());
  }
  return a;
}

CVec cvec_from_json(const Json& j) {
  require(j.is_array() && !j.empty() && j.size() % 2 == 0, ErrorCode::kParse,
          "a point needs an even, nonzero number of real coordinates");
  CVec v(j.size() / 2);
  for (std::size_t k = 0; k < v.size(); ++k) {
    require(j[2 * k].is_number() && j[2 * k + 1].is_number(), ErrorCode::kParse, "point coordinates must be numbers");
    v[k] = cplx(j[2 * k].get<double>(), j[2 * k + 1].get<double>());
  }
  return v;
}

// ---------------------------------------------------------------- poly

Json poly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms())
    terms.push_back({{"alpha", t.alpha}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  return {{"dim", p.dim()}, {"degree", p.degree()}, {"terms", terms}};
}

MultiPoly poly_from_json(const Json& j) {
  const int dim = integer(j, "dim");
  require(dim >= 1, ErrorCode::kParse, "\"dim\" must be >= 1");
  int declared = -1;
  if (j.contains("degree")) {
    declared = integer(j, "degree");
    require(declared >= 0, ErrorCode::kParse, "\"degree\" must be >= 0");
  }
  std::vector<Term> terms;
  for (const auto& t : array(j, "terms")) {
    const Json& a = array(t, "alpha");
    require(a.size() == static_cast<std::size_t>(dim), ErrorCode::kParse, "multi-index length differs from \"dim\"");
    MultiIndex alpha;
    for (const auto& e : a) {
      require(e.is_number_integer() && e.get<long long>() >= 0, ErrorCode::kParse,
              "multi-index entries must be nonnegative integers");
      alpha.push_back(e.get<int>());
    }
    if (declared >= 0) {
      std::ostringstream os;
      os << "term of degree " << total_degree(alpha) << " exceeds declared degree " << declared;
      require(total_degree(alpha) <= declared, ErrorCode::kParse, os.str());
    }
    const double im = t.contains("im") ? number(t, "im") : 0.0;
    terms.push_back({std::move(alpha), cplx(number(t, "re"), im)});
  }
  try {
    return MultiPoly(dim, std::move(terms));
  } catch (const Error& e) {
    fail(ErrorCode::kParse, e.what());
  }
}

// ---------------------------------------------------------------- charts

Json chart_to_json(const EllipsoidChart& c) {
  Json frame = Json::array();
  for (cplx z : c.frame.a) frame.push_back(pair_to_json(z));
  Json axes = Json::array();
  for (double s : c.semi_axes) axes.push_back(s);
  return {{"kind", chart_kind_name(c.kind)},
          {"center", cvec_to_json(c.center)},
          {"frame", frame},
          {"semi_axes", axes},
          {"c6_line", c.c6_line}};
}

EllipsoidChart chart_from_json(const Json& j) {
  CVec center = cvec_from_json(field(j, "center"));
  const auto n = center.size();
  const Json& fr = array(j, "frame");
  require(fr.size() == n * n, ErrorCode::kParse, "frame must hold n*n [re, im] pairs");
  CMat frame;
  frame.n = static_cast<int>(n);
  for (const auto& e : fr) frame.a.push_back(pair_from_json(e));
  std::vector<double> axes;
  for (const auto& s : array(j, "semi_axes")) {
    require(s.is_number(), ErrorCode::kParse, "semi-axes must be numbers");
    axes.push_back(s.get<double>());
  }
  require(axes.size() == n, ErrorCode::kParse, "semi_axes must have n entries");
  ChartKind kind = ChartKind::kDisk;
  if (j.contains("kind")) {
    require(j["kind"].is_string(), ErrorCode::kParse, "\"kind\" must be a string");
    try {
      kind = chart_kind_from_name(j["kind"].get<std::string>());
    } catch (const Error& e) {
      fail(ErrorCode::kParse, e.what());
    }
  }
  const double c6 = j.contains("c6_line") ? number(j, "c6_line") : 0.0;
  try {
    return make_chart(std::move(center), std::move(frame), std::move(axes), kind, c6);
  } catch (const Error& e) {
    fail(ErrorCode::kParse, std::string("bad chart: ") + e.what());
  }
}

Json certificate_to_json(const ClearanceCertificate& c) {
  return {{"chart", chart_to_json(c.chart)}, {"scale", c.scale},         {"certified", c.certified},
          {"margin", c.margin},              {"min_abs_p", c.min_abs_p}, {"cells", c.cells},
          {"budget", c.budget}};
}

// ---------------------------------------------------------------- chains

Json report_to_json(const ChainReport& r) {
  return {{"length", r.length},
          {"length_bound", r.length_bound},
          {"rho_chain", num(r.rho_chain)},
          {"rho_bound", r.rho_bound},
          {"min_clearance", num(r.min_clearance)},
          {"cube_excess", r.cube_excess},
          {"charts_certified", r.charts_certified},
          {"junctions_positive", r.junctions_positive},
          {"endpoints_contained", r.endpoints_contained},
          {"length_ok", r.length_ok},
          {"rho_ok", r.rho_ok},
          {"unverified_margin", r.unverified_margin},
          {"failing_charts", r.failing_charts},
          {"all_certified", r.all_certified}};
}

namespace {

Json admission_to_json(const EndpointAdmission& a) {
  return {{"lower", a.lower}, {"upper", num(a.upper)}, {"verified", a.verified}, {"unverified_margin", a.unverified_margin}};
}

Json side_to_json(const ChainSide& s) {
  if (s.trivial) return {{"trivial", true}};
  return {{"trivial", false},
          {"z_star", cvec_to_json(s.selection.z_star)},
          {"norm_pl", s.selection.norm_pl},
          {"c6_line", s.c6_line},
          {"transverse_ratio", s.transverse_ratio},
          {"disk_charts", s.disk_charts},
          {"transition_charts", s.transition_count},
          {"cover_audit", audit_to_json(s.audit)}};
}

}  // namespace

Json chain_to_json(const DoublingChain& chain) {
  Json charts = Json::array();
  for (const auto& c : chain.charts) charts.push_back(chart_to_json(c));
  Json junctions = Json::array();
  for (double r : chain.junction_radii) junctions.push_back(num(r));
  Json j = {{"delta", chain.delta},
            {"endpoints", Json::array({cvec_to_json(chain.v1), cvec_to_json(chain.v2)})},
            {"charts", charts},
            {"junction_radii", junctions},
            {"single_chart", chain.single_chart},
            {"admission", Json::array({admission_to_json(chain.admission1), admission_to_json(chain.admission2)})},
            {"report", report_to_json(chain.report)}};
  if (chain.ball) {
    j["ball"] = clear_ball_to_json(*chain.ball);
    j["sides"] = Json::array({side_to_json(chain.side1), side_to_json(chain.side2)});
  }
  return j;
}

DoublingChain chain_from_json(const Json& j) {
  DoublingChain c;
  c.delta = number(j, "delta");
  const Json& ends = array(j, "endpoints");
  require(ends.size() == 2, ErrorCode::kParse, "\"endpoints\" must hold two points");
  c.v1 = cvec_from_json(ends[0]);
  c.v2 = cvec_from_json(ends[1]);
  require(c.v1.size() == c.v2.size(), ErrorCode::kParse, "endpoint dimensions differ");
  for (const auto& ch : array(j, "charts")) {
    c.charts.push_back(chart_from_json(ch));
    require(c.charts.back().center.size() == c.v1.size(), ErrorCode::kParse, "chart dimension differs from endpoints");
  }
  require(!c.charts.empty(), ErrorCode::kParse, "a chain needs at least one chart");
  if (j.contains("junction_radii") && j["junction_radii"].is_array() &&
      j["junction_radii"].size() + 1 == c.charts.size()) {
    for (const auto& r : j["junction_radii"]) c.junction_radii.push_back(read_num(r, "junction radius"));
  }
  c.single_chart = c.charts.size() == 1;
  return c;
}

// ---------------------------------------------------------------- covers

PuncturedDisk punctured_disk_from_json(const Json& j) {
  PuncturedDisk pd;
  pd.center = j.contains("center") ? pair_from_json(j["center"]) : cplx(0.0);
  pd.radius = j.contains("radius") ? number(j, "radius") : 1.0;
  require(pd.radius > 0.0, ErrorCode::kParse, "disk radius must be positive");
  if (j.contains("punctures"))
    for (const auto& z : array(j, "punctures")) pd.punctures.push_back(pair_from_json(z));
  pd.delta = j.contains("delta") ? number(j, "delta") : 0.0;
  require(pd.delta >= 0.0, ErrorCode::kParse, "delta must be nonnegative");
  return pd;
}

Json punctured_disk_to_json(const PuncturedDisk& pd) {
  Json z = Json::array();
  for (cplx p : pd.punctures) z.push_back(pair_to_json(p));
  return {{"center", pair_to_json(pd.center)}, {"radius", pd.radius}, {"punctures", z}, {"delta", pd.delta}};
}

Json cover_to_json(const DiskCover& cover) {
  Json centers = Json::array(), radii = Json::array(), adj = Json::array(), path = Json::array();
  for (const auto& d : cover.disks) {
    centers.push_back(pair_to_json(d.center));
    radii.push_back(d.radius);
  }
  for (const auto& [a, b] : cover.adjacency) adj.push_back(Json::array({a, b}));
  for (cplx z : cover.path) path.push_back(pair_to_json(z));
  return {{"centers", centers}, {"radii", radii}, {"adjacency", adj},
          {"beta", cover.beta}, {"r_max", cover.r_max}, {"path", path}};
}

DiskCover cover_from_json(const Json& j) {
  DiskCover c;
  const Json& centers = array(j, "centers");
  const Json& radii = array(j, "radii");
  require(centers.size() == radii.size(), ErrorCode::kParse, "\"centers\" and \"radii\" differ in length");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    require(radii[i].is_number(), ErrorCode::kParse, "radii must be numbers");
    c.disks.push_back({pair_from_json(centers[i]), radii[i].get<double>()});
  }
  if (j.contains("adjacency"))
    for (const auto& e : array(j, "adjacency")) {
      require(e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer(), ErrorCode::kParse,
              "adjacency entries must be index pairs");
      c.adjacency.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  if (j.contains("beta")) c.beta = number(j, "beta");
  if (j.contains("r_max")) c.r_max = number(j, "r_max");
  if (j.contains("path"))
    for (const auto& z : array(j, "path")) c.path.push_back(pair_from_json(z));
  return c;
}

Json audit_to_json(const CoverAudit& a) {
  return {{"beta_clearance", a.beta_clearance}, {"dyadic", a.dyadic},
          {"ratios", a.ratios},                 {"overlap", a.overlap},
          {"connected", a.connected},           {"coverage", a.coverage},
          {"endpoints", a.endpoints},           {"count", a.count},
          {"count_budget", a.count_budget},     {"failures", a.failures},
          {"all", a.all()}};
}

// ---------------------------------------------------------------- balls

Json clear_ball_to_json(const ClearBall& b) {
  return {{"center", cvec_to_json(b.center)},
          {"radius", b.radius},
          {"margin", b.margin},
          {"certified", b.certificate.certified},
          {"candidates_tried", b.candidates_tried},
          {"exhaustive", b.exhaustive}};
}

Json vitushkin_to_json(const VitushkinReport& r) {
  return {{"epsilon", r.epsilon}, {"count", r.count}, {"bound", r.bound}, {"grid", r.grid},
          {"within_bound", static_cast<double>(r.count) <= r.bound}};
}

// ---------------------------------------------------------------- analysis

DoublingQuery query_from_json(const Json& j) {
  DoublingQuery q;
  q.denominator = poly_from_json(field(j, "denominator"));
  q.numerator = j.contains("numerator") ? poly_from_json(j["numerator"]) : MultiPoly::constant(q.denominator.dim(), 1.0);
  q.power = j.contains("power") ? integer(j, "power") : 1;
  q.G = points_from_json(field(j, "G"));
  q.omega = points_from_json(field(j, "omega"));
  if (j.contains("omega_center")) {
    q.omega_center = cvec_from_json(j["omega_center"]);
    q.omega_radius = number(j, "omega_radius");
  }
  if (j.contains("spacing")) q.spacing = number(j, "spacing");
  return q;
}

Json doubling_to_json(const DoublingResult& r) {
  return {{"dc", r.dc},
          {"max_G", r.max_G},
          {"max_omega", r.max_omega},
          {"argmax_G", cvec_to_json(r.argmax_G)},
          {"argmax_omega", cvec_to_json(r.argmax_omega)}};
}

Json fit_to_json(const LinearFit& f) {
  if (!f.defined) return {{"defined", false}, {"points", f.points}};
  return {{"defined", true}, {"points", f.points},        {"slope", f.slope},          {"intercept", f.intercept},
          {"r", f.r},        {"slope_se", f.slope_se},    {"slope_ci95", f.slope_ci95}};
}

Json study_to_json(const ScalingStudy& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    Json row = {{"delta", r.delta},
                {"length", r.length},
                {"bound", r.bound},
                {"dc", r.dc},
                {"min_clearance", r.min_clearance},
                {"kobayashi_upper", r.kobayashi_upper},
                {"kobayashi_bound", r.kobayashi_bound},
                {"delta_above_rho", r.delta_above_rho},
                {"certified", r.certified}};
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  return {{"rows", rows},
          {"dc_fit", fit_to_json(s.dc_fit)},
          {"length_fit", fit_to_json(s.length_fit)},
          {"clearance_fit", fit_to_json(s.clearance_fit)},
          {"design_ok", s.design_ok}};
}

}  // namespace dchain

#include "dchain/dchain.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "dchain/analysis.hpp"
#include "dchain/chain.hpp"
#include "dchain/clear_ball.hpp"
#include "dchain/error.hpp"
#include "dchain/json_io.hpp"
#include "dchain/parallel.hpp"
#include "dchain/punctured_disk.hpp"
#include "dchain/svg.hpp"

struct dc_poly {
  dchain::MultiPoly poly;
};

struct dc_chain {
  dchain::DoublingChain chain;
};

namespace {

using dchain::ErrorCode;

thread_local std::string g_last_error;

dc_status set_error(dc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
dc_status guarded(F&& f) {
  try {
    f();
    return DC_OK;
  } catch (const dchain::Error& e) {
    return set_error(static_cast<dc_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(DC_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(DC_INTERNAL, e.what());
  } catch (...) {
    return set_error(DC_INTERNAL, "unknown exception");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** dst, const std::string& s) {
  if (dst) *dst = copy_string(s);
}

void need(const void* p, const char* what) {
  dchain::require(p != nullptr, ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

dc_options resolve(const dc_options* o) {
  dc_options r;
  dc_options_init(&r);
  if (o) r = *o;
  dchain::require(r.budget > 0 && r.resolution > 0, ErrorCode::kInvalidArgument, "budget and resolution must be positive");
  if (r.workers < 1) r.workers = 1;
  return r;
}

dchain::CVec point(const double* xs, std::size_t n_real) {
  need(xs, "point");
  dchain::require(n_real >= 2 && n_real % 2 == 0, ErrorCode::kDimensionMismatch, "a point needs 2n real coordinates");
  dchain::CVec v(n_real / 2);
  for (std::size_t k = 0; k < v.size(); ++k) {
    dchain::require(std::isfinite(xs[2 * k]) && std::isfinite(xs[2 * k + 1]), ErrorCode::kInvalidArgument,
                    "point coordinates must be finite");
    v[k] = {xs[2 * k], xs[2 * k + 1]};
  }
  return v;
}

dchain::ChainConfig chain_config(const dc_options& o) {
  dchain::ChainConfig c;
  c.seed = o.seed;
  c.budget = o.budget;
  c.resolution = o.resolution;
  c.workers = o.workers;
  c.allow_delta_above_rho = o.allow_delta_above_rho != 0;
  c.ball.budget = o.budget;
  c.ball.workers = o.workers;
  return c;
}

}  // namespace

extern "C" {

const char* dc_version(void) { return "1.0.0"; }

void dc_options_init(dc_options* options) {
  if (!options) return;
  options->seed = 1;
  options->budget = 1 << 14;
  options->resolution = 2048;
  options->workers = dchain::default_workers();
  options->allow_delta_above_rho = 0;
  options->grid_density = 0;
}

const char* dc_status_name(dc_status status) { return dchain::error_code_name(static_cast<ErrorCode>(status)); }

const char* dc_last_error(void) { return g_last_error.c_str(); }

void dc_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- polys

dc_status dc_poly_from_json(const char* json, dc_poly** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = nullptr;
    auto p = dchain::poly_from_json(dchain::parse_json(json));
    *out = new dc_poly{std::move(p)};
  });
}

dc_status dc_poly_to_json(const dc_poly* poly, char** out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    *out = copy_string(dchain::dump_json(dchain::poly_to_json(poly->poly)));
  });
}

int dc_poly_dim(const dc_poly* poly) { return poly ? poly->poly.dim() : 0; }
int dc_poly_degree(const dc_poly* poly) { return poly ? poly->poly.degree() : -1; }
void dc_poly_free(dc_poly* poly) { delete poly; }

// ---------------------------------------------------------------- chains

dc_status dc_chain_build(const dc_poly* poly, const double* v1, const double* v2, size_t n_real, double delta,
                         const dc_options* options, dc_chain** out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    *out = nullptr;
    const dc_options o = resolve(options);
    const dchain::CVec a = point(v1, n_real), b = point(v2, n_real);
    dchain::require(static_cast<int>(a.size()) == poly->poly.dim(), ErrorCode::kDimensionMismatch,
                    "endpoint dimension differs from polynomial dimension");
    auto chain = dchain::build_chain(poly->poly, a, b, delta, chain_config(o));
    *out = new dc_chain{std::move(chain)};
  });
}

dc_status dc_chain_from_json(const char* json, dc_chain** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = nullptr;
    auto chain = dchain::chain_from_json(dchain::parse_json(json));
    *out = new dc_chain{std::move(chain)};
  });
}

dc_status dc_chain_to_json(const dc_chain* chain, char** out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = copy_string(dchain::dump_json(dchain::chain_to_json(chain->chain)));
  });
}

dc_status dc_chain_report_json(const dc_chain* chain, char** out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = copy_string(dchain::dump_json(dchain::report_to_json(chain->chain.report)));
  });
}

int dc_chain_all_certified(const dc_chain* chain) { return chain && chain->chain.report.all_certified ? 1 : 0; }

size_t dc_chain_length(const dc_chain* chain) { return chain ? chain->chain.charts.size() : 0; }

dc_status dc_chain_verify(dc_chain* chain, const dc_poly* poly, double delta, const dc_options* options,
                          int* all_certified, char** report_json) {
  return guarded([&] {
    need(chain, "chain");
    need(poly, "poly");
    const dc_options o = resolve(options);
    chain->chain.report = dchain::verify_chain(chain->chain, poly->poly, delta, {o.budget, o.workers});
    if (all_certified) *all_certified = chain->chain.report.all_certified ? 1 : 0;
    put(report_json, dchain::dump_json(dchain::report_to_json(chain->chain.report)));
  });
}

void dc_chain_free(dc_chain* chain) { delete chain; }

// ---------------------------------------------------------------- balls

dc_status dc_clear_ball(const dc_poly* poly, const dc_options* options, char** out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    dchain::require(!poly->poly.is_zero(), ErrorCode::kZeroPolynomial, "zero polynomial");
    const dc_options o = resolve(options);
    dchain::ClearBallConfig cfg;
    cfg.budget = o.budget;
    cfg.workers = o.workers;
    const auto ball = dchain::find_clear_ball(dchain::normalize(poly->poly), o.seed, cfg);
    *out = copy_string(dchain::dump_json(dchain::clear_ball_to_json(ball)));
  });
}

dc_status dc_vitushkin(const dc_poly* poly, double epsilon, const dc_options* options, int* within_bound,
                       char** out) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    const dc_options o = resolve(options);
    const auto rep = dchain::vitushkin_count(dchain::normalize(poly->poly), epsilon, o.seed, o.workers);
    if (within_bound) *within_bound = static_cast<double>(rep.count) <= rep.bound ? 1 : 0;
    *out = copy_string(dchain::dump_json(dchain::vitushkin_to_json(rep)));
  });
}

// ---------------------------------------------------------------- covers

dc_status dc_cover(const char* disk_json, const double* v1, const double* v2, double r_max,
                   const dc_options* options, int* audit_ok, char** out, char** svg) {
  return guarded([&] {
    need(disk_json, "disk_json");
    need(out, "out");
    const dc_options o = resolve(options);
    const dchain::PuncturedDisk pd = dchain::punctured_disk_from_json(dchain::parse_json(disk_json));
    const dchain::CVec a = point(v1, 2), b = point(v2, 2);
    const double rmax = r_max > 0.0 ? r_max : pd.radius / 8.0;
    const dchain::Polyline path = dchain::find_path(pd, a[0], b[0], o.resolution);
    const dchain::DiskCover cover = dchain::build_disk_chain(pd, path, rmax);
    const dchain::CoverAudit audit = dchain::audit_cover(cover, pd);
    if (audit_ok) *audit_ok = audit.all() ? 1 : 0;
    dchain::Json j = {{"disk", dchain::punctured_disk_to_json(pd)},
                      {"cover", dchain::cover_to_json(cover)},
                      {"audit", dchain::audit_to_json(audit)}};
    const std::string text = dchain::dump_json(j);
    put(svg, dchain::cover_svg(pd, cover));
    *out = copy_string(text);
  });
}

dc_status dc_cover_audit(const char* disk_json, const char* cover_json, int* audit_ok, char** out) {
  return guarded([&] {
    need(disk_json, "disk_json");
    need(cover_json, "cover_json");
    dchain::Json cj = dchain::parse_json(cover_json);
    // Accept either a bare cover or the {"cover", ...} object produced by dc_cover.
    if (cj.is_object() && cj.contains("cover")) cj = cj["cover"];
    const dchain::PuncturedDisk pd = dchain::punctured_disk_from_json(dchain::parse_json(disk_json));
    const dchain::CoverAudit audit = dchain::audit_cover(dchain::cover_from_json(cj), pd);
    if (audit_ok) *audit_ok = audit.all() ? 1 : 0;
    put(out, dchain::dump_json(dchain::audit_to_json(audit)));
  });
}

// ---------------------------------------------------------------- analysis

dc_status dc_doubling(const char* query_json, const dc_options* options, char** out) {
  return guarded([&] {
    need(query_json, "query_json");
    need(out, "out");
    const dc_options o = resolve(options);
    const auto res = dchain::doubling_constant(dchain::query_from_json(dchain::parse_json(query_json)), o.workers);
    *out = copy_string(dchain::dump_json(dchain::doubling_to_json(res)));
  });
}

dc_status dc_study(const dc_poly* poly, const double* v_far, size_t n_real, const double* deltas, size_t count,
                   const dc_options* options, int* all_certified, char** out, char** svg) {
  return guarded([&] {
    need(poly, "poly");
    need(out, "out");
    need(deltas, "deltas");
    const dc_options o = resolve(options);
    std::optional<dchain::CVec> far;
    if (v_far) far = point(v_far, n_real);
    dchain::StudyConfig cfg;
    cfg.chain = chain_config(o);
    cfg.grid_density = o.grid_density;
    cfg.workers = o.workers;
    const auto study = dchain::run_scaling_study(poly->poly, far, std::vector<double>(deltas, deltas + count), cfg);
    bool ok = true;
    for (const auto& r : study.rows) ok = ok && r.certified;
    if (all_certified) *all_certified = ok ? 1 : 0;
    if (svg) {
      dchain::SvgSeries dc{"ln DC", {}, {}}, clr{"ln 1/min clearance", {}, {}};
      for (const auto& r : study.rows) {
        if (!r.certified) continue;
        dc.x.push_back(std::log(1.0 / r.delta));
        dc.y.push_back(std::log(r.dc));
        if (r.min_clearance > 0.0) {
          clr.x.push_back(std::log(1.0 / r.delta));
          clr.y.push_back(std::log(1.0 / r.min_clearance));
        }
      }
      *svg = copy_string(dchain::scatter_svg("scaling against ln(1/delta)", "ln(1/delta)", {dc, clr}));
    }
    *out = copy_string(dchain::dump_json(dchain::study_to_json(study)));
  });
}

dc_status dc_kobayashi_upper(const dc_chain* chain, double* out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = dchain::kobayashi_upper(chain->chain);
  });
}

double dc_kobayashi_length_bound(int d, double delta) {
  if (d < 1 || !(delta > 0.0)) return std::nan("");
  return dchain::kobayashi_length_bound(d, delta);
}

}  // extern "C"

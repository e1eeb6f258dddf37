// Command-line front end. Everything numeric goes through the C interface.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dchain/dchain.h"

namespace {

using nlohmann::json;

// Exit codes: 0 all certified, 1 ran but something did not certify,
// 2 bad input, 3 the computation failed.
constexpr int kExitNotCertified = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitFailed = 3;

struct CliError {
  dc_status status;
  std::string message;
};

struct Common {
  std::string poly_file;
  std::uint64_t seed = 1;
  int budget = 1 << 14;
  int resolution = 2048;
  int workers = 0;
  std::string out;
  std::string svg;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{DC_INVALID_ARGUMENT, "cannot read file " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{DC_INVALID_ARGUMENT, "cannot write file " + path};
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

void check(dc_status s) {
  if (s != DC_OK) throw CliError{s, dc_last_error()};
}

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> xs;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size()) throw CliError{DC_PARSE_ERROR, std::string("bad number in ") + what + ": '" + item + "'"};
    xs.push_back(x);
  }
  if (xs.empty()) throw CliError{DC_PARSE_ERROR, std::string(what) + " is empty"};
  return xs;
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { dc_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Poly {
  dc_poly* p = nullptr;
  ~Poly() { dc_poly_free(p); }
};

struct Chain {
  dc_chain* c = nullptr;
  ~Chain() { dc_chain_free(c); }
};

dc_options options_from(const Common& c) {
  dc_options o;
  dc_options_init(&o);
  o.seed = c.seed;
  o.budget = c.budget;
  o.resolution = c.resolution;
  if (c.workers > 0) o.workers = c.workers;
  return o;
}

std::unique_ptr<Poly> load_poly(const Common& c) {
  if (c.poly_file.empty()) throw CliError{DC_INVALID_ARGUMENT, "--poly is required"};
  auto p = std::make_unique<Poly>();
  check(dc_poly_from_json(read_file(c.poly_file).c_str(), &p->p));
  return p;
}

// Primary output goes to --out when given, otherwise to stdout.
void emit(const Common& c, const std::string& primary, const json& summary) {
  if (c.out.empty()) {
    std::cout << primary << '\n';
  } else {
    write_file(c.out, primary);
    std::cout << summary.dump() << '\n';
  }
}

void add_common(CLI::App* sub, Common& c, bool needs_poly) {
  auto* p = sub->add_option("--poly", c.poly_file, "polynomial JSON file")->envname("DCHAIN_POLY");
  if (needs_poly) p->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "random seed")->envname("DCHAIN_SEED");
  sub->add_option("--budget", c.budget, "cells per clearance certificate")->envname("DCHAIN_BUDGET")->check(CLI::PositiveNumber);
  sub->add_option("--resolution", c.resolution, "path grid resolution")->envname("DCHAIN_RESOLUTION")->check(CLI::PositiveNumber);
  sub->add_option("--workers", c.workers, "worker threads (0: all cores)")->envname("DCHAIN_WORKERS")->check(CLI::NonNegativeNumber);
  sub->add_option("--out", c.out, "primary output file")->envname("DCHAIN_OUT");
  sub->add_option("--svg", c.svg, "SVG output file")->envname("DCHAIN_SVG");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified doubling chains in complements of complex hypersurfaces"};
  app.require_subcommand(1);
  Common common;

  // build
  std::string v1s, v2s;
  double delta = 0.0;
  bool allow_large = false;
  auto* build = app.add_subcommand("build", "build and verify a chain joining two points");
  add_common(build, common, true);
  build->add_option("--v1", v1s, "first endpoint, 2n comma-separated reals")->required()->envname("DCHAIN_V1");
  build->add_option("--v2", v2s, "second endpoint")->required()->envname("DCHAIN_V2");
  build->add_option("--delta", delta, "distance to the hypersurface")->required()->envname("DCHAIN_DELTA")->check(CLI::PositiveNumber);
  build->add_flag("--allow-delta-above-rho", allow_large, "accept delta above rho(n, d)")->envname("DCHAIN_ALLOW_DELTA_ABOVE_RHO");

  // verify
  std::string chain_file;
  double verify_delta = 0.0;
  auto* verify = app.add_subcommand("verify", "re-audit a chain file");
  add_common(verify, common, true);
  verify->add_option("--chain", chain_file, "chain JSON file")->required()->check(CLI::ExistingFile)->envname("DCHAIN_CHAIN");
  verify->add_option("--delta", verify_delta, "delta (default: the one stored in the chain)")->envname("DCHAIN_DELTA");

  // ball
  auto* ball = app.add_subcommand("ball", "find a certified clear ball");
  add_common(ball, common, true);

  // vitushkin
  double epsilon = 0.0;
  auto* vit = app.add_subcommand("vitushkin", "count epsilon-cubes meeting the hypersurface");
  add_common(vit, common, true);
  vit->add_option("--epsilon", epsilon, "cube side")->required()->envname("DCHAIN_EPSILON")->check(CLI::Range(0.0, 1.0));

  // cover
  std::string disk_file, punctures_s, center_s = "0,0";
  double radius = 1.0, cover_delta = -1.0, r_max = 0.0;
  auto* cover = app.add_subcommand("cover", "disk cover of a path in a punctured disk");
  add_common(cover, common, false);
  cover->add_option("--disk", disk_file, "punctured disk JSON file")->check(CLI::ExistingFile)->envname("DCHAIN_DISK");
  cover->add_option("--punctures", punctures_s, "punctures as re,im,re,im,...")->envname("DCHAIN_PUNCTURES");
  cover->add_option("--center", center_s, "disk centre re,im")->envname("DCHAIN_CENTER");
  cover->add_option("--radius", radius, "disk radius")->envname("DCHAIN_RADIUS")->check(CLI::PositiveNumber);
  cover->add_option("--delta", cover_delta, "radius of the removed neighbourhoods")->envname("DCHAIN_DELTA");
  cover->add_option("--v1", v1s, "path start re,im")->required()->envname("DCHAIN_V1");
  cover->add_option("--v2", v2s, "path end re,im")->required()->envname("DCHAIN_V2");
  cover->add_option("--rmax", r_max, "largest disk radius (default radius / 8)")->envname("DCHAIN_RMAX");

  // audit
  std::string cover_file;
  auto* audit = app.add_subcommand("audit", "audit a cover file against its punctured disk");
  add_common(audit, common, false);
  audit->add_option("--disk", disk_file, "punctured disk JSON file (default: the one embedded in the cover file)")
      ->check(CLI::ExistingFile);
  audit->add_option("--cover", cover_file, "cover JSON file")->required()->check(CLI::ExistingFile);

  // dc
  std::string query_file;
  auto* dc = app.add_subcommand("dc", "doubling constant of A/P^k over grids");
  add_common(dc, common, false);
  dc->add_option("--query", query_file, "query JSON file")->required()->check(CLI::ExistingFile)->envname("DCHAIN_QUERY");

  // study
  std::string deltas_s, vfar_s;
  int kmin = 5, kmax = 12, density = 0;
  auto* study = app.add_subcommand("study", "scaling study over delta = 2^-k");
  add_common(study, common, true);
  study->add_option("--deltas", deltas_s, "explicit decreasing deltas a,b,c,...")->envname("DCHAIN_DELTAS");
  study->add_option("--kmin", kmin, "smallest k")->envname("DCHAIN_KMIN");
  study->add_option("--kmax", kmax, "largest k")->envname("DCHAIN_KMAX");
  study->add_option("--v-far", vfar_s, "far endpoint (default: clear-ball centre)")->envname("DCHAIN_V_FAR");
  study->add_option("--grid-density", density, "G grid points per real axis")->envname("DCHAIN_GRID_DENSITY");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    dc_options opt = options_from(common);
    if (build->parsed()) {
      auto poly = load_poly(common);
      const auto a = parse_numbers(v1s, "--v1"), b = parse_numbers(v2s, "--v2");
      if (a.size() != b.size()) throw CliError{DC_DIMENSION_MISMATCH, "--v1 and --v2 differ in length"};
      opt.allow_delta_above_rho = allow_large ? 1 : 0;
      Chain chain;
      check(dc_chain_build(poly->p, a.data(), b.data(), a.size(), delta, &opt, &chain.c));
      OwnedString text, report;
      check(dc_chain_to_json(chain.c, &text.p));
      check(dc_chain_report_json(chain.c, &report.p));
      const bool ok = dc_chain_all_certified(chain.c) != 0;
      emit(common, text.str(), {{"command", "build"}, {"all_certified", ok}, {"report", json::parse(report.str())}});
      return ok ? 0 : kExitNotCertified;
    }
    if (verify->parsed()) {
      auto poly = load_poly(common);
      const std::string text = read_file(chain_file);
      Chain chain;
      check(dc_chain_from_json(text.c_str(), &chain.c));
      double d = verify_delta;
      if (!(d > 0.0)) {
        const json j = json::parse(text);
        d = j.at("delta").get<double>();
      }
      int ok = 0;
      OwnedString report;
      check(dc_chain_verify(chain.c, poly->p, d, &opt, &ok, &report.p));
      emit(common, report.str(), {{"command", "verify"}, {"all_certified", ok != 0}});
      return ok ? 0 : kExitNotCertified;
    }
    if (ball->parsed()) {
      auto poly = load_poly(common);
      OwnedString text;
      check(dc_clear_ball(poly->p, &opt, &text.p));
      emit(common, text.str(), {{"command", "ball"}, {"certified", true}});
      return 0;
    }
    if (vit->parsed()) {
      auto poly = load_poly(common);
      int within = 0;
      OwnedString text;
      check(dc_vitushkin(poly->p, epsilon, &opt, &within, &text.p));
      emit(common, text.str(), {{"command", "vitushkin"}, {"within_bound", within != 0}});
      return within ? 0 : kExitNotCertified;
    }
    if (cover->parsed()) {
      json disk;
      if (!disk_file.empty()) {
        disk = json::parse(read_file(disk_file));
      } else {
        const auto c = parse_numbers(center_s, "--center");
        if (c.size() != 2) throw CliError{DC_PARSE_ERROR, "--center needs re,im"};
        json z = json::array();
        if (!punctures_s.empty()) {
          const auto zs = parse_numbers(punctures_s, "--punctures");
          if (zs.size() % 2 != 0) throw CliError{DC_PARSE_ERROR, "--punctures needs re,im pairs"};
          for (std::size_t k = 0; k < zs.size(); k += 2) z.push_back({zs[k], zs[k + 1]});
        }
        disk = {{"center", c}, {"radius", radius}, {"punctures", z}, {"delta", 0.0}};
      }
      if (cover_delta >= 0.0) disk["delta"] = cover_delta;
      const auto a = parse_numbers(v1s, "--v1"), b = parse_numbers(v2s, "--v2");
      if (a.size() != 2 || b.size() != 2) throw CliError{DC_DIMENSION_MISMATCH, "--v1 and --v2 need re,im"};
      int ok = 0;
      OwnedString text, svg;
      check(dc_cover(disk.dump().c_str(), a.data(), b.data(), r_max, &opt, &ok, &text.p,
                     common.svg.empty() ? nullptr : &svg.p));
      if (!common.svg.empty()) write_file(common.svg, svg.str());
      const json j = json::parse(text.str());
      emit(common, text.str(), {{"command", "cover"}, {"audit", j["audit"]}});
      return ok ? 0 : kExitNotCertified;
    }
    if (audit->parsed()) {
      const std::string ctext = read_file(cover_file);
      std::string dtext;
      if (!disk_file.empty()) {
        dtext = read_file(disk_file);
      } else {
        const json cj = json::parse(ctext);
        if (!cj.contains("disk")) throw CliError{DC_INVALID_ARGUMENT, "cover file has no embedded disk; pass --disk"};
        dtext = cj["disk"].dump();
      }
      int ok = 0;
      OwnedString text;
      check(dc_cover_audit(dtext.c_str(), ctext.c_str(), &ok, &text.p));
      emit(common, text.str(), {{"command", "audit"}, {"all", ok != 0}});
      return ok ? 0 : kExitNotCertified;
    }
    if (dc->parsed()) {
      OwnedString text;
      check(dc_doubling(read_file(query_file).c_str(), &opt, &text.p));
      emit(common, text.str(), {{"command", "dc"}, {"dc", json::parse(text.str())["dc"]}});
      return 0;
    }
    if (study->parsed()) {
      auto poly = load_poly(common);
      std::vector<double> deltas;
      if (!deltas_s.empty()) {
        deltas = parse_numbers(deltas_s, "--deltas");
      } else {
        if (kmin > kmax) throw CliError{DC_INVALID_ARGUMENT, "--kmin exceeds --kmax"};
        for (int k = kmin; k <= kmax; ++k) deltas.push_back(std::ldexp(1.0, -k));
      }
      std::vector<double> far;
      if (!vfar_s.empty()) far = parse_numbers(vfar_s, "--v-far");
      opt.grid_density = density;
      int ok = 0;
      OwnedString text, svg;
      check(dc_study(poly->p, far.empty() ? nullptr : far.data(), far.size(), deltas.data(), deltas.size(), &opt, &ok,
                     &text.p, common.svg.empty() ? nullptr : &svg.p));
      if (!common.svg.empty()) write_file(common.svg, svg.str());
      const json j = json::parse(text.str());
      const bool fits = j["dc_fit"]["defined"].get<bool>();
      emit(common, text.str(), {{"command", "study"}, {"all_certified", ok != 0}, {"dc_fit", j["dc_fit"]}});
      return ok && fits ? 0 : kExitNotCertified;
    }
  } catch (const CliError& e) {
    const json diag = {{"status", dc_status_name(e.status)}, {"code", static_cast<int>(e.status)}, {"message", e.message}};
    std::cout << diag.dump() << '\n';
    std::cerr << "error: " << dc_status_name(e.status) << ": " << e.message << '\n';
    const bool input = e.status == DC_PARSE_ERROR || e.status == DC_INVALID_ARGUMENT ||
                       e.status == DC_DIMENSION_MISMATCH || e.status == DC_ENDPOINT_WITHIN_DELTA ||
                       e.status == DC_DELTA_TOO_LARGE || e.status == DC_GRID_TOO_LARGE;
    return input ? kExitBadInput : kExitFailed;
  } catch (const std::exception& e) {
    const json diag = {{"status", "internal"}, {"code", 99}, {"message", e.what()}};
    std::cout << diag.dump() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitBadInput;
}

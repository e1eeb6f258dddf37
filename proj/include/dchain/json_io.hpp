#pragma once

#include <string>

#include "json.hpp"

#include "dchain/analysis.hpp"
#include "dchain/chain.hpp"
#include "dchain/clear_ball.hpp"
#include "dchain/geom.hpp"
#include "dchain/poly.hpp"
#include "dchain/punctured_disk.hpp"

namespace dchain {

using Json = nlohmann::json;

/// Parses text, turning nlohmann errors into kParse.
Json parse_json(const std::string& text);
/// Compact dump. Doubles use the shortest representation that reads back
/// to the same value.
std::string dump_json(const Json& j);

/// Complex vectors travel as flat [re_1, im_1, ..., re_n, im_n] arrays.
Json cvec_to_json(const CVec& v);
CVec cvec_from_json(const Json& j);

/// {"dim", "degree", "terms": [{"alpha", "re", "im"}]}. On input "degree"
/// is optional; when present, a term of higher total degree is rejected.
Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);

Json chart_to_json(const EllipsoidChart& c);
EllipsoidChart chart_from_json(const Json& j);

Json certificate_to_json(const ClearanceCertificate& c);
Json report_to_json(const ChainReport& r);

Json chain_to_json(const DoublingChain& chain);
/// Reads charts, endpoints, delta and junction radii. A missing or
/// mis-sized "junction_radii" array is left empty for the verifier to
/// recompute. An embedded report is ignored.
DoublingChain chain_from_json(const Json& j);

/// {"center": [re, im], "radius", "punctures": [[re, im], ...], "delta"}.
PuncturedDisk punctured_disk_from_json(const Json& j);
Json punctured_disk_to_json(const PuncturedDisk& pd);
Json cover_to_json(const DiskCover& cover);
DiskCover cover_from_json(const Json& j);
Json audit_to_json(const CoverAudit& a);

Json clear_ball_to_json(const ClearBall& b);
Json vitushkin_to_json(const VitushkinReport& r);

/// {"numerator", "denominator", "power", "G", "omega"} with point lists of
/// flat complex vectors, plus optional "omega_center", "omega_radius".
DoublingQuery query_from_json(const Json& j);
Json doubling_to_json(const DoublingResult& r);

Json fit_to_json(const LinearFit& f);
Json study_to_json(const ScalingStudy& s);

}  // namespace dchain

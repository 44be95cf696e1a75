#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "vdp/distributions.hpp"
#include "vdp/reconstruct.hpp"

namespace vdp::io {

using nlohmann::json;

inline constexpr const char* kSchema = "vdp-1";

// Ring and rank stamped on every document.
struct Header {
  int r = 2;
  int q = 2;
  int precision = 2;
  CharMode mode = CharMode::Equal;
  const RingSpec& ring() const { return RingSpec::get(q, precision, mode); }
};

json header_json(const Header& h);
// Validates the schema tag and reads the ring fields.
Header read_header(const json& doc);

json vertex_json(const Vertex& v);
Vertex parse_vertex(const RingSpec& ring, const json& j);
json arrow_json(const Vertex& from, const Vertex& to, int type);
json unit_json(const MonomialUnit& u);
MonomialUnit parse_unit(const RingSpec& ring, const json& j);

// Entries store the orientation from the lower to the higher vertex index;
// arrows absent from the document carry 0.
json cochain_json(const Cochain& phi);
Cochain parse_cochain(std::shared_ptr<const Ball> ball, const json& j);

// Tree cochains are written as the values on arrows away from v0, keyed by
// the class of their endpoint, the same layout as a distribution.
json tree_json(const TreeCochain& psi);
TreeCochain parse_tree(std::shared_ptr<const SpecialTree> tree, const json& j);

json distribution_json(const Distribution& d);
Distribution parse_distribution(std::shared_ptr<const SpecialTree> tree, const json& j);

json factor_list_json(const FactorList& f);
FactorList parse_factor_list(const RingSpec& ring, const json& j);

json report_json(const Report& r);

}  // namespace vdp::io

#include "vdp/io.hpp"

#include <stdexcept>

namespace vdp::io {

json header_json(const Header& h) {
  return json{{"schema", kSchema},
              {"r", h.r},
              {"q", h.q},
              {"precision", h.precision},
              {"mode", h.mode == CharMode::Equal ? "equal" : "mixed"}};
}

Header read_header(const json& doc) {
  if (!doc.is_object() || doc.value("schema", "") != kSchema) throw std::invalid_argument("missing or unknown schema tag");
  Header h;
  h.r = doc.at("r").get<int>();
  h.q = doc.at("q").get<int>();
  h.precision = doc.at("precision").get<int>();
  std::string mode = doc.value("mode", "equal");
  if (mode == "equal") h.mode = CharMode::Equal;
  else if (mode == "mixed") h.mode = CharMode::Mixed;
  else throw std::invalid_argument("unknown mode '" + mode + "'");
  if (h.r < 2) throw std::invalid_argument("rank must be at least 2");
  return h;
}

json vertex_json(const Vertex& v) { return json{{"rep", v.rep.format()}, {"sed", v.sed}}; }

Vertex parse_vertex(const RingSpec& ring, const json& j) {
  Vertex v = canonical_vertex(Matrix::parse(ring, j.at("rep").get<std::vector<std::vector<std::string>>>()));
  if (j.contains("sed") && j.at("sed").get<std::vector<int>>() != v.sed)
    throw std::invalid_argument("stored sed disagrees with the lattice");
  return v;
}

json arrow_json(const Vertex& from, const Vertex& to, int type) {
  return json{{"from", vertex_json(from)}, {"to", vertex_json(to)}, {"type", type}};
}

json unit_json(const MonomialUnit& u) {
  json factors = json::array();
  for (const auto& [h, m] : u.factors()) factors.push_back(json{{"y", format_row(h.y())}, {"m", m}});
  return json{{"factors", factors}};
}

MonomialUnit parse_unit(const RingSpec& ring, const json& j) {
  std::vector<MonomialUnit::Factor> factors;
  for (const auto& f : j.at("factors"))
    factors.emplace_back(Hyperplane(parse_row(ring, f.at("y").get<std::vector<std::string>>())), f.at("m").get<long long>());
  return MonomialUnit(factors);
}

json cochain_json(const Cochain& phi) {
  const Ball& ball = phi.ball();
  json entries = json::array();
  for (int i = 0; i < static_cast<int>(ball.edges().size()); ++i) {
    const auto& e = ball.edges()[i];
    if (e.from > e.to) continue;
    entries.push_back(json{{"arrow", arrow_json(ball.vertices()[e.from], ball.vertices()[e.to], e.type)}, {"value", phi[i]}});
  }
  return json{{"depth", ball.depth()}, {"entries", entries}};
}

Cochain parse_cochain(std::shared_ptr<const Ball> ball, const json& j) {
  if (j.at("depth").get<int>() != ball->depth()) throw std::invalid_argument("cochain depth mismatch");
  Cochain phi(ball);
  for (const auto& entry : j.at("entries")) {
    const json& a = entry.at("arrow");
    int from = ball->find_vertex(parse_vertex(ball->ring(), a.at("from")));
    int to = ball->find_vertex(parse_vertex(ball->ring(), a.at("to")));
    int idx = from < 0 || to < 0 ? -1 : ball->find_edge(from, to);
    if (idx < 0) throw std::invalid_argument("cochain entry names an arrow outside the ball");
    if (a.contains("type") && a.at("type").get<int>() != ball->edges()[idx].type)
      throw std::invalid_argument("stored arrow type disagrees with the lattices");
    phi.set(idx, entry.at("value").get<long long>());
  }
  return phi;
}

namespace {

json class_volumes(const SpecialTree& tree, const std::vector<long long>& values) {
  json out = json::array();
  for (int i = 1; i < static_cast<int>(tree.nodes().size()); ++i) {
    const auto& node = tree.node(i);
    out.push_back(json{{"class", format_row(node.cls)}, {"k", node.level}, {"value", values[i]}});
  }
  return out;
}

std::vector<long long> read_volumes(const SpecialTree& tree, const json& j) {
  if (j.at("depth").get<int>() != tree.depth()) throw std::invalid_argument("depth mismatch");
  std::vector<long long> values(tree.nodes().size(), 0);
  for (const auto& v : j.at("volumes")) {
    int k = v.at("k").get<int>();
    if (k < 1 || k > tree.depth()) throw std::invalid_argument("class level out of range");
    int node = tree.find_class(parse_row(tree.ring(), v.at("class").get<std::vector<std::string>>()), k);
    if (node < 0) throw std::invalid_argument("unknown class");
    values[node] = v.at("value").get<long long>();
  }
  return values;
}

}  // namespace

json tree_json(const TreeCochain& psi) {
  return json{{"depth", psi.depth()}, {"volumes", class_volumes(psi.tree(), psi.values())}};
}

TreeCochain parse_tree(std::shared_ptr<const SpecialTree> tree, const json& j) {
  TreeCochain psi(tree);
  std::vector<long long> values = read_volumes(*tree, j);
  for (std::size_t i = 0; i < values.size(); ++i) psi[static_cast<int>(i)] = values[i];
  return psi;
}

json distribution_json(const Distribution& d) {
  return json{{"depth", d.depth()}, {"volumes", class_volumes(d.tree(), d.volumes())}};
}

Distribution parse_distribution(std::shared_ptr<const SpecialTree> tree, const json& j) {
  Distribution d(tree);
  std::vector<long long> values = read_volumes(*tree, j);
  for (std::size_t i = 0; i < values.size(); ++i) d[static_cast<int>(i)] = values[i];
  return d;
}

json factor_list_json(const FactorList& f) {
  json levels = json::array();
  for (const auto& u : f.levels) levels.push_back(unit_json(u));
  return json{{"levels", levels}};
}

FactorList parse_factor_list(const RingSpec& ring, const json& j) {
  FactorList f;
  for (const auto& u : j.at("levels")) f.levels.push_back(parse_unit(ring, u));
  return f;
}

json report_json(const Report& r) {
  return json{{"condition", r.condition},
              {"passed", r.passed()},
              {"checked", r.checked},
              {"unchecked", r.unchecked},
              {"violations", r.violations}};
}

}  // namespace vdp::io

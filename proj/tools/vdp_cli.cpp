// Command-line front end: enumerate, eval, check, reconstruct, convert.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "vdp/io.hpp"

using namespace vdp;
using io::json;

namespace {

enum Exit { kOk = 0, kCheckFailure = 1, kInputError = 2, kLimit = 3 };

struct Session {
  int r = 2;
  int q = 2;
  int depth = 1;
  std::string mode = "equal";
  unsigned seed = 1;
  std::string in;
  std::string out;
  long long work_limit = 1000000;
  bool random = false;

  CharMode char_mode() const {
    if (mode == "equal") return CharMode::Equal;
    if (mode == "mixed") return CharMode::Mixed;
    throw std::invalid_argument("mode must be 'equal' or 'mixed'");
  }
  int precision() const { return 2 * (depth + 1); }
  const RingSpec& ring() const { return RingSpec::get(q, precision(), char_mode()); }
  io::Header header() const { return {r, q, precision(), char_mode()}; }
};

class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_input(const Session& s) {
  if (s.in.empty()) throw std::invalid_argument("--in is required");
  std::ifstream f(s.in);
  if (!f) throw std::invalid_argument("cannot open " + s.in);
  json doc = json::parse(f);
  io::Header h = io::read_header(doc);
  if (h.r != s.r || h.q != s.q || h.mode != s.char_mode())
    throw std::invalid_argument("document ring or rank differs from the session flags");
  return doc;
}

void write_output(const Session& s, json doc) {
  json full = io::header_json(s.header());
  full.update(doc);
  std::string text = full.dump(1) + "\n";
  if (s.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(s.out);
    f << text;
  }
}

std::shared_ptr<const Ball> session_ball(const Session& s) {
  if (static_cast<long long>(s.r) * s.depth > s.work_limit) throw WorkLimitExceeded("r * depth exceeds the work limit");
  return std::make_shared<const Ball>(enumerate_ball(s.ring(), s.r, s.depth, s.work_limit));
}

std::shared_ptr<const SpecialTree> session_tree(const Session& s) {
  return std::make_shared<const SpecialTree>(special_structure(s.ring(), s.r, s.depth));
}

// Units are read modulo pi^N of the session, whatever precision they were
// written with.
MonomialUnit read_unit(const Session& s, const json& doc) {
  io::Header h = io::read_header(doc);
  MonomialUnit u = io::parse_unit(h.ring(), doc.contains("unit") ? doc.at("unit") : doc);
  std::vector<MonomialUnit::Factor> factors;
  for (const auto& [hp, m] : u.factors()) {
    Row y;
    for (const auto& c : hp.y()) {
      Scalar t(s.ring());
      for (int k = 0; k < std::min(h.precision, s.precision()); ++k) t.set_digit(k, c.digit(k));
      y.push_back(t);
    }
    factors.emplace_back(Hyperplane(y), m);
  }
  return MonomialUnit(factors);
}

int cmd_enumerate(const Session& s) {
  auto ball = session_ball(s);
  auto tree = session_tree(s);
  json vertices = json::array();
  for (int i = 0; i < static_cast<int>(ball->vertices().size()); ++i) {
    json v = io::vertex_json(ball->vertices()[i]);
    v["level"] = ball->levels()[i];
    vertices.push_back(v);
  }
  json arrows = json::array();
  std::vector<long long> per_type(s.r, 0);
  for (const auto& e : ball->edges()) {
    arrows.push_back(json{{"from", e.from}, {"to", e.to}, {"type", e.type}});
    if (e.from == 0) ++per_type[e.type];
  }
  json nodes = json::array();
  for (int i = 1; i < static_cast<int>(tree->nodes().size()); ++i) {
    const auto& n = tree->node(i);
    nodes.push_back(json{{"node", i},
                         {"parent", n.parent},
                         {"k", n.level},
                         {"class", format_row(n.cls)},
                         {"vertex", ball->find_vertex(n.vertex)},
                         {"continuation", n.continuation}});
  }
  json special = json::array();
  for (int k = 1; k <= s.depth; ++k) {
    long long inbound = 0, outbound = 0;
    for (int i : tree->level(k)) {
      StarSplit split = split_type1(tree->node(i).vertex);
      for (bool b : split.inbound) (b ? inbound : outbound) += 1;
    }
    special.push_back(json{{"level", k}, {"vertices", tree->level(k).size()}, {"inbound", inbound}, {"outbound", outbound}});
  }
  json counts{{"vertices", ball->vertices().size()},
              {"arrows", ball->edges().size()},
              {"triangles", ball->triangles().size()},
              {"tree_arrows", tree->nodes().size() - 1}};
  for (int t = 1; t < s.r; ++t) counts["arrows_at_v0_type_" + std::to_string(t)] = per_type[t];
  std::cerr << "vertices " << ball->vertices().size() << ", arrows " << ball->edges().size() << ", tree arrows "
            << tree->nodes().size() - 1 << "\n";
  write_output(s, json{{"depth", s.depth}, {"counts", counts}, {"vertices", vertices}, {"arrows", arrows},
                       {"tree", nodes}, {"special", special}});
  return kOk;
}

int cmd_eval(const Session& s) {
  MonomialUnit u;
  if (s.random) {
    std::mt19937 rng(s.seed);
    for (int i = 0; i < 2; ++i) {
      auto pick = [&] {
        while (true) {
          Row y;
          for (int k = 0; k < s.r; ++k) {
            Scalar c(s.ring());
            for (int d = 0; d < s.precision(); ++d) c.set_digit(d, static_cast<std::uint8_t>(rng() % s.q));
            y.push_back(c);
          }
          if (row_val(y) == 0) return Hyperplane(y);
        }
      };
      Hyperplane a = pick(), b = pick();
      if (!(a == b)) u = u * MonomialUnit::ratio(a, b);
    }
  } else {
    u = read_unit(s, read_input(s));
  }
  auto ball = session_ball(s);
  Cochain phi = cochain_from_unit(u, ball);
  json mismatches = json::array();
  for (int i = 0; i < static_cast<int>(ball->edges().size()); ++i) {
    Arrow e = ball->arrow(i);
    long long closed = vdp_closed(u, e), oracle = vdp_oracle(u, e);
    if (closed != oracle || oracle != phi[i])
      mismatches.push_back(json{{"edge", i}, {"oracle", oracle}, {"closed", closed}});
  }
  json doc{{"unit", io::unit_json(u)}, {"cochain", io::cochain_json(phi)},
           {"report", {{"arrows", ball->edges().size()}, {"mismatches", mismatches}}}};
  write_output(s, doc);
  return mismatches.empty() ? kOk : kCheckFailure;
}

// The payload of a document: an embedded cochain or distribution, else the
// document itself.
const json& cochain_part(const json& doc) {
  if (doc.contains("cochain")) return doc.at("cochain");
  if (doc.contains("distribution")) return doc.at("distribution");
  return doc;
}

int cmd_check(const Session& s) {
  json doc = read_input(s);
  auto ball = session_ball(s);
  Cochain phi = io::parse_cochain(ball, cochain_part(doc));
  std::vector<Report> reports = check_all(phi);
  auto tree = session_tree(s);
  TreeCochain psi(tree);
  std::vector<int> edges = tree_edges(*ball, *tree);
  for (std::size_t i = 1; i < edges.size(); ++i) psi[static_cast<int>(i)] = phi[edges[i]];
  reports.push_back(check_flow(psi));
  json out = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    out.push_back(io::report_json(r));
    ok = ok && r.passed();
  }
  write_output(s, json{{"passed", ok}, {"reports", out}});
  return ok ? kOk : kCheckFailure;
}

int cmd_reconstruct(const Session& s) {
  auto ball = session_ball(s);
  auto tree = session_tree(s);
  Cochain phi;
  FactorList factors;
  if (s.random) {
    std::mt19937 rng(s.seed);
    TreeCochain psi(tree);
    for (int i = 0; i < static_cast<int>(tree->nodes().size()); ++i) {
      const auto& kids = tree->node(i).children;
      if (kids.empty()) continue;
      long long sum = 0;
      for (std::size_t j = 0; j + 1 < kids.size(); ++j) sum += psi[kids[j]] = static_cast<long long>(rng() % 7) - 3;
      psi[kids.back()] = (i == 0 ? 0 : psi[i]) - sum;
    }
    factors = factors_from_tree(psi);
    phi = cochain_from_unit(factors.product(), ball);
  } else {
    json doc = read_input(s);
    const json& body = cochain_part(doc);
    if (body.contains("volumes")) {
      TreeCochain psi = io::parse_tree(tree, body);
      factors = factors_from_tree(psi);
      phi = cochain_from_unit(factors.product(), ball);
      if (!(restrict_to_tree(phi, tree) == psi)) throw std::logic_error("extension does not restrict to the input");
    } else {
      phi = io::parse_cochain(ball, body);
      factors = reconstruct(phi);
    }
  }
  Cochain image = cochain_from_unit(factors.product(), ball);
  long long mismatched = 0;
  for (int i = 0; i < static_cast<int>(ball->edges().size()); ++i) mismatched += image[i] != phi[i];
  json doc{{"factors", io::factor_list_json(factors)},
           {"cochain", io::cochain_json(phi)},
           {"report", {{"exact", mismatched == 0}, {"arrows", ball->edges().size()}, {"mismatched_arrows", mismatched}}}};
  write_output(s, doc);
  return mismatched == 0 ? kOk : kCheckFailure;
}

int cmd_convert(const Session& s) {
  json doc = read_input(s);
  const json& body = cochain_part(doc);
  auto tree = session_tree(s);
  if (body.contains("volumes")) {
    Distribution d = io::parse_distribution(tree, body);
    Cochain phi = distribution_to_cochain(d, session_ball(s));
    write_output(s, json{{"cochain", io::cochain_json(phi)}});
  } else {
    Cochain phi = io::parse_cochain(session_ball(s), body);
    Distribution d = cochain_to_distribution(phi, tree);
    write_output(s, json{{"distribution", io::distribution_json(d)}, {"total_mass", d.total_mass()}});
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Van der Put transform toolkit for Bruhat-Tits buildings"};
  app.require_subcommand(1);
  Session s;
  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--r", s.r, "rank r >= 2")->check(CLI::Range(2, 8));
    sub->add_option("--q", s.q, "residue field size");
    sub->add_option("--depth", s.depth, "ball radius n")->check(CLI::Range(0, kMaxPrecision / 2 - 1));
    sub->add_option("--mode", s.mode, "equal or mixed characteristic");
    sub->add_option("--seed", s.seed, "seed for --random inputs");
    sub->add_option("--in", s.in, "input JSON document");
    sub->add_option("--out", s.out, "output path (default stdout)");
    sub->add_option("--work-limit", s.work_limit, "vertex budget for enumeration");
  };
  auto* enumerate = app.add_subcommand("enumerate", "ball, special tree and counts");
  auto* eval = app.add_subcommand("eval", "transform of a unit with both evaluators");
  auto* check = app.add_subcommand("check", "harmonicity report for a cochain");
  auto* recon = app.add_subcommand("reconstruct", "factor list for a cochain or tree cochain");
  auto* convert = app.add_subcommand("convert", "cochain <-> distribution");
  for (auto* sub : {enumerate, eval, check, recon, convert}) add_flags(sub);
  eval->add_flag("--random", s.random, "use a random unit from --seed");
  recon->add_flag("--random", s.random, "use a random flow-valid tree cochain from --seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    (void)s.ring();
    if (*enumerate) return cmd_enumerate(s);
    if (*eval) return cmd_eval(s);
    if (*check) return cmd_check(s);
    if (*recon) return cmd_reconstruct(s);
    if (*convert) return cmd_convert(s);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return kLimit;
  } catch (const WorkLimitExceeded& e) {
    std::cerr << "work limit: " << e.what() << "\n";
    return kLimit;
  } catch (const NotHarmonic& e) {
    std::cerr << "not harmonic: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const FlowViolation& e) {
    std::cerr << "flow violation: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

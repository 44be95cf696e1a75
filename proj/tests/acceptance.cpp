// Acceptance run: one PASS/FAIL line per criterion, exact integer checks.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "support.hpp"
#include "vdp/distributions.hpp"
#include "vdp/reconstruct.hpp"

using namespace vdp;
using vdp::testing::random_flow;
using vdp::testing::random_gl;
using vdp::testing::random_hyperplane;
using vdp::testing::random_unit;

namespace {

constexpr long long kLargePrime = 1000003;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

const RingSpec& ring_for(int q, int n) { return RingSpec::get(q, 2 * (n + 1)); }

std::shared_ptr<const Ball> ball_for(int q, int r, int n) {
  return std::make_shared<const Ball>(enumerate_ball(ring_for(q, n), r, n));
}

std::shared_ptr<const SpecialTree> tree_for(int q, int r, int n) {
  return std::make_shared<const SpecialTree>(special_structure(ring_for(q, n), r, n));
}

void criterion1(Outcome& o) {
  const int r = 3, q = 2;
  auto ball = ball_for(q, r, 2);
  long long vertices = 0;
  for (const auto& v : ball->vertices()) {
    o.require(arrows_from(v, 1).size() == 7, "|A_v,1| != 7");
    ++vertices;
  }
  auto tree = tree_for(q, r, 3);
  long long special = 0;
  for (int n = 1; n <= 2; ++n)
    for (int i : tree->level(n)) {
      StarSplit split = split_type1(tree->node(i).vertex);
      long long out = 0;
      for (bool b : split.inbound) out += !b;
      o.require(out == 4, "outbound count != q^(r-1)");
      ++special;
    }
  o.require(tree->node(0).children.size() == 7, "root valence != 7");
  long long inner = 0;
  for (int k = 1; k < 3; ++k)
    for (int i : tree->level(k)) {
      o.require(tree->node(i).children.size() + 1 == 5, "valence != 5");
      ++inner;
    }
  o.detail << vertices << " vertices of BT(2), " << special << " special vertices, " << inner << " inner tree vertices";
}

struct Config {
  int r, q, n;
};

std::vector<Config> evaluator_configs() { return {{2, 2, 3}, {2, 3, 3}, {3, 2, 2}, {3, 3, 2}}; }

void criterion2(Outcome& o) {
  std::mt19937 rng(2002);
  long long evaluations = 0;
  for (Config c : evaluator_configs()) {
    auto ball = ball_for(c.q, c.r, c.n);
    std::vector<Arrow> arrows;
    for (int i = 0; i < static_cast<int>(ball->edges().size()); ++i) arrows.push_back(ball->arrow(i));
    for (int t = 0; t < 100; ++t) {
      MonomialUnit u = random_unit(ball->ring(), c.r, rng);
      for (const auto& e : arrows) {
        o.require(vdp_oracle(u, e) == vdp_closed(u, e), "oracle and closed form differ");
        ++evaluations;
      }
    }
  }
  o.detail << evaluations << " arrow evaluations";
}

void criterion3(Outcome& o) {
  std::mt19937 rng(3003);
  long long cochains = 0, conditions = 0;
  for (Config c : evaluator_configs()) {
    auto ball = ball_for(c.q, c.r, c.n);
    for (int t = 0; t < 100; ++t) {
      Cochain phi = cochain_from_unit(random_unit(ball->ring(), c.r, rng), ball);
      for (const auto& rep : check_all(phi)) {
        o.require(rep.passed(), "condition " + rep.condition + " violated");
        conditions += rep.checked;
      }
      ++cochains;
    }
  }
  o.detail << cochains << " cochains, " << conditions << " conditions checked";
}

void criterion4(Outcome& o) {
  std::mt19937 rng(4004);
  int done = 0;
  long long arrows = 0;
  std::vector<Config> configs{{3, 2, 0}, {2, 3, 0}};
  while (done < 50) {
    Config c = configs[done % 2];
    int n = (done / 2) % 3;
    const RingSpec& R = ring_for(c.q, n + 1);
    Hyperplane h = random_hyperplane(R, c.r, rng), h2 = random_hyperplane(R, c.r, rng);
    Vertex v0 = standard_vertex(R, c.r);
    if (tau_shift(v0, h.y()) == tau_shift(v0, h2.y())) continue;
    MonomialUnit f = f_factor(h, h2, n);
    Ball ball = enumerate_ball(R, c.r, n + 1);
    SpecialTree tree = special_structure(R, c.r, n + 1);
    for (int i = 0; i < static_cast<int>(ball.edges().size()); ++i) {
      const auto& e = ball.edges()[i];
      if (ball.levels()[e.from] <= n && ball.levels()[e.to] <= n)
        o.require(vdp_oracle(f, ball.arrow(i)) == 0, "f transform nonzero inside BT(n)");
    }
    Vertex vn = special_vertex(h2.y(), n);
    Vertex cont = special_vertex(h2.y(), n + 1);
    Vertex w = tau_shift(vn, f_numerator(h, h2, n));
    int plus = 0, minus = 0;
    for (int i : tree.level(n + 1)) {
      Arrow e = tree.arrow(i);
      long long expected = 0;
      if (e.from == vn && e.to == cont) expected = 1;
      if (e.from == vn && e.to == w) expected = -1;
      long long oracle = vdp_oracle(f, e);
      o.require(oracle == expected, "pattern mismatch on an (n+1)-special arrow");
      o.require(special_eval(h, h2, n, e) == oracle, "special_eval differs from oracle");
      o.require(vdp_closed(f, e) == oracle, "closed form differs from oracle");
      plus += oracle == 1;
      minus += oracle == -1;
      ++arrows;
    }
    o.require(plus == 1 && minus == 1, "pattern does not have one +1 and one -1");
    ++done;
  }
  o.detail << done << " triples, " << arrows << " special arrows";
}

void criterion5(Outcome& o) {
  std::mt19937 rng(5005);
  long long trips = 0;
  for (Config c : std::vector<Config>{{2, 2, 3}, {2, 3, 3}, {3, 2, 2}}) {
    auto ball = ball_for(c.q, c.r, c.n);
    auto tree = tree_for(c.q, c.r, c.n);
    for (int t = 0; t < 25; ++t) {
      TreeCochain psi = random_flow(tree, rng);
      FactorList f = factors_from_tree(psi);
      Cochain phi = cochain_from_unit(f.product(), ball);
      o.require(is_harmonic(phi), "extension not harmonic");
      o.require(restrict_to_tree(phi, tree) == psi, "restriction differs from input");
      FactorList g = reconstruct(phi);
      o.require(cochain_from_unit(g.product(), ball) == phi, "reconstruction differs on BT(n)");
      ++trips;
    }
  }
  o.detail << trips << " round trips";
}

void criterion6(Outcome& o) {
  for (Config c : std::vector<Config>{{2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {2, 3, 2}, {3, 2, 1}}) {
    auto ball = ball_for(c.q, c.r, c.n + 1);
    EdgeVariables vars = edge_variables(*ball, c.n);
    LinearSystem sys = harmonic_system(*ball, vars, c.n);
    int rank = rank_mod_p(sys, kLargePrime);
    o.require(rank == vars.count, "nontrivial kernel");
    o.detail << "r" << c.r << "q" << c.q << "n" << c.n << ": rank " << rank << "/" << vars.count << "; ";
  }
}

void criterion7(Outcome& o) {
  long long arrows = 0;
  for (int r : {2, 3}) {
    auto tree = tree_for(2, r, 3);
    Vertex v0 = standard_vertex(tree->ring(), r);
    for (int n = 1; n <= 3; ++n)
      for (int i : tree->level(n)) {
        const auto& node = tree->node(i);
        Arrow back = reverse(tree->arrow(i));
        for (const auto& e : arrows_from(node.vertex, 1)) {
          bool inbound = distance(v0, e.to) <= n;
          o.require(inbound == dominates(back, e), "inbound does not match domination");
          ++arrows;
        }
      }
  }
  o.detail << arrows << " arrows at special vertices";
}

void criterion8(Outcome& o) {
  std::mt19937 rng(8008);
  long long elements = 0;
  for (Config c : std::vector<Config>{{2, 3, 2}, {3, 2, 2}}) {
    auto ball = ball_for(c.q, c.r, c.n);
    auto tree = tree_for(c.q, c.r, c.n);
    const RingSpec& R = ball->ring();
    for (int t = 0; t < 20; ++t) {
      Matrix g = random_gl(R, c.r, rng);
      MonomialUnit u = random_unit(R, c.r, rng);
      Cochain phi = cochain_from_unit(u, ball);
      Cochain moved = cochain_action(g, phi);
      o.require(moved == cochain_from_unit(unit_action(g, u), ball), "cochain square does not commute");
      Matrix ginv = inverse_over_O(g);
      MonomialUnit back = unit_action(ginv, u);
      for (int i = 0; i < static_cast<int>(ball->edges().size()); ++i) {
        Arrow e = ball->arrow(i);
        o.require(vdp_oracle(u, gl_action(g, e)) == vdp_oracle(back, e), "arrow equivariance fails");
      }
      o.require(cochain_to_distribution(moved, tree) == pushforward(g, cochain_to_distribution(phi, tree)),
                "distribution square does not commute");
      ++elements;
    }
  }
  o.detail << elements << " group elements";
}

// Z-basis of the flow solutions: for every node and every child but the last,
// +1 down the chain of first children from that child and -1 down the chain
// from the last child.
std::vector<TreeCochain> tree_basis(std::shared_ptr<const SpecialTree> tree) {
  std::vector<TreeCochain> out;
  auto chain = [&](TreeCochain& psi, int node, long long value) {
    while (true) {
      psi[node] += value;
      if (tree->node(node).children.empty()) break;
      node = tree->node(node).children.front();
    }
  };
  for (int i = 0; i < static_cast<int>(tree->nodes().size()); ++i) {
    const auto& kids = tree->node(i).children;
    for (std::size_t j = 0; j + 1 < kids.size(); ++j) {
      TreeCochain psi(tree);
      chain(psi, kids[j], 1);
      chain(psi, kids.back(), -1);
      out.push_back(psi);
    }
  }
  return out;
}

void criterion9(Outcome& o) {
  for (Config c : std::vector<Config>{{2, 2, 2}, {2, 3, 2}, {3, 2, 2}}) {
    auto ball = ball_for(c.q, c.r, c.n);
    auto tree = tree_for(c.q, c.r, c.n);
    EdgeVariables vars = edge_variables(*ball, c.n);
    LinearSystem sys = harmonic_system(*ball, vars, c.n - 1);
    std::vector<std::vector<long long>> basis;
    for (const auto& psi : tree_basis(tree)) {
      Cochain phi = extend_from_tree(psi, ball);
      std::vector<long long> vec(vars.count, 0);
      for (int i = 0; i < static_cast<int>(ball->edges().size()); ++i)
        if (vars.column[i] >= 0 && vars.sign[i] == 1) vec[vars.column[i]] = phi[i];
      for (const auto& row : sys.rows) {
        long long s = 0;
        for (const auto& [col, v] : row) s += v * vec[col];
        o.require(s == 0, "basis vector violates the integer system");
      }
      basis.push_back(vec);
    }
    o.require(rank_mod_p(basis, kLargePrime) == static_cast<int>(basis.size()), "basis not independent");
    o.detail << "r" << c.r << "q" << c.q << "n" << c.n << ":";
    for (long long p : {2, 3, 5}) {
      int kernel = vars.count - rank_mod_p(sys, p);
      int span = rank_mod_p(basis, p);
      o.require(span == kernel, "reduced basis does not span the mod-p kernel");
      o.detail << " p" << p << " " << span << "/" << kernel;
    }
    o.detail << "; ";
  }
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"count identities", criterion1},
      {"dual-evaluator equivalence", criterion2},
      {"harmonicity of transforms", criterion3},
      {"special arrow pattern of f", criterion4},
      {"surjectivity round trip", criterion5},
      {"finite-support kernel", criterion6},
      {"inbound iff dominated", criterion7},
      {"equivariance", criterion8},
      {"coefficient functoriality", criterion9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}

#include "doctest.h"
#include "support.hpp"
#include "vdp/reconstruct.hpp"

using namespace vdp;

namespace {

std::shared_ptr<const Ball> make_ball(const RingSpec& R, int r, int n) {
  return std::make_shared<const Ball>(enumerate_ball(R, r, n));
}

std::shared_ptr<const SpecialTree> make_tree(const RingSpec& R, int r, int n) {
  return std::make_shared<const SpecialTree>(special_structure(R, r, n));
}

}  // namespace

TEST_CASE("level 1 from targets") {
  const RingSpec& R = RingSpec::get(2, 6);
  auto tree = make_tree(R, 3, 1);
  const auto& level = tree->level(1);
  std::vector<long long> targets(level.size(), 0);
  targets[0] = 1;
  targets[1] = -1;
  MonomialUnit u = solve_level1(*tree, targets);
  CHECK(u == MonomialUnit::ratio(Hyperplane(tree->node(level[1]).cls), Hyperplane(tree->node(level[0]).cls)));
  CHECK(vdp_oracle(u, tree->arrow(level[0])) == 1);
  CHECK(vdp_oracle(u, tree->arrow(level[1])) == -1);
  CHECK(solve_level1(*tree, std::vector<long long>(level.size(), 0)).empty());
  targets[2] = 1;
  CHECK_THROWS_AS(solve_level1(*tree, targets), NonzeroSum);

  std::mt19937 rng(1);
  auto ball = make_ball(R, 3, 1);
  for (int t = 0; t < 20; ++t) {
    std::vector<long long> v(7);
    long long sum = 0;
    for (int i = 0; i < 6; ++i) sum += v[i] = static_cast<long long>(rng() % 9) - 4;
    v[6] = -sum;
    MonomialUnit w = solve_level1(*tree, v);
    for (int i = 0; i < 7; ++i) CHECK(vdp_oracle(w, tree->arrow(level[i])) == v[i]);
    // The match extends over the whole star of v0.
    Cochain phi = cochain_from_unit(w, ball);
    CHECK(is_harmonic(phi));
  }
}

TEST_CASE("one level of f-factors") {
  const RingSpec& R = RingSpec::get(3, 8);
  auto tree = make_tree(R, 2, 2);
  int v = tree->level(1).front();
  const auto& node = tree->node(v);
  std::vector<long long> residual(tree->nodes().size(), 0);
  CHECK(solve_level(*tree, 1, residual).empty());
  std::vector<int> others;
  for (int c : node.children)
    if (c != node.continuation) others.push_back(c);
  REQUIRE(others.size() == 2);
  residual[others[0]] = 1;
  residual[others[1]] = -1;
  MonomialUnit u = solve_level(*tree, 1, residual);
  // The two f-factors share the denominator l_{y'}, which cancels.
  CHECK(u.factors().size() == 2);
  auto ball = make_ball(R, 2, 2);
  Cochain phi = cochain_from_unit(u, ball);
  for (int i = 0; i < static_cast<int>(ball->edges().size()); ++i) {
    const auto& e = ball->edges()[i];
    if (ball->levels()[e.from] <= 1 && ball->levels()[e.to] <= 1) CHECK(phi[i] == 0);
  }
  for (int i : tree->level(2)) CHECK(vdp_oracle(u, tree->arrow(i)) == residual[i]);

  std::vector<long long> bad(tree->nodes().size(), 0);
  bad[node.continuation] = 1;
  CHECK_THROWS_AS(solve_level(*tree, 1, bad), FlowViolation);
}

TEST_CASE("reconstruct a ratio") {
  const RingSpec& R = RingSpec::get(2, 8);
  std::mt19937 rng(2);
  for (int r : {2, 3}) {
    auto ball = make_ball(R, r, r == 2 ? 3 : 2);
    for (int t = 0; t < 5; ++t) {
      Hyperplane h = testing::random_hyperplane(R, r, rng), h2 = testing::random_hyperplane(R, r, rng);
      if (h == h2) continue;
      Cochain phi = cochain_from_unit(MonomialUnit::ratio(h, h2), ball);
      FactorList f = reconstruct(phi);
      CHECK(cochain_from_unit(f.product(), ball) == phi);
      CHECK(extend_from_tree(restrict_to_tree(phi), ball) == phi);
    }
  }
}

TEST_CASE("zero reconstructs to empty levels") {
  const RingSpec& R = RingSpec::get(2, 8);
  auto ball = make_ball(R, 3, 2);
  FactorList f = reconstruct(Cochain(ball));
  CHECK(f.levels.size() == 2);
  for (const auto& u : f.levels) CHECK(u.empty());
  CHECK(extend_from_tree(TreeCochain(make_tree(R, 3, 2)), ball).is_zero());
}

TEST_CASE("round trips through the tree") {
  struct Config {
    int r, q, n;
  };
  std::mt19937 rng(3);
  for (Config c : {Config{2, 3, 3}, Config{3, 2, 2}}) {
    const RingSpec& R = RingSpec::get(c.q, 2 * (c.n + 1));
    auto ball = make_ball(R, c.r, c.n);
    auto tree = make_tree(R, c.r, c.n);
    for (int t = 0; t < 25; ++t) {
      TreeCochain psi = testing::random_flow(tree, rng);
      FactorList f = factors_from_tree(psi);
      Cochain phi = cochain_from_unit(f.product(), ball);
      CHECK(restrict_to_tree(phi, tree) == psi);
      // Level locality: u_i vanishes on BT(i-1).
      for (std::size_t i = 1; i < f.levels.size(); ++i) {
        Cochain part = cochain_from_unit(f.levels[i], ball);
        for (int e = 0; e < static_cast<int>(ball->edges().size()); ++e) {
          const auto& edge = ball->edges()[e];
          if (ball->levels()[edge.from] <= static_cast<int>(i) && ball->levels()[edge.to] <= static_cast<int>(i))
            CHECK(part[e] == 0);
        }
      }
      FactorList g = reconstruct(phi);
      CHECK(cochain_from_unit(g.product(), ball) == phi);
    }
  }
}

TEST_CASE("non-harmonic input is rejected") {
  const RingSpec& R = RingSpec::get(2, 6);
  auto ball = make_ball(R, 2, 2);
  Cochain phi(ball);
  phi.set(0, 1);
  CHECK_THROWS_AS(reconstruct(phi), NotHarmonic);
  TreeCochain psi(make_tree(R, 2, 2));
  psi[1] = 1;
  CHECK_THROWS_AS(extend_from_tree(psi, ball), FlowViolation);
}

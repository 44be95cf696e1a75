#include <map>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "vdp/building.hpp"

using namespace vdp;

TEST_CASE("canonical vertices") {
  const RingSpec& R = RingSpec::get(2, 6);
  Vertex v0 = standard_vertex(R, 2);
  CHECK(canonical_vertex(Matrix::diagonal_pi(R, {1, 1})) == v0);
  Vertex v = canonical_vertex(Matrix::diagonal_pi(R, {2, 0}));
  CHECK(v.sed == std::vector<int>{2, 0});
  CHECK(distance(v0, v) == 2);
  CHECK(distance(v0, v0) == 0);
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    Matrix g(R, 2, 2);
    do {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = Scalar::from_digits(R, {int(rng() % 2), int(rng() % 2), int(rng() % 2)});
    } while (!determinant(g).is_unit());
    CHECK(canonical_vertex(g * v.rep) == v);
  }
}

TEST_CASE("arrow counts and types") {
  for (int q : {2, 3}) {
    for (int r : {2, 3}) {
      const RingSpec& R = RingSpec::get(q, 6);
      Ball ball = enumerate_ball(R, r, 2);
      for (const auto& v : ball.vertices())
        for (int t = 1; t < r; ++t) {
          auto arrows = arrows_from(v, t);
          CHECK(static_cast<long long>(arrows.size()) == gaussian_binomial(r, t, q));
          if (v.level() == 0)
            for (const auto& e : arrows) {
              CHECK(distance(e.from, e.to) == 1);
              CHECK(reverse(e).type == r - t);
              CHECK(make_arrow(e.from, e.to).space == e.space);
            }
        }
    }
  }
  CHECK(arrows_from(standard_vertex(RingSpec::get(2, 4), 3), 1).size() == 7);
  CHECK(arrows_from(standard_vertex(RingSpec::get(3, 4), 2), 1).size() == 4);
}

TEST_CASE("ball sizes") {
  const RingSpec& R = RingSpec::get(2, 8);
  CHECK(enumerate_ball(R, 2, 0).vertices().size() == 1);
  CHECK(enumerate_ball(R, 2, 1).vertices().size() == 4);
  CHECK(enumerate_ball(R, 2, 2).vertices().size() == 10);
  CHECK(enumerate_ball(R, 2, 3).vertices().size() == 22);
  CHECK_THROWS_AS(enumerate_ball(R, 3, 3, 50), WorkLimitExceeded);
}

TEST_CASE("distance agrees with breadth-first search") {
  const RingSpec& R = RingSpec::get(2, 10);
  Ball ball = enumerate_ball(R, 2, 4);
  int nv = static_cast<int>(ball.vertices().size());
  std::mt19937 rng(9);
  std::vector<int> inner;
  for (int i = 0; i < nv; ++i)
    if (ball.levels()[i] <= 3) inner.push_back(i);
  for (int t = 0; t < 50; ++t) {
    int a = inner[rng() % inner.size()], b = inner[rng() % inner.size()];
    std::vector<int> dist(nv, -1);
    std::queue<int> queue;
    dist[a] = 0;
    queue.push(a);
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop();
      for (int idx : ball.out(x)) {
        int y = ball.edges()[idx].to;
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push(y);
        }
      }
    }
    CHECK(distance(ball.vertices()[a], ball.vertices()[b]) == dist[b]);
  }
}

TEST_CASE("distance is a metric on a small ball") {
  const RingSpec& R = RingSpec::get(2, 8);
  Ball ball = enumerate_ball(R, 3, 2);
  const auto& vs = ball.vertices();
  std::mt19937 rng(2);
  for (int t = 0; t < 200; ++t) {
    const Vertex& a = vs[rng() % vs.size()];
    const Vertex& b = vs[rng() % vs.size()];
    const Vertex& c = vs[rng() % vs.size()];
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c));
  }
}

TEST_CASE("shift toward a subspace") {
  const RingSpec& R = RingSpec::get(2, 8);
  Vertex v0 = standard_vertex(R, 2);
  Row y = unit_row(R, 2, 0);
  Vertex w = tau_shift(v0, y);
  CHECK(w == canonical_vertex(Matrix::diagonal_pi(R, {1, 0})));
  Vertex v = v0;
  for (int i = 1; i <= 4; ++i) {
    v = tau_shift(v, y);
    CHECK(distance(v0, v) == i);
  }
  Scalar u = Scalar::from_digits(R, {1, 1, 0, 1});
  CHECK(tau_shift(w, row_scale(u, Row{Scalar::one(R), Scalar::pi_power(R, 1)})) ==
        tau_shift(w, Row{Scalar::one(R), Scalar::pi_power(R, 1)}));
}

TEST_CASE("domination") {
  const RingSpec& R = RingSpec::get(2, 4);
  Vertex v0 = standard_vertex(R, 3);
  auto type1 = arrows_from(v0, 1);
  auto type2 = arrows_from(v0, 2);
  for (const auto& e : type1) {
    CHECK(dominates(e, e));
    for (const auto& f : type1)
      if (!(e == f)) CHECK_FALSE(dominates(e, f));
  }
  for (const auto& e : type2) {
    int count = 0;
    for (const auto& f : type1) count += dominates(e, f);
    CHECK(count == 3);
  }
  CHECK_THROWS_AS(dominates(type1[0], reverse(type1[1])), DifferentOrigin);
}

TEST_CASE("classes and the special tree") {
  const RingSpec& R = RingSpec::get(2, 8);
  CHECK(n_classes(R, 2, 1).size() == 3);
  CHECK(n_classes(R, 2, 2).size() == 6);
  CHECK(n_classes(R, 3, 2).size() == 28);
  for (int r : {2, 3}) {
    for (int n = 1; n <= (r == 2 ? 4 : 3); ++n) {
      SpecialTree tree = special_structure(R, r, n);
      std::set<std::string> keys;
      for (const auto& node : tree.nodes()) {
        keys.insert(node.vertex.key);
        CHECK(is_special(node.vertex, node.level));
        if (node.level > 0) {
          CHECK(distance(tree.node(node.parent).vertex, node.vertex) == 1);
          CHECK(tree.arrow(&node - tree.nodes().data()).type == 1);
        }
      }
      CHECK(keys.size() == tree.nodes().size());
      int q = 2;
      int valence_root = static_cast<int>(tree.node(0).children.size());
      CHECK(valence_root == static_cast<int>(gaussian_binomial(r, 1, q)));
      for (int k = 1; k < n; ++k)
        for (int i : tree.level(k)) CHECK(tree.node(i).children.size() + 1 == (1u << (r - 1)) + 1);
    }
  }
}

TEST_CASE("special vertices are the sed (n,0,..,0) vertices") {
  const RingSpec& R = RingSpec::get(2, 8);
  Ball ball = enumerate_ball(R, 3, 2);
  SpecialTree tree = special_structure(R, 3, 2);
  for (const auto& v : ball.vertices()) CHECK(is_special(v, v.level()) == (tree.find_vertex(v) >= 0));
}

TEST_CASE("distance to the nearest special vertex is the second divisor") {
  const RingSpec& R = RingSpec::get(2, 10);
  Ball ball = enumerate_ball(R, 3, 3);
  SpecialTree tree = special_structure(R, 3, 3);
  for (const auto& v : ball.vertices()) {
    int best = 100;
    for (const auto& node : tree.nodes())
      if (node.level == v.level()) best = std::min(best, distance(v, node.vertex));
    CHECK(best == v.sed[1]);
  }
}

TEST_CASE("inbound arrows at special vertices") {
  for (int r : {2, 3}) {
    const RingSpec& R = RingSpec::get(2, 10);
    SpecialTree tree = special_structure(R, r, 3);
    for (const auto& node : tree.nodes()) {
      if (node.level == 0) continue;
      StarSplit split = split_type1(node.vertex);
      Arrow back = reverse(make_arrow(tree.node(node.parent).vertex, node.vertex));
      int outbound = 0;
      for (std::size_t i = 0; i < split.arrows.size(); ++i) {
        CHECK(split.inbound[i] == dominates(back, split.arrows[i]));
        outbound += !split.inbound[i];
      }
      CHECK(outbound == (1 << (r - 1)));
    }
  }
}

TEST_CASE("group action") {
  const RingSpec& R = RingSpec::get(2, 8);
  Vertex v = canonical_vertex(Matrix::diagonal_pi(R, {2, 1, 0}));
  CHECK(gl_action(Matrix::identity(R, 3), v) == v);
  CHECK(gl_action(Matrix::diagonal_pi(R, {1, 1, 1}), v) == v);
  Matrix perm = Matrix::from_ints(R, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  Vertex v0 = standard_vertex(R, 3);
  CHECK(gl_action(perm, v0) == v0);
  Row y{Scalar::one(R), Scalar::pi_power(R, 1), Scalar::zero(R)};
  CHECK(gl_action_covector(Matrix::identity(R, 3), y) == y);
  // tau_{Hg}(v g) = tau_H(v) g
  Matrix g = Matrix::from_ints(R, {{1, 1, 0}, {0, 1, 1}, {1, 0, 0}});
  Row yg = gl_action_covector(g, y);
  CHECK(tau_shift(gl_action(g, v), yg) == gl_action(g, tau_shift(v, y)));
}

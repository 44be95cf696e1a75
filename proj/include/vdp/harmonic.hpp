#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vdp/building.hpp"
#include "vdp/units.hpp"

namespace vdp {

// Z/M as a coefficient group.
template <long long M>
struct ZMod {
  static_assert(M >= 2);
  long long v = 0;

  ZMod() = default;
  ZMod(long long x) : v(((x % M) + M) % M) {}
  ZMod operator+(ZMod o) const { return ZMod(v + o.v); }
  ZMod operator-(ZMod o) const { return ZMod(v - o.v); }
  ZMod operator-() const { return ZMod(-v); }
  ZMod& operator+=(ZMod o) { return *this = *this + o; }
  bool operator==(const ZMod&) const = default;
};

template <class A>
std::string coefficient_str(const A& a) {
  if constexpr (std::is_integral_v<A>) return std::to_string(a);
  else return std::to_string(a.v);
}

// Result of one condition check.  Vertices whose star leaves the ball are
// counted as unchecked, never as failures.
struct Report {
  std::string condition;
  long long checked = 0;
  long long unchecked = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

// Values on every arrow of a ball, one slot per directed edge.
template <class A>
class BasicCochain {
 public:
  BasicCochain() = default;
  explicit BasicCochain(std::shared_ptr<const Ball> ball) : ball_(std::move(ball)), values_(ball_->edges().size()) {}

  const Ball& ball() const { return *ball_; }
  std::shared_ptr<const Ball> ball_ptr() const { return ball_; }
  int depth() const { return ball_->depth(); }
  const A& operator[](int edge) const { return values_[edge]; }
  // Sets the value on an edge and its negative on the reverse edge.
  void set(int edge, const A& value) {
    values_[edge] = value;
    values_[ball_->edges()[edge].reverse] = -value;
  }
  // Sets one orientation only.
  void set_raw(int edge, const A& value) { values_[edge] = value; }
  const std::vector<A>& values() const { return values_; }

  bool operator==(const BasicCochain& o) const { return values_ == o.values_; }
  BasicCochain operator+(const BasicCochain& o) const {
    BasicCochain out = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] + o.values_[i];
    return out;
  }
  BasicCochain operator-(const BasicCochain& o) const {
    BasicCochain out = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] - o.values_[i];
    return out;
  }
  bool is_zero() const {
    for (const auto& v : values_)
      if (!(v == A{})) return false;
    return true;
  }

 private:
  std::shared_ptr<const Ball> ball_;
  std::vector<A> values_;
};

using Cochain = BasicCochain<long long>;

// Values on the tree arrows parent(i) -> i, stored at node i; the reverse
// orientation carries the negative.
template <class A>
class BasicTreeCochain {
 public:
  BasicTreeCochain() = default;
  explicit BasicTreeCochain(std::shared_ptr<const SpecialTree> tree)
      : tree_(std::move(tree)), values_(tree_->nodes().size()) {}

  const SpecialTree& tree() const { return *tree_; }
  std::shared_ptr<const SpecialTree> tree_ptr() const { return tree_; }
  int depth() const { return tree_->depth(); }
  const A& operator[](int node) const { return values_[node]; }
  A& operator[](int node) { return values_[node]; }
  const std::vector<A>& values() const { return values_; }
  bool operator==(const BasicTreeCochain& o) const { return values_ == o.values_; }

 private:
  std::shared_ptr<const SpecialTree> tree_;
  std::vector<A> values_;
};

using TreeCochain = BasicTreeCochain<long long>;

namespace detail {
std::string edge_label(const Ball& ball, int edge);
std::string vertex_label(const Ball& ball, int v);
}  // namespace detail

template <class A>
Report check_A(const BasicCochain<A>& phi) {
  const Ball& ball = phi.ball();
  Report rep;
  rep.condition = "A";
  for (int i = 0; i < static_cast<int>(ball.edges().size()); ++i) {
    ++rep.checked;
    if (!(phi[i] + phi[ball.edges()[i].reverse] == A{}))
      rep.violations.push_back("not alternating on " + detail::edge_label(ball, i));
  }
  for (const auto& tri : ball.triangles()) {
    ++rep.checked;
    A sum = phi[ball.find_edge(tri[0], tri[1])] + phi[ball.find_edge(tri[1], tri[2])] +
            phi[ball.find_edge(tri[2], tri[0])];
    if (!(sum == A{}))
      rep.violations.push_back("triangle " + detail::vertex_label(ball, tri[0]) + " " +
                               detail::vertex_label(ball, tri[1]) + " " + detail::vertex_label(ball, tri[2]) +
                               " sums to " + coefficient_str(sum));
  }
  return rep;
}

template <class A>
Report check_Bt(const BasicCochain<A>& phi, int t) {
  const Ball& ball = phi.ball();
  if (t < 1 || t >= ball.rank()) throw std::invalid_argument("type out of range");
  Report rep;
  rep.condition = "B" + std::to_string(t);
  for (int v = 0; v < static_cast<int>(ball.vertices().size()); ++v) {
    if (!ball.interior(v)) {
      ++rep.unchecked;
      continue;
    }
    ++rep.checked;
    A sum{};
    for (int idx : ball.out_of_type(v, t)) sum += phi[idx];
    if (!(sum == A{})) rep.violations.push_back("star sum " + coefficient_str(sum) + " at " + detail::vertex_label(ball, v));
  }
  return rep;
}

template <class A>
Report check_C(const BasicCochain<A>& phi) {
  const Ball& ball = phi.ball();
  Report rep;
  rep.condition = "C";
  for (int v = 0; v < static_cast<int>(ball.vertices().size()); ++v) {
    if (!ball.interior(v)) {
      ++rep.unchecked;
      continue;
    }
    std::vector<int> type1 = ball.out_of_type(v, 1);
    for (int idx : ball.out(v)) {
      const auto& e = ball.edges()[idx];
      if (e.type < 2) continue;
      ++rep.checked;
      A sum{};
      for (int j : type1)
        if (ball.edges()[j].space.contains_rows(e.space)) sum += phi[j];
      if (!(sum == phi[idx]))
        rep.violations.push_back("dominating sum " + coefficient_str(sum) + " differs from " +
                                 coefficient_str(phi[idx]) + " on " + detail::edge_label(ball, idx));
    }
  }
  return rep;
}

// All of (A), (B_t) for every t and (C).
template <class A>
std::vector<Report> check_all(const BasicCochain<A>& phi) {
  std::vector<Report> out{check_A(phi)};
  for (int t = 1; t < phi.ball().rank(); ++t) out.push_back(check_Bt(phi, t));
  out.push_back(check_C(phi));
  return out;
}

template <class A>
bool is_harmonic(const BasicCochain<A>& phi) {
  for (const auto& r : check_all(phi))
    if (!r.passed()) return false;
  return true;
}

template <class A>
Report check_flow(const BasicTreeCochain<A>& psi) {
  const SpecialTree& tree = psi.tree();
  Report rep;
  rep.condition = "flow";
  for (int i = 0; i < static_cast<int>(tree.nodes().size()); ++i) {
    const auto& node = tree.node(i);
    if (node.children.empty()) {
      if (node.level < tree.depth()) rep.violations.push_back("missing children below node " + std::to_string(i));
      continue;
    }
    ++rep.checked;
    A sum{};
    for (int c : node.children) sum += psi[c];
    A expected = i == 0 ? A{} : psi[i];
    if (!(sum == expected))
      rep.violations.push_back("outbound sum " + coefficient_str(sum) + " differs from " + coefficient_str(expected) +
                               " at level-" + std::to_string(node.level) + " node " + std::to_string(i));
  }
  return rep;
}

// Tree arrow i (parent -> i) as an edge index of the ball.
std::vector<int> tree_edges(const Ball& ball, const SpecialTree& tree);

template <class A>
BasicTreeCochain<A> restrict_to_tree(const BasicCochain<A>& phi, std::shared_ptr<const SpecialTree> tree) {
  if (!is_harmonic(phi)) throw NotHarmonic("cochain fails a harmonicity condition");
  BasicTreeCochain<A> psi(tree);
  std::vector<int> edges = tree_edges(phi.ball(), *tree);
  for (std::size_t i = 1; i < edges.size(); ++i) psi[static_cast<int>(i)] = phi[edges[i]];
  return psi;
}

template <class A>
BasicTreeCochain<A> restrict_to_tree(const BasicCochain<A>& phi) {
  const Ball& b = phi.ball();
  return restrict_to_tree(phi, std::make_shared<const SpecialTree>(special_structure(b.ring(), b.rank(), b.depth())));
}

// Coefficientwise image under a group homomorphism.
template <class B, class A, class F>
BasicCochain<B> map_coefficients(const BasicCochain<A>& phi, F f) {
  BasicCochain<B> out(phi.ball_ptr());
  for (int i = 0; i < static_cast<int>(phi.values().size()); ++i) out.set_raw(i, f(phi[i]));
  return out;
}

Cochain cochain_from_unit(const MonomialUnit& u, std::shared_ptr<const Ball> ball);
Cochain cochain_from_unit(const MonomialUnit& u, int n, const RingSpec& ring, int r);

// (phi . g)(e) = phi(e . g^-1), for g in the stabilizer K^* GL(r, O) of v0.
Cochain cochain_action(const Matrix& g, const Cochain& phi);

// Sparse integer linear system; columns are undirected edges of a ball with
// the orientation from the smaller to the larger vertex index.
struct LinearSystem {
  int cols = 0;
  std::vector<std::vector<std::pair<int, long long>>> rows;
};

struct EdgeVariables {
  std::vector<int> column;  // per directed edge, -1 when not a variable
  std::vector<int> sign;    // +1 or -1 per directed edge
  int count = 0;
};

// Variables for the edges of `ball` with both endpoints of level <= max_level.
EdgeVariables edge_variables(const Ball& ball, int max_level);

// Conditions (A) on triangles, (B_1) and (C) at every vertex of level
// <= condition_level, in the given variables; other edges are taken as 0.
LinearSystem harmonic_system(const Ball& ball, const EdgeVariables& vars, int condition_level);

// Flow conditions on a tree of depth n in the node variables 1..size-1.
LinearSystem flow_system(const SpecialTree& tree);

// Rank of an integer matrix reduced modulo the prime p.
int rank_mod_p(const std::vector<std::vector<long long>>& dense, long long p);
int rank_mod_p(const LinearSystem& sys, long long p);
std::vector<std::vector<long long>> to_dense(const LinearSystem& sys);

}  // namespace vdp

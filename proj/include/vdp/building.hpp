#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "vdp/coeff.hpp"

namespace vdp {

/**
 * A vertex [L] of the building, represented by the unique lattice L in its
 * class with L inside L0 = O^r but not inside pi L0.
 *
 * rep is the lower-triangular Hermite basis of L (see lower_hermite) and sed
 * lists the elementary divisors of L0/L in decreasing order; sed[0] is the
 * distance to v0 and the last entry is always 0.
 */
struct Vertex {
  Matrix rep;
  std::vector<int> sed;
  std::string key;

  int rank() const { return rep.rows(); }
  const RingSpec& ring() const { return rep.spec(); }
  int level() const { return sed.front(); }

  bool operator==(const Vertex& o) const { return key == o.key; }
  bool operator<(const Vertex& o) const { return key < o.key; }
};

// Subspace of L/pi L in coordinates relative to the rows of base_vertex.rep.
struct SubspaceF {
  Vertex base_vertex;
  FqMatrix generators;
  int codim = 0;
};

/**
 * An oriented edge (from, to).  space is the image of the intermediate
 * lattice pi L < L' < L in L/pi L, in reduced echelon form relative to
 * from.rep, and type is its codimension.
 */
struct Arrow {
  Vertex from;
  Vertex to;
  int type = 0;
  FqMatrix space;

  SubspaceF subspace() const { return {from, space, type}; }
  bool operator==(const Arrow& o) const { return from == o.from && to == o.to; }
};

Vertex canonical_vertex(const Matrix& generators);
Vertex standard_vertex(const RingSpec& ring, int r);

int distance(const Vertex& v, const Vertex& w);

// The arrow from v to an adjacent w; throws std::invalid_argument otherwise.
Arrow make_arrow(const Vertex& v, const Vertex& w);
Arrow reverse(const Arrow& e);

// A_{v,t} in lexicographic order of echelon forms.
std::vector<Arrow> arrows_from(const Vertex& v, int t);

// The vertex [(L cap U) + pi L] where U is the common kernel of the rows of
// `covectors` (x -> <y, x>).
Vertex tau_shift(const Vertex& v, const Matrix& covectors);
Vertex tau_shift(const Vertex& v, const Row& covector);
// The subspace ((L cap U) + pi L)/pi L of the arrow (v, tau_U(v)).
FqMatrix tau_space(const Vertex& v, const Matrix& covectors);

// For a hyperplane <y, .> = 0: the reduction of the functional
// a -> <y, a * rep> / pi^k, where k is the smallest valuation it attains.
// The arrow pointing to the hyperplane has as its space the kernel of this
// functional.
std::vector<std::uint8_t> hyperplane_functional(const Vertex& v, const Row& y);
bool space_in_kernel(const FqMatrix& space, const std::vector<std::uint8_t>& functional);

// e precedes e2 (e2 dominates e): same origin and space(e) inside space(e2).
bool dominates(const Arrow& e, const Arrow& e2);

/**
 * The ball BT(n): all vertices at distance at most n from v0 and every arrow
 * between two of them.  Vertices are sorted by (distance, key); arrows by
 * origin, type and echelon form.
 */
class Ball {
 public:
  struct Edge {
    int from = 0;
    int to = 0;
    int type = 0;
    FqMatrix space;
    int reverse = -1;
  };

  const RingSpec& ring() const { return *ring_; }
  int rank() const { return rank_; }
  int depth() const { return depth_; }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<int>& levels() const { return level_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Arrow indices with the given origin, grouped by type.
  const std::vector<int>& out(int v) const { return out_[v]; }
  std::vector<int> out_of_type(int v, int t) const;

  int find_vertex(const Vertex& v) const;
  int find_vertex(const std::string& key) const;
  int find_edge(int from, int to) const;
  int find_edge(const Arrow& e) const;
  Arrow arrow(int idx) const;
  // Vertices whose whole star lies inside the ball.
  bool interior(int v) const { return level_[v] < depth_; }
  // 2-simplices with all three vertices in the ball, as sorted index triples.
  const std::vector<std::array<int, 3>>& triangles() const;

 private:
  friend Ball enumerate_ball(const RingSpec&, int, int, long long);
  const RingSpec* ring_ = nullptr;
  int rank_ = 0, depth_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<int> level_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::unordered_map<std::string, int> index_;
  std::map<std::pair<int, int>, int> edge_index_;
  mutable std::vector<std::array<int, 3>> triangles_;
  mutable bool triangles_ready_ = false;
};

Ball enumerate_ball(const RingSpec& ring, int r, int n, long long vertex_limit = 1000000);

// ---------------------------------------------------------------- classes and the tree

// Canonical representative of the class of a primitive covector modulo pi^k
// and unit scaling: digits >= k dropped, first unit coordinate equal to 1.
Row normalize_class(const Row& y, int k);
std::vector<Row> n_classes(const RingSpec& ring, int r, int n);
// The k-special vertex [{x in L0 : <y, x> = 0 mod pi^k}].
Vertex special_vertex(const Row& y, int k);

/**
 * The tree T_{v0}(n) of special vertices.  Node 0 is v0; every other node is
 * the endpoint of the special path of its class, and the tree arrow oriented
 * away from v0 that ends at a node is identified with that node.
 */
class SpecialTree {
 public:
  struct Node {
    int level = 0;
    Row cls;  // canonical representative modulo pi^level (empty for v0)
    Vertex vertex;
    int parent = -1;
    std::vector<int> children;
    int continuation = -1;  // child whose class has the same representative
  };

  const RingSpec& ring() const { return *ring_; }
  int rank() const { return rank_; }
  int depth() const { return depth_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int i) const { return nodes_[i]; }
  const std::vector<int>& level(int k) const { return levels_[k]; }
  int find_class(const Row& y, int k) const;
  int find_vertex(const Vertex& v) const;
  // Tree arrow parent(i) -> i for i > 0.
  Arrow arrow(int i) const { return make_arrow(nodes_[nodes_[i].parent].vertex, nodes_[i].vertex); }

 private:
  friend SpecialTree special_structure(const RingSpec&, int, int);
  const RingSpec* ring_ = nullptr;
  int rank_ = 0, depth_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::vector<int>> levels_;
  std::map<std::string, int> class_index_;
  std::unordered_map<std::string, int> vertex_index_;
};

SpecialTree special_structure(const RingSpec& ring, int r, int n);

bool is_special(const Vertex& v, int n);

// Type-1 arrows at an n-special vertex with their inbound flags
// (inbound means the target stays within distance n of v0).
struct StarSplit {
  std::vector<Arrow> arrows;
  std::vector<bool> inbound;
};
StarSplit split_type1(const Vertex& v);

// ---------------------------------------------------------------- group action

// Right action by an invertible matrix g over O (scalars act trivially, so a
// matrix over K is passed through an integral multiple of it).
Vertex gl_action(const Matrix& g, const Vertex& v);
Arrow gl_action(const Matrix& g, const Arrow& e);
// Contragredient action on covectors, y -> y * g^{-T}, renormalized.
Row gl_action_covector(const Matrix& g, const Row& y);

}  // namespace vdp

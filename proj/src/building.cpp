#include "vdp/building.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace vdp {

namespace {

std::string make_key(const Matrix& rep) {
  int n = rep.spec().precision();
  std::string key;
  key.reserve(static_cast<std::size_t>(rep.rows()) * rep.cols() * n);
  for (int i = 0; i < rep.rows(); ++i)
    for (int j = 0; j < rep.cols(); ++j)
      for (int k = 0; k < n; ++k) key.push_back(static_cast<char>(rep(i, j).digit(k)));
  return key;
}

bool lattice_contains(const Matrix& hermite, const Matrix& generators) {
  for (int i = 0; i < generators.rows(); ++i)
    if (!in_hermite_span(generators.row(i), hermite)) return false;
  return true;
}

Matrix shifted(const Matrix& m, int k) {
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).shifted_up(k);
  return out;
}

// Smallest j >= 0 with pi^j * span(inner) inside span(outer).
int containment_shift(const Vertex& outer, const Vertex& inner) {
  int n = outer.ring().precision();
  for (int j = 0; j < n; ++j)
    if (lattice_contains(outer.rep, shifted(inner.rep, j))) return j;
  throw PrecisionExhausted("relative position not certified at working precision");
}

const std::vector<FqMatrix>& cached_subspaces(const RingSpec& ring, int n, int dim) {
  static std::mutex mutex;
  static std::map<std::tuple<const RingSpec*, int, int>, std::vector<FqMatrix>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(&ring, n, dim);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_subspaces(ring, n, dim)).first;
  return it->second;
}

Row lift_residue(const RingSpec& ring, const std::vector<std::uint8_t>& v) {
  Row out;
  for (auto d : v) {
    Scalar s(ring);
    s.set_digit(0, d);
    out.push_back(s);
  }
  return out;
}

std::vector<std::uint8_t> residue(const Row& v) {
  std::vector<std::uint8_t> out;
  for (const auto& s : v) out.push_back(s.digit(0));
  return out;
}

// Generators of the lattice whose image in L/pi L is `space`.
Matrix preimage_generators(const Vertex& v, const FqMatrix& space) {
  int r = v.rank();
  const RingSpec& ring = v.ring();
  std::vector<Row> gens;
  for (int i = 0; i < space.rows(); ++i) gens.push_back(v.rep.left_multiply(lift_residue(ring, space.row(i))));
  for (int i = 0; i < r; ++i) gens.push_back(row_shift_up(v.rep.row(i), 1));
  return Matrix::from_rows(ring, gens, r);
}

}  // namespace

Vertex canonical_vertex(const Matrix& generators) {
  const RingSpec& ring = generators.spec();
  int n = ring.precision();
  int r = generators.cols();
  if (generators.rows() < r) throw std::invalid_argument("too few generators for a lattice");
  int s = n;
  for (int i = 0; i < generators.rows(); ++i)
    for (int j = 0; j < r; ++j) s = std::min(s, generators(i, j).val());
  if (s >= n) throw PrecisionExhausted("generators vanish at working precision");
  Matrix g = generators;
  if (s > 0)
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < r; ++j) g(i, j) = g(i, j).shifted_down(s);
  Matrix h = lower_hermite(g);
  std::vector<int> sed = smith_form(h).divisors;
  if (sed.front() >= n - s) throw PrecisionExhausted("vertex not certified at working precision");
  Vertex v{h, sed, make_key(h)};
  return v;
}

Vertex standard_vertex(const RingSpec& ring, int r) { return canonical_vertex(Matrix::identity(ring, r)); }

int distance(const Vertex& v, const Vertex& w) {
  if (v == w) return 0;
  return containment_shift(v, w) + containment_shift(w, v);
}

Arrow make_arrow(const Vertex& v, const Vertex& w) {
  int j = containment_shift(v, w);
  int k = containment_shift(w, v);
  if (j + k != 1) throw std::invalid_argument("vertices are not adjacent");
  Matrix inner = shifted(w.rep, j);
  FqMatrix m(v.ring(), 0, v.rank());
  for (int i = 0; i < inner.rows(); ++i) m.append_row(residue(hermite_coordinates(inner.row(i), v.rep)));
  FqMatrix space = m.rref();
  return Arrow{v, w, v.rank() - space.rows(), space};
}

Arrow reverse(const Arrow& e) { return make_arrow(e.to, e.from); }

std::vector<Arrow> arrows_from(const Vertex& v, int t) {
  int r = v.rank();
  if (t < 1 || t > r - 1) throw std::invalid_argument("arrow type out of range");
  std::vector<Arrow> out;
  for (const auto& space : cached_subspaces(v.ring(), r, r - t))
    out.push_back(Arrow{v, canonical_vertex(preimage_generators(v, space)), t, space});
  return out;
}

FqMatrix tau_space(const Vertex& v, const Matrix& covectors) {
  int r = v.rank();
  int t = covectors.rows();
  if (t < 1 || t > r - 1 || covectors.cols() != r) throw std::invalid_argument("subspace codimension out of range");
  Matrix z = v.rep * covectors.transpose();
  SmithResult sm = smith_rectangular(z);
  for (int d : sm.divisors)
    if (d >= v.ring().precision()) throw PrecisionExhausted("subspace not resolved at working precision");
  FqMatrix m(v.ring(), 0, r);
  for (int i = t; i < r; ++i) m.append_row(residue(sm.U.row(i)));
  return m.rref();
}

Vertex tau_shift(const Vertex& v, const Matrix& covectors) {
  return canonical_vertex(preimage_generators(v, tau_space(v, covectors)));
}

Vertex tau_shift(const Vertex& v, const Row& covector) {
  return tau_shift(v, Matrix::from_rows(v.ring(), {covector}, v.rank()));
}

std::vector<std::uint8_t> hyperplane_functional(const Vertex& v, const Row& y) {
  Row z;
  for (int i = 0; i < v.rank(); ++i) z.push_back(dot(v.rep.row(i), y));
  int k = row_val(z);
  if (k >= v.ring().precision()) throw PrecisionExhausted("hyperplane not resolved at working precision");
  std::vector<std::uint8_t> f;
  for (const auto& s : z) f.push_back(s.shifted_down(k).digit(0));
  return f;
}

bool space_in_kernel(const FqMatrix& space, const std::vector<std::uint8_t>& functional) {
  const RingSpec& f = space.spec();
  for (int i = 0; i < space.rows(); ++i) {
    std::uint8_t acc = 0;
    for (int j = 0; j < space.cols(); ++j) acc = f.fadd(acc, f.fmul(space(i, j), functional[j]));
    if (acc) return false;
  }
  return true;
}

bool dominates(const Arrow& e, const Arrow& e2) {
  if (!(e.from == e2.from)) throw DifferentOrigin("domination compares arrows with different origins");
  return e2.space.contains_rows(e.space);
}

// ---------------------------------------------------------------- Ball

std::vector<int> Ball::out_of_type(int v, int t) const {
  std::vector<int> res;
  for (int idx : out_[v])
    if (edges_[idx].type == t) res.push_back(idx);
  return res;
}

int Ball::find_vertex(const Vertex& v) const { return find_vertex(v.key); }

int Ball::find_vertex(const std::string& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

int Ball::find_edge(int from, int to) const {
  auto it = edge_index_.find({from, to});
  return it == edge_index_.end() ? -1 : it->second;
}

int Ball::find_edge(const Arrow& e) const {
  int a = find_vertex(e.from), b = find_vertex(e.to);
  if (a < 0 || b < 0) return -1;
  return find_edge(a, b);
}

Arrow Ball::arrow(int idx) const {
  const Edge& e = edges_[idx];
  return Arrow{vertices_[e.from], vertices_[e.to], e.type, e.space};
}

const std::vector<std::array<int, 3>>& Ball::triangles() const {
  if (triangles_ready_) return triangles_;
  int nv = static_cast<int>(vertices_.size());
  std::vector<std::vector<int>> nbrs(nv);
  for (const auto& e : edges_)
    if (e.from < e.to) {
      nbrs[e.from].push_back(e.to);
      nbrs[e.to].push_back(e.from);
    }
  for (auto& l : nbrs) std::sort(l.begin(), l.end());
  for (int a = 0; a < nv; ++a)
    for (int b : nbrs[a]) {
      if (b <= a) continue;
      for (int c : nbrs[a]) {
        if (c <= b) continue;
        if (std::binary_search(nbrs[b].begin(), nbrs[b].end(), c)) triangles_.push_back({a, b, c});
      }
    }
  triangles_ready_ = true;
  return triangles_;
}

Ball enumerate_ball(const RingSpec& ring, int r, int n, long long vertex_limit) {
  if (n < 0) throw std::invalid_argument("negative radius");
  if (ring.precision() < n + 2) throw PrecisionExhausted("precision below radius + 2");
  Vertex v0 = standard_vertex(ring, r);
  std::unordered_map<std::string, int> level{{v0.key, 0}};
  std::vector<Vertex> found{v0};
  std::unordered_map<std::string, std::vector<Arrow>> outgoing;
  std::vector<Vertex> frontier{v0};
  for (int d = 0; d < n; ++d) {
    std::vector<Vertex> next;
    for (const auto& v : frontier) {
      auto& list = outgoing[v.key];
      for (int t = 1; t < r; ++t)
        for (auto& e : arrows_from(v, t)) {
          if (!level.count(e.to.key)) {
            level[e.to.key] = d + 1;
            found.push_back(e.to);
            next.push_back(e.to);
            if (static_cast<long long>(found.size()) > vertex_limit)
              throw WorkLimitExceeded("ball enumeration exceeded the vertex budget");
          }
          list.push_back(std::move(e));
        }
    }
    frontier = std::move(next);
  }
  for (const auto& v : frontier) {
    auto& list = outgoing[v.key];
    for (int t = 1; t < r; ++t)
      for (auto& e : arrows_from(v, t)) list.push_back(std::move(e));
  }

  Ball ball;
  ball.ring_ = &ring;
  ball.rank_ = r;
  ball.depth_ = n;
  std::sort(found.begin(), found.end(), [&](const Vertex& a, const Vertex& b) {
    int la = level[a.key], lb = level[b.key];
    return la != lb ? la < lb : a.key < b.key;
  });
  ball.vertices_ = found;
  for (int i = 0; i < static_cast<int>(found.size()); ++i) {
    ball.index_[found[i].key] = i;
    ball.level_.push_back(level[found[i].key]);
    if (found[i].level() != ball.level_.back())
      throw std::logic_error("breadth-first level disagrees with the elementary divisors");
  }
  ball.out_.resize(found.size());
  for (int i = 0; i < static_cast<int>(found.size()); ++i) {
    for (const auto& e : outgoing[found[i].key]) {
      int j = ball.find_vertex(e.to);
      if (j < 0) continue;
      int idx = static_cast<int>(ball.edges_.size());
      ball.edges_.push_back(Ball::Edge{i, j, e.type, e.space, -1});
      ball.out_[i].push_back(idx);
      ball.edge_index_[{i, j}] = idx;
    }
  }
  for (auto& e : ball.edges_) e.reverse = ball.find_edge(e.to, e.from);
  return ball;
}

// ---------------------------------------------------------------- classes

Row normalize_class(const Row& y, int k) {
  const RingSpec& ring = y.at(0).spec();
  int lead = -1;
  for (int i = 0; i < static_cast<int>(y.size()); ++i)
    if (y[i].is_unit()) {
      lead = i;
      break;
    }
  if (lead < 0) throw ZeroVector("covector is not primitive");
  Scalar inv = y[lead].unit_inverse();
  Row out;
  for (const auto& s : y) out.push_back((inv * s).truncated(k));
  out[lead] = Scalar::one(ring).truncated(k);
  return out;
}

std::vector<Row> n_classes(const RingSpec& ring, int r, int n) {
  if (n < 1 || n > ring.precision()) throw std::invalid_argument("class depth out of range");
  std::vector<Row> out;
  int q = ring.q();
  for (int lead = 0; lead < r; ++lead) {
    // Coordinates before `lead` are divisible by pi; the others are free.
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < r; ++i) {
      if (i == lead) continue;
      for (int d = (i < lead ? 1 : 0); d < n; ++d) cells.emplace_back(i, d);
    }
    std::vector<int> counter(cells.size(), 0);
    while (true) {
      Row y = zero_row(ring, r);
      y[lead] = Scalar::one(ring);
      for (std::size_t c = 0; c < cells.size(); ++c)
        y[cells[c].first].set_digit(cells[c].second, static_cast<std::uint8_t>(counter[c]));
      out.push_back(y);
      std::size_t pos = 0;
      while (pos < counter.size() && ++counter[pos] == q) counter[pos++] = 0;
      if (pos == counter.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Vertex special_vertex(const Row& y, int k) {
  const RingSpec& ring = y.at(0).spec();
  int r = static_cast<int>(y.size());
  Row c = normalize_class(y, ring.precision());
  int lead = 0;
  while (!c[lead].is_unit()) ++lead;
  std::vector<Row> gens;
  for (int i = 0; i < r; ++i) {
    if (i == lead) continue;
    Row g = unit_row(ring, r, i);
    g[lead] = -c[i];
    gens.push_back(g);
  }
  gens.push_back(row_shift_up(unit_row(ring, r, lead), k));
  return canonical_vertex(Matrix::from_rows(ring, gens, r));
}

bool is_special(const Vertex& v, int n) {
  if (v.sed.front() != n) return false;
  for (std::size_t i = 1; i < v.sed.size(); ++i)
    if (v.sed[i] != 0) return false;
  return true;
}

namespace {

std::string class_key(const Row& y, int k) {
  std::string key(1, static_cast<char>(k));
  for (const auto& s : y)
    for (int d = 0; d < k; ++d) key.push_back(static_cast<char>(s.digit(d)));
  return key;
}

}  // namespace

int SpecialTree::find_class(const Row& y, int k) const {
  if (k == 0) return 0;
  auto it = class_index_.find(class_key(normalize_class(y, k), k));
  return it == class_index_.end() ? -1 : it->second;
}

int SpecialTree::find_vertex(const Vertex& v) const {
  auto it = vertex_index_.find(v.key);
  return it == vertex_index_.end() ? -1 : it->second;
}

SpecialTree special_structure(const RingSpec& ring, int r, int n) {
  if (n < 0) throw std::invalid_argument("negative depth");
  SpecialTree tree;
  tree.ring_ = &ring;
  tree.rank_ = r;
  tree.depth_ = n;
  SpecialTree::Node root;
  root.vertex = standard_vertex(ring, r);
  tree.nodes_.push_back(root);
  tree.levels_.push_back({0});
  tree.vertex_index_[root.vertex.key] = 0;
  for (int k = 1; k <= n; ++k) {
    std::vector<int> level;
    for (const auto& y : n_classes(ring, r, k)) {
      SpecialTree::Node node;
      node.level = k;
      node.cls = y;
      node.vertex = special_vertex(y, k);
      node.parent = k == 1 ? 0 : tree.find_class(y, k - 1);
      int idx = static_cast<int>(tree.nodes_.size());
      tree.nodes_.push_back(node);
      tree.nodes_[node.parent].children.push_back(idx);
      tree.class_index_[class_key(y, k)] = idx;
      tree.vertex_index_[node.vertex.key] = idx;
      level.push_back(idx);
    }
    tree.levels_.push_back(level);
  }
  for (auto& node : tree.nodes_) {
    if (node.level == 0) continue;
    for (int c : node.children) {
      bool same = true;
      for (int i = 0; i < r && same; ++i) same = tree.nodes_[c].cls[i] == node.cls[i];
      if (same) node.continuation = c;
    }
  }
  return tree;
}

StarSplit split_type1(const Vertex& v) {
  StarSplit split;
  split.arrows = arrows_from(v, 1);
  for (const auto& e : split.arrows) split.inbound.push_back(e.to.level() <= v.level());
  return split;
}

// ---------------------------------------------------------------- group action

namespace {

Matrix remove_content(const Matrix& g) {
  int s = g.spec().precision();
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) s = std::min(s, g(i, j).val());
  if (s >= g.spec().precision()) throw PrecisionExhausted("group element vanishes at working precision");
  Matrix out = g;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) out(i, j) = g(i, j).shifted_down(s);
  return out;
}

}  // namespace

Vertex gl_action(const Matrix& g, const Vertex& v) { return canonical_vertex(v.rep * remove_content(g)); }

Arrow gl_action(const Matrix& g, const Arrow& e) { return make_arrow(gl_action(g, e.from), gl_action(g, e.to)); }

Row gl_action_covector(const Matrix& g, const Row& y) {
  Matrix adj = adjugate(remove_content(g));
  Row image = adj.left_multiply(y);
  // y * adj^T is the row with entries <y, row_i(adj)>.
  for (int i = 0; i < adj.rows(); ++i) image[i] = dot(y, adj.row(i));
  if (row_val(image) > 0) throw PrecisionExhausted("covector image loses digits at working precision");
  return normalize_class(image, g.spec().precision());
}

}  // namespace vdp

#include "vdp/harmonic.hpp"

#include <algorithm>
#include <unordered_map>

namespace vdp {

namespace detail {

std::string vertex_label(const Ball& ball, int v) {
  std::string out = "v" + std::to_string(v) + "(sed";
  for (int s : ball.vertices()[v].sed) out += " " + std::to_string(s);
  return out + ")";
}

std::string edge_label(const Ball& ball, int edge) {
  const auto& e = ball.edges()[edge];
  return vertex_label(ball, e.from) + "->" + vertex_label(ball, e.to);
}

}  // namespace detail

std::vector<int> tree_edges(const Ball& ball, const SpecialTree& tree) {
  if (tree.depth() > ball.depth()) throw DepthExceeded("tree deeper than the ball");
  std::vector<int> out(tree.nodes().size(), -1);
  for (int i = 1; i < static_cast<int>(tree.nodes().size()); ++i) {
    int a = ball.find_vertex(tree.node(tree.node(i).parent).vertex);
    int b = ball.find_vertex(tree.node(i).vertex);
    out[i] = ball.find_edge(a, b);
    if (out[i] < 0) throw std::logic_error("tree arrow missing from the ball");
  }
  return out;
}

Cochain cochain_from_unit(const MonomialUnit& u, std::shared_ptr<const Ball> ball) {
  const auto& vs = ball->vertices();
  std::vector<long long> potential(vs.size(), 0);
  for (const auto& [h, m] : u.factors())
    for (std::size_t i = 0; i < vs.size(); ++i) potential[i] += m * log_norm(h.y(), vs[i]);
  Cochain phi(ball);
  for (int i = 0; i < static_cast<int>(ball->edges().size()); ++i) {
    const auto& e = ball->edges()[i];
    phi.set_raw(i, potential[e.to] - potential[e.from]);
  }
  return phi;
}

Cochain cochain_from_unit(const MonomialUnit& u, int n, const RingSpec& ring, int r) {
  return cochain_from_unit(u, std::make_shared<const Ball>(enumerate_ball(ring, r, n)));
}

Cochain cochain_action(const Matrix& g, const Cochain& phi) {
  const Ball& ball = phi.ball();
  const RingSpec& ring = ball.ring();
  int s = ring.precision();
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) s = std::min(s, g(i, j).val());
  Matrix h = g;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) h(i, j) = g(i, j).shifted_down(s);
  if (!determinant(h).is_unit()) throw UnresolvableAction("group element does not fix v0");
  Matrix inv = inverse_over_O(h);
  std::vector<int> image(ball.vertices().size());
  for (std::size_t v = 0; v < image.size(); ++v) {
    image[v] = ball.find_vertex(gl_action(inv, ball.vertices()[v]));
    if (image[v] < 0) throw UnresolvableAction("image of the ball leaves the ball");
  }
  Cochain out(phi.ball_ptr());
  for (int i = 0; i < static_cast<int>(ball.edges().size()); ++i) {
    const auto& e = ball.edges()[i];
    out.set_raw(i, phi[ball.find_edge(image[e.from], image[e.to])]);
  }
  return out;
}

EdgeVariables edge_variables(const Ball& ball, int max_level) {
  EdgeVariables vars;
  vars.column.assign(ball.edges().size(), -1);
  vars.sign.assign(ball.edges().size(), 1);
  for (int i = 0; i < static_cast<int>(ball.edges().size()); ++i) {
    const auto& e = ball.edges()[i];
    if (ball.levels()[e.from] > max_level || ball.levels()[e.to] > max_level) continue;
    if (e.from < e.to) {
      vars.column[i] = vars.count;
      vars.column[e.reverse] = vars.count;
      vars.sign[e.reverse] = -1;
      ++vars.count;
    }
  }
  return vars;
}

namespace {

void add_term(std::unordered_map<int, long long>& row, const EdgeVariables& vars, int edge, long long coeff) {
  if (vars.column[edge] < 0) return;
  row[vars.column[edge]] += coeff * vars.sign[edge];
}

void push_row(LinearSystem& sys, const std::unordered_map<int, long long>& row) {
  std::vector<std::pair<int, long long>> out;
  for (const auto& [c, v] : row)
    if (v != 0) out.emplace_back(c, v);
  if (out.empty()) return;
  std::sort(out.begin(), out.end());
  sys.rows.push_back(std::move(out));
}

}  // namespace

LinearSystem harmonic_system(const Ball& ball, const EdgeVariables& vars, int condition_level) {
  LinearSystem sys;
  sys.cols = vars.count;
  for (const auto& tri : ball.triangles()) {
    std::unordered_map<int, long long> row;
    add_term(row, vars, ball.find_edge(tri[0], tri[1]), 1);
    add_term(row, vars, ball.find_edge(tri[1], tri[2]), 1);
    add_term(row, vars, ball.find_edge(tri[2], tri[0]), 1);
    push_row(sys, row);
  }
  for (int v = 0; v < static_cast<int>(ball.vertices().size()); ++v) {
    if (ball.levels()[v] > condition_level) continue;
    if (ball.levels()[v] >= ball.depth()) throw DepthExceeded("condition vertex on the boundary of the ball");
    std::vector<int> type1 = ball.out_of_type(v, 1);
    std::unordered_map<int, long long> b1;
    for (int idx : type1) add_term(b1, vars, idx, 1);
    push_row(sys, b1);
    for (int idx : ball.out(v)) {
      const auto& e = ball.edges()[idx];
      if (e.type < 2) continue;
      std::unordered_map<int, long long> c;
      add_term(c, vars, idx, -1);
      for (int j : type1)
        if (ball.edges()[j].space.contains_rows(e.space)) add_term(c, vars, j, 1);
      push_row(sys, c);
    }
  }
  return sys;
}

LinearSystem flow_system(const SpecialTree& tree) {
  LinearSystem sys;
  sys.cols = static_cast<int>(tree.nodes().size()) - 1;
  for (int i = 0; i < static_cast<int>(tree.nodes().size()); ++i) {
    const auto& node = tree.node(i);
    if (node.children.empty()) continue;
    std::vector<std::pair<int, long long>> row;
    if (i > 0) row.emplace_back(i - 1, -1);
    for (int c : node.children) row.emplace_back(c - 1, 1);
    std::sort(row.begin(), row.end());
    sys.rows.push_back(row);
  }
  return sys;
}

std::vector<std::vector<long long>> to_dense(const LinearSystem& sys) {
  std::vector<std::vector<long long>> out(sys.rows.size(), std::vector<long long>(sys.cols, 0));
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    for (const auto& [c, v] : sys.rows[i]) out[i][c] = v;
  return out;
}

namespace {

long long pow_mod(long long a, long long e, long long p) {
  long long r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = static_cast<long long>((__int128)r * a % p);
    a = static_cast<long long>((__int128)a * a % p);
    e >>= 1;
  }
  return r;
}

}  // namespace

int rank_mod_p(const std::vector<std::vector<long long>>& dense, long long p) {
  std::vector<std::vector<long long>> m = dense;
  for (auto& row : m)
    for (auto& x : row) x = ((x % p) + p) % p;
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (m[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    long long inv = pow_mod(m[rank][c], p - 2, p);
    for (int j = c; j < cols; ++j) m[rank][j] = m[rank][j] * inv % p;
    for (int i = rank + 1; i < rows; ++i) {
      long long f = m[i][c];
      if (!f) continue;
      for (int j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

int rank_mod_p(const LinearSystem& sys, long long p) {
  // Incremental elimination: each stored pivot row is sparse and monic at its
  // leading column.
  std::vector<std::vector<std::pair<int, long long>>> pivot_row(sys.cols);
  std::vector<long long> work(sys.cols, 0);
  int rank = 0;
  for (const auto& row : sys.rows) {
    int lo = sys.cols;
    for (const auto& [c, v] : row) {
      work[c] = ((v % p) + p) % p;
      lo = std::min(lo, c);
    }
    int lead = -1;
    for (int c = lo; c < sys.cols; ++c) {
      if (!work[c]) continue;
      if (pivot_row[c].empty()) {
        lead = c;
        break;
      }
      long long f = work[c];
      for (const auto& [j, v] : pivot_row[c]) work[j] = ((work[j] - f * v) % p + p) % p;
    }
    if (lead >= 0) {
      long long inv = pow_mod(work[lead], p - 2, p);
      for (int c = lead; c < sys.cols; ++c)
        if (work[c]) pivot_row[lead].emplace_back(c, work[c] * inv % p);
      ++rank;
    }
    std::fill(work.begin(), work.end(), 0);
  }
  return rank;
}

}  // namespace vdp

#include "vdp/reconstruct.hpp"

#include <stdexcept>

namespace vdp {

MonomialUnit FactorList::product() const {
  MonomialUnit out;
  for (const auto& u : levels) out = out * u;
  return out;
}

std::vector<long long> tree_values(const MonomialUnit& u, const SpecialTree& tree) {
  const auto& nodes = tree.nodes();
  std::vector<long long> potential(nodes.size(), 0);
  for (const auto& [h, m] : u.factors())
    for (std::size_t i = 0; i < nodes.size(); ++i) potential[i] += m * log_norm(h.y(), nodes[i].vertex);
  std::vector<long long> out(nodes.size(), 0);
  for (std::size_t i = 1; i < nodes.size(); ++i) out[i] = potential[i] - potential[nodes[i].parent];
  return out;
}

MonomialUnit solve_level1(const SpecialTree& tree, const std::vector<long long>& targets) {
  const auto& level = tree.level(1);
  if (targets.size() != level.size()) throw std::invalid_argument("one target per type-1 arrow at v0 expected");
  long long sum = 0;
  for (long long t : targets) sum += t;
  if (sum != 0) throw NonzeroSum("level-1 targets do not sum to zero");
  std::vector<MonomialUnit::Factor> factors;
  for (std::size_t j = 0; j < level.size(); ++j) factors.emplace_back(Hyperplane(tree.node(level[j]).cls), -targets[j]);
  return MonomialUnit(factors);
}

MonomialUnit solve_level(const SpecialTree& tree, int i, const std::vector<long long>& residual) {
  if (i < 1 || i >= tree.depth()) throw DepthExceeded("level outside the tree");
  MonomialUnit out;
  for (int v : tree.level(i)) {
    const auto& node = tree.node(v);
    long long sum = 0;
    for (int c : node.children) sum += residual[c];
    if (sum != 0) throw FlowViolation("outbound residual does not sum to zero at a level-" + std::to_string(i) + " node");
    const Row& y1 = node.cls;
    for (int c : node.children) {
      if (c == node.continuation || residual[c] == 0) continue;
      Row diff = row_sub(tree.node(c).cls, y1);
      if (row_val(diff) < i) throw std::logic_error("child class does not refine its parent");
      Row y;
      for (const auto& s : diff) y.push_back(s.shifted_down(i));
      if (!(row_add(y1, row_shift_up(y, i)) == tree.node(c).cls)) throw std::logic_error("inexact division by pi^i");
      out = out * f_factor(y, y1, i).power(-residual[c]);
    }
  }
  return out;
}

namespace {

FactorList solve_from_values(const SpecialTree& tree, std::vector<long long> residual) {
  FactorList list;
  int n = tree.depth();
  if (n == 0) return list;
  std::vector<long long> targets;
  for (int v : tree.level(1)) targets.push_back(residual[v]);
  list.levels.push_back(solve_level1(tree, targets));
  for (int i = 1; i < n; ++i) {
    std::vector<long long> done = tree_values(list.product(), tree);
    std::vector<long long> rest(residual.size());
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] = residual[j] - done[j];
    list.levels.push_back(solve_level(tree, i, rest));
  }
  return list;
}

}  // namespace

FactorList reconstruct(const Cochain& phi) {
  const Ball& ball = phi.ball();
  if (!is_harmonic(phi)) throw NotHarmonic("cochain fails a harmonicity condition");
  SpecialTree tree = special_structure(ball.ring(), ball.rank(), ball.depth());
  std::vector<int> edges = tree_edges(ball, tree);
  std::vector<long long> values(edges.size(), 0);
  for (std::size_t i = 1; i < edges.size(); ++i) values[i] = phi[edges[i]];
  return solve_from_values(tree, values);
}

FactorList factors_from_tree(const TreeCochain& psi) {
  Report flow = check_flow(psi);
  if (!flow.passed()) throw FlowViolation(flow.violations.front());
  return solve_from_values(psi.tree(), psi.values());
}

Cochain extend_from_tree(const TreeCochain& psi, std::shared_ptr<const Ball> ball) {
  if (ball->depth() != psi.depth()) throw DepthExceeded("ball and tree depths differ");
  return cochain_from_unit(factors_from_tree(psi).product(), std::move(ball));
}

Cochain extend_from_tree(const TreeCochain& psi) {
  const SpecialTree& t = psi.tree();
  return extend_from_tree(psi, std::make_shared<const Ball>(enumerate_ball(t.ring(), t.rank(), t.depth())));
}

}  // namespace vdp

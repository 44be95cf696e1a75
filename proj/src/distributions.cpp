#include "vdp/distributions.hpp"

#include "vdp/reconstruct.hpp"

namespace vdp {

TreeCochain distribution_to_tree(const Distribution& d) {
  TreeCochain psi(d.tree_ptr());
  for (int i = 1; i < static_cast<int>(d.volumes().size()); ++i) psi[i] = d[i];
  Report flow = check_flow(psi);
  if (!flow.passed()) throw FlowViolation(flow.violations.front());
  return psi;
}

Cochain distribution_to_cochain(const Distribution& d, std::shared_ptr<const Ball> ball) {
  return extend_from_tree(distribution_to_tree(d), std::move(ball));
}

Cochain distribution_to_cochain(const Distribution& d) { return extend_from_tree(distribution_to_tree(d)); }

long long volume(const Distribution& d, const Row& y, int k) {
  if (k < 0 || k > d.depth()) throw DepthExceeded("class finer than the distribution depth");
  if (k == 0) return d.total_mass();
  int node = d.tree().find_class(y, k);
  if (node < 0) throw std::invalid_argument("unknown class");
  return d[node];
}

Distribution pushforward(const Matrix& g, const Distribution& d) {
  const SpecialTree& tree = d.tree();
  int s = g.spec().precision();
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) s = std::min(s, g(i, j).val());
  if (s >= g.spec().precision()) throw PrecisionExhausted("group element vanishes at working precision");
  Matrix h = g;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) h(i, j) = g(i, j).shifted_down(s);
  if (!determinant(h).is_unit()) throw UnresolvableAction("group element does not fix v0");
  Distribution out(d.tree_ptr());
  for (int i = 1; i < static_cast<int>(tree.nodes().size()); ++i) {
    const auto& node = tree.node(i);
    int j = tree.find_class(gl_action_covector(h, node.cls), node.level);
    if (j < 0) throw std::logic_error("image class missing from the tree");
    out[j] = d[i];
  }
  return out;
}

}  // namespace vdp

#pragma once

#include <memory>
#include <vector>

#include "vdp/harmonic.hpp"

namespace vdp {

/**
 * A finitely additive measure on P(V^) known to depth n.  The basis set
 * attached to tree node i is the set of hyperplanes whose class modulo
 * pi^level(i) is the class of node i; volumes[i] is its mass.
 */
template <class A>
class BasicDistribution {
 public:
  BasicDistribution() = default;
  explicit BasicDistribution(std::shared_ptr<const SpecialTree> tree)
      : tree_(std::move(tree)), volumes_(tree_->nodes().size()) {}

  const SpecialTree& tree() const { return *tree_; }
  std::shared_ptr<const SpecialTree> tree_ptr() const { return tree_; }
  int depth() const { return tree_->depth(); }
  const A& operator[](int node) const { return volumes_[node]; }
  A& operator[](int node) { return volumes_[node]; }
  const std::vector<A>& volumes() const { return volumes_; }

  A total_mass() const {
    A sum{};
    for (int c : tree_->node(0).children) sum += volumes_[c];
    return sum;
  }
  bool operator==(const BasicDistribution& o) const { return volumes_ == o.volumes_; }

 private:
  std::shared_ptr<const SpecialTree> tree_;
  std::vector<A> volumes_;
};

using Distribution = BasicDistribution<long long>;

// Each non-leaf basis set carries the sum of its children.
template <class A>
Report check_additivity(const BasicDistribution<A>& d) {
  Report rep;
  rep.condition = "additivity";
  const SpecialTree& tree = d.tree();
  for (int i = 1; i < static_cast<int>(tree.nodes().size()); ++i) {
    const auto& kids = tree.node(i).children;
    if (kids.empty()) continue;
    ++rep.checked;
    A sum{};
    for (int c : kids) sum += d[c];
    if (!(sum == d[i]))
      rep.violations.push_back("children of node " + std::to_string(i) + " sum to " + coefficient_str(sum));
  }
  return rep;
}

template <class A>
BasicDistribution<A> cochain_to_distribution(const BasicCochain<A>& phi, std::shared_ptr<const SpecialTree> tree) {
  BasicTreeCochain<A> psi = restrict_to_tree(phi, tree);
  BasicDistribution<A> d(tree);
  for (int i = 1; i < static_cast<int>(tree->nodes().size()); ++i) d[i] = psi[i];
  return d;
}

template <class A>
BasicDistribution<A> cochain_to_distribution(const BasicCochain<A>& phi) {
  const Ball& b = phi.ball();
  return cochain_to_distribution(phi, std::make_shared<const SpecialTree>(special_structure(b.ring(), b.rank(), b.depth())));
}

// Tree cochain with the distribution's volumes on the arrows away from v0.
// Throws FlowViolation unless the distribution is additive of mass zero.
TreeCochain distribution_to_tree(const Distribution& d);
Cochain distribution_to_cochain(const Distribution& d, std::shared_ptr<const Ball> ball);
Cochain distribution_to_cochain(const Distribution& d);

// Mass of the basis set of the k-class of y (k = 0 gives the total mass).
long long volume(const Distribution& d, const Row& y, int k);

// (g d)(S) = d(g^-1 S) for g in K^* GL(r, O).
Distribution pushforward(const Matrix& g, const Distribution& d);

}  // namespace vdp

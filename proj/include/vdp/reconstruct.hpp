#pragma once

#include <memory>
#include <vector>

#include "vdp/harmonic.hpp"

namespace vdp {

// Units u_1, ..., u_n; the transform of u_i vanishes on BT(i-1).
struct FactorList {
  std::vector<MonomialUnit> levels;
  MonomialUnit product() const;
};

// Transform of u on every tree arrow, indexed by node (entry 0 unused).
std::vector<long long> tree_values(const MonomialUnit& u, const SpecialTree& tree);

// targets[j] is the value on the arrow from v0 to tree.level(1)[j].
MonomialUnit solve_level1(const SpecialTree& tree, const std::vector<long long>& targets);

// Matches the residual (indexed by node) on the arrows into level i+1.  The
// outbound residual at each level-i node must sum to zero.
MonomialUnit solve_level(const SpecialTree& tree, int i, const std::vector<long long>& residual);

// Factor list whose product has transform phi on all of BT(n).
FactorList reconstruct(const Cochain& phi);

// Factor list whose product restricts to psi on the tree.
FactorList factors_from_tree(const TreeCochain& psi);
Cochain extend_from_tree(const TreeCochain& psi, std::shared_ptr<const Ball> ball);
Cochain extend_from_tree(const TreeCochain& psi);

}  // namespace vdp

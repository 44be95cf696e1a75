#pragma once

#include <memory>
#include <random>

#include "vdp/harmonic.hpp"

namespace vdp::testing {

inline Scalar random_scalar(const RingSpec& R, std::mt19937& rng) {
  Scalar s(R);
  for (int i = 0; i < R.precision(); ++i) s.set_digit(i, static_cast<std::uint8_t>(rng() % R.q()));
  return s;
}

inline Hyperplane random_hyperplane(const RingSpec& R, int r, std::mt19937& rng) {
  while (true) {
    Row y;
    for (int i = 0; i < r; ++i) y.push_back(random_scalar(R, rng));
    if (row_val(y) == 0) return Hyperplane(y);
  }
}

// Random element of GL(r, O).
inline Matrix random_gl(const RingSpec& R, int r, std::mt19937& rng) {
  while (true) {
    Matrix g(R, r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) g(i, j) = random_scalar(R, rng);
    if (determinant(g).is_unit()) return g;
  }
}

// Product of 1 to 3 random ratios with exponents in [-2, 2].
inline MonomialUnit random_unit(const RingSpec& R, int r, std::mt19937& rng) {
  MonomialUnit u;
  int count = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < count; ++i) {
    Hyperplane a = random_hyperplane(R, r, rng), b = random_hyperplane(R, r, rng);
    if (a == b) continue;
    long long m = static_cast<long long>(rng() % 5) - 2;
    u = u * MonomialUnit::ratio(a, b).power(m);
  }
  return u;
}

// Random tree cochain satisfying the flow condition: free values on all but
// the last child of every node, the last child takes the balance.
inline TreeCochain random_flow(std::shared_ptr<const SpecialTree> tree, std::mt19937& rng, int spread = 3) {
  TreeCochain psi(tree);
  for (int i = 0; i < static_cast<int>(tree->nodes().size()); ++i) {
    const auto& kids = tree->node(i).children;
    if (kids.empty()) continue;
    long long total = i == 0 ? 0 : psi[i];
    long long sum = 0;
    for (std::size_t j = 0; j + 1 < kids.size(); ++j) {
      psi[kids[j]] = static_cast<long long>(rng() % (2 * spread + 1)) - spread;
      sum += psi[kids[j]];
    }
    psi[kids.back()] = total - sum;
  }
  return psi;
}

}  // namespace vdp::testing

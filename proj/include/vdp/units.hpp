#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vdp/building.hpp"

namespace vdp {

// A point of P(V^), stored as its primitive covector with the first unit
// coordinate equal to 1.
class Hyperplane {
 public:
  Hyperplane() = default;
  explicit Hyperplane(const Row& y);

  const Row& y() const { return y_; }
  int rank() const { return static_cast<int>(y_.size()); }
  const RingSpec& ring() const { return y_.front().spec(); }
  std::string key() const;

  bool operator==(const Hyperplane& o) const { return y_ == o.y_; }
  bool operator<(const Hyperplane& o) const { return y_ < o.y_; }

 private:
  Row y_;
};

// A formal product of linear forms l_i^m_i with sum m_i = 0.
class MonomialUnit {
 public:
  using Factor = std::pair<Hyperplane, long long>;

  MonomialUnit() = default;
  // Merges equal hyperplanes and drops zero exponents; throws NonzeroSum.
  explicit MonomialUnit(const std::vector<Factor>& factors);

  // l_H / l_H'.
  static MonomialUnit ratio(const Hyperplane& h, const Hyperplane& h2);

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  MonomialUnit operator*(const MonomialUnit& o) const;
  MonomialUnit power(long long k) const;
  bool operator==(const MonomialUnit& o) const { return factors_ == o.factors_; }

 private:
  std::vector<Factor> factors_;
};

// f_{H,H',n} = 1 + pi^n l_H / l_H' rewritten as l_{y''} / l_{y'} with
// y'' = y' + pi^n y.
MonomialUnit f_factor(const Hyperplane& h, const Hyperplane& h2, int n);
Row f_numerator(const Hyperplane& h, const Hyperplane& h2, int n);
// Same with y and y' taken literally rather than in their normalized form.
MonomialUnit f_factor(const Row& y, const Row& y2, int n);
Row f_numerator(const Row& y, const Row& y2, int n);

// -min over the rows b of rep(v) of val <y, b>.  Differences between
// vertices are log_q of the ratio of spectral norms of l_y.
int log_norm(const Row& y, const Vertex& v);

// Transform by norm differences.
long long vdp_oracle(const MonomialUnit& u, const Arrow& e);
// Transform by the domination case table, pairing positive against negative
// exponents in factor order.
long long vdp_closed(const MonomialUnit& u, const Arrow& e);
long long vdp_closed(const MonomialUnit& u, const Vertex& from, const FqMatrix& space);

// Value of the transform of f_{H,H',n} on an (n+1)-special arrow by the
// special path pattern.  Requires H and H' to have distinct first steps.
long long special_eval(const Hyperplane& h, const Hyperplane& h2, int n, const Arrow& e);

// Contragredient action on every factor.
MonomialUnit unit_action(const Matrix& g, const MonomialUnit& u);

}  // namespace vdp

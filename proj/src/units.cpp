#include "vdp/units.hpp"

#include <algorithm>
#include <map>

namespace vdp {

Hyperplane::Hyperplane(const Row& y) {
  if (y.empty()) throw ZeroVector("empty covector");
  y_ = normalize_class(y, y.front().precision());
}

std::string Hyperplane::key() const {
  std::string out;
  for (const auto& s : y_) out += s.str() + ";";
  return out;
}

MonomialUnit::MonomialUnit(const std::vector<Factor>& factors) {
  std::map<Hyperplane, long long> merged;
  long long total = 0;
  for (const auto& [h, m] : factors) {
    merged[h] += m;
    total += m;
  }
  if (total != 0) throw NonzeroSum("exponents of a unit must sum to zero");
  for (const auto& [h, m] : merged)
    if (m != 0) factors_.emplace_back(h, m);
}

MonomialUnit MonomialUnit::ratio(const Hyperplane& h, const Hyperplane& h2) {
  if (h == h2) throw EqualHyperplanes("ratio of a hyperplane with itself");
  return MonomialUnit({{h, 1}, {h2, -1}});
}

MonomialUnit MonomialUnit::operator*(const MonomialUnit& o) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), o.factors_.begin(), o.factors_.end());
  return MonomialUnit(all);
}

MonomialUnit MonomialUnit::power(long long k) const {
  std::vector<Factor> all;
  for (const auto& [h, m] : factors_) all.emplace_back(h, m * k);
  return MonomialUnit(all);
}

Row f_numerator(const Row& y, const Row& y2, int n) {
  if (Hyperplane(y) == Hyperplane(y2)) throw EqualHyperplanes("f-factor needs distinct hyperplanes");
  if (n + 1 > y.front().precision()) throw PrecisionExhausted("f-factor depth exceeds working precision");
  Row out = row_add(y2, row_shift_up(y, n));
  if (row_val(out) > 0) throw ZeroVector("y' + pi^n y is not primitive");
  return out;
}

MonomialUnit f_factor(const Row& y, const Row& y2, int n) {
  Hyperplane num(f_numerator(y, y2, n)), den(y2);
  if (num == den) return MonomialUnit();
  return MonomialUnit::ratio(num, den);
}

Row f_numerator(const Hyperplane& h, const Hyperplane& h2, int n) { return f_numerator(h.y(), h2.y(), n); }

MonomialUnit f_factor(const Hyperplane& h, const Hyperplane& h2, int n) { return f_factor(h.y(), h2.y(), n); }

int log_norm(const Row& y, const Vertex& v) {
  int n = v.ring().precision();
  int best = n;
  for (int i = 0; i < v.rank(); ++i) best = std::min(best, dot(y, v.rep.row(i)).val());
  if (best >= n) throw PrecisionExhausted("covector pairing vanishes at working precision");
  return -best;
}

long long vdp_oracle(const MonomialUnit& u, const Arrow& e) {
  long long total = 0;
  for (const auto& [h, m] : u.factors()) total += m * (log_norm(h.y(), e.to) - log_norm(h.y(), e.from));
  return total;
}

long long vdp_closed(const MonomialUnit& u, const Vertex& from, const FqMatrix& space) {
  std::vector<std::pair<const Hyperplane*, long long>> pos, neg;
  for (const auto& [h, m] : u.factors()) (m > 0 ? pos : neg).emplace_back(&h, m > 0 ? m : -m);
  std::map<const Hyperplane*, bool> below;
  auto dominated = [&](const Hyperplane* h) {
    auto it = below.find(h);
    if (it != below.end()) return it->second;
    bool b = space_in_kernel(space, hyperplane_functional(from, h->y()));
    below[h] = b;
    return b;
  };
  long long total = 0;
  std::size_t i = 0, j = 0;
  while (i < pos.size() && j < neg.size()) {
    long long c = std::min(pos[i].second, neg[j].second);
    bool a = dominated(pos[i].first), b = dominated(neg[j].first);
    if (a && !b) total -= c;
    if (!a && b) total += c;
    if ((pos[i].second -= c) == 0) ++i;
    if ((neg[j].second -= c) == 0) ++j;
  }
  return total;
}

long long vdp_closed(const MonomialUnit& u, const Arrow& e) { return vdp_closed(u, e.from, e.space); }

long long special_eval(const Hyperplane& h, const Hyperplane& h2, int n, const Arrow& e) {
  if (!is_special(e.from, n) || !is_special(e.to, n + 1)) throw NotSpecialArrow("arrow is not (n+1)-special");
  Vertex vn = special_vertex(h2.y(), n);
  if (!(e.from == vn)) return 0;
  if (e.to == special_vertex(h2.y(), n + 1)) return 1;
  if (e.to == tau_shift(vn, f_numerator(h, h2, n))) return -1;
  return 0;
}

MonomialUnit unit_action(const Matrix& g, const MonomialUnit& u) {
  std::vector<MonomialUnit::Factor> out;
  for (const auto& [h, m] : u.factors()) out.emplace_back(Hyperplane(gl_action_covector(g, h.y())), m);
  return MonomialUnit(out);
}

}  // namespace vdp

#include "vdp/coeff.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace vdp {

namespace {

// Conway polynomials for the non-prime fields of order at most 16, low
// degree coefficient first.
const std::map<int, std::vector<int>>& conway_table() {
  static const std::map<int, std::vector<int>> table = {
      {4, {1, 1, 1}},
      {8, {1, 1, 0, 1}},
      {9, {2, 2, 1}},
      {16, {1, 1, 0, 0, 1}},
  };
  return table;
}

std::vector<int> to_coeffs(int index, int p, int degree) {
  std::vector<int> c(degree);
  for (int i = 0; i < degree; ++i) {
    c[i] = index % p;
    index /= p;
  }
  return c;
}

int from_coeffs(const std::vector<int>& c, int p) {
  int index = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) index = index * p + c[i];
  return index;
}

}  // namespace

RingSpec::RingSpec(int q, int precision, CharMode mode) : q_(q), precision_(precision), mode_(mode) {
  if (q < 2 || q > 251) throw std::invalid_argument("residue cardinality out of range");
  if (precision < 1 || precision > kMaxPrecision) throw std::invalid_argument("precision out of range");
  p_ = 0;
  for (int d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p_ = d;
      break;
    }
  }
  degree_ = 0;
  int rest = q;
  while (rest % p_ == 0) {
    rest /= p_;
    ++degree_;
  }
  if (rest != 1) throw std::invalid_argument("q must be a prime power");
  if (mode == CharMode::Mixed && degree_ != 1) throw std::invalid_argument("mixed characteristic needs prime q");
  if (degree_ == 1) {
    modulus_ = {0, 1};
  } else {
    auto it = conway_table().find(q);
    if (it == conway_table().end()) throw std::invalid_argument("no polynomial table entry for this q");
    modulus_ = it->second;
  }

  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    auto ca = to_coeffs(a, p_, degree_);
    std::vector<int> na(degree_);
    for (int i = 0; i < degree_; ++i) na[i] = (p_ - ca[i]) % p_;
    neg_[a] = static_cast<std::uint8_t>(from_coeffs(na, p_));
    for (int b = 0; b < q; ++b) {
      auto cb = to_coeffs(b, p_, degree_);
      std::vector<int> s(degree_);
      for (int i = 0; i < degree_; ++i) s[i] = (ca[i] + cb[i]) % p_;
      add_[a * q + b] = static_cast<std::uint8_t>(from_coeffs(s, p_));

      std::vector<int> prod(2 * degree_, 0);
      for (int i = 0; i < degree_; ++i)
        for (int j = 0; j < degree_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
      for (int k = 2 * degree_ - 1; k >= degree_; --k) {
        int c = prod[k];
        if (c == 0) continue;
        for (int i = 0; i <= degree_; ++i) {
          int idx = k - degree_ + i;
          prod[idx] = ((prod[idx] - c * modulus_[i]) % p_ + p_) % p_;
        }
      }
      prod.resize(degree_);
      mul_[a * q + b] = static_cast<std::uint8_t>(from_coeffs(prod, p_));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
}

const RingSpec& RingSpec::get(int q, int precision, CharMode mode) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<RingSpec>> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(q, precision, static_cast<int>(mode));
  auto it = registry.find(key);
  if (it == registry.end()) {
    std::unique_ptr<RingSpec> spec(new RingSpec(q, precision, mode));
    it = registry.emplace(key, std::move(spec)).first;
  }
  return *it->second;
}

std::uint8_t RingSpec::finv(std::uint8_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero in the residue field");
  return inv_[a];
}

std::string RingSpec::format_digit(std::uint8_t d) const {
  if (degree_ == 1) return std::to_string(d);
  auto c = to_coeffs(d, p_, degree_);
  std::string out = "(";
  for (int i = 0; i < degree_; ++i) {
    if (i) out += ';';
    out += std::to_string(c[i]);
  }
  return out + ")";
}

std::uint8_t RingSpec::parse_digit(const std::string& text) const {
  if (degree_ == 1) {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size() || v < 0 || v >= q_) throw std::invalid_argument("bad digit '" + text + "'");
    return static_cast<std::uint8_t>(v);
  }
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("bad coefficient tuple '" + text + "'");
  std::vector<int> c;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string part;
  while (std::getline(ss, part, ';')) {
    int v = std::stoi(part);
    if (v < 0 || v >= p_) throw std::invalid_argument("bad coefficient in '" + text + "'");
    c.push_back(v);
  }
  if (static_cast<int>(c.size()) != degree_) throw std::invalid_argument("wrong tuple length in '" + text + "'");
  return static_cast<std::uint8_t>(from_coeffs(c, p_));
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::one(const RingSpec& spec) {
  Scalar s(spec);
  s.d_[0] = 1;
  return s;
}

Scalar Scalar::from_int(const RingSpec& spec, long long value) {
  Scalar s(spec);
  if (spec.mode() == CharMode::Equal) {
    long long p = spec.p();
    s.d_[0] = static_cast<std::uint8_t>(((value % p) + p) % p);
    return s;
  }
  bool negative = value < 0;
  unsigned long long v = negative ? static_cast<unsigned long long>(-(value + 1)) + 1ULL
                                  : static_cast<unsigned long long>(value);
  for (int i = 0; i < spec.precision() && v; ++i) {
    s.d_[i] = static_cast<std::uint8_t>(v % spec.p());
    v /= spec.p();
  }
  return negative ? -s : s;
}

Scalar Scalar::pi_power(const RingSpec& spec, int k) {
  Scalar s(spec);
  if (k < 0) throw std::invalid_argument("negative power of pi");
  if (k < spec.precision()) s.d_[k] = 1;
  return s;
}

Scalar Scalar::from_digits(const RingSpec& spec, const std::vector<int>& digits) {
  if (static_cast<int>(digits.size()) > spec.precision()) throw std::invalid_argument("too many digits");
  Scalar s(spec);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= spec.q()) throw std::invalid_argument("digit out of range");
    s.d_[i] = static_cast<std::uint8_t>(digits[i]);
  }
  return s;
}

Scalar Scalar::parse(const RingSpec& spec, const std::string& text) {
  Scalar s(spec);
  std::stringstream ss(text);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= spec.precision()) throw std::invalid_argument("too many digits in '" + text + "'");
    s.d_[i++] = spec.parse_digit(part);
  }
  return s;
}

int Scalar::val() const {
  int n = precision();
  for (int i = 0; i < n; ++i)
    if (d_[i]) return i;
  return n;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r(*spec_);
  int n = precision();
  if (spec_->mode() == CharMode::Equal) {
    for (int i = 0; i < n; ++i) r.d_[i] = spec_->fadd(d_[i], o.d_[i]);
  } else {
    int p = spec_->p(), carry = 0;
    for (int i = 0; i < n; ++i) {
      int s = d_[i] + o.d_[i] + carry;
      carry = s >= p;
      r.d_[i] = static_cast<std::uint8_t>(s - carry * p);
    }
  }
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r(*spec_);
  int n = precision();
  if (spec_->mode() == CharMode::Equal) {
    for (int i = 0; i < n; ++i) r.d_[i] = spec_->fneg(d_[i]);
    return r;
  }
  int p = spec_->p();
  int i = 0;
  while (i < n && d_[i] == 0) ++i;
  if (i == n) return r;
  r.d_[i] = static_cast<std::uint8_t>(p - d_[i]);
  for (++i; i < n; ++i) r.d_[i] = static_cast<std::uint8_t>(p - 1 - d_[i]);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r(*spec_);
  int n = precision();
  int va = val(), vb = o.val();
  if (va + vb >= n) return r;
  if (spec_->mode() == CharMode::Equal && !spec_->prime_field()) {
    for (int i = va; i < n; ++i) {
      if (!d_[i]) continue;
      for (int j = vb; i + j < n; ++j)
        if (o.d_[j]) r.d_[i + j] = spec_->fadd(r.d_[i + j], spec_->fmul(d_[i], o.d_[j]));
    }
    return r;
  }
  std::array<unsigned long long, kMaxPrecision> acc{};
  for (int i = va; i < n; ++i) {
    if (!d_[i]) continue;
    for (int j = vb; i + j < n; ++j) acc[i + j] += static_cast<unsigned long long>(d_[i]) * o.d_[j];
  }
  unsigned long long p = spec_->p();
  if (spec_->mode() == CharMode::Equal) {
    for (int i = 0; i < n; ++i) r.d_[i] = static_cast<std::uint8_t>(acc[i] % p);
  } else {
    unsigned long long carry = 0;
    for (int i = 0; i < n; ++i) {
      unsigned long long s = acc[i] + carry;
      r.d_[i] = static_cast<std::uint8_t>(s % p);
      carry = s / p;
    }
  }
  return r;
}

Scalar Scalar::shifted_up(int k) const {
  Scalar r(*spec_);
  int n = precision();
  for (int i = 0; i + k < n; ++i) r.d_[i + k] = d_[i];
  return r;
}

Scalar Scalar::shifted_down(int k) const {
  Scalar r(*spec_);
  int n = precision();
  for (int i = k; i < n; ++i) r.d_[i - k] = d_[i];
  return r;
}

Scalar Scalar::truncated(int k) const {
  Scalar r(*spec_);
  for (int i = 0; i < k && i < precision(); ++i) r.d_[i] = d_[i];
  return r;
}

Scalar Scalar::unit_inverse() const {
  if (!is_unit()) throw std::domain_error("scalar is not a unit");
  Scalar x(*spec_);
  if (spec_->mode() == CharMode::Equal) {
    x.d_[0] = spec_->finv(d_[0]);
  } else {
    int p = spec_->p();
    for (int b = 1; b < p; ++b)
      if ((d_[0] * b) % p == 1) x.d_[0] = static_cast<std::uint8_t>(b);
  }
  Scalar two = from_int(*spec_, 2);
  for (int good = 1; good < precision(); good *= 2) x = x * (two - (*this) * x);
  return x;
}

std::string Scalar::str() const {
  std::string out;
  for (int i = 0; i < precision(); ++i) {
    if (i) out += ',';
    out += spec_->format_digit(d_[i]);
  }
  return out;
}

// ---------------------------------------------------------------- rows

Row zero_row(const RingSpec& spec, int n) { return Row(n, Scalar(spec)); }

Row unit_row(const RingSpec& spec, int n, int i) {
  Row r = zero_row(spec, n);
  r[i] = Scalar::one(spec);
  return r;
}

Scalar dot(const Row& a, const Row& b) {
  Scalar s(a.at(0).spec());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Row row_add(const Row& a, const Row& b) {
  Row r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Row row_sub(const Row& a, const Row& b) {
  Row r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Row row_scale(const Scalar& c, const Row& a) {
  Row r(a);
  for (auto& x : r) x = c * x;
  return r;
}

Row row_shift_up(const Row& a, int k) {
  Row r(a);
  for (auto& x : r) x = x.shifted_up(k);
  return r;
}

int row_val(const Row& a) {
  int v = a.at(0).precision();
  for (const auto& x : a) v = std::min(v, x.val());
  return v;
}

std::vector<std::string> format_row(const Row& a) {
  std::vector<std::string> out;
  for (const auto& x : a) out.push_back(x.str());
  return out;
}

Row parse_row(const RingSpec& spec, const std::vector<std::string>& text) {
  Row r;
  for (const auto& t : text) r.push_back(Scalar::parse(spec, t));
  return r;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(const RingSpec& spec, int rows, int cols)
    : spec_(&spec), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Scalar(spec)) {}

Matrix Matrix::identity(const RingSpec& spec, int n) {
  Matrix m(spec, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar::one(spec);
  return m;
}

Matrix Matrix::diagonal_pi(const RingSpec& spec, const std::vector<int>& exponents) {
  int n = static_cast<int>(exponents.size());
  Matrix m(spec, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar::pi_power(spec, exponents[i]);
  return m;
}

Matrix Matrix::from_rows(const RingSpec& spec, const std::vector<Row>& rows, int cols) {
  Matrix m(spec, static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows_; ++i) m.set_row(i, rows[i]);
  return m;
}

Matrix Matrix::from_ints(const RingSpec& spec, const std::vector<std::vector<long long>>& rows) {
  int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  Matrix m(spec, static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Scalar::from_int(spec, rows[i][j]);
  return m;
}

Row Matrix::row(int i) const { return Row(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

void Matrix::set_row(int i, const Row& v) {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row length mismatch");
  std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
}

void Matrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void Matrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

Matrix Matrix::transpose() const {
  Matrix t(*spec_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix r(*spec_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

Row Matrix::left_multiply(const Row& v) const {
  if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("vector length mismatch");
  Row r = zero_row(*spec_, cols_);
  for (int k = 0; k < rows_; ++k) {
    if (v[k].is_zero()) continue;
    for (int j = 0; j < cols_; ++j) r[j] += v[k] * (*this)(k, j);
  }
  return r;
}

std::vector<std::vector<std::string>> Matrix::format() const {
  std::vector<std::vector<std::string>> out;
  for (int i = 0; i < rows_; ++i) out.push_back(format_row(row(i)));
  return out;
}

Matrix Matrix::parse(const RingSpec& spec, const std::vector<std::vector<std::string>>& text) {
  std::vector<Row> rows;
  for (const auto& r : text) rows.push_back(parse_row(spec, r));
  int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("ragged matrix");
  return from_rows(spec, rows, cols);
}

// ---------------------------------------------------------------- normal forms

SmithResult smith_rectangular(const Matrix& M) {
  const RingSpec& spec = M.spec();
  int n = spec.precision();
  int rows = M.rows(), cols = M.cols();
  Matrix A = M;
  Matrix U = Matrix::identity(spec, rows);
  Matrix W = Matrix::identity(spec, cols);
  std::vector<int> divisors;
  int steps = std::min(rows, cols);
  for (int s = 0; s < steps; ++s) {
    int best = n, bi = s, bj = s;
    for (int i = s; i < rows; ++i)
      for (int j = s; j < cols; ++j) {
        int v = A(i, j).val();
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == n) {
      for (; s < steps; ++s) divisors.push_back(n);
      break;
    }
    A.swap_rows(s, bi);
    U.swap_rows(s, bi);
    A.swap_cols(s, bj);
    W.swap_cols(s, bj);
    Scalar inv = A(s, s).shifted_down(best).unit_inverse();
    for (int j = 0; j < cols; ++j) A(s, j) = inv * A(s, j);
    for (int j = 0; j < rows; ++j) U(s, j) = inv * U(s, j);
    for (int i = s + 1; i < rows; ++i) {
      if (A(i, s).is_zero()) continue;
      Scalar c = A(i, s).shifted_down(best);
      for (int j = 0; j < cols; ++j) A(i, j) -= c * A(s, j);
      for (int j = 0; j < rows; ++j) U(i, j) -= c * U(s, j);
    }
    for (int j = s + 1; j < cols; ++j) {
      if (A(s, j).is_zero()) continue;
      Scalar c = A(s, j).shifted_down(best);
      for (int i = 0; i < rows; ++i) A(i, j) -= c * A(i, s);
      for (int i = 0; i < cols; ++i) W(i, j) -= c * W(i, s);
    }
    divisors.push_back(best);
  }
  return {U, divisors, W};
}

SmithResult smith_form(const Matrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("smith_form expects a square matrix");
  SmithResult res = smith_rectangular(M);
  int r = M.rows();
  int n = M.spec().precision();
  for (int d : res.divisors)
    if (d >= n) throw PrecisionExhausted("elementary divisor not certified below the working precision");
  Matrix U(M.spec(), r, r), W(M.spec(), r, r);
  std::vector<int> divs(r);
  for (int i = 0; i < r; ++i) {
    int src = r - 1 - i;
    U.set_row(i, res.U.row(src));
    for (int k = 0; k < r; ++k) W(k, i) = res.W(k, src);
    divs[i] = res.divisors[src];
  }
  return {U, divs, W};
}

Matrix lower_hermite(const Matrix& generators) {
  const RingSpec& spec = generators.spec();
  int n = spec.precision();
  int r = generators.cols();
  std::vector<Row> pool;
  for (int i = 0; i < generators.rows(); ++i) pool.push_back(generators.row(i));
  Matrix H(spec, r, r);
  std::vector<int> pivots(r);
  for (int j = r - 1; j >= 0; --j) {
    int best = n, bi = -1;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
      int v = pool[i][j].val();
      if (v < best) {
        best = v;
        bi = i;
      }
    }
    if (bi < 0) throw PrecisionExhausted("lattice does not contain pi^N L0 at the working precision");
    Row piv = pool[bi];
    pool.erase(pool.begin() + bi);
    Scalar inv = piv[j].shifted_down(best).unit_inverse();
    piv = row_scale(inv, piv);
    piv[j] = Scalar::pi_power(spec, best);
    for (auto& row : pool) {
      if (row[j].is_zero()) continue;
      Scalar c = row[j].shifted_down(best);
      for (int k = 0; k <= j; ++k) row[k] -= c * piv[k];
    }
    H.set_row(j, piv);
    pivots[j] = best;
  }
  for (int i = 1; i < r; ++i)
    for (int j = i - 1; j >= 0; --j) {
      Scalar c = H(i, j).shifted_down(pivots[j]);
      if (c.is_zero()) continue;
      for (int k = 0; k <= j; ++k) H(i, k) -= c * H(j, k);
    }
  return H;
}

std::vector<int> hermite_pivots(const Matrix& hermite) {
  std::vector<int> p(hermite.rows());
  for (int j = 0; j < hermite.rows(); ++j) p[j] = hermite(j, j).val();
  return p;
}

namespace {

bool reduce_against_hermite(Row& x, const Matrix& H, Row* coords) {
  int r = H.rows();
  for (int j = r - 1; j >= 0; --j) {
    int k = H(j, j).val();
    if (x[j].val() < k) return false;
    Scalar c = x[j].shifted_down(k);
    if (coords) (*coords)[j] = c;
    if (c.is_zero()) continue;
    for (int i = 0; i <= j; ++i) x[i] -= c * H(j, i);
  }
  return true;
}

}  // namespace

bool in_hermite_span(const Row& x, const Matrix& hermite) {
  Row work = x;
  return reduce_against_hermite(work, hermite, nullptr);
}

Row hermite_coordinates(const Row& x, const Matrix& hermite) {
  Row work = x;
  Row coords = zero_row(hermite.spec(), hermite.rows());
  if (!reduce_against_hermite(work, hermite, &coords)) throw std::invalid_argument("vector is not in the lattice");
  return coords;
}

int solve_membership(const Row& y, const Matrix& M) {
  const RingSpec& spec = M.spec();
  int n = spec.precision();
  int v = row_val(y);
  if (v >= n) throw ZeroVector("zero vector at working precision");
  Matrix H = lower_hermite(M);
  std::vector<int> divs = smith_form(H).divisors;
  int top = divs.front();
  for (int k = v; k >= v - top; --k) {
    Row x;
    if (k >= 0) {
      if (top > n - k) throw PrecisionExhausted("membership not certified at working precision");
      for (const auto& s : y) x.push_back(s.shifted_down(k));
    } else {
      x = row_shift_up(y, -k);
    }
    if (in_hermite_span(x, H)) return k;
  }
  throw PrecisionExhausted("membership search did not terminate");
}

Matrix inverse_over_O(const Matrix& M) {
  int r = M.rows();
  if (r != M.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  Matrix A = M;
  Matrix I = Matrix::identity(M.spec(), r);
  for (int j = 0; j < r; ++j) {
    int piv = -1;
    for (int i = j; i < r; ++i)
      if (A(i, j).is_unit()) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("matrix is not invertible over O");
    A.swap_rows(j, piv);
    I.swap_rows(j, piv);
    Scalar inv = A(j, j).unit_inverse();
    for (int k = 0; k < r; ++k) {
      A(j, k) = inv * A(j, k);
      I(j, k) = inv * I(j, k);
    }
    for (int i = 0; i < r; ++i) {
      if (i == j || A(i, j).is_zero()) continue;
      Scalar c = A(i, j);
      for (int k = 0; k < r; ++k) {
        A(i, k) -= c * A(j, k);
        I(i, k) -= c * I(j, k);
      }
    }
  }
  return I;
}

namespace {

Matrix minor_matrix(const Matrix& M, int skip_row, int skip_col) {
  int r = M.rows();
  Matrix m(M.spec(), r - 1, r - 1);
  for (int i = 0, a = 0; i < r; ++i) {
    if (i == skip_row) continue;
    for (int j = 0, b = 0; j < r; ++j) {
      if (j == skip_col) continue;
      m(a, b++) = M(i, j);
    }
    ++a;
  }
  return m;
}

}  // namespace

Scalar determinant(const Matrix& M) {
  int r = M.rows();
  if (r != M.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (r == 1) return M(0, 0);
  Scalar det(M.spec());
  for (int j = 0; j < r; ++j) {
    if (M(0, j).is_zero()) continue;
    Scalar term = M(0, j) * determinant(minor_matrix(M, 0, j));
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

Matrix adjugate(const Matrix& M) {
  int r = M.rows();
  Matrix adj(M.spec(), r, r);
  if (r == 1) {
    adj(0, 0) = Scalar::one(M.spec());
    return adj;
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Scalar c = determinant(minor_matrix(M, j, i));
      adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

// ---------------------------------------------------------------- F_q

FqMatrix::FqMatrix(const RingSpec& spec, int rows, int cols)
    : spec_(&spec), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

void FqMatrix::append_row(const std::vector<std::uint8_t>& v) {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

std::vector<std::uint8_t> FqMatrix::row(int i) const {
  return std::vector<std::uint8_t>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

FqMatrix FqMatrix::rref() const {
  FqMatrix m = *this;
  const RingSpec& f = *spec_;
  int lead = 0;
  for (int c = 0; c < cols_ && lead < rows_; ++c) {
    int piv = -1;
    for (int i = lead; i < rows_; ++i)
      if (m(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int k = 0; k < cols_; ++k) std::swap(m(lead, k), m(piv, k));
    std::uint8_t inv = f.finv(m(lead, c));
    for (int k = 0; k < cols_; ++k) m(lead, k) = f.fmul(inv, m(lead, k));
    for (int i = 0; i < rows_; ++i) {
      if (i == lead || !m(i, c)) continue;
      std::uint8_t factor = m(i, c);
      for (int k = 0; k < cols_; ++k) m(i, k) = f.fsub(m(i, k), f.fmul(factor, m(lead, k)));
    }
    ++lead;
  }
  FqMatrix out(f, 0, cols_);
  for (int i = 0; i < lead; ++i) out.append_row(m.row(i));
  return out;
}

bool FqMatrix::contains_rows(const FqMatrix& sub) const {
  FqMatrix both = *this;
  for (int i = 0; i < sub.rows(); ++i) both.append_row(sub.row(i));
  return both.rank() == rank();
}

std::strong_ordering FqMatrix::operator<=>(const FqMatrix& o) const {
  if (auto c = rows_ <=> o.rows_; c != 0) return c;
  if (auto c = cols_ <=> o.cols_; c != 0) return c;
  return a_ <=> o.a_;
}

std::vector<FqMatrix> enumerate_subspaces(const RingSpec& spec, int n, int dim) {
  std::vector<FqMatrix> out;
  int q = spec.q();
  std::vector<int> piv(dim);
  for (int i = 0; i < dim; ++i) piv[i] = i;
  if (dim == 0) {
    out.emplace_back(spec, 0, n);
    return out;
  }
  while (true) {
    std::vector<std::pair<int, int>> free_cells;
    for (int k = 0; k < dim; ++k)
      for (int c = piv[k] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_cells.emplace_back(k, c);
    std::vector<int> counter(free_cells.size(), 0);
    while (true) {
      FqMatrix m(spec, dim, n);
      for (int k = 0; k < dim; ++k) m(k, piv[k]) = 1;
      for (std::size_t f = 0; f < free_cells.size(); ++f)
        m(free_cells[f].first, free_cells[f].second) = static_cast<std::uint8_t>(counter[f]);
      out.push_back(m);
      std::size_t pos = 0;
      while (pos < counter.size() && ++counter[pos] == q) counter[pos++] = 0;
      if (pos == counter.size()) break;
    }
    int i = dim - 1;
    while (i >= 0 && piv[i] == n - dim + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int k = i + 1; k < dim; ++k) piv[k] = piv[k - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long gaussian_binomial(int n, int dim, int q) {
  if (dim < 0 || dim > n) return 0;
  long long num = 1, den = 1;
  for (int i = 0; i < dim; ++i) {
    long long qa = 1, qb = 1;
    for (int k = 0; k < n - i; ++k) qa *= q;
    for (int k = 0; k < i + 1; ++k) qb *= q;
    num *= qa - 1;
    den *= qb - 1;
  }
  return num / den;
}

}  // namespace vdp

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "vdp/errors.hpp"

namespace vdp {

inline constexpr int kMaxPrecision = 32;

enum class CharMode { Equal, Mixed };

/**
 * The truncated valuation ring O/pi^N with residue field F_q.
 *
 * In equal characteristic an element is a polynomial in pi of degree < N
 * with coefficients in F_q, and addition is digit-wise.  In mixed
 * characteristic (q prime) an element is an integer modulo q^N written in
 * base q, and pi = q.  Instances are interned: get() always returns the same
 * object for the same parameters, so specs compare by address.
 */
class RingSpec {
 public:
  static const RingSpec& get(int q, int precision, CharMode mode = CharMode::Equal);

  int q() const { return q_; }
  int p() const { return p_; }
  int degree() const { return degree_; }
  int precision() const { return precision_; }
  CharMode mode() const { return mode_; }
  bool prime_field() const { return degree_ == 1; }

  // Residue field arithmetic on element indices 0..q-1.  Index k encodes the
  // polynomial sum c_i x^i with k = sum c_i p^i.
  std::uint8_t fadd(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t fsub(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint8_t fmul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t fneg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t finv(std::uint8_t a) const;

  std::string format_digit(std::uint8_t d) const;
  std::uint8_t parse_digit(const std::string& text) const;

  // The irreducible polynomial defining F_q over F_p, low degree first
  // (monic, length degree+1).  For prime q this is {0, 1}.
  const std::vector<int>& modulus() const { return modulus_; }

  RingSpec(const RingSpec&) = delete;
  RingSpec& operator=(const RingSpec&) = delete;

 private:
  RingSpec(int q, int precision, CharMode mode);

  int q_, p_, degree_, precision_;
  CharMode mode_;
  std::vector<int> modulus_;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(const RingSpec& spec) : spec_(&spec) {}

  static Scalar zero(const RingSpec& spec) { return Scalar(spec); }
  static Scalar one(const RingSpec& spec);
  static Scalar from_int(const RingSpec& spec, long long value);
  static Scalar pi_power(const RingSpec& spec, int k);
  static Scalar from_digits(const RingSpec& spec, const std::vector<int>& digits);
  static Scalar parse(const RingSpec& spec, const std::string& text);

  const RingSpec& spec() const { return *spec_; }
  bool has_spec() const { return spec_ != nullptr; }
  int precision() const { return spec_->precision(); }
  std::uint8_t digit(int i) const { return d_[i]; }
  void set_digit(int i, std::uint8_t value) { d_[i] = value; }

  // Index of the lowest nonzero digit, or N when the scalar vanishes.
  int val() const;
  bool is_zero() const { return val() == precision(); }
  bool is_unit() const { return d_[0] != 0; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Multiplication by pi^k; digits pushed past N are lost.
  Scalar shifted_up(int k) const;
  // Drops the k lowest digits (division by pi^k when val >= k).  The top k
  // digits of the result are zero-filled.
  Scalar shifted_down(int k) const;
  // Remainder modulo pi^k: keeps the k lowest digits.
  Scalar truncated(int k) const;
  Scalar unit_inverse() const;

  std::string str() const;

  bool operator==(const Scalar& o) const { return d_ == o.d_; }
  std::strong_ordering operator<=>(const Scalar& o) const { return d_ <=> o.d_; }

 private:
  const RingSpec* spec_ = nullptr;
  std::array<std::uint8_t, kMaxPrecision> d_{};
};

inline int scalar_val(const Scalar& s) { return s.val(); }

using Row = std::vector<Scalar>;

Row zero_row(const RingSpec& spec, int n);
Row unit_row(const RingSpec& spec, int n, int i);
Scalar dot(const Row& a, const Row& b);
Row row_add(const Row& a, const Row& b);
Row row_sub(const Row& a, const Row& b);
Row row_scale(const Scalar& c, const Row& a);
Row row_shift_up(const Row& a, int k);
int row_val(const Row& a);
std::vector<std::string> format_row(const Row& a);
Row parse_row(const RingSpec& spec, const std::vector<std::string>& text);

class Matrix {
 public:
  Matrix() = default;
  Matrix(const RingSpec& spec, int rows, int cols);

  static Matrix identity(const RingSpec& spec, int n);
  static Matrix diagonal_pi(const RingSpec& spec, const std::vector<int>& exponents);
  static Matrix from_rows(const RingSpec& spec, const std::vector<Row>& rows, int cols);
  static Matrix from_ints(const RingSpec& spec, const std::vector<std::vector<long long>>& rows);

  const RingSpec& spec() const { return *spec_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  Row row(int i) const;
  void set_row(int i, const Row& v);
  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  Matrix transpose() const;

  Matrix operator*(const Matrix& o) const;
  Row left_multiply(const Row& v) const;  // v * this
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  std::vector<std::vector<std::string>> format() const;
  static Matrix parse(const RingSpec& spec, const std::vector<std::vector<std::string>>& text);

 private:
  const RingSpec* spec_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

struct SmithResult {
  Matrix U;
  std::vector<int> divisors;
  Matrix W;
};

// U * M * W = diag(pi^a_1, ..., pi^a_r) with a_1 >= ... >= a_r.
SmithResult smith_form(const Matrix& M);

// Same elimination for a rectangular matrix; divisors come out ascending and
// sit at positions (i, i) of U * M * W.  Divisors equal to N mark columns
// that vanish at the working precision.
SmithResult smith_rectangular(const Matrix& M);

// Largest k with y in pi^k * rowspan(M); k may be negative.
int solve_membership(const Row& y, const Matrix& M);

/**
 * Lower-triangular Hermite basis of the row span of `generators`.
 *
 * Row j has the pivot pi^k_j in column j, zeros to its right, and the entries
 * below each pivot are reduced modulo that pivot.  The span must contain
 * pi^N L_0; otherwise a column lacks a pivot and PrecisionExhausted is raised.
 */
Matrix lower_hermite(const Matrix& generators);

// Pivot exponents of a lower_hermite basis.
std::vector<int> hermite_pivots(const Matrix& hermite);

// Membership of x in the span of a lower_hermite basis.
bool in_hermite_span(const Row& x, const Matrix& hermite);

// Coefficients c with c * hermite = x, for x in the span.  Only the residue
// of c modulo pi is independent of the working precision.
Row hermite_coordinates(const Row& x, const Matrix& hermite);

// Inverse over O/pi^N of a matrix that is invertible modulo pi.
Matrix inverse_over_O(const Matrix& M);

// Adjugate by cofactor expansion; the inverse up to the scalar det(M).
Matrix adjugate(const Matrix& M);
Scalar determinant(const Matrix& M);

/**
 * Matrices over the residue field, used for subspaces of L/pi L.
 */
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(const RingSpec& spec, int rows, int cols);

  const RingSpec& spec() const { return *spec_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint8_t& operator()(int i, int j) { return a_[i * cols_ + j]; }
  std::uint8_t operator()(int i, int j) const { return a_[i * cols_ + j]; }
  void append_row(const std::vector<std::uint8_t>& v);
  std::vector<std::uint8_t> row(int i) const;

  // Reduced row echelon form with zero rows removed.
  FqMatrix rref() const;
  int rank() const { return rref().rows(); }
  // Whether every row of `sub` lies in the row space of this matrix.
  bool contains_rows(const FqMatrix& sub) const;

  bool operator==(const FqMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  std::strong_ordering operator<=>(const FqMatrix& o) const;

 private:
  const RingSpec* spec_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<std::uint8_t> a_;
};

// All subspaces of F_q^n of the given dimension as reduced echelon matrices,
// sorted lexicographically.
std::vector<FqMatrix> enumerate_subspaces(const RingSpec& spec, int n, int dim);

// Number of dim-dimensional subspaces of F_q^n.
long long gaussian_binomial(int n, int dim, int q);

}  // namespace vdp

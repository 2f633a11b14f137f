#pragma once

// Laurent polynomials in q^{1/2} with arbitrary-precision integer coefficients.
//
// Exponents are stored doubled: the key e2 stands for q^{e2/2}. Refined
// multiplicities are products of symmetric q-integers, which live in
// Z[q^{+-1/2}]; every BPS polynomial produced downstream is checked to have
// even keys only.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace refloor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_decimal(const BigInt& value);
BigInt parse_bigint(const std::string& text);

/// Binomial coefficient C(n, k) for n >= 0; zero outside 0 <= k <= n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Generalized binomial coefficient r(r-1)...(r-k+1)/k! for any integer r.
BigInt generalized_binomial(std::int64_t r, std::int64_t k);

class QLaurent {
 public:
  using Terms = std::map<int, BigInt>;

  QLaurent() = default;
  QLaurent(std::int64_t constant);  // NOLINT: integers embed as constants
  QLaurent(const BigInt& constant);  // NOLINT

  /// c * q^{e2/2}
  static QLaurent monomial(int e2, const BigInt& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of q^{e2/2} (zero when absent).
  BigInt coeff(int e2) const;
  int min_e2() const;
  int max_e2() const;

  bool has_integral_exponents() const;
  bool has_nonnegative_coefficients() const;

  QLaurent& operator+=(const QLaurent& other);
  QLaurent& operator-=(const QLaurent& other);
  QLaurent& operator*=(const QLaurent& other);
  QLaurent& operator*=(const BigInt& k);

  QLaurent operator-() const;

  /// The substitution q -> q^{-1}.
  QLaurent inverted() const;

  QLaurent pow(unsigned exponent) const;

  friend bool operator==(const QLaurent&, const QLaurent&) = default;

  /// Human-readable form, e.g. "q^-1 + 10 + q".
  std::string to_string() const;
  /// Machine form used in CSV output: "c*q^(e2/2)+..." ("0" for zero).
  std::string to_term_string() const;

  /// Sorted [e2, decimal coefficient] pairs.
  std::vector<std::pair<int, std::string>> to_pairs() const;
  static QLaurent from_pairs(const std::vector<std::pair<int, std::string>>& pairs);

 private:
  void add_term(int e2, const BigInt& c);

  Terms terms_;
};

QLaurent operator+(QLaurent a, const QLaurent& b);
QLaurent operator-(QLaurent a, const QLaurent& b);
QLaurent operator*(const QLaurent& a, const QLaurent& b);

QLaurent add(const QLaurent& a, const QLaurent& b);
QLaurent mul(const QLaurent& a, const QLaurent& b);
QLaurent scale(const QLaurent& a, const BigInt& k);

/// Symmetric q-integer [m]_q = sum_{j=0}^{m-1} q^{j-(m-1)/2}; m >= 1.
QLaurent q_int(int m);

/// Specialization at q = +1 or q = -1. At -1 every exponent must be an
/// integer, otherwise HalfIntegerExponentError is thrown.
BigInt evaluate_at_sign(const QLaurent& p, int sign);

/// True iff the polynomial is invariant under q -> q^{-1}.
bool is_palindromic(const QLaurent& p);

}  // namespace refloor

#include "refloor/qlaurent.hpp"

#include <sstream>

#include "refloor/errors.hpp"

namespace refloor {

std::string to_decimal(const BigInt& value) { return value.str(); }

BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw FormatError("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw FormatError("bad integer literal: " + text);
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw FormatError("bad integer literal: " + text);
  }
  return BigInt(text);
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt generalized_binomial(std::int64_t r, std::int64_t k) {
  if (k < 0) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    num *= r - i;
    den *= i + 1;
  }
  return num / den;
}

QLaurent::QLaurent(std::int64_t constant) {
  if (constant != 0) terms_.emplace(0, BigInt(constant));
}

QLaurent::QLaurent(const BigInt& constant) {
  if (constant != 0) terms_.emplace(0, constant);
}

QLaurent QLaurent::monomial(int e2, const BigInt& c) {
  QLaurent p;
  p.add_term(e2, c);
  return p;
}

void QLaurent::add_term(int e2, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e2, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt QLaurent::coeff(int e2) const {
  auto it = terms_.find(e2);
  return it == terms_.end() ? BigInt(0) : it->second;
}

int QLaurent::min_e2() const {
  if (terms_.empty()) throw DomainError("min_e2 of the zero polynomial");
  return terms_.begin()->first;
}

int QLaurent::max_e2() const {
  if (terms_.empty()) throw DomainError("max_e2 of the zero polynomial");
  return terms_.rbegin()->first;
}

bool QLaurent::has_integral_exponents() const {
  for (const auto& [e2, c] : terms_) {
    if (e2 % 2 != 0) return false;
  }
  return true;
}

bool QLaurent::has_nonnegative_coefficients() const {
  for (const auto& [e2, c] : terms_) {
    if (c < 0) return false;
  }
  return true;
}

QLaurent& QLaurent::operator+=(const QLaurent& other) {
  for (const auto& [e2, c] : other.terms_) add_term(e2, c);
  return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& other) {
  for (const auto& [e2, c] : other.terms_) add_term(e2, -c);
  return *this;
}

QLaurent& QLaurent::operator*=(const QLaurent& other) {
  QLaurent product;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) product.add_term(ea + eb, ca * cb);
  }
  terms_ = std::move(product.terms_);
  return *this;
}

QLaurent& QLaurent::operator*=(const BigInt& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e2, c] : terms_) c *= k;
  return *this;
}

QLaurent QLaurent::operator-() const {
  QLaurent p = *this;
  for (auto& [e2, c] : p.terms_) c = -c;
  return p;
}

QLaurent QLaurent::inverted() const {
  QLaurent p;
  for (const auto& [e2, c] : terms_) p.terms_.emplace(-e2, c);
  return p;
}

QLaurent QLaurent::pow(unsigned exponent) const {
  QLaurent result(1);
  QLaurent base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

namespace {

std::string exponent_text(int e2) {
  if (e2 % 2 == 0) return std::to_string(e2 / 2);
  return "(" + std::to_string(e2) + "/2)";
}

}  // namespace

std::string QLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e2, c] : terms_) {
    BigInt magnitude = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e2 == 0) {
      out << magnitude;
      continue;
    }
    if (magnitude != 1) out << magnitude;
    out << "q";
    if (e2 != 2) out << "^" << exponent_text(e2);
  }
  return out.str();
}

std::string QLaurent::to_term_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e2, c] : terms_) {
    if (!first && c > 0) out << "+";
    first = false;
    out << c << "*q^(" << e2 << "/2)";
  }
  return out.str();
}

std::vector<std::pair<int, std::string>> QLaurent::to_pairs() const {
  std::vector<std::pair<int, std::string>> pairs;
  pairs.reserve(terms_.size());
  for (const auto& [e2, c] : terms_) pairs.emplace_back(e2, to_decimal(c));
  return pairs;
}

QLaurent QLaurent::from_pairs(const std::vector<std::pair<int, std::string>>& pairs) {
  QLaurent p;
  bool have_prev = false;
  int prev = 0;
  for (const auto& [e2, text] : pairs) {
    if (have_prev && e2 <= prev) throw FormatError("QLaurent terms must be strictly increasing");
    BigInt c = parse_bigint(text);
    if (c == 0) throw FormatError("QLaurent terms must have nonzero coefficients");
    p.terms_.emplace(e2, c);
    prev = e2;
    have_prev = true;
  }
  return p;
}

QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  QLaurent p = a;
  p *= b;
  return p;
}

QLaurent add(const QLaurent& a, const QLaurent& b) { return a + b; }
QLaurent mul(const QLaurent& a, const QLaurent& b) { return a * b; }
QLaurent scale(const QLaurent& a, const BigInt& k) {
  QLaurent p = a;
  p *= k;
  return p;
}

QLaurent q_int(int m) {
  if (m <= 0) throw DomainError("q_int requires m >= 1, got " + std::to_string(m));
  QLaurent p;
  for (int j = 0; j < m; ++j) p += QLaurent::monomial(2 * j - (m - 1));
  return p;
}

BigInt evaluate_at_sign(const QLaurent& p, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("evaluate_at_sign accepts only +1 or -1");
  BigInt total = 0;
  for (const auto& [e2, c] : p.terms()) {
    if (sign == 1) {
      total += c;
      continue;
    }
    if (e2 % 2 != 0) {
      throw HalfIntegerExponentError("cannot specialize q^(" + std::to_string(e2) +
                                     "/2) at q = -1");
    }
    int e = e2 / 2;
    total += (e % 2 == 0) ? c : BigInt(-c);
  }
  return total;
}

bool is_palindromic(const QLaurent& p) { return p == p.inverted(); }

}  // namespace refloor

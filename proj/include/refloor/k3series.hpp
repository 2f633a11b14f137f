#pragma once

// Truncated power series in u and the K3 generating products.

#include <cstdint>
#include <vector>

#include "refloor/errors.hpp"
#include "refloor/qlaurent.hpp"

namespace refloor {

/// Power series c_0 + c_1 u + ... + c_N u^N; products drop degrees above N.
template <class T>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order) : coeffs_(checked(order) + 1, T(0)) {}
  TruncatedSeries(int order, std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(checked(order) + 1, T(0));
  }

  static TruncatedSeries one(int order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = T(1);
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& operator[](int k) const { return coeffs_.at(k); }
  T& operator[](int k) { return coeffs_.at(k); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& o) {
    same_order(o);
    std::vector<T> out(coeffs_.size(), T(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == T(0)) continue;
      for (std::size_t j = 0; i + j < coeffs_.size(); ++j) {
        if (o.coeffs_[j] == T(0)) continue;
        out[i + j] += coeffs_[i] * o.coeffs_[j];
      }
    }
    coeffs_ = std::move(out);
    return *this;
  }

  TruncatedSeries& scale(const T& k) {
    for (auto& c : coeffs_) c *= k;
    return *this;
  }

  TruncatedSeries pow(unsigned e) const {
    TruncatedSeries result = one(order());
    TruncatedSeries base = *this;
    while (e) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return result;
  }

  /// Multiplicative inverse; needs an invertible constant term, so this is
  /// only usable over a field.
  TruncatedSeries inverse() const {
    if (coeffs_[0] == T(0)) throw DomainError("series with zero constant term is not invertible");
    TruncatedSeries out(order());
    out.coeffs_[0] = T(1) / coeffs_[0];
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
      T acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc += coeffs_[j] * out.coeffs_[k - j];
      out.coeffs_[k] = -acc / coeffs_[0];
    }
    return out;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b) { return a *= b; }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  static std::size_t checked(int order) {
    if (order < 0) throw DomainError("series order must be nonnegative");
    return static_cast<std::size_t>(order);
  }
  void same_order(const TruncatedSeries& o) const {
    if (o.coeffs_.size() != coeffs_.size()) throw DomainError("series orders differ");
  }

  std::vector<T> coeffs_;
};

/// (1 + x u^step)^r up to u^order, via the generalized binomial series.
TruncatedSeries<QLaurent> binomial_factor(int order, int step, const QLaurent& x, std::int64_t r);

/// Coefficients of u^0..u^h_max in
/// prod_{n>=1} (1-u^n)^-20 (1-q u^n)^-2 (1-q^-1 u^n)^-2.
std::vector<QLaurent> kkv_coefficients(int h_max);

/// Coefficients of u^0..u^h_max in
/// prod_{n>=1} (1+u^n)^{-(24+e_R)/2} (1-u^n)^{-(24-e_R)/2}. e_R must be even.
std::vector<BigInt> real_k3_coefficients(int h_max, int e_real);

struct K3Check {
  int h = 0;
  QLaurent kkv;
  BigInt kkv_at_minus_1 = 0;
  BigInt real_count = 0;
  bool equal = false;
};

/// Compares each KKV coefficient at q = -1 with the real count for e_R.
std::vector<K3Check> check_k3_welschinger(int h_max, int e_real = -16);

}  // namespace refloor

#include "refloor/k3series.hpp"

namespace refloor {

TruncatedSeries<QLaurent> binomial_factor(int order, int step, const QLaurent& x, std::int64_t r) {
  if (step < 1) throw DomainError("factor step must be positive");
  TruncatedSeries<QLaurent> s(order);
  QLaurent power(1);
  for (int k = 0; k * step <= order; ++k) {
    s[k * step] = scale(power, generalized_binomial(r, k));
    power *= x;
  }
  return s;
}

std::vector<QLaurent> kkv_coefficients(int h_max) {
  if (h_max < 0) throw DomainError("h_max must be nonnegative");
  const QLaurent q = QLaurent::monomial(2);
  const QLaurent q_inv = QLaurent::monomial(-2);
  auto product = TruncatedSeries<QLaurent>::one(h_max);
  // Factors with n > h_max only touch degrees above h_max.
  for (int n = 1; n <= h_max; ++n) {
    product *= binomial_factor(h_max, n, QLaurent(-1), -20);
    product *= binomial_factor(h_max, n, -q, -2);
    product *= binomial_factor(h_max, n, -q_inv, -2);
  }
  return product.coeffs();
}

std::vector<BigInt> real_k3_coefficients(int h_max, int e_real) {
  if (h_max < 0) throw DomainError("h_max must be nonnegative");
  if ((24 + e_real) % 2 != 0) {
    throw DomainError("24 + e_R must be even, got e_R = " + std::to_string(e_real));
  }
  const std::int64_t plus = -(24 + e_real) / 2;
  const std::int64_t minus = -(24 - e_real) / 2;
  auto product = TruncatedSeries<QLaurent>::one(h_max);
  for (int n = 1; n <= h_max; ++n) {
    product *= binomial_factor(h_max, n, QLaurent(1), plus);
    product *= binomial_factor(h_max, n, QLaurent(-1), minus);
  }
  std::vector<BigInt> out;
  for (const QLaurent& c : product.coeffs()) out.push_back(c.coeff(0));
  return out;
}

std::vector<K3Check> check_k3_welschinger(int h_max, int e_real) {
  const auto kkv = kkv_coefficients(h_max);
  const auto real = real_k3_coefficients(h_max, e_real);
  std::vector<K3Check> rows;
  for (int h = 0; h <= h_max; ++h) {
    K3Check row;
    row.h = h;
    row.kkv = kkv[h];
    row.kkv_at_minus_1 = evaluate_at_sign(kkv[h], -1);
    row.real_count = real[h];
    row.equal = row.kkv_at_minus_1 == row.real_count;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace refloor

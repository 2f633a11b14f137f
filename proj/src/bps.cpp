#include "refloor/bps.hpp"

#include <algorithm>

#include "parallel.hpp"
#include "refloor/errors.hpp"
#include "refloor/k3series.hpp"

namespace refloor {

namespace {

constexpr int kMaxPoints = 6;

void require_bps_shape(const QLaurent& p) {
  if (!p.has_integral_exponents()) throw HalfIntegerExponentError("BPS polynomial has a half-integer exponent");
  if (!is_palindromic(p)) throw DomainError("BPS polynomial is not palindromic");
}

}  // namespace

QLaurent relative_bps(const CurveClass& beta, const Tangency& t, const EnumerationOptions& options) {
  QLaurent sum;
  for (const DiagramTally& row : tally(beta, t, options)) sum += row.refined;
  return sum;
}

BpsResult relative_result(const CurveClass& beta, const Tangency& t, const EnumerationOptions& options) {
  BpsResult r;
  r.poly = relative_bps(beta, t, options);
  r.gw_at_1 = evaluate_at_sign(r.poly, 1);
  r.welschinger_at_minus_1 = evaluate_at_sign(r.poly, -1);
  r.beta = beta;
  r.tangency = t;
  return r;
}

Rational welschinger_from_bps(const QLaurent& bps, const Tangency& t) {
  Rational w(evaluate_at_sign(bps, -1));
  for (int p : t.nu) w *= Rational(real_integer(p), p);
  return w;
}

Rational welschinger_relative(const CurveClass& beta, const Tangency& t, const EnumerationOptions& options) {
  return welschinger_from_bps(relative_bps(beta, t, options), t);
}

CurveClass pad_class(const CurveClass& beta, int n_target) {
  if (n_target < beta.n()) {
    throw DomainError("cannot pad a class on " + std::to_string(beta.n()) + " points down to " +
                      std::to_string(n_target));
  }
  CurveClass out = beta;
  out.a.resize(static_cast<std::size_t>(n_target), 0);
  return out;
}

namespace {

struct AbvTerm {
  BigInt weight;
  CurveClass beta;
  Tangency t;
};

// Terms k with d - 2k >= 1 and every a_i - k >= 0; the others admit no
// marking and contribute zero.
std::vector<AbvTerm> abv_terms(const CurveClass& input) {
  if (input.n() > kMaxPoints) throw DomainError("absolute BPS is only available for at most 6 points");
  if (input.d < 1) throw DomainError("class degree must be >= 1");
  CurveClass beta = pad_class(input, kMaxPoints);
  for (int ai : beta.a) {
    if (ai < 0) throw DomainError("negative a_i in class " + beta.to_string());
  }
  if (beta.point_count() < 0) throw DomainError("3d - sum(a) - 1 < 0 for class " + beta.to_string());
  const int bc = beta.conic_intersection();
  if (bc < 0) throw DomainError("2d - sum(a) < 0 for class " + beta.to_string());
  const int k_max = std::min((beta.d - 1) / 2, *std::min_element(beta.a.begin(), beta.a.end()));
  std::vector<AbvTerm> terms;
  for (int k = 0; k <= k_max; ++k) {
    AbvTerm term;
    term.weight = binomial(bc + 2 * k, k);
    term.beta.d = beta.d - 2 * k;
    for (int ai : beta.a) term.beta.a.push_back(ai - k);
    term.t.nu.assign(static_cast<std::size_t>(bc + 2 * k), 1);
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace

BpsResult abv_absolute(const CurveClass& beta, const EnumerationOptions& options) {
  const auto terms = abv_terms(beta);
  std::vector<QLaurent> parts(terms.size());
  EnumerationOptions inner = options;
  inner.threads = 1;
  detail::parallel_for(terms.size(), options.threads, [&](std::size_t i) {
    parts[i] = scale(relative_bps(terms[i].beta, terms[i].t, inner), terms[i].weight);
  });
  BpsResult r;
  for (const QLaurent& p : parts) r.poly += p;
  require_bps_shape(r.poly);
  r.gw_at_1 = evaluate_at_sign(r.poly, 1);
  r.welschinger_at_minus_1 = evaluate_at_sign(r.poly, -1);
  r.beta = pad_class(beta, kMaxPoints);
  r.surface_n = beta.n();
  return r;
}

BigInt abv_absolute_complex(const CurveClass& beta, const EnumerationOptions& options) {
  BigInt total = 0;
  for (const AbvTerm& term : abv_terms(beta)) {
    BigInt sum = 0;
    for (const DiagramTally& row : tally(term.beta, term.t, options)) sum += row.complex;
    total += term.weight * sum;
  }
  return total;
}

PtSeries pt_series(const QLaurent& bps, int m_beta, int truncation) {
  if (m_beta < 0) throw DomainError("m_beta must be nonnegative");
  if (!bps.has_integral_exponents()) throw HalfIntegerExponentError("pt_series needs integral exponents");
  const QLaurent q = QLaurent::monomial(2);
  const QLaurent minus_q = -q;
  if (m_beta >= 1) {
    QLaurent factor = (QLaurent(1) - q).pow(static_cast<unsigned>(m_beta - 1));
    return {minus_q * factor * bps, std::nullopt};
  }
  if (truncation < 1) throw DomainError("truncation must be positive");
  if (bps.is_zero()) return {QLaurent(), std::nullopt};
  // 1/(1-q) = 1 + q + q^2 + ...; keeping q^0..q^T makes the product exact
  // through T powers past its lowest term.
  QLaurent geometric;
  for (int j = 0; j <= truncation; ++j) geometric += QLaurent::monomial(2 * j);
  QLaurent full = minus_q * geometric * bps;
  const int last = bps.min_e2() / 2 + 1 + truncation;
  QLaurent truncated;
  for (const auto& [e2, c] : full.terms()) {
    if (e2 / 2 <= last) truncated += QLaurent::monomial(e2, c);
  }
  return {truncated, last};
}

std::vector<Rational> gw_expansion(const QLaurent& bps, const std::vector<int>& sin_factors, int shift,
                                   int g_max) {
  if (g_max < 0) throw DomainError("g_max must be nonnegative");
  require_bps_shape(bps);
  // Each factor is u * f_k(u) with f_k(0) = 1, so the product is
  // u^lead * F(u) with F a power series.
  int lead = 0;
  for (int k : sin_factors) {
    if (k == 0) throw DomainError("sine factor multiplicity must be nonzero");
    lead += k > 0 ? 1 : -1;
  }
  const int top = 2 * g_max + shift - lead;
  std::vector<Rational> out(static_cast<std::size_t>(g_max) + 1, Rational(0));
  if (top < 0) return out;

  using Series = TruncatedSeries<Rational>;
  auto even_series = [top](auto coefficient) {
    Series s(top);
    for (int j = 0; 2 * j <= top; ++j) s[2 * j] = coefficient(j);
    return s;
  };
  auto factorial = [](int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  auto power = [](const Rational& x, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
  };

  // sum_e c_e q^e with q = e^{iu}; palindromy cancels the sine parts.
  Series f(top);
  for (const auto& [e2, c] : bps.terms()) {
    const Rational e(e2 / 2);
    f += even_series([&](int j) {
      Rational term = power(e, 2 * j) / Rational(factorial(2 * j)) * Rational(c);
      return j % 2 ? Rational(-term) : term;
    });
  }
  for (int k : sin_factors) {
    const Rational half(std::abs(k), 2);
    Series s = even_series([&](int j) {
      Rational term = power(half, 2 * j) / Rational(factorial(2 * j + 1));
      return j % 2 ? Rational(-term) : term;
    });
    f *= k > 0 ? s : s.inverse();
  }
  for (int g = 0; g <= g_max; ++g) {
    const int idx = 2 * g + shift - lead;
    if (idx >= 0) out[static_cast<std::size_t>(g)] = f[idx];
  }
  return out;
}

std::vector<Rational> gw_expansion_absolute(const QLaurent& bps, int m_beta, int g_max) {
  if (m_beta < 0) throw DomainError("m_beta must be nonnegative");
  std::vector<int> factors;
  if (m_beta >= 1) {
    factors.assign(static_cast<std::size_t>(m_beta - 1), 1);
  } else {
    factors.push_back(-1);
  }
  return gw_expansion(bps, factors, m_beta - 1, g_max);
}

std::vector<Rational> gw_expansion_relative(const QLaurent& bps, const CurveClass& beta, const Tangency& t,
                                            int g_max) {
  std::vector<int> factors(t.mu.begin(), t.mu.end());
  factors.insert(factors.end(), t.nu.begin(), t.nu.end());
  const int plain = beta.d - 2;
  for (int i = 0; i < std::abs(plain); ++i) factors.push_back(plain > 0 ? 1 : -1);
  const int shift = beta.d - 2 + static_cast<int>(t.mu.size() + t.nu.size());
  return gw_expansion(bps, factors, shift, g_max);
}

}  // namespace refloor

#pragma once

// Relative and absolute BPS polynomials and their conversions.

#include <optional>
#include <vector>

#include "refloor/enumerate.hpp"
#include "refloor/qlaurent.hpp"

namespace refloor {

struct BpsResult {
  QLaurent poly;
  BigInt gw_at_1 = 0;
  BigInt welschinger_at_minus_1 = 0;
  CurveClass beta;
  /// Set for relative results.
  std::optional<Tangency> tangency;
  /// Set for absolute results.
  std::optional<int> surface_n;
};

/// Sum of the refined contributions of every marked floor diagram.
QLaurent relative_bps(const CurveClass& beta, const Tangency& t, const EnumerationOptions& options = {});

/// Relative BPS polynomial with its specializations.
BpsResult relative_result(const CurveClass& beta, const Tangency& t, const EnumerationOptions& options = {});

/// BPS(-1) * prod_j [nu_j]_R / nu_j.
Rational welschinger_relative(const CurveClass& beta, const Tangency& t,
                              const EnumerationOptions& options = {});
Rational welschinger_from_bps(const QLaurent& bps, const Tangency& t);

/// Appends zero multiplicities up to n_target points.
CurveClass pad_class(const CurveClass& beta, int n_target);

/// Absolute BPS polynomial of a class on the plane blown up at six points,
/// assembled from relative invariants along the conic. Classes with fewer
/// points are padded; more than six points are rejected.
BpsResult abv_absolute(const CurveClass& beta, const EnumerationOptions& options = {});

/// The same sum with complex tallies only (values at q = 1).
BigInt abv_absolute_complex(const CurveClass& beta, const EnumerationOptions& options = {});

/// A Laurent polynomial in q, or a series exact through q^exact_through.
struct PtSeries {
  QLaurent poly;
  std::optional<int> exact_through;
};

/// -q (1-q)^{m-1} * bps. For m = 0 the factor 1/(1-q) is expanded so that
/// `truncation` powers of q past the lowest term are exact.
PtSeries pt_series(const QLaurent& bps, int m_beta, int truncation);

/// Coefficients GW_0..GW_{g_max} of u^{2g+shift} in
/// prod_k s_k(u) * sum_e c_e cos(e u), with q = e^{iu} and bps = sum_e c_e q^e.
/// An entry k > 0 contributes s_k = (2/k) sin(k u / 2); an entry -k divides
/// by that factor instead.
std::vector<Rational> gw_expansion(const QLaurent& bps, const std::vector<int>& sin_factors, int shift,
                                   int g_max);

/// Absolute normalization: m_beta - 1 factors of 2 sin(u/2), shift m_beta - 1.
std::vector<Rational> gw_expansion_absolute(const QLaurent& bps, int m_beta, int g_max);

/// Relative normalization: factors for mu, nu and d - 2 factors of 2 sin(u/2),
/// shift d - 2 + l(mu) + l(nu).
std::vector<Rational> gw_expansion_relative(const QLaurent& bps, const CurveClass& beta, const Tangency& t,
                                            int g_max);

}  // namespace refloor

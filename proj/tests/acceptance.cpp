// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any
// criterion fails.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracle.hpp"
#include "refloor/bps.hpp"
#include "refloor/enumerate.hpp"
#include "refloor/errors.hpp"
#include "refloor/k3series.hpp"
#include "tables.hpp"

using namespace refloor;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

QLaurent sym(std::vector<long> from_centre) {
  QLaurent p;
  const int top = static_cast<int>(from_centre.size()) - 1;
  for (int e = -top; e <= top; ++e) {
    p += QLaurent::monomial(2 * e, BigInt(from_centre[static_cast<std::size_t>(e < 0 ? -e : e)]));
  }
  return p;
}

QLaurent total(const std::vector<DiagramTally>& rows) {
  QLaurent s;
  for (const auto& r : rows) s += r.refined;
  return s;
}

std::string values(const QLaurent& p) {
  return p.to_string() + " (" + to_decimal(evaluate_at_sign(p, 1)) + " / " + to_decimal(evaluate_at_sign(p, -1)) +
         ")";
}

bool good_bps(const QLaurent& p) {
  return is_palindromic(p) && p.has_integral_exponents() && p.has_nonnegative_coefficients();
}

EnumerationOptions threaded() {
  EnumerationOptions o;
  o.threads = static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1U, 16U));
  return o;
}

const CurveClass kQuartic{4, {1, 1, 1, 1, 1, 1}};
const Tangency kTwoMoving{{}, {1, 1}};
const CurveClass kSextic{6, {2, 2, 2, 2, 2, 2}};

Outcome criterion1() {
  const QLaurent p = relative_bps(kQuartic, kTwoMoving);
  const bool ok = p == sym({400, 94, 13, 1}) && evaluate_at_sign(p, 1) == 616 && evaluate_at_sign(p, -1) == 236;
  return {ok, "4H - sum E_i, nu = (1,1): " + values(p)};
}

Outcome criterion2() {
  const auto rows = tally(kQuartic, kTwoMoving, threaded());
  bool consistent = true;
  for (const auto& r : rows) {
    consistent = consistent && evaluate_at_sign(r.refined, 1) == r.complex && evaluate_at_sign(r.refined, -1) == r.real;
  }
  const bool multiset = tables::row_multiset(rows) == tables::quartic_rows();
  std::ostringstream d;
  d << rows.size() << " rows; refined(+-1) = (complex, real) on every row: " << (consistent ? "yes" : "no")
    << "; multiset equals the reference (rows with complex 16 and 48 carry q^-2+4q^-1+6+4q+q^2 and 12q^-1+24+12q): "
    << (multiset ? "yes" : "no");
  return {rows.size() == 15 && consistent && multiset, d.str()};
}

Outcome criterion3() {
  const QLaurent p = relative_bps(kSextic, {});
  const auto rows = tally(kSextic, {}, threaded());
  const bool poly_ok = p == sym({1112, 359, 74, 11, 1}) && evaluate_at_sign(p, 1) == 2002 &&
                       evaluate_at_sign(p, -1) == 522;

  // Reference rows exactly as listed, including real = 20 on the row whose
  // refined entry is 20q^-1 + 40 + 20q.
  auto listed = tables::sextic_rows();
  for (auto& row : listed) {
    if (std::get<0>(row) == 80) std::get<1>(row) = 20;
  }
  listed = tables::normalize(listed);
  const auto computed = tables::row_multiset(rows);
  std::vector<tables::Row> missing;
  std::vector<tables::Row> extra;
  std::set_difference(listed.begin(), listed.end(), computed.begin(), computed.end(), std::back_inserter(missing));
  std::set_difference(computed.begin(), computed.end(), listed.begin(), listed.end(), std::back_inserter(extra));

  long listed_real = 0;
  for (const auto& row : listed) listed_real += std::get<1>(row);

  std::ostringstream d;
  d << "6H - 2 sum E_i: " << values(p) << "; " << rows.size() << " rows; " << (listed.size() - missing.size())
    << " of " << listed.size() << " reference rows match exactly";
  if (!missing.empty()) {
    d << "; unmatched reference rows:";
    for (const auto& [c, r, terms] : missing) {
      d << " (complex " << c << ", real " << r << ")";
    }
    d << " vs computed:";
    for (const auto& [c, r, terms] : extra) d << " (complex " << c << ", real " << r << ")";
    d << ". The reference real entry contradicts its own refined entry, whose value at q = -1 is 0, and the"
         " reference real column sums to "
      << listed_real << ", not 522";
  }
  return {poly_ok && rows.size() == 19 && missing.empty() && extra.empty(), d.str()};
}

Outcome criterion4() {
  const BpsResult r = abv_absolute(kSextic, threaded());
  const bool ok = r.poly == sym({1918, 547, 100, 13, 1}) && r.gw_at_1 == 3240 && r.welschinger_at_minus_1 == 1000;
  return {ok, "absolute 6H - 2 sum E_i: " + values(r.poly)};
}

Outcome criterion5() {
  const BpsResult r = abv_absolute(pad_class({3, {}}, 6));
  const bool ok = r.poly == sym({10, 1}) && r.gw_at_1 == 12 && r.welschinger_at_minus_1 == 8;
  return {ok, "absolute 3H: " + values(r.poly)};
}

Outcome criterion6() {
  const QLaurent a = relative_bps({1, {}}, {{1, 1}, {}});
  const QLaurent b = relative_bps({1, {}}, {{2}, {}});
  return {a == QLaurent(1) && b == QLaurent(1), "H with mu = (1,1): " + a.to_string() + "; H with mu = (2): " +
                                                     b.to_string()};
}

Outcome criterion7() {
  std::ostringstream d;
  bool ok = true;

  // Diagram invariants.
  std::size_t diagrams = 0;
  const int max_degree = 8;
  for (int deg = 1; deg <= max_degree; ++deg) {
    for (const auto& g : enumerate_diagrams(deg, threaded())) {
      ++diagrams;
      const bool good = validate(g).ok() && g.edges.size() + 1 == g.vertices.size() &&
                        g.leg_weight_sum() == 2 * deg &&
                        g.count(VertexKind::Div2) + 2 * g.count(VertexKind::Div4) == deg;
      ok = ok && good;
    }
  }
  d << diagrams << " diagrams of degree <= " << max_degree << " satisfy the tree, divergence, sink, leg-sum and floor-count rules: "
    << (ok ? "yes" : "no");

  // Marking counts against the brute-force oracle, and every relative output.
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::size_t inputs = 0;
  std::size_t bad_relative = 0;
  for (int deg = 1; deg <= 4; ++deg) {
    for (const auto& in : oracle::all_inputs(deg)) {
      ++inputs;
      for (const auto& g : enumerate_diagrams_with_legs(deg, required_leg_weights(in.beta, in.t))) {
        ++pairs;
        if (count_markings(g, in.beta, in.t) != oracle::count_markings(g, in.beta, in.t)) ++mismatches;
      }
      if (!good_bps(relative_bps(in.beta, in.t))) ++bad_relative;
    }
  }
  d << "; oracle marking counts on " << pairs << " (input, diagram) pairs from all " << inputs
    << " inputs of degree <= 4: " << mismatches << " mismatches";

  // Absolute outputs over every class of degree <= 5 with at most six points.
  std::size_t classes = 0;
  std::size_t bad_absolute = 0;
  for (int deg = 1; deg <= 5; ++deg) {
    for (int used = 0; used <= 2 * deg; ++used) {
      for (const auto& a : oracle::partitions(used, 6)) {
        CurveClass beta{deg, a};
        if (beta.point_count() < 0) continue;
        ++classes;
        const BpsResult r = abv_absolute(beta);
        if (!good_bps(r.poly) || r.gw_at_1 < abs(r.welschinger_at_minus_1)) ++bad_absolute;
      }
    }
  }
  d << "; BPS outputs palindromic, integral, nonnegative: " << (inputs - bad_relative) << "/" << inputs
    << " relative, " << (classes - bad_absolute) << "/" << classes << " absolute";
  ok = ok && mismatches == 0 && bad_relative == 0 && bad_absolute == 0;
  return {ok, d.str()};
}

Outcome criterion8() {
  const auto cubic = gw_expansion_absolute(sym({10, 1}), 8, 2);
  const auto sine = gw_expansion(QLaurent(1), {1}, 1, 3);
  // 2 sin(u/2) = sum_g (-1)^g 2 (u/2)^{2g+1} / (2g+1)!
  std::vector<Rational> expected{1, Rational(-1, 24), Rational(1, 1920), Rational(-1, 322560)};
  std::ostringstream d;
  d << "cubic GW_0 = " << cubic.at(0) << "; 2 sin(u/2) series:";
  for (const auto& v : sine) d << ' ' << v;
  return {cubic.at(0) == 12 && sine == expected, d.str()};
}

Outcome criterion9() {
  const auto rows = check_k3_welschinger(10, -16);
  const bool ok = rows.size() == 11 && std::all_of(rows.begin(), rows.end(), [](const K3Check& r) { return r.equal; });
  std::ostringstream d;
  d << "h = 0..10, KKV(q=-1) vs real K3 (e = -16):";
  for (const auto& r : rows) d << ' ' << to_decimal(r.kkv_at_minus_1) << (r.equal ? "=" : "!=") << to_decimal(r.real_count);
  return {ok, d.str()};
}

Outcome criterion10() {
  QLaurent q = QLaurent::monomial(2);
  const QLaurent simple = pt_series(QLaurent(1), 2, 4).poly;
  const bool simple_ok = simple == scale(q, -1) + q * q;
  const QLaurent cubic = pt_series(sym({10, 1}), 8, 4).poly;
  const BigInt at_zero = cubic.coeff(0);  // lowest exponent is 0 here
  const bool cubic_ok = cubic.min_e2() >= 0 && at_zero == 0 && cubic.min_e2() == 2 && cubic.coeff(2) == -1;
  std::ostringstream d;
  d << "(1, m = 2) -> " << simple.to_string() << (simple_ok ? " as expected" : " unexpected")
    << "; cubic (m = 8) -> " << cubic.to_string() << ": value at q = 0 is " << to_decimal(at_zero)
    << ", lowest term has exponent " << cubic.min_e2() / 2;
  if (!cubic_ok) {
    d << ". Required: value 0 at q = 0 and lowest term -q. Not attainable: -q (1-q)^7 (q^-1 + 10 + q) has"
         " lowest term -q * q^-1 = -1, since the q^-1 term of the cubic polynomial cancels the factor q";
  }
  return {simple_ok && cubic_ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

#include "doctest.h"
#include "refloor/errors.hpp"
#include "refloor/serialize.hpp"

using namespace refloor;
using nlohmann::json;

TEST_CASE("polynomials") {
  QLaurent p = QLaurent::monomial(-3, 2) + QLaurent::monomial(4, parse_bigint("-98765432109876543210"));
  json j = to_json(p);
  CHECK(j == json::parse(R"([[-3,"2"],[4,"-98765432109876543210"]])"));
  CHECK(qlaurent_from_json(j) == p);
  CHECK(qlaurent_from_json(json::parse(R"([[0,5]])")) == QLaurent(5));
  CHECK(qlaurent_from_json(json::array()) == QLaurent());
  CHECK_THROWS_AS(qlaurent_from_json(json::parse(R"({"e2":0})")), FormatError);
  CHECK_THROWS_AS(qlaurent_from_json(json::parse(R"([[0]])")), FormatError);
  CHECK_THROWS_AS(qlaurent_from_json(json::parse(R"([[0,"abc"]])")), FormatError);
  CHECK_THROWS_AS(qlaurent_from_json(json::parse(R"([[2,"1"],[0,"1"]])")), FormatError);
}

TEST_CASE("diagrams round trip") {
  for (const auto& g : enumerate_diagrams(4)) {
    json j = to_json(g);
    CHECK(j.at("format") == kJsonFormatVersion);
    CHECK(diagram_from_json(j) == g);
    CHECK(diagram_from_json(json::parse(j.dump())) == g);
  }
  json j = to_json(enumerate_diagrams(2).front());
  j["format"] = 2;
  CHECK_THROWS_AS(diagram_from_json(j), FormatError);
  CHECK_THROWS_AS(diagram_from_json(json::parse(R"({"vertices":[{"id":0,"kind":"Div3"}],"edges":[],"legs":[]})")),
                  FormatError);
  CHECK_THROWS_AS(diagram_from_json(json::parse("[1,2]")), FormatError);
}

TEST_CASE("classes and tangency") {
  CurveClass beta{5, {2, 1, 0}};
  CHECK(curve_class_from_json(to_json(beta)) == beta);
  Tangency t{{2}, {1, 1, 3}};
  CHECK(tangency_from_json(to_json(t)) == t);
  CHECK_THROWS_AS(curve_class_from_json(json::parse(R"({"a":[1]})")), FormatError);
}

TEST_CASE("tally rows round trip") {
  auto rows = tally({4, {1, 1, 1, 1, 1, 1}}, {{}, {1, 1}});
  REQUIRE_FALSE(rows.empty());
  for (const auto& r : rows) {
    json j = to_json(r);
    CHECK(j.at("canonical_key") == to_hex(row_key(r)));
    DiagramTally back = tally_from_json(json::parse(j.dump()));
    CHECK(back.diagram == r.diagram);
    CHECK(back.leg_roles == r.leg_roles);
    CHECK(back.marking_count == r.marking_count);
    CHECK(back.refined == r.refined);
    CHECK(back.complex == r.complex);
    CHECK(back.real == r.real);
  }
  json bad = to_json(rows.front());
  bad["leg_roles"].erase(0);
  CHECK_THROWS_AS(tally_from_json(bad), FormatError);
  CHECK(to_string(LegRole::Nu) == "nu");
  CHECK(parse_leg_role("a") == LegRole::A);
  CHECK_THROWS(parse_leg_role("x"));
}

TEST_CASE("BPS results round trip and are checked") {
  BpsResult absolute = abv_absolute(pad_class({3, {}}, 6));
  json j = to_json(absolute);
  CHECK(j.at("q1") == "12");
  CHECK(j.at("qm1") == "8");
  CHECK(j.at("surface_n") == 6);
  CHECK_FALSE(j.contains("tangency"));
  BpsResult back = bps_result_from_json(json::parse(j.dump()));
  CHECK(back.poly == absolute.poly);
  CHECK(back.beta == absolute.beta);
  CHECK(back.surface_n == 6);
  CHECK(back.gw_at_1 == 12);

  BpsResult relative = relative_result({1, {}}, {{1, 1}, {}});
  BpsResult rel_back = bps_result_from_json(to_json(relative));
  CHECK(rel_back.tangency == relative.tangency);
  CHECK_FALSE(rel_back.surface_n.has_value());

  json both = j;
  both["tangency"] = to_json(Tangency{});
  CHECK_THROWS_AS(bps_result_from_json(both), FormatError);
  json wrong = j;
  wrong["q1"] = "13";
  CHECK_THROWS_AS(bps_result_from_json(wrong), FormatError);
  json version = j;
  version["format"] = 7;
  CHECK_THROWS_AS(bps_result_from_json(version), FormatError);
}

TEST_CASE("K3 rows") {
  auto rows = check_k3_welschinger(1);
  json j = to_json(rows[1]);
  CHECK(j.at("h") == 1);
  CHECK(j.at("qm1") == "16");
  CHECK(j.at("real_k3") == "16");
  CHECK(j.at("equal") == true);
}

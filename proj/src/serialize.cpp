#include "refloor/serialize.hpp"

#include "refloor/errors.hpp"

namespace refloor {

using nlohmann::json;

namespace {

void check_format(const json& j) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (j.contains("format") && j.at("format") != kJsonFormatVersion) {
    throw FormatError("unsupported format version " + j.at("format").dump());
  }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

std::string big_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw FormatError("expected an integer or decimal string");
}

}  // namespace

json to_json(const QLaurent& p) {
  json out = json::array();
  for (const auto& [e2, c] : p.to_pairs()) out.push_back(json::array({e2, c}));
  return out;
}

QLaurent qlaurent_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_array()) throw FormatError("polynomial must be an array of [e2, coefficient] pairs");
    std::vector<std::pair<int, std::string>> pairs;
    for (const json& item : j) {
      if (!item.is_array() || item.size() != 2) throw FormatError("polynomial term must be a pair");
      pairs.emplace_back(item.at(0).get<int>(), big_string(item.at(1)));
    }
    try {
      return QLaurent::from_pairs(pairs);
    } catch (const DomainError& e) {
      throw FormatError(e.what());
    }
  });
}

json to_json(const FloorDiagram& g) {
  json out;
  out["format"] = kJsonFormatVersion;
  out["vertices"] = json::array();
  for (const Vertex& v : g.vertices) out["vertices"].push_back({{"id", v.id}, {"kind", to_string(v.kind)}});
  out["edges"] = json::array();
  for (const Edge& e : g.edges) out["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"w", e.weight}});
  out["legs"] = json::array();
  for (const Leg& l : g.legs) out["legs"].push_back({{"v", l.vertex}, {"w", l.weight}});
  return out;
}

FloorDiagram diagram_from_json(const json& j) {
  return guarded([&] {
    check_format(j);
    FloorDiagram g;
    for (const json& v : j.at("vertices")) {
      try {
        g.vertices.push_back({v.at("id").get<int>(), parse_vertex_kind(v.at("kind").get<std::string>())});
      } catch (const DomainError& e) {
        throw FormatError(e.what());
      }
    }
    for (const json& e : j.at("edges")) {
      g.edges.push_back({e.at("src").get<int>(), e.at("dst").get<int>(), e.at("w").get<int>()});
    }
    for (const json& l : j.at("legs")) g.legs.push_back({l.at("v").get<int>(), l.at("w").get<int>()});
    return g;
  });
}

json to_json(const CurveClass& beta) { return {{"d", beta.d}, {"a", beta.a}}; }

CurveClass curve_class_from_json(const json& j) {
  return guarded([&] {
    CurveClass beta;
    beta.d = j.at("d").get<int>();
    beta.a = j.at("a").get<std::vector<int>>();
    return beta;
  });
}

json to_json(const Tangency& t) { return {{"mu", t.mu}, {"nu", t.nu}}; }

Tangency tangency_from_json(const json& j) {
  return guarded([&] {
    Tangency t;
    t.mu = j.at("mu").get<std::vector<int>>();
    t.nu = j.at("nu").get<std::vector<int>>();
    return t;
  });
}

json to_json(const DiagramTally& row) {
  json out;
  out["format"] = kJsonFormatVersion;
  out["canonical_key"] = to_hex(row_key(row));
  out["diagram"] = to_json(row.diagram);
  out["leg_roles"] = json::array();
  for (LegRole r : row.leg_roles) out["leg_roles"].push_back(to_string(r));
  out["marking_count"] = row.marking_count;
  out["complex"] = to_decimal(row.complex);
  out["real"] = to_decimal(row.real);
  out["refined"] = to_json(row.refined);
  return out;
}

DiagramTally tally_from_json(const json& j) {
  return guarded([&] {
    check_format(j);
    DiagramTally row;
    row.diagram = diagram_from_json(j.at("diagram"));
    for (const json& r : j.at("leg_roles")) {
      try {
        row.leg_roles.push_back(parse_leg_role(r.get<std::string>()));
      } catch (const DomainError& e) {
        throw FormatError(e.what());
      }
    }
    if (row.leg_roles.size() != row.diagram.legs.size()) throw FormatError("leg_roles must match legs");
    row.marking_count = j.at("marking_count").get<std::uint64_t>();
    row.complex = parse_bigint(big_string(j.at("complex")));
    row.real = parse_bigint(big_string(j.at("real")));
    row.refined = qlaurent_from_json(j.at("refined"));
    return row;
  });
}

json to_json(const BpsResult& r) {
  json out;
  out["format"] = kJsonFormatVersion;
  out["class"] = to_json(r.beta);
  if (r.tangency) out["tangency"] = to_json(*r.tangency);
  if (r.surface_n) out["surface_n"] = *r.surface_n;
  out["poly"] = to_json(r.poly);
  out["q1"] = to_decimal(r.gw_at_1);
  out["qm1"] = to_decimal(r.welschinger_at_minus_1);
  return out;
}

BpsResult bps_result_from_json(const json& j) {
  return guarded([&] {
    check_format(j);
    BpsResult r;
    r.beta = curve_class_from_json(j.at("class"));
    if (j.contains("tangency")) r.tangency = tangency_from_json(j.at("tangency"));
    if (j.contains("surface_n")) r.surface_n = j.at("surface_n").get<int>();
    if (r.tangency.has_value() == r.surface_n.has_value()) {
      throw FormatError("exactly one of tangency and surface_n must be present");
    }
    r.poly = qlaurent_from_json(j.at("poly"));
    r.gw_at_1 = parse_bigint(big_string(j.at("q1")));
    r.welschinger_at_minus_1 = parse_bigint(big_string(j.at("qm1")));
    if (r.gw_at_1 != evaluate_at_sign(r.poly, 1)) throw FormatError("q1 does not match poly(1)");
    if (r.welschinger_at_minus_1 != evaluate_at_sign(r.poly, -1)) throw FormatError("qm1 does not match poly(-1)");
    return r;
  });
}

json to_json(const K3Check& row) {
  json out;
  out["h"] = row.h;
  out["poly"] = to_json(row.kkv);
  out["q1"] = to_decimal(evaluate_at_sign(row.kkv, 1));
  out["qm1"] = to_decimal(row.kkv_at_minus_1);
  out["real_k3"] = to_decimal(row.real_count);
  out["equal"] = row.equal;
  return out;
}

}  // namespace refloor

#pragma once

// JSON forms of the library types. Every top-level object carries
// "format": 1; parsers reject any other version and throw FormatError on
// malformed input.

#include "json.hpp"
#include "refloor/bps.hpp"
#include "refloor/diagram.hpp"
#include "refloor/enumerate.hpp"
#include "refloor/k3series.hpp"
#include "refloor/qlaurent.hpp"

namespace refloor {

inline constexpr int kJsonFormatVersion = 1;

/// [[e2, "coefficient"], ...] with e2 increasing.
nlohmann::json to_json(const QLaurent& p);
QLaurent qlaurent_from_json(const nlohmann::json& j);

/// {format, vertices:[{id,kind}], edges:[{src,dst,w}], legs:[{v,w}]}
nlohmann::json to_json(const FloorDiagram& g);
FloorDiagram diagram_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CurveClass& beta);
CurveClass curve_class_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Tangency& t);
Tangency tangency_from_json(const nlohmann::json& j);

/// {format, canonical_key (hex row key), diagram, leg_roles, marking_count,
/// complex, real, refined}
nlohmann::json to_json(const DiagramTally& row);
DiagramTally tally_from_json(const nlohmann::json& j);

/// {format, class, tangency | surface_n, poly, q1, qm1}
nlohmann::json to_json(const BpsResult& r);
BpsResult bps_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const K3Check& row);

}  // namespace refloor

#pragma once

// Floor diagrams: weighted oriented trees whose vertices have divergence 2
// or 4, carrying weighted legs that all point into their vertex.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace refloor {

enum class VertexKind : std::uint8_t { Div2, Div4 };

int divergence_of(VertexKind kind);
std::string to_string(VertexKind kind);
VertexKind parse_vertex_kind(const std::string& text);

struct Vertex {
  int id = 0;
  VertexKind kind = VertexKind::Div4;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Oriented source -> target.
struct Edge {
  int src = 0;
  int dst = 0;
  int weight = 1;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Legs are oriented toward their vertex.
struct Leg {
  int vertex = 0;
  int weight = 1;
  friend bool operator==(const Leg&, const Leg&) = default;
};

struct FloorDiagram {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Leg> legs;

  /// Half the total leg weight.
  int degree() const;
  int leg_weight_sum() const;
  int count(VertexKind kind) const;
  /// Position of the vertex with this id in `vertices`; throws StructuralError.
  std::size_t index_of(int id) const;
  /// Sorted multiset of leg weights.
  std::vector<int> leg_weights() const;

  friend bool operator==(const FloorDiagram&, const FloorDiagram&) = default;
};

struct Violation {
  std::string rule;
  std::string detail;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& rule) const;
};

/// Checks every floor-diagram rule and names each failure. Rule names:
/// empty, nonpositive_weight, not_connected, not_a_tree, oriented_cycle,
/// leg_sum_odd, divergence, div2_outgoing_edge, div2_div2_edge, floor_count.
/// Throws StructuralError when an edge or leg names an unknown vertex id or
/// vertex ids repeat.
ValidationResult validate(const FloorDiagram& g);

/// (sum of incoming edge and leg weights) - (sum of outgoing edge weights).
int divergence(const FloorDiagram& g, int vertex_id);

/// Relabels the diagram into canonical form: vertex ids 0..N-1 in the
/// preorder of the minimal rooted encoding, edges and legs sorted.
FloorDiagram canonical_form(const FloorDiagram& g);

/// Byte string identifying the isomorphism class of the diagram as a
/// weighted oriented graph with legs.
std::string canonical_key(const FloorDiagram& g);
std::string to_hex(const std::string& bytes);

/// A symmetry of a diagram, written on positions in the diagram's vectors:
/// vertex i -> vertex_map[i], edge j -> edge_map[j], leg l -> leg_map[l].
struct Automorphism {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<int> leg_map;
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
};

/// Symmetries acting on vertices and edges only; legs sitting at the same
/// vertex with the same weight are left in place (leg_map is the induced
/// matching in index order).
std::vector<Automorphism> vertex_automorphisms(const FloorDiagram& g);

/// The full group, including permutations of interchangeable legs. Throws
/// DomainError when the group has more than `limit` elements.
std::vector<Automorphism> automorphisms(const FloorDiagram& g, std::size_t limit = 1'000'000);

/// Order of the full automorphism group.
std::uint64_t automorphism_group_order(const FloorDiagram& g);

struct PosetElement {
  enum class Kind : std::uint8_t { Vertex, Edge, Leg };
  Kind kind;
  int index;  // position in the diagram's vertices / edges / legs
  friend bool operator==(const PosetElement&, const PosetElement&) = default;
};

/// Partial order on the Div4 vertices, edges and selected legs. An edge or
/// leg sits below its head vertex and above its tail vertex; the order is
/// the reachability order restricted to the selected elements.
class MarkingPoset {
 public:
  MarkingPoset(std::vector<PosetElement> elements, std::vector<std::vector<bool>> less);

  const std::vector<PosetElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  /// Strict order between elements i and j (positions in elements()).
  bool less(std::size_t i, std::size_t j) const { return less_[i][j]; }
  bool comparable(std::size_t i, std::size_t j) const { return less_[i][j] || less_[j][i]; }
  std::size_t position(const PosetElement& e) const;

 private:
  std::vector<PosetElement> elements_;
  std::vector<std::vector<bool>> less_;
};

/// `nu_legs` are positions in g.legs.
MarkingPoset marking_poset(const FloorDiagram& g, std::span<const int> nu_legs);

}  // namespace refloor

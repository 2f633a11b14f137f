#include "refloor/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "refloor/errors.hpp"

namespace refloor {

int divergence_of(VertexKind kind) { return kind == VertexKind::Div2 ? 2 : 4; }

std::string to_string(VertexKind kind) { return kind == VertexKind::Div2 ? "Div2" : "Div4"; }

VertexKind parse_vertex_kind(const std::string& text) {
  if (text == "Div2") return VertexKind::Div2;
  if (text == "Div4") return VertexKind::Div4;
  throw FormatError("unknown vertex kind: " + text);
}

int FloorDiagram::leg_weight_sum() const {
  int total = 0;
  for (const Leg& l : legs) total += l.weight;
  return total;
}

int FloorDiagram::degree() const { return leg_weight_sum() / 2; }

int FloorDiagram::count(VertexKind kind) const {
  return static_cast<int>(std::count_if(vertices.begin(), vertices.end(),
                                        [kind](const Vertex& v) { return v.kind == kind; }));
}

std::size_t FloorDiagram::index_of(int id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id == id) return i;
  }
  throw StructuralError("unknown vertex id " + std::to_string(id));
}

std::vector<int> FloorDiagram::leg_weights() const {
  std::vector<int> w;
  w.reserve(legs.size());
  for (const Leg& l : legs) w.push_back(l.weight);
  std::sort(w.begin(), w.end());
  return w;
}

bool ValidationResult::has(const std::string& rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

namespace {

// Diagram with ids resolved to positions.
struct Indexed {
  int n = 0;
  std::vector<std::pair<int, int>> edge_ends;  // (src, dst) positions
  std::vector<int> leg_vertex;
};

Indexed index_diagram(const FloorDiagram& g) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (!pos.emplace(g.vertices[i].id, static_cast<int>(i)).second) {
      throw StructuralError("duplicate vertex id " + std::to_string(g.vertices[i].id));
    }
  }
  auto lookup = [&](int id, const char* what) {
    auto it = pos.find(id);
    if (it == pos.end()) {
      throw StructuralError(std::string(what) + " refers to unknown vertex id " + std::to_string(id));
    }
    return it->second;
  };
  Indexed ix;
  ix.n = static_cast<int>(g.vertices.size());
  for (const Edge& e : g.edges) ix.edge_ends.emplace_back(lookup(e.src, "edge"), lookup(e.dst, "edge"));
  for (const Leg& l : g.legs) ix.leg_vertex.push_back(lookup(l.vertex, "leg"));
  return ix;
}

struct Neighbor {
  int vertex;
  int edge;
  bool outgoing;  // edge points away from the owning vertex
  int weight;
};

struct TreeView {
  Indexed ix;
  std::vector<VertexKind> kinds;
  std::vector<std::vector<Neighbor>> adj;
  std::vector<std::vector<int>> legs_at;  // sorted leg weights per vertex
  std::vector<std::vector<int>> leg_ids_at;  // leg positions per vertex
};

TreeView make_view(const FloorDiagram& g) {
  TreeView t;
  t.ix = index_diagram(g);
  t.kinds.reserve(g.vertices.size());
  for (const Vertex& v : g.vertices) t.kinds.push_back(v.kind);
  t.adj.resize(t.ix.n);
  t.legs_at.resize(t.ix.n);
  t.leg_ids_at.resize(t.ix.n);
  for (std::size_t j = 0; j < g.edges.size(); ++j) {
    auto [s, d] = t.ix.edge_ends[j];
    int w = g.edges[j].weight;
    t.adj[s].push_back({d, static_cast<int>(j), true, w});
    t.adj[d].push_back({s, static_cast<int>(j), false, w});
  }
  for (std::size_t l = 0; l < g.legs.size(); ++l) {
    int v = t.ix.leg_vertex[l];
    t.legs_at[v].push_back(g.legs[l].weight);
    t.leg_ids_at[v].push_back(static_cast<int>(l));
  }
  for (auto& w : t.legs_at) std::sort(w.begin(), w.end());
  return t;
}

bool is_connected(const TreeView& t) {
  if (t.ix.n == 0) return true;
  std::vector<bool> seen(t.ix.n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : t.adj[v]) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = true;
        ++count;
        stack.push_back(nb.vertex);
      }
    }
  }
  return count == t.ix.n;
}

bool is_tree(const TreeView& t) {
  return t.ix.n > 0 && t.ix.edge_ends.size() + 1 == static_cast<std::size_t>(t.ix.n) &&
         is_connected(t);
}

void require_tree(const TreeView& t) {
  if (!is_tree(t)) throw DomainError("diagram is not a tree");
}

void put16(std::string& out, int value) {
  out.push_back(static_cast<char>((value >> 8) & 0xff));
  out.push_back(static_cast<char>(value & 0xff));
}

// Self-delimiting encoding of the subtree hanging at v (away from parent).
std::string encode(const TreeView& t, int v, int parent) {
  std::string out;
  out.push_back(t.kinds[v] == VertexKind::Div2 ? '\x02' : '\x04');
  put16(out, static_cast<int>(t.legs_at[v].size()));
  for (int w : t.legs_at[v]) put16(out, w);
  std::vector<std::string> children;
  for (const Neighbor& nb : t.adj[v]) {
    if (nb.vertex == parent) continue;
    std::string c;
    c.push_back(nb.outgoing ? '\x00' : '\x01');
    put16(c, nb.weight);
    c += encode(t, nb.vertex, v);
    children.push_back(std::move(c));
  }
  std::sort(children.begin(), children.end());
  put16(out, static_cast<int>(children.size()));
  for (const auto& c : children) out += c;
  return out;
}

int best_root(const TreeView& t, std::string* key) {
  int best = 0;
  std::string best_code;
  for (int r = 0; r < t.ix.n; ++r) {
    std::string code = encode(t, r, -1);
    if (r == 0 || code < best_code) {
      best_code = std::move(code);
      best = r;
    }
  }
  if (key) *key = std::move(best_code);
  return best;
}

}  // namespace

ValidationResult validate(const FloorDiagram& g) {
  TreeView t = make_view(g);
  ValidationResult result;
  auto fail = [&](std::string rule, std::string detail) {
    result.violations.push_back({std::move(rule), std::move(detail)});
  };
  if (g.vertices.empty()) {
    fail("empty", "diagram has no vertices");
    return result;
  }
  for (const Edge& e : g.edges) {
    if (e.weight <= 0) {
      fail("nonpositive_weight", "edge " + std::to_string(e.src) + "->" + std::to_string(e.dst));
    }
  }
  for (const Leg& l : g.legs) {
    if (l.weight <= 0) fail("nonpositive_weight", "leg at vertex " + std::to_string(l.vertex));
  }
  if (!is_connected(t)) fail("not_connected", "underlying graph is disconnected");
  if (t.ix.edge_ends.size() + 1 != g.vertices.size()) {
    fail("not_a_tree", "first Betti number is not zero");
  }

  // Kahn's algorithm on the oriented edges.
  {
    std::vector<int> indeg(t.ix.n, 0);
    for (auto [s, d] : t.ix.edge_ends) ++indeg[d];
    std::vector<int> queue;
    for (int v = 0; v < t.ix.n; ++v) {
      if (indeg[v] == 0) queue.push_back(v);
    }
    std::size_t removed = 0;
    std::vector<std::vector<int>> out(t.ix.n);
    for (auto [s, d] : t.ix.edge_ends) out[s].push_back(d);
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      ++removed;
      for (int d : out[v]) {
        if (--indeg[d] == 0) queue.push_back(d);
      }
    }
    if (removed != g.vertices.size()) fail("oriented_cycle", "orientation contains a cycle");
  }

  int leg_sum = g.leg_weight_sum();
  if (leg_sum % 2 != 0) fail("leg_sum_odd", "leg weights sum to " + std::to_string(leg_sum));

  for (int v = 0; v < t.ix.n; ++v) {
    int div = 0;
    bool outgoing = false;
    bool div2_neighbor = false;
    for (const Neighbor& nb : t.adj[v]) {
      div += nb.outgoing ? -nb.weight : nb.weight;
      outgoing = outgoing || nb.outgoing;
      if (t.kinds[nb.vertex] == VertexKind::Div2) div2_neighbor = true;
    }
    for (int w : t.legs_at[v]) div += w;
    int id = g.vertices[v].id;
    if (div != divergence_of(t.kinds[v])) {
      fail("divergence", "vertex " + std::to_string(id) + " has divergence " + std::to_string(div) +
                             ", kind requires " + std::to_string(divergence_of(t.kinds[v])));
    }
    if (t.kinds[v] == VertexKind::Div2) {
      if (outgoing) fail("div2_outgoing_edge", "Div2 vertex " + std::to_string(id) + " has an outgoing edge");
      if (div2_neighbor) fail("div2_div2_edge", "Div2 vertex " + std::to_string(id) + " is joined to a Div2 vertex");
    }
  }

  if (leg_sum % 2 == 0) {
    int floors = g.count(VertexKind::Div2) + 2 * g.count(VertexKind::Div4);
    if (floors != leg_sum / 2) {
      fail("floor_count", "|V2| + 2|V4| = " + std::to_string(floors) + " but degree is " +
                              std::to_string(leg_sum / 2));
    }
  }
  return result;
}

int divergence(const FloorDiagram& g, int vertex_id) {
  std::size_t v = g.index_of(vertex_id);
  (void)v;
  int div = 0;
  for (const Edge& e : g.edges) {
    if (e.dst == vertex_id) div += e.weight;
    if (e.src == vertex_id) div -= e.weight;
  }
  for (const Leg& l : g.legs) {
    if (l.vertex == vertex_id) div += l.weight;
  }
  return div;
}

std::string canonical_key(const FloorDiagram& g) {
  TreeView t = make_view(g);
  require_tree(t);
  std::string key;
  best_root(t, &key);
  return key;
}

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

FloorDiagram canonical_form(const FloorDiagram& g) {
  TreeView t = make_view(g);
  require_tree(t);
  int root = best_root(t, nullptr);

  FloorDiagram out;
  std::function<int(int, int)> visit = [&](int v, int parent) -> int {
    int id = static_cast<int>(out.vertices.size());
    out.vertices.push_back({id, t.kinds[v]});
    for (int w : t.legs_at[v]) out.legs.push_back({id, w});
    std::vector<std::pair<std::string, const Neighbor*>> children;
    for (const Neighbor& nb : t.adj[v]) {
      if (nb.vertex == parent) continue;
      std::string c;
      c.push_back(nb.outgoing ? '\x00' : '\x01');
      put16(c, nb.weight);
      c += encode(t, nb.vertex, v);
      children.emplace_back(std::move(c), &nb);
    }
    std::sort(children.begin(), children.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [code, nb] : children) {
      int child = visit(nb->vertex, v);
      if (nb->outgoing) {
        out.edges.push_back({id, child, nb->weight});
      } else {
        out.edges.push_back({child, id, nb->weight});
      }
    }
    return id;
  };
  visit(root, -1);
  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.dst, a.weight) < std::tie(b.src, b.dst, b.weight);
  });
  std::sort(out.legs.begin(), out.legs.end(), [](const Leg& a, const Leg& b) {
    return std::tie(a.vertex, a.weight) < std::tie(b.vertex, b.weight);
  });
  return out;
}

namespace {

// Legs at vertex v with weight w, in index order.
std::vector<int> legs_with(const FloorDiagram& g, const TreeView& t, int v, int w) {
  std::vector<int> out;
  for (int l : t.leg_ids_at[v]) {
    if (g.legs[l].weight == w) out.push_back(l);
  }
  return out;
}

}  // namespace

std::vector<Automorphism> vertex_automorphisms(const FloorDiagram& g) {
  TreeView t = make_view(g);
  require_tree(t);
  const int n = t.ix.n;

  // Vertices in the same orbit have the same whole-tree encoding.
  std::vector<std::string> invariant(n);
  for (int v = 0; v < n; ++v) invariant[v] = encode(t, v, -1);

  // Assignment order: BFS from vertex 0 so each vertex after the first has
  // an already-placed neighbor.
  std::vector<int> order{0};
  std::vector<bool> queued(n, false);
  queued[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Neighbor& nb : t.adj[order[i]]) {
      if (!queued[nb.vertex]) {
        queued[nb.vertex] = true;
        order.push_back(nb.vertex);
      }
    }
  }

  auto edge_between = [&](int a, int b) -> const Neighbor* {
    for (const Neighbor& nb : t.adj[a]) {
      if (nb.vertex == b) return &nb;
    }
    return nullptr;
  };

  std::vector<Automorphism> result;
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> search = [&](std::size_t depth) {
    if (depth == order.size()) {
      Automorphism a;
      a.vertex_map = image;
      a.edge_map.resize(g.edges.size());
      for (std::size_t j = 0; j < g.edges.size(); ++j) {
        auto [s, d] = t.ix.edge_ends[j];
        a.edge_map[j] = edge_between(image[s], image[d])->edge;
      }
      a.leg_map.resize(g.legs.size());
      for (int v = 0; v < n; ++v) {
        std::set<int> weights(t.legs_at[v].begin(), t.legs_at[v].end());
        for (int w : weights) {
          auto from = legs_with(g, t, v, w);
          auto to = legs_with(g, t, image[v], w);
          for (std::size_t k = 0; k < from.size(); ++k) a.leg_map[from[k]] = to[k];
        }
      }
      result.push_back(std::move(a));
      return;
    }
    int v = order[depth];
    for (int c = 0; c < n; ++c) {
      if (used[c] || invariant[c] != invariant[v]) continue;
      bool fits = true;
      for (const Neighbor& nb : t.adj[v]) {
        if (image[nb.vertex] < 0) continue;
        const Neighbor* m = edge_between(c, image[nb.vertex]);
        if (!m || m->outgoing != nb.outgoing || m->weight != nb.weight) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      image[v] = c;
      used[c] = true;
      search(depth + 1);
      image[v] = -1;
      used[c] = false;
    }
  };
  search(0);
  return result;
}

std::uint64_t automorphism_group_order(const FloorDiagram& g) {
  std::uint64_t order = vertex_automorphisms(g).size();
  TreeView t = make_view(g);
  for (int v = 0; v < t.ix.n; ++v) {
    std::map<int, int> counts;
    for (int w : t.legs_at[v]) ++counts[w];
    for (auto [w, c] : counts) {
      for (int k = 2; k <= c; ++k) order *= static_cast<std::uint64_t>(k);
    }
  }
  return order;
}

std::vector<Automorphism> automorphisms(const FloorDiagram& g, std::size_t limit) {
  if (automorphism_group_order(g) > limit) {
    throw DomainError("automorphism group exceeds the enumeration limit");
  }
  TreeView t = make_view(g);
  std::vector<std::vector<int>> slots;  // legs grouped by (vertex, weight)
  for (int v = 0; v < t.ix.n; ++v) {
    std::set<int> weights(t.legs_at[v].begin(), t.legs_at[v].end());
    for (int w : weights) slots.push_back(legs_with(g, t, v, w));
  }
  std::vector<Automorphism> result;
  for (const Automorphism& base : vertex_automorphisms(g)) {
    std::vector<std::vector<int>> perms;
    for (const auto& s : slots) {
      std::vector<int> p(s.size());
      std::iota(p.begin(), p.end(), 0);
      perms.push_back(std::move(p));
    }
    // Odometer over the per-slot permutations.
    while (true) {
      Automorphism a = base;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        for (std::size_t k = 0; k < slots[i].size(); ++k) {
          a.leg_map[slots[i][k]] = base.leg_map[slots[i][perms[i][k]]];
        }
      }
      result.push_back(std::move(a));
      std::size_t i = 0;
      for (; i < perms.size(); ++i) {
        if (std::next_permutation(perms[i].begin(), perms[i].end())) break;
      }
      if (i == perms.size()) break;
    }
  }
  return result;
}

MarkingPoset::MarkingPoset(std::vector<PosetElement> elements, std::vector<std::vector<bool>> less)
    : elements_(std::move(elements)), less_(std::move(less)) {}

std::size_t MarkingPoset::position(const PosetElement& e) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == e) return i;
  }
  throw DomainError("element not in poset");
}

MarkingPoset marking_poset(const FloorDiagram& g, std::span<const int> nu_legs) {
  Indexed ix = index_diagram(g);
  const int nv = ix.n;
  const int ne = static_cast<int>(g.edges.size());
  const int nl = static_cast<int>(g.legs.size());
  // Node numbering: vertices, then edges, then legs. Arcs point upward.
  std::vector<std::vector<int>> up(nv + ne + nl);
  for (int j = 0; j < ne; ++j) {
    auto [s, d] = ix.edge_ends[j];
    up[s].push_back(nv + j);
    up[nv + j].push_back(d);
  }
  for (int l = 0; l < nl; ++l) up[nv + ne + l].push_back(ix.leg_vertex[l]);

  std::vector<int> nodes;
  std::vector<PosetElement> elements;
  for (int v = 0; v < nv; ++v) {
    if (g.vertices[v].kind == VertexKind::Div4) {
      nodes.push_back(v);
      elements.push_back({PosetElement::Kind::Vertex, v});
    }
  }
  for (int j = 0; j < ne; ++j) {
    nodes.push_back(nv + j);
    elements.push_back({PosetElement::Kind::Edge, j});
  }
  std::set<int> seen_legs;
  for (int l : nu_legs) {
    if (l < 0 || l >= nl) throw StructuralError("leg position " + std::to_string(l) + " out of range");
    if (!seen_legs.insert(l).second) throw StructuralError("leg position repeated in nu set");
    nodes.push_back(nv + ne + l);
    elements.push_back({PosetElement::Kind::Leg, l});
  }

  const std::size_t total = up.size();
  std::vector<std::vector<bool>> reach(total, std::vector<bool>(total, false));
  for (std::size_t s = 0; s < total; ++s) {
    std::vector<int> stack(up[s].begin(), up[s].end());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (reach[s][x]) continue;
      reach[s][x] = true;
      for (int y : up[x]) stack.push_back(y);
    }
  }
  std::vector<std::vector<bool>> less(nodes.size(), std::vector<bool>(nodes.size(), false));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) less[i][j] = i != j && reach[nodes[i]][nodes[j]];
  }
  return MarkingPoset(std::move(elements), std::move(less));
}

}  // namespace refloor

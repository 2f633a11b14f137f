#pragma once

// Brute-force reference implementations used only by the tests. They share
// the plain data types with the library but none of its algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "refloor/diagram.hpp"
#include "refloor/enumerate.hpp"

namespace oracle {

using refloor::FloorDiagram;
using refloor::VertexKind;

struct Symmetry {
  std::vector<int> vertex;  // position -> position
  std::vector<int> edge;
  std::vector<int> leg;
};

inline int position(const FloorDiagram& g, int id) {
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (g.vertices[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

// Vertex permutations preserving kinds, weighted oriented edges and the leg
// weights at each vertex, with the induced edge maps. `leg` is left empty.
inline std::vector<Symmetry> all_vertex_symmetries(const FloorDiagram& g) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> leg_weights(n);
  for (const auto& l : g.legs) leg_weights[position(g, l.vertex)].push_back(l.weight);
  for (auto& w : leg_weights) std::sort(w.begin(), w.end());
  std::vector<Symmetry> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = g.vertices[i].kind == g.vertices[perm[i]].kind;
    if (!ok) continue;
    std::vector<int> edge_map;
    for (const auto& e : g.edges) {
      int s = perm[position(g, e.src)];
      int d = perm[position(g, e.dst)];
      int found = -1;
      for (std::size_t j = 0; j < g.edges.size(); ++j) {
        const auto& f = g.edges[j];
        if (position(g, f.src) == s && position(g, f.dst) == d && f.weight == e.weight) found = static_cast<int>(j);
      }
      if (found < 0) {
        ok = false;
        break;
      }
      edge_map.push_back(found);
    }
    if (!ok) continue;
    for (int i = 0; i < n && ok; ++i) ok = leg_weights[i] == leg_weights[perm[i]];
    if (ok) out.push_back({perm, edge_map, {}});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Every symmetry: each vertex symmetry combined with every bijection of legs
// preserving attachment and weight.
inline std::vector<Symmetry> all_symmetries(const FloorDiagram& g) {
  const int nl = static_cast<int>(g.legs.size());
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int l = 0; l < nl; ++l) groups[{position(g, g.legs[l].vertex), g.legs[l].weight}].push_back(l);
  std::vector<Symmetry> out;
  for (const auto& vs : all_vertex_symmetries(g)) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;  // source legs, target legs
    for (const auto& [key, legs] : groups) pairs.emplace_back(legs, groups.at({vs.vertex[key.first], key.second}));
    std::vector<int> leg_map(nl, -1);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == pairs.size()) {
        out.push_back({vs.vertex, vs.edge, leg_map});
        return;
      }
      std::vector<int> targets = pairs[k].second;
      do {
        for (std::size_t i = 0; i < targets.size(); ++i) leg_map[pairs[k].first[i]] = targets[i];
        rec(k + 1);
      } while (std::next_permutation(targets.begin(), targets.end()));
    };
    rec(0);
  }
  return out;
}

// Leg role tokens: (0, w) mu part, (1, w) nu part, (2, j) member of A_j.
using Token = std::pair<int, int>;

// Counts marking isomorphism classes straight from the definition. Labeled
// markings are generated exhaustively (token placements, then every linear
// extension) and identified by a canonical code: the least image under the
// vertex symmetries, with the legs of each (vertex, weight) group compared as
// a multiset, which accounts for every leg bijection at once.
inline std::uint64_t count_markings(const FloorDiagram& g, const refloor::CurveClass& beta,
                                    const refloor::Tangency& t) {
  const int n = static_cast<int>(g.vertices.size());
  const int ne = static_cast<int>(g.edges.size());
  const int nl = static_cast<int>(g.legs.size());

  std::vector<Token> tokens;
  for (int p : t.mu) tokens.push_back({0, p});
  for (int p : t.nu) tokens.push_back({1, p});
  for (std::size_t j = 0; j < beta.a.size(); ++j) {
    for (int k = 0; k < beta.a[j]; ++k) tokens.push_back({2, static_cast<int>(j)});
  }
  if (static_cast<int>(tokens.size()) != nl) return 0;
  std::sort(tokens.begin(), tokens.end());

  // Node numbering for the order: vertices, edges, legs.
  const int total = n + ne + nl;
  std::vector<std::vector<bool>> below(total, std::vector<bool>(total, false));
  for (int j = 0; j < ne; ++j) {
    below[position(g, g.edges[j].src)][n + j] = true;
    below[n + j][position(g, g.edges[j].dst)] = true;
  }
  for (int l = 0; l < nl; ++l) below[n + ne + l][position(g, g.legs[l].vertex)] = true;
  for (int k = 0; k < total; ++k) {
    for (int i = 0; i < total; ++i) {
      for (int j = 0; j < total; ++j) {
        if (below[i][k] && below[k][j]) below[i][j] = true;
      }
    }
  }

  // Symmetries restricted to vertices and edges; legs are handled by groups.
  std::vector<Symmetry> symmetries;
  for (const auto& s : all_vertex_symmetries(g)) symmetries.push_back(s);

  auto group_of = [&](int l) { return std::pair{position(g, g.legs[l].vertex), g.legs[l].weight}; };
  // Within a group, legs are interchangeable, so token placements that are
  // not sorted inside each group repeat an earlier placement up to symmetry.
  auto group_sorted = [&](const std::vector<Token>& assign) {
    for (int a = 0; a < nl; ++a) {
      for (int b = a + 1; b < nl; ++b) {
        if (group_of(a) == group_of(b) && assign[b] < assign[a]) return false;
      }
    }
    return true;
  };

  using Code = std::vector<int>;
  auto canonical = [&](const std::vector<Token>& assign, const std::vector<int>& label) {
    Code best;
    for (const auto& s : symmetries) {
      Code code;
      std::vector<int> vl(n), el(ne);
      for (int v = 0; v < n; ++v) vl[s.vertex[v]] = label[v];
      for (int j = 0; j < ne; ++j) el[s.edge[j]] = label[n + j];
      code.insert(code.end(), vl.begin(), vl.end());
      code.insert(code.end(), el.begin(), el.end());
      std::vector<std::tuple<int, int, int, int, int>> legs;
      for (int l = 0; l < nl; ++l) {
        auto [v, w] = group_of(l);
        legs.emplace_back(s.vertex[v], w, assign[l].first, assign[l].second, label[n + ne + l]);
      }
      std::sort(legs.begin(), legs.end());
      for (const auto& [v, w, k, x, lab] : legs) code.insert(code.end(), {v, w, k, x, lab});
      if (best.empty() || code < best) best = std::move(code);
    }
    return best;
  };

  std::set<Code> classes;
  std::vector<Token> assign = tokens;
  do {
    if (!group_sorted(assign)) continue;
    bool ok = true;
    std::map<int, std::set<int>> a_vertices;
    for (int l = 0; l < nl && ok; ++l) {
      auto [kind, value] = assign[l];
      if (kind == 2) {
        ok = g.legs[l].weight == 1 && a_vertices[value].insert(g.legs[l].vertex).second;
      } else {
        ok = g.legs[l].weight == value;
      }
    }
    if (!ok) continue;
    std::vector<int> elements;
    for (int v = 0; v < n; ++v) {
      if (g.vertices[v].kind == VertexKind::Div4) elements.push_back(v);
    }
    for (int j = 0; j < ne; ++j) elements.push_back(n + j);
    for (int l = 0; l < nl; ++l) {
      if (assign[l].first == 1) elements.push_back(n + ne + l);
    }
    // Every linear extension: label the next point with any element whose
    // predecessors among `elements` are all labeled.
    std::vector<int> label(total, 0);
    std::function<void(int)> extend = [&](int next) {
      if (next > static_cast<int>(elements.size())) {
        classes.insert(canonical(assign, label));
        return;
      }
      for (int x : elements) {
        if (label[x]) continue;
        bool ready = true;
        for (int y : elements) {
          if (!label[y] && y != x && below[y][x]) {
            ready = false;
            break;
          }
        }
        if (!ready) continue;
        label[x] = next;
        extend(next + 1);
        label[x] = 0;
      }
    };
    extend(1);
  } while (std::next_permutation(assign.begin(), assign.end()));
  return classes.size();
}

// Brute-force diagram enumeration for small degree: every labeled tree on
// up to d vertices, every kind, orientation and weight of each edge, every
// leg multiset; kept when the definition holds, deduplicated by checking all
// vertex relabelings.
inline std::vector<FloorDiagram> all_diagrams(int d) {
  using Code = std::tuple<std::vector<int>, std::vector<std::tuple<int, int, int>>, std::vector<std::pair<int, int>>>;
  std::set<Code> seen;
  std::vector<FloorDiagram> out;

  auto partitions = [](int total) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
      if (rest == 0) {
        parts.push_back(cur);
        return;
      }
      for (int p = std::min(rest, max_part); p >= 1; --p) {
        cur.push_back(p);
        rec(rest - p, p);
        cur.pop_back();
      }
    };
    rec(total, total);
    return parts;
  };

  for (int n = 1; n <= d; ++n) {
    // Labeled trees via parent arrays: vertex i > 0 attaches to some vertex
    // j < i after an arbitrary relabeling; relabelings are covered by the
    // isomorphism dedup, and every tree has such a labeling (BFS order).
    std::vector<int> parent(n, -1);
    std::function<void(int)> trees = [&](int i) {
      if (i == n) {
        const int ne = n - 1;
        std::vector<int> kind(n);
        for (int mask = 0; mask < (1 << n); ++mask) {
          int v2 = 0;
          for (int v = 0; v < n; ++v) {
            kind[v] = (mask >> v) & 1;  // 1 = Div2
            v2 += kind[v];
          }
          if (v2 + 2 * (n - v2) != d) continue;
          std::vector<std::tuple<int, int, int>> edges(ne);
          std::function<void(int)> orient = [&](int e) {
            if (e == ne) {
              // Leg sums forced by divergence at each vertex.
              std::vector<int> need(n);
              for (int v = 0; v < n; ++v) need[v] = kind[v] ? 2 : 4;
              for (auto [s, t, w] : edges) {
                need[t] -= w;
                need[s] += w;
              }
              int sum = 0;
              for (int v = 0; v < n; ++v) {
                if (need[v] < 0) return;
                sum += need[v];
              }
              if (sum != 2 * d) return;
              for (auto [s, t, w] : edges) {
                (void)t;
                (void)w;
                if (kind[s]) return;  // Div2 vertices are sinks
              }
              std::vector<std::vector<std::vector<int>>> choices(n);
              for (int v = 0; v < n; ++v) choices[v] = partitions(need[v]);
              std::vector<std::size_t> pick(n, 0);
              while (true) {
                std::vector<int> vperm(n);
                std::iota(vperm.begin(), vperm.end(), 0);
                Code best;
                bool first = true;
                do {
                  std::vector<int> kinds(n);
                  for (int v = 0; v < n; ++v) kinds[vperm[v]] = kind[v];
                  std::vector<std::tuple<int, int, int>> es;
                  for (auto [s, t, w] : edges) es.emplace_back(vperm[s], vperm[t], w);
                  std::sort(es.begin(), es.end());
                  std::vector<std::pair<int, int>> ls;
                  for (int v = 0; v < n; ++v) {
                    for (int w : choices[v][pick[v]]) ls.emplace_back(vperm[v], w);
                  }
                  std::sort(ls.begin(), ls.end());
                  Code c{kinds, es, ls};
                  if (first || c < best) best = c;
                  first = false;
                } while (std::next_permutation(vperm.begin(), vperm.end()));
                if (seen.insert(best).second) {
                  FloorDiagram g;
                  const auto& [kinds, es, ls] = best;
                  for (int v = 0; v < n; ++v) g.vertices.push_back({v, kinds[v] ? VertexKind::Div2 : VertexKind::Div4});
                  for (auto [s, t, w] : es) g.edges.push_back({s, t, w});
                  for (auto [v, w] : ls) g.legs.push_back({v, w});
                  out.push_back(g);
                }
                int v = 0;
                while (v < n && ++pick[v] == choices[v].size()) pick[v++] = 0;
                if (v == n) break;
              }
              return;
            }
            int child = e + 1;
            for (int w = 1; w <= 2 * d; ++w) {
              edges[e] = {parent[child], child, w};
              orient(e + 1);
              edges[e] = {child, parent[child], w};
              orient(e + 1);
            }
          };
          orient(0);
        }
        return;
      }
      for (int j = 0; j < i; ++j) {
        parent[i] = j;
        trees(i + 1);
      }
    };
    trees(1);
  }
  return out;
}

// Nonincreasing partitions of `total` into positive parts, at most
// `max_parts` of them.
inline void partitions(int total, int max_part, int max_parts, std::vector<int>& prefix,
                       std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(prefix);
    return;
  }
  if (max_parts == 0) return;
  for (int p = std::min(total, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partitions(total - p, p, max_parts - 1, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions(int total, int max_parts = 1 << 20) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  partitions(total, total, max_parts, prefix, out);
  return out;
}

struct Input {
  refloor::CurveClass beta;
  refloor::Tangency t;
};

// Every class of degree d with at most six nonzero multiplicities (listed in
// nonincreasing order) together with every type (mu, nu) that fills the
// tangency budget 2d - sum a.
inline std::vector<Input> all_inputs(int d) {
  std::vector<Input> out;
  for (int used = 0; used <= 2 * d; ++used) {
    for (const auto& a : partitions(used, 6)) {
      const int rest = 2 * d - used;
      for (int m = 0; m <= rest; ++m) {
        for (const auto& mu : partitions(m)) {
          for (const auto& nu : partitions(rest - m)) out.push_back({{d, a}, {mu, nu}});
        }
      }
    }
  }
  return out;
}

}  // namespace oracle

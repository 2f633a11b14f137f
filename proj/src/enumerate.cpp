#include "refloor/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "refloor/errors.hpp"
#include "refloor/serialize.hpp"

namespace refloor {

int CurveClass::sum_a() const { return std::accumulate(a.begin(), a.end(), 0); }
int CurveClass::conic_intersection() const { return 2 * d - sum_a(); }
int CurveClass::point_count() const { return 3 * d - sum_a() - 1; }

std::string CurveClass::to_string() const {
  std::ostringstream out;
  out << d << "H";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    out << (a[i] > 0 ? " - " : " + ");
    int m = std::abs(a[i]);
    if (m != 1) out << m;
    out << "E" << (i + 1);
  }
  return out.str();
}

int Tangency::total() const {
  return std::accumulate(mu.begin(), mu.end(), 0) + std::accumulate(nu.begin(), nu.end(), 0);
}

int Tangency::marking_size(const CurveClass& beta) const {
  return beta.d - 1 + static_cast<int>(nu.size());
}

std::optional<std::filesystem::path> resolve_cache_dir(
    const std::optional<std::filesystem::path>& flag_value) {
  if (const char* env = std::getenv("REFLOOR_CACHE"); env && *env) return std::filesystem::path(env);
  return flag_value;
}

void check_class_and_tangency(const CurveClass& beta, const Tangency& t) {
  if (beta.d < 1) throw DomainError("class degree must be >= 1 (exceptional classes are not handled)");
  for (int ai : beta.a) {
    if (ai < 0) throw DomainError("negative a_i in class " + beta.to_string());
  }
  if (beta.conic_intersection() < 0) {
    throw DomainError("negative tangency budget 2d - sum(a) for class " + beta.to_string());
  }
  for (int p : t.mu) {
    if (p <= 0) throw DomainError("mu parts must be positive");
  }
  for (int p : t.nu) {
    if (p <= 0) throw DomainError("nu parts must be positive");
  }
  if (t.total() != beta.conic_intersection()) {
    throw DomainError("tangency/class mismatch: sum(mu) + sum(nu) = " + std::to_string(t.total()) +
                      " but 2d - sum(a) = " + std::to_string(beta.conic_intersection()));
  }
}

std::vector<int> required_leg_weights(const CurveClass& beta, const Tangency& t) {
  std::vector<int> w(t.mu.begin(), t.mu.end());
  w.insert(w.end(), t.nu.begin(), t.nu.end());
  w.insert(w.end(), static_cast<std::size_t>(beta.sum_a()), 1);
  std::sort(w.begin(), w.end());
  return w;
}

namespace {

// ---------------------------------------------------------------------------
// Unlabeled free trees.

using TreeEdges = std::vector<std::pair<int, int>>;

std::string plain_code(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int u : adj[v]) {
    if (u != parent) kids.push_back(plain_code(adj, u, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

std::vector<TreeEdges> free_trees(int n) {
  std::vector<TreeEdges> current{TreeEdges{}};
  for (int size = 1; size < n; ++size) {
    std::map<std::string, TreeEdges> next;
    for (const TreeEdges& tree : current) {
      for (int v = 0; v < size; ++v) {
        TreeEdges grown = tree;
        grown.emplace_back(v, size);
        std::vector<std::vector<int>> adj(size + 1);
        for (auto [a, b] : grown) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
        std::string best;
        for (int r = 0; r <= size; ++r) {
          std::string c = plain_code(adj, r, -1);
          if (r == 0 || c < best) best = std::move(c);
        }
        next.emplace(std::move(best), std::move(grown));
      }
    }
    current.clear();
    for (auto& [code, tree] : next) current.push_back(std::move(tree));
  }
  return current;
}

// ---------------------------------------------------------------------------
// Diagram generation on a fixed tree shape.
//
// Once kinds and the total leg weight at each vertex are fixed, divergence
// conservation determines every edge: the flow across an edge equals the
// excess (leg weight minus divergence) of the subtree on one side. Its sign
// gives the orientation and a zero flow rules the configuration out.

using LegFilter = std::optional<std::map<int, int>>;  // weight -> count

class ShapeGenerator {
 public:
  ShapeGenerator(int d, const TreeEdges& tree, int n, const LegFilter& filter,
                 std::map<std::string, FloorDiagram>& out)
      : d_(d), n_(n), filter_(filter), out_(out), adj_(n), kinds_(n), sums_(n) {
    for (auto [a, b] : tree) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    // Parent pointers and a post-order from root 0.
    parent_.assign(n, -1);
    std::vector<int> stack{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order_.push_back(v);
      for (int u : adj_[v]) {
        if (!seen[u]) {
          seen[u] = true;
          parent_[u] = v;
          stack.push_back(u);
        }
      }
    }
    std::reverse(order_.begin(), order_.end());
  }

  void run(int v2) {
    std::vector<int> pick(n_, 0);
    std::fill(pick.begin(), pick.begin() + v2, 1);
    std::sort(pick.begin(), pick.end());
    do {
      bool ok = true;
      for (int v = 0; v < n_ && ok; ++v) {
        kinds_[v] = pick[v] ? VertexKind::Div2 : VertexKind::Div4;
      }
      for (int v = 0; v < n_ && ok; ++v) {
        if (kinds_[v] != VertexKind::Div2) continue;
        if (adj_[v].size() > 2) ok = false;
        for (int u : adj_[v]) {
          if (pick[u]) ok = false;
        }
      }
      if (ok) assign_sums(0, 2 * d_);
    } while (std::next_permutation(pick.begin(), pick.end()));
  }

 private:
  void assign_sums(int v, int remaining) {
    if (v == n_ - 1) {
      if (kinds_[v] == VertexKind::Div2 && remaining > 2 - static_cast<int>(adj_[v].size())) return;
      sums_[v] = remaining;
      check_flows();
      return;
    }
    int hi = remaining;
    if (kinds_[v] == VertexKind::Div2) hi = std::min(hi, 2 - static_cast<int>(adj_[v].size()));
    for (int s = 0; s <= hi; ++s) {
      sums_[v] = s;
      assign_sums(v + 1, remaining - s);
    }
  }

  void check_flows() {
    std::vector<int> excess(n_, 0);
    edges_.clear();
    for (int v : order_) {
      excess[v] += sums_[v] - divergence_of(kinds_[v]);
      int p = parent_[v];
      if (p < 0) continue;
      int flow = excess[v];
      if (flow == 0) return;
      if (flow > 0) {
        if (kinds_[v] == VertexKind::Div2) return;
        edges_.push_back({v, p, flow});
      } else {
        if (kinds_[p] == VertexKind::Div2) return;
        edges_.push_back({p, v, -flow});
      }
      excess[p] += excess[v];
    }
    legs_.clear();
    remaining_filter_ = filter_;
    place_legs(0);
  }

  void place_legs(int v) {
    if (v == n_) {
      emit();
      return;
    }
    std::vector<int> parts;
    partitions(v, sums_[v], sums_[v], parts);
  }

  // Non-increasing partitions of `rest` with parts <= max_part.
  void partitions(int v, int rest, int max_part, std::vector<int>& parts) {
    if (rest == 0) {
      std::size_t mark = legs_.size();
      for (int w : parts) legs_.push_back({v, w});
      place_legs(v + 1);
      legs_.resize(mark);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      if (remaining_filter_) {
        auto it = remaining_filter_->find(p);
        if (it == remaining_filter_->end() || it->second == 0) continue;
        --it->second;
        parts.push_back(p);
        partitions(v, rest - p, p, parts);
        parts.pop_back();
        ++it->second;
      } else {
        parts.push_back(p);
        partitions(v, rest - p, p, parts);
        parts.pop_back();
      }
    }
  }

  void emit() {
    FloorDiagram g;
    for (int v = 0; v < n_; ++v) g.vertices.push_back({v, kinds_[v]});
    g.edges = edges_;
    g.legs = legs_;
    std::string key = canonical_key(g);
    if (out_.count(key)) return;
    out_.emplace(std::move(key), canonical_form(g));
  }

  int d_;
  int n_;
  const LegFilter& filter_;
  std::map<std::string, FloorDiagram>& out_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> parent_;
  std::vector<int> order_;  // children before parents
  std::vector<VertexKind> kinds_;
  std::vector<int> sums_;
  std::vector<Edge> edges_;
  std::vector<Leg> legs_;
  LegFilter remaining_filter_;
};

std::vector<FloorDiagram> generate(int d, const LegFilter& filter, int threads) {
  struct Task {
    int v2;
    int n;
    TreeEdges tree;
  };
  std::vector<Task> tasks;
  std::map<int, std::vector<TreeEdges>> trees_by_size;
  for (int v4 = 0; 2 * v4 <= d; ++v4) {
    int v2 = d - 2 * v4;
    int n = v2 + v4;
    if (!trees_by_size.count(n)) trees_by_size[n] = free_trees(n);
    for (const TreeEdges& t : trees_by_size[n]) tasks.push_back({v2, n, t});
  }
  std::vector<std::map<std::string, FloorDiagram>> partial(tasks.size());
  detail::parallel_for(tasks.size(), threads, [&](std::size_t i) {
    ShapeGenerator gen(d, tasks[i].tree, tasks[i].n, filter, partial[i]);
    gen.run(tasks[i].v2);
  });
  std::map<std::string, FloorDiagram> merged;
  for (auto& m : partial) merged.merge(m);
  std::vector<FloorDiagram> out;
  out.reserve(merged.size());
  for (auto& [key, g] : merged) out.push_back(std::move(g));
  return out;
}

void check_degree(int d, const EnumerationOptions& options) {
  if (d < 1 || d > options.max_degree) {
    throw DomainError("degree " + std::to_string(d) + " outside 1.." + std::to_string(options.max_degree));
  }
}

std::filesystem::path cache_file(const std::filesystem::path& dir, int d) {
  return dir / ("degree-" + std::to_string(d) + ".json");
}

std::optional<std::vector<FloorDiagram>> load_cache(const std::filesystem::path& file, int d) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", 0) != kCacheFormatVersion || j.value("degree", 0) != d) return std::nullopt;
    std::vector<FloorDiagram> out;
    for (const auto& item : j.at("diagrams")) out.push_back(diagram_from_json(item));
    return out;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void store_cache(const std::filesystem::path& dir, int d, const std::vector<FloorDiagram>& diagrams) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  nlohmann::json j;
  j["format"] = kCacheFormatVersion;
  j["degree"] = d;
  j["diagrams"] = nlohmann::json::array();
  for (const auto& g : diagrams) j["diagrams"].push_back(to_json(g));
  // Write then rename so concurrent readers never see a partial file.
  auto target = cache_file(dir, d);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump();
  }
  std::filesystem::rename(tmp, target, ec);
}

}  // namespace

std::vector<FloorDiagram> enumerate_diagrams(int d, const EnumerationOptions& options) {
  check_degree(d, options);
  if (options.cache_dir) {
    if (auto cached = load_cache(cache_file(*options.cache_dir, d), d)) return *cached;
  }
  auto diagrams = generate(d, std::nullopt, options.threads);
  if (options.cache_dir) store_cache(*options.cache_dir, d, diagrams);
  return diagrams;
}

std::vector<FloorDiagram> enumerate_diagrams_with_legs(int d, std::vector<int> leg_weights,
                                                       const EnumerationOptions& options) {
  check_degree(d, options);
  std::map<int, int> filter;
  int total = 0;
  for (int w : leg_weights) {
    if (w <= 0) throw DomainError("leg weights must be positive");
    ++filter[w];
    total += w;
  }
  if (total != 2 * d) return {};
  return generate(d, filter, options.threads);
}

// ---------------------------------------------------------------------------
// Markings.

namespace {

// Counts isomorphism classes of markings on one diagram.
//
// Legs at the same vertex with the same weight ("slots") are swapped by
// automorphisms, so a marking is first reduced to what each slot carries:
// which A_j sets, how many mu legs, and the phi labels of its nu legs. The
// remaining symmetries act on vertices, edges and slots; orbits of those on
// reduced markings are the isomorphism classes.
class MarkingCounter {
 public:
  MarkingCounter(const FloorDiagram& g, const CurveClass& beta, const Tangency& t)
      : g_(g), beta_(beta) {
    n_ = static_cast<int>(g.vertices.size());
    for (const Edge& e : g.edges) {
      edges_.push_back({static_cast<int>(g.index_of(e.src)), static_cast<int>(g.index_of(e.dst))});
    }
    std::map<std::pair<int, int>, int> slot_caps;
    for (const Leg& l : g.legs) ++slot_caps[{static_cast<int>(g.index_of(l.vertex)), l.weight}];
    for (auto [vw, cap] : slot_caps) {
      slot_index_[vw] = static_cast<int>(slots_.size());
      slots_.push_back({vw.first, vw.second, cap});
    }
    for (int p : t.mu) ++mu_count_[p];
    for (int p : t.nu) ++nu_count_[p];

    for (const Automorphism& a : vertex_automorphisms(g)) {
      Symmetry s;
      s.vertex = a.vertex_map;
      s.edge = a.edge_map;
      s.slot.resize(slots_.size());
      for (std::size_t i = 0; i < slots_.size(); ++i) {
        s.slot[i] = slot_index_.at({a.vertex_map[slots_[i].vertex], slots_[i].weight});
      }
      group_.push_back(std::move(s));
    }
    build_order();
  }

  std::uint64_t count() {
    roles_.assign(slots_.size(), SlotRole{});
    remaining_.resize(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i) remaining_[i] = slots_[i].cap;
    assign_a(0);
    return total_;
  }

  // Valid after count().
  std::vector<ColouredCount> colourings() const {
    std::vector<ColouredCount> out;
    for (const auto& [code, n] : by_colouring_) {
      ColouredCount c;
      c.count = n;
      c.roles.assign(g_.legs.size(), LegRole::A);
      std::vector<int> mu_left(slots_.size());
      std::vector<int> nu_left(slots_.size());
      for (std::size_t s = 0; s < slots_.size(); ++s) {
        mu_left[s] = code[2 * s];
        nu_left[s] = code[2 * s + 1];
      }
      for (std::size_t l = 0; l < g_.legs.size(); ++l) {
        int s = slot_index_.at({static_cast<int>(g_.index_of(g_.legs[l].vertex)), g_.legs[l].weight});
        if (mu_left[s] > 0) {
          --mu_left[s];
          c.roles[l] = LegRole::Mu;
        } else if (nu_left[s] > 0) {
          --nu_left[s];
          c.roles[l] = LegRole::Nu;
        }
      }
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  struct Slot {
    int vertex;
    int weight;
    int cap;
  };
  struct SlotRole {
    std::vector<int> a_sets;  // j values, increasing
    int mu = 0;
    int nu = 0;
  };
  struct Symmetry {
    std::vector<int> vertex;
    std::vector<int> edge;
    std::vector<int> slot;
  };

  // Nodes: vertices [0,n), edges [n, n+E), slots [n+E, n+E+S). Computes
  // below_[x][y] = node x is strictly below node y.
  void build_order() {
    const int ne = static_cast<int>(edges_.size());
    const int ns = static_cast<int>(slots_.size());
    const int total = n_ + ne + ns;
    std::vector<std::vector<int>> up(total);
    for (int j = 0; j < ne; ++j) {
      up[edges_[j].first].push_back(n_ + j);
      up[n_ + j].push_back(edges_[j].second);
    }
    for (int s = 0; s < ns; ++s) up[n_ + ne + s].push_back(slots_[s].vertex);
    below_.assign(total, std::vector<bool>(total, false));
    for (int x = 0; x < total; ++x) {
      std::vector<int> stack(up[x].begin(), up[x].end());
      while (!stack.empty()) {
        int y = stack.back();
        stack.pop_back();
        if (below_[x][y]) continue;
        below_[x][y] = true;
        for (int z : up[y]) stack.push_back(z);
      }
    }
  }

  void assign_a(std::size_t j) {
    if (j == beta_.a.size()) {
      assign_weights();
      return;
    }
    // Vertices with a free weight-1 leg.
    std::vector<int> candidates;
    for (int v = 0; v < n_; ++v) {
      auto it = slot_index_.find({v, 1});
      if (it != slot_index_.end() && remaining_[it->second] > 0) candidates.push_back(it->second);
    }
    int need = beta_.a[j];
    std::vector<int> chosen;
    choose_a(j, candidates, 0, need, chosen);
  }

  void choose_a(std::size_t j, const std::vector<int>& candidates, std::size_t from, int need,
                std::vector<int>& chosen) {
    if (need == 0) {
      for (int s : chosen) {
        --remaining_[s];
        roles_[s].a_sets.push_back(static_cast<int>(j));
      }
      assign_a(j + 1);
      for (int s : chosen) {
        ++remaining_[s];
        roles_[s].a_sets.pop_back();
      }
      return;
    }
    for (std::size_t i = from; i + need <= candidates.size(); ++i) {
      chosen.push_back(candidates[i]);
      choose_a(j, candidates, i + 1, need - 1, chosen);
      chosen.pop_back();
    }
  }

  void assign_weights() {
    // After the A_j legs are placed, each remaining slot capacity is split
    // between nu and mu legs of its weight.
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      int w = slots_[s].weight;
      int free_total = 0;
      for (std::size_t u = 0; u < slots_.size(); ++u) {
        if (slots_[u].weight == w) free_total += remaining_[u];
      }
      int expected = (mu_count_.count(w) ? mu_count_.at(w) : 0) + (nu_count_.count(w) ? nu_count_.at(w) : 0);
      if (free_total != expected) return;
    }
    split_nu(0);
  }

  void split_nu(std::size_t s) {
    if (s == slots_.size()) {
      // Totals per weight are checked as we go; verify the last of each weight.
      std::map<int, int> nu_used;
      for (std::size_t u = 0; u < slots_.size(); ++u) nu_used[slots_[u].weight] += roles_[u].nu;
      for (auto [w, used] : nu_used) {
        int want = nu_count_.count(w) ? nu_count_.at(w) : 0;
        if (used != want) return;
      }
      process_roles();
      return;
    }
    int w = slots_[s].weight;
    int want = nu_count_.count(w) ? nu_count_.at(w) : 0;
    int used = 0;
    for (std::size_t u = 0; u < s; ++u) {
      if (slots_[u].weight == w) used += roles_[u].nu;
    }
    int hi = std::min(remaining_[s], want - used);
    for (int x = 0; x <= hi; ++x) {
      roles_[s].nu = x;
      roles_[s].mu = remaining_[s] - x;
      split_nu(s + 1);
    }
    roles_[s].nu = 0;
    roles_[s].mu = 0;
  }

  std::vector<int> role_vector(const std::vector<SlotRole>& roles, const Symmetry* sym) const {
    std::vector<const SlotRole*> placed(slots_.size());
    for (std::size_t s = 0; s < slots_.size(); ++s) placed[sym ? sym->slot[s] : s] = &roles[s];
    std::vector<int> out;
    for (const SlotRole* r : placed) {
      out.push_back(static_cast<int>(r->a_sets.size()));
      out.insert(out.end(), r->a_sets.begin(), r->a_sets.end());
      out.push_back(r->mu);
      out.push_back(r->nu);
    }
    return out;
  }

  void process_roles() {
    // Only the least role assignment of each orbit is expanded; its
    // stabilizer then acts on the phi labelings.
    std::vector<int> mine = role_vector(roles_, nullptr);
    std::vector<const Symmetry*> stabilizer;
    for (const Symmetry& s : group_) {
      std::vector<int> image = role_vector(roles_, &s);
      if (image < mine) return;
      if (image == mine) stabilizer.push_back(&s);
    }
    std::uint64_t n = count_labelings(stabilizer);
    if (n == 0) return;
    total_ += n;
    by_colouring_[least_colouring()] += n;
  }

  // Per-slot (mu, nu) counts; the rest of each slot is exceptional legs.
  std::vector<int> colouring(const Symmetry* sym) const {
    std::vector<int> out(2 * slots_.size());
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      std::size_t at = sym ? sym->slot[s] : s;
      out[2 * at] = roles_[s].mu;
      out[2 * at + 1] = roles_[s].nu;
    }
    return out;
  }

  std::vector<int> least_colouring() const {
    std::vector<int> best = colouring(nullptr);
    for (const Symmetry& s : group_) best = std::min(best, colouring(&s));
    return best;
  }

  // Units of the increasing bijection: Div4 vertices, edges, and nu slots
  // (a slot with k nu legs is a unit of multiplicity k).
  struct Unit {
    int node;
    int multiplicity;
  };

  std::uint64_t count_labelings(const std::vector<const Symmetry*>& stabilizer) {
    const int ne = static_cast<int>(edges_.size());
    std::vector<Unit> units;
    for (int v = 0; v < n_; ++v) {
      if (g_.vertices[v].kind == VertexKind::Div4) units.push_back({v, 1});
    }
    for (int j = 0; j < ne; ++j) units.push_back({n_ + j, 1});
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (roles_[s].nu > 0) units.push_back({n_ + ne + static_cast<int>(s), roles_[s].nu});
    }
    const std::size_t k = units.size();
    std::vector<std::vector<int>> preds(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (below_[units[j].node][units[i].node]) preds[i].push_back(static_cast<int>(j));
      }
    }
    int m = 0;
    for (const Unit& u : units) m += u.multiplicity;

    std::vector<int> placed(k, 0);
    std::vector<std::vector<int>> labels(k);
    std::uint64_t plain = 0;
    std::set<std::vector<int>> classes;
    const bool trivial = stabilizer.size() <= 1;

    std::function<void(int)> extend = [&](int next_label) {
      if (next_label > m) {
        if (trivial) {
          ++plain;
        } else {
          classes.insert(canonical_labels(units, labels, stabilizer));
        }
        return;
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (placed[i] == units[i].multiplicity) continue;
        bool ready = true;
        for (int p : preds[i]) {
          if (placed[p] != units[p].multiplicity) {
            ready = false;
            break;
          }
        }
        if (!ready) continue;
        ++placed[i];
        labels[i].push_back(next_label);
        extend(next_label + 1);
        labels[i].pop_back();
        --placed[i];
      }
    };
    extend(1);
    return trivial ? plain : classes.size();
  }

  std::vector<int> canonical_labels(const std::vector<Unit>& units,
                                    const std::vector<std::vector<int>>& labels,
                                    const std::vector<const Symmetry*>& stabilizer) const {
    const int ne = static_cast<int>(edges_.size());
    const int total = n_ + ne + static_cast<int>(slots_.size());
    std::vector<int> best;
    for (const Symmetry* sym : stabilizer) {
      std::vector<const std::vector<int>*> at(total, nullptr);
      for (std::size_t i = 0; i < units.size(); ++i) {
        int node = units[i].node;
        int image;
        if (node < n_) {
          image = sym->vertex[node];
        } else if (node < n_ + ne) {
          image = n_ + sym->edge[node - n_];
        } else {
          image = n_ + ne + sym->slot[node - n_ - ne];
        }
        at[image] = &labels[i];
      }
      std::vector<int> code;
      for (const auto* l : at) {
        if (!l) {
          code.push_back(0);
          continue;
        }
        code.push_back(static_cast<int>(l->size()));
        code.insert(code.end(), l->begin(), l->end());
      }
      if (best.empty() || code < best) best = std::move(code);
    }
    return best;
  }

  const FloorDiagram& g_;
  const CurveClass& beta_;
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Slot> slots_;
  std::map<std::pair<int, int>, int> slot_index_;
  std::map<int, int> mu_count_;
  std::map<int, int> nu_count_;
  std::vector<Symmetry> group_;
  std::vector<std::vector<bool>> below_;

  std::vector<SlotRole> roles_;
  std::vector<int> remaining_;
  std::uint64_t total_ = 0;
  std::map<std::vector<int>, std::uint64_t> by_colouring_;
};

}  // namespace

namespace {

void check_marking_input(const FloorDiagram& g, const CurveClass& beta, const Tangency& t) {
  check_class_and_tangency(beta, t);
  if (!validate(g).ok()) throw DomainError("count_markings needs a valid floor diagram");
  if (g.degree() != beta.d) {
    throw DomainError("diagram degree " + std::to_string(g.degree()) + " differs from class degree " +
                      std::to_string(beta.d));
  }
}

}  // namespace

std::uint64_t count_markings(const FloorDiagram& g, const CurveClass& beta, const Tangency& t) {
  check_marking_input(g, beta, t);
  if (g.leg_weights() != required_leg_weights(beta, t)) return 0;
  MarkingCounter counter(g, beta, t);
  return counter.count();
}

std::vector<ColouredCount> count_markings_by_colouring(const FloorDiagram& g, const CurveClass& beta,
                                                       const Tangency& t) {
  check_marking_input(g, beta, t);
  if (g.leg_weights() != required_leg_weights(beta, t)) return {};
  MarkingCounter counter(g, beta, t);
  counter.count();
  return counter.colourings();
}

std::string to_string(LegRole role) {
  switch (role) {
    case LegRole::Mu:
      return "mu";
    case LegRole::Nu:
      return "nu";
    case LegRole::A:
      return "a";
  }
  return "a";
}

LegRole parse_leg_role(const std::string& text) {
  if (text == "mu") return LegRole::Mu;
  if (text == "nu") return LegRole::Nu;
  if (text == "a") return LegRole::A;
  throw DomainError("unknown leg role '" + text + "'");
}

std::string row_key(const DiagramTally& row) {
  std::string key = canonical_key(row.diagram);
  key.push_back('\xff');
  for (LegRole r : row.leg_roles) key.push_back(static_cast<char>(r));
  return key;
}

int real_integer(int k) { return k % 2 == 0 ? 2 : 1; }

QLaurent refined_multiplicity(const FloorDiagram& g, const Tangency& t) {
  BigInt nu_product = 1;
  for (int p : t.nu) nu_product *= p;
  QLaurent m(nu_product);
  for (const Edge& e : g.edges) m *= q_int(e.weight).pow(2);
  return m;
}

BigInt real_multiplicity(const FloorDiagram& g, const Tangency& t) {
  for (const Edge& e : g.edges) {
    if (e.weight % 2 == 0) return 0;
  }
  BigInt m = 1;
  for (int p : t.nu) m *= real_integer(p);
  return m;
}

std::vector<DiagramTally> tally(const CurveClass& beta, const Tangency& t, const EnumerationOptions& options) {
  check_class_and_tangency(beta, t);
  const auto legs = required_leg_weights(beta, t);
  std::vector<FloorDiagram> diagrams;
  if (options.cache_dir) {
    for (auto& g : enumerate_diagrams(beta.d, options)) {
      if (g.leg_weights() == legs) diagrams.push_back(std::move(g));
    }
  } else {
    diagrams = enumerate_diagrams_with_legs(beta.d, legs, options);
  }
  std::vector<std::vector<ColouredCount>> counts(diagrams.size());
  detail::parallel_for(diagrams.size(), options.threads, [&](std::size_t i) {
    counts[i] = count_markings_by_colouring(diagrams[i], beta, t);
  });
  std::vector<DiagramTally> rows;
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    for (const ColouredCount& c : counts[i]) {
      DiagramTally row;
      row.diagram = diagrams[i];
      row.leg_roles = c.roles;
      row.marking_count = c.count;
      row.refined = scale(refined_multiplicity(row.diagram, t), BigInt(c.count));
      row.complex = evaluate_at_sign(row.refined, 1);
      row.real = real_multiplicity(row.diagram, t) * c.count;
      rows.push_back(std::move(row));
    }
  }
  // Diagrams arrive in key order; colourings within a diagram are sorted
  // by their own code, so sort once more by the full row key.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const DiagramTally& a, const DiagramTally& b) { return row_key(a) < row_key(b); });
  return rows;
}

}  // namespace refloor

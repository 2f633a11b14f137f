#pragma once

// Genus-zero floor diagrams of a given degree, their markings, and the
// per-diagram tallies whose sum is a relative BPS polynomial.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "refloor/diagram.hpp"
#include "refloor/qlaurent.hpp"

namespace refloor {

/// beta = d H - sum_i a_i E_i on the plane blown up at n points.
struct CurveClass {
  int d = 1;
  std::vector<int> a;

  int n() const { return static_cast<int>(a.size()); }
  int sum_a() const;
  /// beta . C~ = 2d - sum a_i, the tangency budget along the conic.
  int conic_intersection() const;
  /// m_beta = 3d - sum a_i - 1.
  int point_count() const;
  std::string to_string() const;
  friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

/// Contact orders at fixed points (mu) and moving points (nu) on the conic.
struct Tangency {
  std::vector<int> mu;
  std::vector<int> nu;

  int total() const;
  /// m_{beta,(mu,nu)} = d - 1 + l(nu).
  int marking_size(const CurveClass& beta) const;
  friend bool operator==(const Tangency&, const Tangency&) = default;
};

struct EnumerationOptions {
  int threads = 1;
  int max_degree = 8;
  /// When set, full per-degree diagram lists are read from and written to
  /// this directory.
  std::optional<std::filesystem::path> cache_dir;
};

inline constexpr int kCacheFormatVersion = 1;

/// Cache directory from REFLOOR_CACHE if set, else `flag_value`.
std::optional<std::filesystem::path> resolve_cache_dir(
    const std::optional<std::filesystem::path>& flag_value);

/// Every genus-zero floor diagram of degree d up to isomorphism, in
/// canonical form and sorted by canonical key.
std::vector<FloorDiagram> enumerate_diagrams(int d, const EnumerationOptions& options = {});

/// As enumerate_diagrams, restricted to diagrams whose leg weights form the
/// given multiset. Generated directly without touching the cache.
std::vector<FloorDiagram> enumerate_diagrams_with_legs(int d, std::vector<int> leg_weights,
                                                       const EnumerationOptions& options = {});

/// Leg weights carried by any diagram with a marking of this class and type:
/// mu, nu and sum(a) legs of weight 1, sorted.
std::vector<int> required_leg_weights(const CurveClass& beta, const Tangency& t);

/// Number of isomorphism classes of markings of class beta and type t.
std::uint64_t count_markings(const FloorDiagram& g, const CurveClass& beta, const Tangency& t);

enum class LegRole : std::uint8_t { Mu, Nu, A };

std::string to_string(LegRole role);
LegRole parse_leg_role(const std::string& text);

/// Markings sharing one leg colouring (which legs are mu, nu or exceptional)
/// up to symmetry. `roles` is aligned with the diagram's legs.
struct ColouredCount {
  std::vector<LegRole> roles;
  std::uint64_t count = 0;
};

/// count_markings split by leg colouring; colourings without markings are
/// omitted. The counts add up to count_markings.
std::vector<ColouredCount> count_markings_by_colouring(const FloorDiagram& g, const CurveClass& beta,
                                                       const Tangency& t);

/// A floor diagram with coloured legs and its markings. Rows of a tally are
/// the coloured diagrams, so the mu and nu legs are distinguished from the
/// legs carrying the exceptional classes.
struct DiagramTally {
  FloorDiagram diagram;  // canonical
  std::vector<LegRole> leg_roles;  // aligned with diagram.legs
  std::uint64_t marking_count = 0;
  QLaurent refined;
  BigInt complex = 0;
  BigInt real = 0;
};

/// Refined multiplicity (prod nu_j) * prod_e [w_e]_q^2 of one marking.
QLaurent refined_multiplicity(const FloorDiagram& g, const Tangency& t);

/// Real multiplicity: 0 with an even edge weight, else prod_j [nu_j]_R.
BigInt real_multiplicity(const FloorDiagram& g, const Tangency& t);

/// [k]_R = 1 for odd k, 2 for even k.
int real_integer(int k);

/// Identifies a tally row: the diagram key followed by the leg colouring.
std::string row_key(const DiagramTally& row);

/// One row per coloured diagram with at least one marking, ordered by row key.
std::vector<DiagramTally> tally(const CurveClass& beta, const Tangency& t,
                                const EnumerationOptions& options = {});

/// Checks the shared preconditions of tally / relative_bps and throws
/// DomainError with a specific message on failure.
void check_class_and_tangency(const CurveClass& beta, const Tangency& t);

}  // namespace refloor

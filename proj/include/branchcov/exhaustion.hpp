#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "branchcov/hurwitz.hpp"

namespace branchcov {

/// Closure of one component of E_j minus E_{j-1}: a compact orientable surface
/// whose inner circles are glued to outer circles of level j-1.
struct Piece {
  std::string id;
  std::size_t level = 1;
  unsigned genus = 0;
  std::vector<std::string> inner;  // outer-circle ids of level-(j-1) pieces
  std::vector<std::string> outer;
  bool orientable = true;

  long euler_characteristic() const noexcept {
    return 2 - 2 * static_cast<long>(genus) - static_cast<long>(inner.size() + outer.size());
  }

  friend bool operator==(const Piece&, const Piece&) = default;
};

struct EndCertificate {
  enum class Kind { none, finite, infinite };
  Kind kind = Kind::none;
  /// For `finite`: no level beyond this one contains a pants piece or a
  /// branching of the level structure.
  std::size_t last_branching_level = 0;
};

/// Pull-based generator of an infinite exhaustion, one level at a time.
class ExhaustionSupplier {
 public:
  virtual ~ExhaustionSupplier() = default;

  /// Pieces of level j; `boundary` lists the outer circles of level j-1 in
  /// order (empty for j = 1).
  virtual std::vector<Piece> level(std::size_t j, const std::vector<std::string>& boundary) const = 0;
  virtual EndCertificate certificate() const = 0;
  /// Levels beyond j that may still influence the normalization of level j.
  virtual std::size_t join_horizon() const = 0;
  virtual std::string family() const = 0;
  virtual std::map<std::string, long> parameters() const = 0;
};

/// Built-in families: "annulus_chain" (genus per annulus level, default 0;
/// "plane" is genus 0), "k_ended" (k ends via one star piece at level 2),
/// "binary_tree" and "pants_ladder" (infinitely many ends).
/// Throws InvalidInput for an unknown family or bad parameters.
std::shared_ptr<const ExhaustionSupplier> make_supplier(const std::string& family,
                                                        const std::map<std::string, long>& parameters = {});

struct ExhaustionGraph {
  std::vector<Piece> pieces;
  std::shared_ptr<const ExhaustionSupplier> supplier;

  std::size_t depth() const noexcept;
};

bool operator==(const ExhaustionGraph& a, const ExhaustionGraph& b);

/// Pieces through level `depth`, pulling missing levels from the supplier.
/// Throws InvalidInput when more levels are needed and there is no supplier.
ExhaustionGraph materialize(const ExhaustionGraph& g, std::size_t depth);

ValidationReport validate_exhaustion(const ExhaustionGraph& g);

/// Sum of piece Euler characteristics: the truncation E_J glued along circles.
long truncation_euler_characteristic(const ExhaustionGraph& g);

/// Outer circles of the deepest level. Each leads to its own end of the
/// surface obtained by attaching a collar to every such circle.
std::size_t depth_circle_count(const ExhaustionGraph& g);

/// First level (in 1..through) where the normalized shape fails, or 0 if the
/// shape holds: one disk at level 1, then pieces with one inner and one or
/// two outer circles.
std::size_t first_unnormalized_level(const ExhaustionGraph& g, std::size_t through);

struct NormalizedExhaustion {
  ExhaustionGraph graph;
  std::size_t source_depth = 0;
  /// Deepest output level no longer subject to change by deeper input levels.
  std::size_t stable_depth = 0;
  /// Input level each output level descends from (index 0 unused).
  std::vector<std::size_t> level_origin;
  EndCertificate certificate;

  std::size_t depth() const noexcept { return graph.depth(); }
};

/// Tube joins then pants splits, level by level. The input is taken as its
/// finite truncation; with a supplier, levels beyond depth minus the join
/// horizon are reported as unstable. Throws InvalidInput on invalid graphs.
NormalizedExhaustion normalize(const ExhaustionGraph& g);

struct EndCount {
  enum class Kind { exact, lower_bound, infinite };
  Kind kind = Kind::exact;
  /// One plus the number of pants pieces at levels <= J.
  std::uint64_t value = 1;
};

/// Throws NotNormalized unless the graph has the normalized shape through J,
/// DepthExceeded when J exceeds the graph depth.
EndCount count_ends(const ExhaustionGraph& g, std::size_t J);
EndCount count_ends(const NormalizedExhaustion& e, std::size_t J);

}  // namespace branchcov

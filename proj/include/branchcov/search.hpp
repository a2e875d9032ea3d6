#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <memory>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "branchcov/hurwitz.hpp"
#include "branchcov/surface.hpp"

namespace branchcov {

/// Bounds on census sizes. Defaults: degree 6, 8 branch points. The
/// WORKBENCH_LIMITS environment variable ("degree=7,branch=10") may raise them
/// up to the engine cap.
struct SearchLimits {
  static constexpr std::size_t engine_degree_cap = 7;

  std::size_t max_degree = 6;
  std::size_t max_branch_points = 8;

  /// Throws InvalidInput on a malformed value.
  static SearchLimits from_environment();
  static SearchLimits parse(const std::string& text);
};

struct SearchOptions {
  SearchLimits limits{};
  unsigned workers = 1;
};

struct RealizedSurface {
  ClosedSurface surface;
  std::uint64_t raw_count = 0;
  std::uint64_t classes = 0;

  friend bool operator==(const RealizedSurface&, const RealizedSurface&) = default;
};

struct CensusRow {
  ClosedSurface base = ClosedSurface::sphere();
  std::size_t degree = 0;
  std::size_t branch_count = 0;
  bool simple_only = true;
  /// Tuples satisfying the surface relation, connected or not.
  std::uint64_t valid_tuples = 0;
  std::uint64_t transitive_tuples = 0;
  /// Connected total spaces, orientable first then by genus.
  std::vector<RealizedSurface> realized;

  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

/// Counts gathered by one or more partitions of a census. Merging is
/// associative and commutative: raw counts add, canonical-form sets unite.
struct PartialCensus {
  struct Bucket {
    std::uint64_t raw_count = 0;
    std::unordered_set<std::string> forms;
  };

  std::uint64_t valid_tuples = 0;
  std::uint64_t transitive_tuples = 0;
  std::map<std::pair<bool, unsigned>, Bucket> by_surface;  // ordering_key -> counts

  void merge(const PartialCensus& other);
};

class SymmetricGroup;

/// A census split into deterministic partitions by the first enumerated
/// meridian. Throws LimitExceeded when the request exceeds the limits.
class CensusPlan {
 public:
  CensusPlan(const ClosedSurface& base, std::size_t degree, std::size_t branch_points, bool simple_only,
             const SearchLimits& limits = {});

  std::size_t partition_count() const noexcept { return partitions_; }
  PartialCensus run_partition(std::size_t index) const;
  CensusRow finish(const PartialCensus& total) const;

 private:
  ClosedSurface base_;
  std::size_t degree_;
  std::size_t branch_points_;
  bool simple_only_;
  std::shared_ptr<const SymmetricGroup> group_;
  std::vector<std::uint16_t> meridian_choices_;
  std::size_t partitions_ = 1;
};

/// All meridian tuples (transpositions only when `simple_only`) and surface
/// generator images satisfying the relation, keeping transitive tuples.
CensusRow enumerate_covers(const ClosedSurface& base, std::size_t degree, std::size_t branch_points,
                           bool simple_only, const SearchOptions& options = {});

/// Lexicographically least concatenation of image sequences over all
/// simultaneous relabelings p -> pi p pi^-1. All generators share one degree.
std::vector<Sheet> canonical_form(std::span<const Perm> generators);

struct AuditRow {
  std::size_t degree = 0;
  std::size_t branch_points = 0;
  ClosedSurface surface = ClosedSurface::sphere();
  std::uint64_t raw_count = 0;
  std::uint64_t classes = 0;
  bool parity_ok = true;   // crosscap number congruent to degree mod 2 (nonorientable rows)
  bool euler_ok = true;    // crosscaps = 2 - d + b, or 2 - 2g = d - b when orientable
};

struct AuditReport {
  std::size_t d_max = 0;
  std::size_t b_max = 0;
  std::vector<AuditRow> rows;
  /// (d, b) pairs with odd b that nonetheless had valid simple tuples.
  std::vector<std::pair<std::size_t, std::size_t>> odd_branch_violations;
  std::size_t violations = 0;
  bool passed = true;
};

/// Simple census over the projective plane for all d <= d_max, b <= b_max,
/// checking h = 2 - d + b, h = d (mod 2) and evenness of b.
AuditReport parity_audit(std::size_t d_max, std::size_t b_max, const SearchOptions& options = {});

struct SphereWitness {
  unsigned genus = 0;
  HurwitzData data;
  bool validated = false;
  bool simple = false;
  bool realizes_target = false;
};

struct ProjectiveObstruction {
  unsigned crosscaps = 0;
  std::size_t forced_branch_points = 0;  // b = n + h - 2, odd here
};

struct ExhaustiveCheck {
  std::size_t degree = 0;
  std::size_t branch_points = 0;
  unsigned target_crosscaps = 0;
  std::uint64_t valid_tuples = 0;
  bool target_realized = false;
};

struct UniversalBaseReport {
  std::size_t degree = 0;
  unsigned genus_max = 0;
  std::vector<SphereWitness> sphere;
  std::vector<ProjectiveObstruction> projective;
  std::optional<ExhaustiveCheck> exhaustive;
  bool sphere_universal = false;
  bool projective_obstructed = false;
};

/// Degree-n simple covers of S^2 by every orientable surface of genus up to
/// genus_max, and the parity obstruction showing RP^2 is not a universal
/// n-base. Throws InvalidInput for n < 2, LimitExceeded beyond the limits.
UniversalBaseReport universal_base_report_dim2(std::size_t n, unsigned genus_max, const SearchOptions& options = {});

}  // namespace branchcov

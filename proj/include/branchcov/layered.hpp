#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "branchcov/exhaustion.hpp"
#include "branchcov/perm.hpp"

namespace branchcov {

enum class BlockKind { disk, annulus, pants, stair };

const char* to_string(BlockKind kind) noexcept;
/// Throws ParseError for an unknown name.
BlockKind block_kind_from_string(const std::string& name);

struct BranchLabel {
  std::size_t level = 0;
  std::size_t index = 0;

  friend auto operator<=>(const BranchLabel&, const BranchLabel&) = default;
};

/// One outbound cycle of a block, in global sheets, and the next-level block
/// it continues into (none at the truncation depth).
struct Gluing {
  std::vector<Sheet> cycle;
  std::string circle;
  std::optional<std::string> target;

  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// Local branched cover over the region between two nested disks. Local
/// sheet k is global sheet `sheets[k]`. Capped sheets close up by a disk
/// mapping onto the inner disk, so they see trivial inbound monodromy.
struct Block {
  std::string id;
  std::size_t level = 1;
  BlockKind kind = BlockKind::disk;
  std::string piece;
  unsigned genus = 0;
  std::vector<Sheet> sheets;
  std::vector<Sheet> capped;  // local indices
  Perm inbound = Perm::identity(1);
  std::vector<Perm> meridians;
  Perm outbound = Perm::identity(1);
  std::vector<BranchLabel> labels;
  std::vector<Gluing> gluings;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Finite truncation over the disk D_J: an honest branched cover of degree
/// `degree`.
struct LayeredCover {
  std::size_t depth = 0;
  std::size_t degree = 0;
  std::vector<Block> blocks;

  friend bool operator==(const LayeredCover&, const LayeredCover&) = default;
};

/// Meridians of the pants block for genus g: the lexicographically first
/// 2g+3 transpositions of S_4 (ordered by point pair) acting transitively and
/// carrying the inbound (0 1) to an outbound of cycle type (2,2). Cached.
const std::vector<Perm>& pants_meridians(unsigned genus);

/// Blocks for the pieces of levels <= J. Throws NonorientableInput for
/// nonorientable pieces, NotNormalized when the shape fails through J.
LayeredCover build_cover(const ExhaustionGraph& e, std::size_t J);
LayeredCover build_cover(const NormalizedExhaustion& e, std::size_t J);

/// The staircase cover truncated at level J: degree J+1, the j-th branch
/// point with meridian (j-1 j). Throws InvalidInput for J = 0.
LayeredCover staircase(std::size_t J);

struct LayeredCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
};

struct LayeredReport {
  std::vector<LayeredCheck> checks;
  std::size_t degree = 0;
  std::size_t branch_points = 0;
  long euler_characteristic = 0;  // of the truncation E_J
  std::size_t ends = 0;           // level-J outbound cycles
  bool passed = true;
};

LayeredReport verify_layered(const LayeredCover& c);

/// Whether the boundary data of level i+1, read back through each block's
/// meridians, restricts to the level-i outbound data. Throws DepthExceeded
/// when the cover has depth below i+1.
bool restriction_compatibility(const LayeredCover& c, std::size_t i);

struct ComposedLabel {
  std::string source;  // "cover" or "staircase"
  BranchLabel label;

  friend auto operator<=>(const ComposedLabel&, const ComposedLabel&) = default;
};

struct ComposedReport {
  std::size_t cover_degree = 0;
  std::size_t staircase_depth = 0;
  std::size_t fiber_count = 0;
  std::vector<std::size_t> degree_by_depth;  // composite fiber count for depth 0..J
  std::vector<ComposedLabel> labels;
  bool potentially_nonsimple = true;
};

/// Bookkeeping of the composite with the staircase truncated at J (J = 0 is
/// the identity). Throws UnverifiedInput unless verify_layered(c) passes.
ComposedReport compose_with_staircase(const LayeredCover& c, std::size_t J);

}  // namespace branchcov

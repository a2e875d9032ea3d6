#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "branchcov/perm.hpp"

namespace branchcov {

/// Table-driven S_d for small d: elements are indexed by the lexicographic
/// rank of their image sequence, products and inverses are lookups.
class SymmetricGroup {
 public:
  using Index = std::uint16_t;
  static constexpr std::size_t max_degree = 7;

  /// Shared instance per degree, built on first use.
  static std::shared_ptr<const SymmetricGroup> get(std::size_t degree);

  explicit SymmetricGroup(std::size_t degree);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return images_.size(); }
  Index identity() const noexcept { return 0; }

  const std::array<std::uint8_t, 8>& images(Index a) const noexcept { return images_[a]; }
  Index mul(Index a, Index b) const noexcept { return mul_[std::size_t{a} * order() + b]; }
  Index inverse(Index a) const noexcept { return inverse_[a]; }
  std::uint8_t cycle_count(Index a) const noexcept { return cycle_count_[a]; }
  bool is_transposition(Index a) const noexcept { return transposition_[a]; }

  /// Elements c with c * c == x.
  std::pair<const Index*, const Index*> square_roots(Index x) const noexcept {
    return {sqrt_values_.data() + sqrt_offsets_[x], sqrt_values_.data() + sqrt_offsets_[x + 1]};
  }
  /// Pairs (a, b) with a b a^-1 b^-1 == x. Built lazily.
  std::pair<const std::pair<Index, Index>*, const std::pair<Index, Index>*> commutator_roots(Index x) const;

  /// Transpositions ordered by their point pair (a, b), a < b.
  std::vector<Index> transpositions_by_pair() const;

  Index index_of(const Perm& p) const;
  Perm perm(Index a) const;

 private:
  std::size_t degree_;
  std::vector<std::array<std::uint8_t, 8>> images_;
  std::vector<Index> mul_;
  std::vector<Index> inverse_;
  std::vector<std::uint8_t> cycle_count_;
  std::vector<bool> transposition_;
  std::vector<std::uint32_t> sqrt_offsets_;
  std::vector<Index> sqrt_values_;
  std::vector<Index> code_to_index_;

  struct CommutatorTable {
    std::vector<std::uint32_t> offsets;
    std::vector<std::pair<Index, Index>> values;
  };
  mutable std::shared_ptr<const CommutatorTable> commutators_;
  mutable std::once_flag commutators_once_;

  std::uint32_t code(const std::uint8_t* images) const noexcept;
};

}  // namespace branchcov

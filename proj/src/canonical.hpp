#pragma once

#include <cstdint>
#include <vector>

namespace branchcov {

/// Branch-and-bound search for the lexicographically least concatenation of
/// image sequences under simultaneous relabeling. Reusable across calls to
/// avoid reallocation in the census inner loop.
class Canonicalizer {
 public:
  /// `gens[k]` points at `degree` images of generator k.
  const std::vector<std::uint8_t>& run(const std::uint8_t* const* gens, std::size_t count, std::size_t degree);

 private:
  void descend(std::size_t p, bool tight);
  void finish(bool tight);

  const std::uint8_t* const* gens_ = nullptr;
  std::size_t count_ = 0;
  std::size_t degree_ = 0;
  std::vector<int> label_;     // old point -> new label, -1 if unassigned
  std::vector<int> point_;     // new label -> old point
  int next_ = 0;
  std::vector<std::uint8_t> current_;
  std::vector<std::uint8_t> best_;
  bool have_best_ = false;
  std::uint64_t best_generation_ = 0;
};

}  // namespace branchcov

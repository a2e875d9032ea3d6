#include "canonical.hpp"

#include <algorithm>

namespace branchcov {

const std::vector<std::uint8_t>& Canonicalizer::run(const std::uint8_t* const* gens, std::size_t count,
                                                    std::size_t degree) {
  gens_ = gens;
  count_ = count;
  degree_ = degree;
  label_.assign(degree, -1);
  point_.assign(degree, -1);
  next_ = 0;
  current_.assign(count * degree, 0);
  best_.assign(count * degree, 0);
  have_best_ = false;
  if (count == 0) return best_;
  descend(0, false);
  return best_;
}

// The first generator is where relabeling choices happen: once every label
// 0..d-1 has a preimage the relabeling is complete and the remaining
// generators are read off without branching.
void Canonicalizer::descend(std::size_t p, bool tight) {
  if (p == degree_) {
    finish(tight);
    return;
  }
  const std::uint8_t* g0 = gens_[0];
  const std::uint64_t entry_generation = best_generation_;
  auto node_tight = [&] { return tight || (have_best_ && best_generation_ != entry_generation); };

  if (point_[p] >= 0) {
    const int x = point_[p];
    const int y = g0[x];
    bool fresh = false;
    if (label_[y] < 0) {
      label_[y] = next_;
      point_[next_] = y;
      ++next_;
      fresh = true;
    }
    const auto value = static_cast<std::uint8_t>(label_[y]);
    const bool t = node_tight();
    if (!(t && value > best_[p])) {
      current_[p] = value;
      descend(p + 1, t && value == best_[p]);
    }
    if (fresh) {
      --next_;
      point_[next_] = -1;
      label_[y] = -1;
    }
    return;
  }

  // Label p is unassigned: any unlabeled point may take it. Only candidates
  // achieving the least value at this position can lead to the minimum.
  int best_value = 1 << 30;
  for (std::size_t x = 0; x < degree_; ++x) {
    if (label_[x] >= 0) continue;
    const int y = g0[x];
    const int v = (y == static_cast<int>(x)) ? static_cast<int>(p) : (label_[y] >= 0 ? label_[y] : static_cast<int>(p) + 1);
    best_value = std::min(best_value, v);
  }
  for (std::size_t x = 0; x < degree_; ++x) {
    if (label_[x] >= 0) continue;
    const int y = g0[x];
    const int v = (y == static_cast<int>(x)) ? static_cast<int>(p) : (label_[y] >= 0 ? label_[y] : static_cast<int>(p) + 1);
    if (v != best_value) continue;
    const bool t = node_tight();
    if (t && v > best_[p]) return;

    label_[x] = static_cast<int>(p);
    point_[p] = static_cast<int>(x);
    ++next_;
    bool fresh = false;
    if (label_[y] < 0) {
      label_[y] = next_;
      point_[next_] = y;
      ++next_;
      fresh = true;
    }
    current_[p] = static_cast<std::uint8_t>(v);
    descend(p + 1, t && v == best_[p]);
    if (fresh) {
      --next_;
      point_[next_] = -1;
      label_[y] = -1;
    }
    --next_;
    point_[p] = -1;
    label_[x] = -1;
  }
}

void Canonicalizer::finish(bool tight) {
  const std::size_t total = count_ * degree_;
  for (std::size_t pos = degree_; pos < total; ++pos) {
    const std::uint8_t* g = gens_[pos / degree_];
    const auto value = static_cast<std::uint8_t>(label_[g[point_[pos % degree_]]]);
    if (tight) {
      if (value > best_[pos]) return;
      if (value < best_[pos]) tight = false;
    }
    current_[pos] = value;
  }
  if (!have_best_ || !tight) {
    best_ = current_;
    have_best_ = true;
    ++best_generation_;
  }
}

}  // namespace branchcov

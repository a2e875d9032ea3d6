#include "symmetric_group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "branchcov/errors.hpp"

namespace branchcov {

std::shared_ptr<const SymmetricGroup> SymmetricGroup::get(std::size_t degree) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const SymmetricGroup>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[degree];
  if (!slot) slot = std::make_shared<const SymmetricGroup>(degree);
  return slot;
}

std::uint32_t SymmetricGroup::code(const std::uint8_t* images) const noexcept {
  std::uint32_t c = 0;
  for (std::size_t i = 0; i < degree_; ++i) c |= std::uint32_t{images[i]} << (3 * i);
  return c;
}

SymmetricGroup::SymmetricGroup(std::size_t degree) : degree_(degree) {
  if (degree == 0 || degree > max_degree) {
    throw LimitExceeded("table-driven search supports degree 1.." + std::to_string(max_degree));
  }
  std::array<std::uint8_t, 8> p{};
  std::iota(p.begin(), p.begin() + degree, std::uint8_t{0});
  do {
    images_.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + degree));

  const std::size_t n = images_.size();
  code_to_index_.assign(std::size_t{1} << (3 * degree), 0);
  for (std::size_t a = 0; a < n; ++a) code_to_index_[code(images_[a].data())] = static_cast<Index>(a);

  mul_.resize(n * n);
  inverse_.resize(n);
  cycle_count_.resize(n);
  transposition_.resize(n);
  std::array<std::uint8_t, 8> tmp{};
  for (std::size_t a = 0; a < n; ++a) {
    const auto& pa = images_[a];
    for (std::size_t b = 0; b < n; ++b) {
      const auto& pb = images_[b];
      for (std::size_t i = 0; i < degree; ++i) tmp[i] = pb[pa[i]];
      mul_[a * n + b] = code_to_index_[code(tmp.data())];
    }
    for (std::size_t i = 0; i < degree; ++i) tmp[pa[i]] = static_cast<std::uint8_t>(i);
    inverse_[a] = code_to_index_[code(tmp.data())];

    std::uint8_t seen = 0, cyc = 0, moved = 0;
    for (std::size_t i = 0; i < degree; ++i) {
      if (pa[i] != i) ++moved;
      if (seen & (1u << i)) continue;
      ++cyc;
      for (std::size_t j = i; !(seen & (1u << j)); j = pa[j]) seen = static_cast<std::uint8_t>(seen | (1u << j));
    }
    cycle_count_[a] = cyc;
    transposition_[a] = moved == 2 && cyc == degree - 1;
  }

  std::vector<std::vector<Index>> roots(n);
  for (std::size_t c = 0; c < n; ++c) roots[mul(static_cast<Index>(c), static_cast<Index>(c))].push_back(static_cast<Index>(c));
  sqrt_offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) {
    sqrt_offsets_[x + 1] = sqrt_offsets_[x] + static_cast<std::uint32_t>(roots[x].size());
    sqrt_values_.insert(sqrt_values_.end(), roots[x].begin(), roots[x].end());
  }
}

std::pair<const std::pair<SymmetricGroup::Index, SymmetricGroup::Index>*,
          const std::pair<SymmetricGroup::Index, SymmetricGroup::Index>*>
SymmetricGroup::commutator_roots(Index x) const {
  std::call_once(commutators_once_, [this] {
    const std::size_t n = order();
    auto table = std::make_shared<CommutatorTable>();
    std::vector<std::uint32_t> counts(n + 1, 0);
    std::vector<Index> value(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Index ia = static_cast<Index>(a), ib = static_cast<Index>(b);
        const Index c = mul(mul(mul(ia, ib), inverse(ia)), inverse(ib));
        value[a * n + b] = c;
        ++counts[c + 1];
      }
    }
    for (std::size_t k = 0; k < n; ++k) counts[k + 1] += counts[k];
    table->offsets = counts;
    table->values.resize(n * n);
    std::vector<std::uint32_t> fill(counts.begin(), counts.end() - 1);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        table->values[fill[value[a * n + b]]++] = {static_cast<Index>(a), static_cast<Index>(b)};
      }
    }
    commutators_ = std::move(table);
  });
  const auto& t = *commutators_;
  return {t.values.data() + t.offsets[x], t.values.data() + t.offsets[x + 1]};
}

std::vector<SymmetricGroup::Index> SymmetricGroup::transpositions_by_pair() const {
  std::vector<Index> out;
  for (std::size_t a = 0; a < degree_; ++a) {
    for (std::size_t b = a + 1; b < degree_; ++b) {
      out.push_back(index_of(Perm::transposition(degree_, static_cast<Sheet>(a), static_cast<Sheet>(b))));
    }
  }
  return out;
}

SymmetricGroup::Index SymmetricGroup::index_of(const Perm& p) const {
  if (p.degree() != degree_) throw DegreeMismatch("permutation degree differs from the group degree");
  std::array<std::uint8_t, 8> tmp{};
  for (std::size_t i = 0; i < degree_; ++i) tmp[i] = static_cast<std::uint8_t>(p(static_cast<Sheet>(i)));
  return code_to_index_[code(tmp.data())];
}

Perm SymmetricGroup::perm(Index a) const {
  std::vector<Sheet> images(degree_);
  for (std::size_t i = 0; i < degree_; ++i) images[i] = images_[a][i];
  return Perm(std::move(images));
}

}  // namespace branchcov

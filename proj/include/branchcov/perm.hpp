#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace branchcov {

using Sheet = std::uint32_t;

/// A bijection of the sheet set {0, ..., degree-1}, stored as its image
/// sequence. Products use the right action: (p * q)(i) = q(p(i)), so a word
/// of loops is read left to right.
class Perm {
 public:
  /// Throws InvalidPermutation unless `images` is a bijection of {0..n-1}, n >= 1.
  explicit Perm(std::vector<Sheet> images);

  static Perm identity(std::size_t degree);
  static Perm transposition(std::size_t degree, Sheet a, Sheet b);
  /// The cycle (points[0] points[1] ... points[k-1]).
  static Perm cycle(std::size_t degree, std::span<const Sheet> points);

  std::size_t degree() const noexcept { return images_.size(); }
  Sheet operator()(Sheet i) const { return images_[i]; }
  std::span<const Sheet> images() const noexcept { return images_; }

  Perm inverse() const;
  bool is_identity() const noexcept;
  bool is_transposition() const noexcept;

  /// Same action on {0..degree-1}, fixing the added points.
  Perm extended(std::size_t new_degree) const;
  /// Action on an invariant subset, relabelled 0..k-1 in the order given.
  Perm restricted(std::span<const Sheet> points) const;

  friend auto operator<=>(const Perm&, const Perm&) = default;
  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  struct Unchecked {};
  Perm(std::vector<Sheet> images, Unchecked) : images_(std::move(images)) {}

  std::vector<Sheet> images_;

  friend Perm compose(const Perm& p, const Perm& q);
};

/// Right-action product: result(i) = q(p(i)). Throws DegreeMismatch.
Perm compose(const Perm& p, const Perm& q);
inline Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }

/// Left-to-right product of a word; identity(degree) for an empty word.
Perm product(std::span<const Perm> word, std::size_t degree);

/// a * b * a^-1 * b^-1.
Perm commutator(const Perm& a, const Perm& b);

/// Cycle lengths including fixed points, sorted in decreasing order.
std::vector<std::size_t> cycle_type(const Perm& p);
std::size_t cycle_count(const Perm& p);
/// Cycles as point lists, each starting at its least point, sorted by that point.
std::vector<std::vector<Sheet>> cycles(const Perm& p);

/// Orbit partition of the group generated by `gens` on {0..n-1}; orbits are
/// ascending and sorted by least element. Throws DegreeMismatch.
std::vector<std::vector<Sheet>> orbits(std::span<const Perm> gens, std::size_t n);

/// Cycle notation, e.g. "(0 2 1)(3 4)"; the identity prints as "()".
std::string to_cycle_string(const Perm& p);
/// Parses cycle notation ("()", "id" and "" mean identity). Throws ParseError.
Perm parse_cycles(std::string_view text, std::size_t degree);

}  // namespace branchcov

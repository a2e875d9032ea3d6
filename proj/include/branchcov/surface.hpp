#pragma once

#include <compare>
#include <string>
#include <utility>

namespace branchcov {

/// A closed connected surface: orientable of genus g, or the connected sum
/// of h >= 1 projective planes (crosscap number h).
class ClosedSurface {
 public:
  static ClosedSurface sphere() { return ClosedSurface(true, 0); }
  static ClosedSurface torus() { return ClosedSurface(true, 1); }
  static ClosedSurface projective_plane() { return ClosedSurface(false, 1); }
  static ClosedSurface klein_bottle() { return ClosedSurface(false, 2); }
  static ClosedSurface orientable_genus(unsigned g) { return ClosedSurface(true, g); }
  /// Throws NotASurface for h = 0.
  static ClosedSurface crosscaps(unsigned h);
  /// Orientable genus or crosscap number depending on `orientable`.
  static ClosedSurface make(bool orientable, unsigned genus);

  bool orientable() const noexcept { return orientable_; }
  /// g when orientable, h otherwise.
  unsigned genus() const noexcept { return genus_; }

  std::string name() const;

  friend auto operator<=>(const ClosedSurface&, const ClosedSurface&) = default;

 private:
  ClosedSurface(bool orientable, unsigned genus) : orientable_(orientable), genus_(genus) {}

  // Field order gives nonorientable < orientable under <=>; reports sort
  // with ordering_key() instead.
  bool orientable_;
  unsigned genus_;
};

int euler_characteristic(const ClosedSurface& s);

/// The unique closed surface with Euler characteristic `chi` and the given
/// orientability. Throws NotASurface when none exists.
ClosedSurface classify(long chi, bool orientable);

/// Sorts orientable surfaces first, then by genus.
inline auto ordering_key(const ClosedSurface& s) { return std::pair{!s.orientable(), s.genus()}; }

}  // namespace branchcov

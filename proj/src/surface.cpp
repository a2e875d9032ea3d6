#include "branchcov/surface.hpp"

#include "branchcov/errors.hpp"

namespace branchcov {

ClosedSurface ClosedSurface::crosscaps(unsigned h) {
  if (h == 0) throw NotASurface("a nonorientable surface has at least one crosscap");
  return ClosedSurface(false, h);
}

ClosedSurface ClosedSurface::make(bool orientable, unsigned genus) {
  return orientable ? orientable_genus(genus) : crosscaps(genus);
}

std::string ClosedSurface::name() const {
  if (orientable_) {
    if (genus_ == 0) return "sphere";
    if (genus_ == 1) return "torus";
    return "orientable genus " + std::to_string(genus_);
  }
  if (genus_ == 1) return "projective plane";
  if (genus_ == 2) return "Klein bottle";
  return "nonorientable crosscap " + std::to_string(genus_);
}

int euler_characteristic(const ClosedSurface& s) {
  const int g = static_cast<int>(s.genus());
  return s.orientable() ? 2 - 2 * g : 2 - g;
}

ClosedSurface classify(long chi, bool orientable) {
  if (orientable) {
    if (chi > 2 || (chi % 2) != 0) {
      throw NotASurface("no closed orientable surface has Euler characteristic " + std::to_string(chi));
    }
    return ClosedSurface::orientable_genus(static_cast<unsigned>((2 - chi) / 2));
  }
  if (chi > 1) {
    throw NotASurface("no closed nonorientable surface has Euler characteristic " + std::to_string(chi));
  }
  return ClosedSurface::crosscaps(static_cast<unsigned>(2 - chi));
}

}  // namespace branchcov

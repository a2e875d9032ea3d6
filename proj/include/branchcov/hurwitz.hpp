#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branchcov/perm.hpp"
#include "branchcov/surface.hpp"

namespace branchcov {

/// Monodromy data of a branched cover of a closed surface.
///
/// Orientable base of genus g: `handles` holds the images (a_i, b_i) of the
/// standard generators and the relation is [a_1,b_1]...[a_g,b_g] m_1...m_b = 1.
/// Nonorientable base with h crosscaps: `crosscaps` holds c_1..c_h and the
/// relation is c_1^2...c_h^2 m_1...m_b = 1. Products use the right action.
struct HurwitzData {
  ClosedSurface base = ClosedSurface::sphere();
  std::size_t degree = 1;
  std::vector<std::pair<Perm, Perm>> handles;
  std::vector<Perm> crosscaps;
  std::vector<Perm> meridians;

  /// Surface generators in relation order (a_1, b_1, a_2, ... or c_1, ...),
  /// followed by the meridians.
  std::vector<Perm> generators() const;

  friend bool operator==(const HurwitzData&, const HurwitzData&) = default;
};

struct Violation {
  std::string code;
  std::optional<std::size_t> index;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }
};

/// Expression W * m_1 ... m_b of the surface relation; identity iff it holds.
/// Assumes all permutations have the data's degree.
Perm relation_product(const HurwitzData& h);

ValidationReport validate(const HurwitzData& h);

struct CoverComponent {
  ClosedSurface surface;
  std::size_t degree;
  std::vector<Sheet> sheets;
};

struct CoverSummary {
  std::size_t degree = 0;
  bool simple = true;
  std::vector<CoverComponent> components;
  std::size_t branch_point_count = 0;
  std::vector<std::vector<std::size_t>> branching_indices;

  bool connected() const noexcept { return components.size() == 1; }
};

/// Components, their classification and branching data. Throws InvalidData
/// when `validate(h)` reports violations.
CoverSummary total_space(const HurwitzData& h);

/// Double cover of the sphere by the genus-g surface, branched at 2g+2 points.
HurwitzData construct_hyperelliptic(unsigned genus);

/// Degree-h cyclic cover of the projective plane with total space the
/// h-crosscap surface: trivial crosscap image, meridians sigma and sigma^-1
/// for the h-cycle sigma. h = 1 is the identity cover. Throws InvalidInput for h = 0.
HurwitzData construct_cyclic_rp2(unsigned crosscaps);

/// Adds a trivial sheet joined to sheet d-1 by two new simple branch points.
/// Throws InvalidData, NotSimple, NotConnected or NonorientableBase.
HurwitzData stabilize(const HurwitzData& h);

/// Composes a cover of the sphere with the orientation double cover of the
/// projective plane. Throws WrongBase unless the base is the sphere.
HurwitzData compose_orientation_double(const HurwitzData& h);

}  // namespace branchcov

#include "branchcov/hurwitz.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "branchcov/errors.hpp"

namespace branchcov {

std::vector<Perm> HurwitzData::generators() const {
  std::vector<Perm> gens;
  for (const auto& [a, b] : handles) {
    gens.push_back(a);
    gens.push_back(b);
  }
  gens.insert(gens.end(), crosscaps.begin(), crosscaps.end());
  gens.insert(gens.end(), meridians.begin(), meridians.end());
  return gens;
}

Perm relation_product(const HurwitzData& h) {
  Perm acc = Perm::identity(h.degree);
  for (const auto& [a, b] : h.handles) acc = acc * commutator(a, b);
  for (const Perm& c : h.crosscaps) acc = acc * c * c;
  for (const Perm& m : h.meridians) acc = acc * m;
  return acc;
}

ValidationReport validate(const HurwitzData& h) {
  ValidationReport report;
  auto violate = [&](std::string code, std::optional<std::size_t> index, std::string message) {
    report.violations.push_back({std::move(code), index, std::move(message)});
  };

  if (h.degree == 0) {
    violate("degree", std::nullopt, "degree must be positive");
    return report;
  }
  const std::size_t g = h.base.genus();
  if (h.base.orientable()) {
    if (h.handles.size() != g) {
      violate("generator_count", std::nullopt,
              "orientable base of genus " + std::to_string(g) + " needs " + std::to_string(g) +
                  " handle pairs, got " + std::to_string(h.handles.size()));
    }
    if (!h.crosscaps.empty()) violate("generator_count", std::nullopt, "orientable base carries crosscap images");
  } else {
    if (h.crosscaps.size() != g) {
      violate("generator_count", std::nullopt,
              "base with " + std::to_string(g) + " crosscaps needs " + std::to_string(g) +
                  " crosscap images, got " + std::to_string(h.crosscaps.size()));
    }
    if (!h.handles.empty()) violate("generator_count", std::nullopt, "nonorientable base carries handle images");
  }

  bool degrees_ok = true;
  for (std::size_t i = 0; i < h.handles.size(); ++i) {
    if (h.handles[i].first.degree() != h.degree || h.handles[i].second.degree() != h.degree) {
      violate("handle_degree", i, "handle image degree differs from the cover degree");
      degrees_ok = false;
    }
  }
  for (std::size_t i = 0; i < h.crosscaps.size(); ++i) {
    if (h.crosscaps[i].degree() != h.degree) {
      violate("crosscap_degree", i, "crosscap image degree differs from the cover degree");
      degrees_ok = false;
    }
  }
  for (std::size_t j = 0; j < h.meridians.size(); ++j) {
    if (h.meridians[j].degree() != h.degree) {
      violate("meridian_degree", j, "meridian degree differs from the cover degree");
      degrees_ok = false;
    } else if (h.meridians[j].is_identity()) {
      violate("identity_meridian", j, "meridian " + std::to_string(j) + " is the identity; a branch point must branch");
    }
  }
  if (degrees_ok) {
    Perm rel = relation_product(h);
    if (!rel.is_identity()) {
      violate("relation", std::nullopt, "surface relation evaluates to " + to_cycle_string(rel) + ", not the identity");
    }
  }
  if (h.meridians.empty()) report.notes.push_back("unbranched datum: no branch points");
  return report;
}

namespace {

struct SignedEdge {
  const Perm* perm;
  const Perm* inverse;
  int sign;
};

// Orientability of the component on `orbit`: a sign s with s(g(i)) = w(g) s(i)
// for every generator exists iff the signed Schreier graph is balanced.
bool signed_two_coloring(const std::vector<SignedEdge>& edges, const std::vector<Sheet>& orbit, std::size_t degree) {
  std::vector<int> sign(degree, 0);
  std::deque<Sheet> queue{orbit.front()};
  sign[orbit.front()] = 1;
  while (!queue.empty()) {
    Sheet i = queue.front();
    queue.pop_front();
    for (const SignedEdge& e : edges) {
      for (Sheet j : {(*e.perm)(i), (*e.inverse)(i)}) {
        const int want = e.sign * sign[i];
        if (sign[j] == 0) {
          sign[j] = want;
          queue.push_back(j);
        } else if (sign[j] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

CoverSummary total_space(const HurwitzData& h) {
  const ValidationReport report = validate(h);
  if (!report.ok()) throw InvalidData("invalid Hurwitz data: " + report.violations.front().message);

  CoverSummary summary;
  summary.degree = h.degree;
  summary.branch_point_count = h.meridians.size();
  for (const Perm& m : h.meridians) {
    summary.branching_indices.push_back(cycle_type(m));
    summary.simple = summary.simple && m.is_transposition();
  }

  const std::vector<Perm> gens = h.generators();
  const auto parts = orbits(gens, h.degree);
  std::vector<std::size_t> orbit_of(h.degree);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (Sheet i : parts[k]) orbit_of[i] = k;
  }

  // Cycles of each meridian, credited to the orbit containing them.
  std::vector<long> branch_defect(parts.size(), 0);
  for (const Perm& m : h.meridians) {
    std::vector<long> cycles_in(parts.size(), 0);
    for (const auto& c : cycles(m)) ++cycles_in[orbit_of[c.front()]];
    for (std::size_t k = 0; k < parts.size(); ++k) {
      branch_defect[k] += static_cast<long>(parts[k].size()) - cycles_in[k];
    }
  }

  std::vector<Perm> inverses;
  inverses.reserve(gens.size());
  for (const Perm& g : gens) inverses.push_back(g.inverse());
  std::vector<SignedEdge> edges;
  const std::size_t surface_gens = gens.size() - h.meridians.size();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const bool reverses = !h.base.orientable() && k < surface_gens;
    edges.push_back({&gens[k], &inverses[k], reverses ? -1 : 1});
  }

  const long base_chi = euler_characteristic(h.base);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const long size = static_cast<long>(parts[k].size());
    const long chi = size * base_chi - branch_defect[k];
    const bool orientable = h.base.orientable() || signed_two_coloring(edges, parts[k], h.degree);
    summary.components.push_back({classify(chi, orientable), parts[k].size(), parts[k]});
  }
  return summary;
}

HurwitzData construct_hyperelliptic(unsigned genus) {
  HurwitzData h;
  h.base = ClosedSurface::sphere();
  h.degree = 2;
  h.meridians.assign(2 * std::size_t{genus} + 2, Perm::transposition(2, 0, 1));
  return h;
}

HurwitzData construct_cyclic_rp2(unsigned crosscaps) {
  if (crosscaps == 0) throw InvalidInput("crosscap number must be positive");
  HurwitzData h;
  h.base = ClosedSurface::projective_plane();
  h.degree = crosscaps;
  h.crosscaps.push_back(Perm::identity(crosscaps));
  if (crosscaps >= 2) {
    std::vector<Sheet> points(crosscaps);
    std::iota(points.begin(), points.end(), Sheet{0});
    const Perm sigma = Perm::cycle(crosscaps, points);
    h.meridians = {sigma, sigma.inverse()};
  }
  return h;
}

HurwitzData stabilize(const HurwitzData& h) {
  const ValidationReport report = validate(h);
  if (!report.ok()) throw InvalidData("cannot stabilize invalid data: " + report.violations.front().message);
  if (!h.base.orientable()) throw NonorientableBase("stabilization needs an orientable base");
  const CoverSummary summary = total_space(h);
  if (!summary.simple) throw NotSimple("stabilization needs a simple cover");
  if (!summary.connected()) throw NotConnected("stabilization needs a connected total space");

  const std::size_t d = h.degree;
  HurwitzData out;
  out.base = h.base;
  out.degree = d + 1;
  for (const auto& [a, b] : h.handles) out.handles.emplace_back(a.extended(d + 1), b.extended(d + 1));
  for (const Perm& m : h.meridians) out.meridians.push_back(m.extended(d + 1));
  const Perm bridge = Perm::transposition(d + 1, static_cast<Sheet>(d - 1), static_cast<Sheet>(d));
  out.meridians.push_back(bridge);
  out.meridians.push_back(bridge);
  return out;
}

HurwitzData compose_orientation_double(const HurwitzData& h) {
  if (h.base != ClosedSurface::sphere()) throw WrongBase("orientation double composition needs base S^2");
  const ValidationReport report = validate(h);
  if (!report.ok()) throw InvalidData("cannot compose invalid data: " + report.violations.front().message);

  const std::size_t d = h.degree;
  HurwitzData out;
  out.base = ClosedSurface::projective_plane();
  out.degree = 2 * d;
  std::vector<Sheet> swap(2 * d);
  for (Sheet i = 0; i < d; ++i) {
    swap[i] = static_cast<Sheet>(i + d);
    swap[i + d] = i;
  }
  out.crosscaps.emplace_back(std::move(swap));
  for (const Perm& m : h.meridians) {
    std::vector<Sheet> images(2 * d);
    for (Sheet i = 0; i < d; ++i) {
      images[i] = m(i);
      images[i + d] = static_cast<Sheet>(i + d);
    }
    out.meridians.emplace_back(std::move(images));
  }
  return out;
}

}  // namespace branchcov

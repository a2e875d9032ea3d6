// Randomized invariants. Pass --seed=N (or --seed N) to change the stream;
// every test case derives its own generator from the seed and its name.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "branchcov/errors.hpp"
#include "branchcov/layered.hpp"
#include "branchcov/search.hpp"
#include "oracle/schreier_complex.hpp"
#include "support/generators.hpp"

using namespace branchcov;

namespace {

std::uint64_t g_seed = 20240601;

gen::Rng rng_for(const std::string& name) { return gen::Rng(g_seed ^ std::hash<std::string>{}(name)); }

Perm conjugate(const Perm& g, const Perm& pi) { return pi.inverse() * g * pi; }

bool all_transpositions(const HurwitzData& h) {
  return std::all_of(h.meridians.begin(), h.meridians.end(), [](const Perm& m) { return m.is_transposition(); });
}

// Connected simple data over an orientable base, by rejection.
std::optional<HurwitzData> random_simple_connected(gen::Rng& rng, const ClosedSurface& base, std::size_t max_degree) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    HurwitzData h;
    h.base = base;
    h.degree = gen::uniform(rng, 2, max_degree);
    const std::size_t b = 2 * gen::uniform(rng, 1, 4) - (base.genus() > 0 ? gen::uniform(rng, 0, 1) : 0);
    Perm acc = Perm::identity(h.degree);
    for (unsigned i = 0; i < base.genus(); ++i) {
      h.handles.emplace_back(gen::random_perm(rng, h.degree), gen::random_perm(rng, h.degree));
      acc = acc * commutator(h.handles.back().first, h.handles.back().second);
    }
    for (std::size_t j = 0; j + 1 < b; ++j) {
      h.meridians.push_back(gen::random_transposition(rng, h.degree));
      acc = acc * h.meridians.back();
    }
    const Perm last = acc.inverse();
    if (!last.is_transposition()) continue;
    h.meridians.push_back(last);
    if (!total_space(h).connected()) continue;
    return h;
  }
  return std::nullopt;
}

std::multiset<std::pair<std::pair<bool, unsigned>, std::size_t>> component_list(const CoverSummary& s, std::size_t scale) {
  std::multiset<std::pair<std::pair<bool, unsigned>, std::size_t>> out;
  for (const CoverComponent& c : s.components) out.insert({ordering_key(c.surface), c.degree * scale});
  return out;
}

}  // namespace

TEST_CASE("product is associative and inverses cancel") {
  auto rng = rng_for("perm");
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = gen::uniform(rng, 1, 9);
    const Perm a = gen::random_perm(rng, d), b = gen::random_perm(rng, d), c = gen::random_perm(rng, d);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).is_identity());
    CHECK((a.inverse() * a).is_identity());
    const auto type = cycle_type(a);
    CHECK(std::accumulate(type.begin(), type.end(), std::size_t{0}) == d);
    CHECK(type.size() == cycle_count(a));
    CHECK(parse_cycles(to_cycle_string(a), d) == a);
  }
}

TEST_CASE("adding a generator never increases the orbit count") {
  auto rng = rng_for("orbits");
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = gen::uniform(rng, 1, 10);
    std::vector<Perm> gens;
    std::size_t previous = d;
    for (int k = 0; k < 4; ++k) {
      gens.push_back(gen::uniform(rng, 0, 1) ? gen::random_perm(rng, d) : (d > 1 ? gen::random_transposition(rng, d) : Perm::identity(d)));
      const auto orb = orbits(gens, d);
      // Independent count: components of the graph joining i to g(i).
      oracle::detail::Dsu dsu(d);
      std::size_t joins = 0;
      for (const Perm& g : gens) {
        for (std::size_t i = 0; i < d; ++i) {
          if (dsu.find(i) != dsu.find(g(static_cast<Sheet>(i)))) {
            dsu.unite(i, g(static_cast<Sheet>(i)));
            ++joins;
          }
        }
      }
      CHECK(orb.size() == d - joins);
      CHECK(orb.size() <= previous);
      previous = orb.size();
    }
  }
}

TEST_CASE("classification inverts the Euler characteristic") {
  std::set<int> orientable_chis, nonorientable_chis;
  for (unsigned g = 0; g < 60; ++g) {
    const ClosedSurface s = ClosedSurface::orientable_genus(g);
    CHECK(classify(euler_characteristic(s), true) == s);
    CHECK(orientable_chis.insert(euler_characteristic(s)).second);
  }
  for (unsigned h = 1; h < 60; ++h) {
    const ClosedSurface s = ClosedSurface::crosscaps(h);
    CHECK(classify(euler_characteristic(s), false) == s);
    CHECK(nonorientable_chis.insert(euler_characteristic(s)).second);
  }
}

TEST_CASE("total space agrees with the cell-complex oracle") {
  auto rng = rng_for("riemann-hurwitz");
  for (int t = 0; t < 400; ++t) {
    const HurwitzData h = gen::random_valid_data(rng);
    REQUIRE(validate(h).ok());
    const CoverSummary s = total_space(h);
    const auto expected = oracle::schreier_complex(h);
    REQUIRE(s.components.size() == expected.size());
    for (const CoverComponent& c : s.components) {
      const auto match = std::find_if(expected.begin(), expected.end(), [&](const oracle::ComponentCount& e) { return e.sheets == c.sheets; });
      REQUIRE(match != expected.end());
      CHECK(euler_characteristic(c.surface) == match->euler);
      CHECK(c.surface.orientable() == match->orientable);
      if (h.base.orientable()) CHECK(c.surface.orientable());
    }
  }
}

TEST_CASE("simple data over the projective plane: even branch count, crosscaps match degree parity") {
  auto rng = rng_for("parity");
  std::size_t checked = 0;
  for (int t = 0; t < 20000 && checked < 300; ++t) {
    const HurwitzData h = gen::random_valid_data(rng, ClosedSurface::projective_plane(), 6, 8);
    if (!all_transpositions(h)) continue;
    ++checked;
    CHECK(h.meridians.size() % 2 == 0);
    const CoverSummary s = total_space(h);
    if (s.connected() && !s.components.front().surface.orientable()) {
      CHECK(s.components.front().surface.genus() % 2 == h.degree % 2);
    }
  }
  CHECK(checked >= 100);
  for (std::size_t d = 2; d <= 4; ++d) {
    for (std::size_t b = 0; b <= 5; ++b) {
      const CensusRow row = enumerate_covers(ClosedSurface::projective_plane(), d, b, true);
      if (b % 2 == 1) CHECK(row.valid_tuples == 0);
      for (const RealizedSurface& r : row.realized) {
        if (!r.surface.orientable()) CHECK(r.surface.genus() % 2 == d % 2);
      }
    }
  }
}

TEST_CASE("stabilization") {
  auto rng = rng_for("stabilize");
  for (const ClosedSurface& base : {ClosedSurface::sphere(), ClosedSurface::torus(), ClosedSurface::orientable_genus(2)}) {
    for (int t = 0; t < 40; ++t) {
      const auto h = random_simple_connected(rng, base, 5);
      REQUIRE(h.has_value());
      const CoverSummary before = total_space(*h);
      const HurwitzData st = stabilize(*h);
      REQUIRE(validate(st).ok());
      const CoverSummary after = total_space(st);
      CHECK(st.degree == h->degree + 1);
      CHECK(after.simple);
      REQUIRE(after.connected());
      // The new sheet is a copy of the base joined by two simple branch points.
      CHECK(after.components.front().surface ==
            ClosedSurface::orientable_genus(before.components.front().surface.genus() + base.genus()));
      if (base.genus() == 0) CHECK(after.components.front().surface == before.components.front().surface);
    }
  }
}

TEST_CASE("composing with the orientation double cover") {
  auto rng = rng_for("double");
  for (int t = 0; t < 150; ++t) {
    const HurwitzData h = gen::random_valid_data(rng, ClosedSurface::sphere(), 5, 7);
    const HurwitzData dbl = compose_orientation_double(h);
    REQUIRE(validate(dbl).ok());
    CHECK(dbl.degree == 2 * h.degree);
    CHECK(dbl.base == ClosedSurface::projective_plane());
    CHECK(component_list(total_space(dbl), 1) == component_list(total_space(h), 2));
  }
  CHECK_THROWS_AS(compose_orientation_double(construct_cyclic_rp2(3)), WrongBase);
}

TEST_CASE("no sphere covers a positive-genus orientable surface") {
  // Every (genus, degree, branch count) whose tuple space stays near a
  // million, meridians unrestricted.
  std::size_t censuses = 0;
  for (unsigned g = 1; g <= 3; ++g) {
    for (std::size_t d = 1; d <= 4; ++d) {
      double group = 1;
      for (std::size_t k = 2; k <= d; ++k) group *= static_cast<double>(k);
      for (std::size_t b = 0; b <= 4; ++b) {
        if (std::pow(group, 2.0 * g - 1) * std::pow(std::max(group - 1, 1.0), static_cast<double>(b)) > 1.2e6) continue;
        const CensusRow row = enumerate_covers(ClosedSurface::orientable_genus(g), d, b, false);
        ++censuses;
        for (const RealizedSurface& r : row.realized) CHECK(r.surface != ClosedSurface::sphere());
      }
    }
  }
  CHECK(censuses >= 40);
  // The sphere itself is covered by the sphere.
  const CensusRow anchor = enumerate_covers(ClosedSurface::sphere(), 2, 2, true);
  REQUIRE(anchor.realized.size() == 1);
  CHECK(anchor.realized.front().surface == ClosedSurface::sphere());
}

TEST_CASE("canonical form is invariant under relabeling") {
  auto rng = rng_for("canonical");
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = gen::uniform(rng, 1, 7);
    std::vector<Perm> gens;
    for (std::size_t k = gen::uniform(rng, 1, 4); k > 0; --k) gens.push_back(gen::random_perm(rng, d));
    const Perm pi = gen::random_perm(rng, d);
    std::vector<Perm> relabeled;
    for (const Perm& g : gens) relabeled.push_back(conjugate(g, pi));
    CHECK(canonical_form(gens) == canonical_form(relabeled));
  }
}

TEST_CASE("census laws") {
  for (std::size_t b = 0; b <= 8; ++b) {
    const CensusRow row = enumerate_covers(ClosedSurface::sphere(), 2, b, true);
    CHECK(row.transitive_tuples == (b % 2 == 0 && b >= 2 ? 1u : 0u));
  }
  const std::vector<ClosedSurface> bases = {ClosedSurface::sphere(), ClosedSurface::torus(), ClosedSurface::projective_plane(),
                                            ClosedSurface::klein_bottle()};
  for (const ClosedSurface& base : bases) {
    for (std::size_t d = 2; d <= 4; ++d) {
      for (std::size_t b = 0; b <= 4; ++b) {
        const CensusRow one = enumerate_covers(base, d, b, true, {{}, 1});
        const CensusRow many = enumerate_covers(base, d, b, true, {{}, 3});
        CHECK(one == many);
        CHECK(one == enumerate_covers(base, d, b, true));
        for (const RealizedSurface& r : one.realized) {
          CHECK(euler_characteristic(r.surface) == static_cast<int>(d) * euler_characteristic(base) - static_cast<int>(b));
          CHECK(r.classes <= r.raw_count);
        }
      }
    }
  }
}

TEST_CASE("normalization moves") {
  auto rng = rng_for("exhaustion");
  for (int t = 0; t < 150; ++t) {
    const std::size_t levels = gen::uniform(rng, 1, 6);
    const ExhaustionGraph g = gen::random_exhaustion(rng, levels);
    REQUIRE(validate_exhaustion(g).ok());
    const NormalizedExhaustion n = normalize(g);
    CHECK(validate_exhaustion(n.graph).ok());
    CHECK(truncation_euler_characteristic(n.graph) == truncation_euler_characteristic(g));
    CHECK(first_unnormalized_level(n.graph, n.stable_depth) == 0);
    CHECK(std::all_of(n.graph.pieces.begin(), n.graph.pieces.end(), [](const Piece& p) { return p.orientable; }));
    const EndCount e = count_ends(n, n.stable_depth);
    CHECK(e.kind == EndCount::Kind::exact);
    CHECK(e.value == depth_circle_count(g));
    CHECK(normalize(n.graph).graph == n.graph);
    REQUIRE(n.level_origin.size() == n.depth() + 1);
    CHECK(std::is_sorted(n.level_origin.begin() + 1, n.level_origin.end()));
  }
}

TEST_CASE("layered covers of random exhaustions") {
  auto rng = rng_for("layered");
  for (int t = 0; t < 60; ++t) {
    const NormalizedExhaustion n = normalize(gen::random_exhaustion(rng, gen::uniform(rng, 1, 5)));
    const std::size_t J = n.stable_depth;
    const LayeredCover c = build_cover(n, J);
    const LayeredReport r = verify_layered(c);
    CHECK(r.passed);
    CHECK(r.ends <= r.degree);
    // Count sheets over each region: chain sheets of that level plus two
    // inward disk sheets per deeper pants block.
    std::vector<std::size_t> pants(J + 1, 0), chains(J + 1, 0);
    for (const Piece& p : n.graph.pieces) {
      if (p.level > J) continue;
      if (p.level >= 2 && p.outer.size() == 2) ++pants[p.level];
    }
    std::size_t k = 1;
    for (std::size_t j = 1; j <= J; ++j) {
      k += pants[j];
      chains[j] = 2 * k;
    }
    for (std::size_t j = 1; j <= J; ++j) {
      std::size_t sheets = chains[j];
      for (std::size_t i = j + 1; i <= J; ++i) sheets += 2 * pants[i];
      CHECK(sheets == c.degree);
    }
    CHECK(c.degree == chains[J]);
    for (std::size_t i = 1; i < J; ++i) CHECK(restriction_compatibility(c, i));
  }
}

int main(int argc, char** argv) {
  std::vector<char*> rest;
  for (int i = 0; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--seed=", 0) == 0) {
      g_seed = std::stoull(a.substr(7));
    } else if (a == "--seed" && i + 1 < argc) {
      g_seed = std::stoull(argv[++i]);
    } else {
      rest.push_back(argv[i]);
    }
  }
  std::cout << "seed " << g_seed << '\n';
  doctest::Context context(static_cast<int>(rest.size()), rest.data());
  return context.run();
}

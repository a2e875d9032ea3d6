#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "branchcov/errors.hpp"
#include "branchcov/layered.hpp"

using namespace branchcov;

namespace {

ExhaustionGraph family(const std::string& name, std::map<std::string, long> params = {}) {
  ExhaustionGraph g;
  g.supplier = make_supplier(name, params);
  return g;
}

LayeredCover cover_of(const std::string& name, std::size_t J, std::map<std::string, long> params = {}) {
  return build_cover(normalize(materialize(family(name, params), J + 4)), J);
}

const LayeredCheck& check(const LayeredReport& r, const std::string& name) {
  for (const LayeredCheck& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no check " + name);
}


}  // namespace

TEST_CASE("plane truncations are double covers with one branch point") {
  for (std::size_t J : {1u, 2u, 5u, 12u}) {
    const LayeredReport r = verify_layered(cover_of("plane", J));
    CHECK(r.passed);
    CHECK(r.degree == 2);
    CHECK(r.branch_points == 1);
    CHECK(r.ends == 1);
  }
}

TEST_CASE("cylinder") {
  const LayeredCover c = cover_of("k_ended", 6, {{"ends", 2}});
  const LayeredReport r = verify_layered(c);
  CHECK(r.passed);
  CHECK(c.degree == 4);
  CHECK(r.branch_points == 4);
  CHECK(r.euler_characteristic == 0);
  CHECK(r.ends == 2);
}

TEST_CASE("genus adds branch points but not sheets") {
  const LayeredReport r = verify_layered(cover_of("annulus_chain", 20, {{"genus", 1}}));
  CHECK(r.passed);
  CHECK(r.degree == 2);
  CHECK(r.branch_points == 39);
}

TEST_CASE("k ends at depth 20") {
  for (long k = 1; k <= 6; ++k) {
    const LayeredCover c = cover_of("k_ended", 20, {{"ends", k}});
    const LayeredReport r = verify_layered(c);
    CHECK(r.passed);
    CHECK(c.degree == static_cast<std::size_t>(2 * k));
    CHECK(r.ends <= r.degree);
  }
}

TEST_CASE("pants meridians") {
  for (unsigned g = 0; g <= 3; ++g) {
    const std::vector<Perm>& m = pants_meridians(g);
    REQUIRE(m.size() == 2 * g + 3);
    Perm product = Perm::identity(4);
    for (const Perm& p : m) {
      CHECK(p.is_transposition());
      product = product * p;
    }
    CHECK(orbits(m, 4).size() == 1);
    // Inbound (0 1) times the meridians is the outbound monodromy, type (2,2).
    const Perm out = parse_cycles("(0 1)", 4) * product;
    CHECK(cycle_type(out) == std::vector<std::size_t>{2, 2});
  }
  CHECK(&pants_meridians(2) == &pants_meridians(2));
}

TEST_CASE("staircase") {
  CHECK_THROWS_AS(staircase(0), InvalidInput);
  const LayeredCover one = staircase(1);
  REQUIRE(one.blocks.size() == 1);
  CHECK(one.degree == 2);
  CHECK(one.blocks[0].meridians == std::vector<Perm>{parse_cycles("(0 1)", 2)});

  const LayeredCover three = staircase(3);
  CHECK(three.degree == 4);
  REQUIRE(three.blocks.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const Block& b = three.blocks[i];
    CHECK(b.sheets.size() == i + 2);
    REQUIRE(b.meridians.size() == 1);
    CHECK(b.meridians.front() == Perm::transposition(i + 2, static_cast<Sheet>(i), static_cast<Sheet>(i + 1)));
  }
  const LayeredReport r = verify_layered(three);
  CHECK(r.passed);
  CHECK(r.branch_points == 3);
  for (std::size_t i = 1; i < 3; ++i) CHECK(restriction_compatibility(three, i));
  CHECK_THROWS_AS(restriction_compatibility(three, 3), DepthExceeded);
}

TEST_CASE("restriction compatibility of built covers") {
  const LayeredCover c = cover_of("k_ended", 8, {{"ends", 3}});
  for (std::size_t i = 1; i < 8; ++i) CHECK(restriction_compatibility(c, i));
}

TEST_CASE("corrupted covers fail verification") {
  LayeredCover c = cover_of("k_ended", 5, {{"ends", 2}});
  REQUIRE(verify_layered(c).passed);

  LayeredCover bad_meridian = c;
  for (Block& b : bad_meridian.blocks) {
    if (b.kind == BlockKind::pants) {
      b.meridians.back() = parse_cycles("(0 3)", 4);
      break;
    }
  }
  const LayeredReport r = verify_layered(bad_meridian);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(check(r, "relation").passed);

  LayeredCover bad_sheets = c;
  bad_sheets.blocks.back().sheets.back() = 0;
  CHECK_FALSE(verify_layered(bad_sheets).passed);

  LayeredCover bad_gluing = c;
  for (Block& b : bad_gluing.blocks) {
    if (!b.gluings.empty() && b.gluings.front().target) {
      b.gluings.front().target = "nowhere";
      break;
    }
  }
  CHECK_FALSE(check(verify_layered(bad_gluing), "gluing").passed);

  LayeredCover not_simple = staircase(3);
  not_simple.blocks[2].meridians = {parse_cycles("(1 2 3)", 4)};
  CHECK_FALSE(verify_layered(not_simple).passed);
}

TEST_CASE("cover building rejects bad input") {
  ExhaustionGraph star;
  star.pieces = {{"d", 1, 0, {}, {"x"}}, {"q", 2, 0, {"x"}, {"a", "b", "c"}}};
  CHECK_THROWS_AS(build_cover(star, 2), NotNormalized);
  ExhaustionGraph mobius;
  mobius.pieces = {{"d", 1, 0, {}, {"x"}, false}};
  CHECK_THROWS_AS(build_cover(mobius, 1), NonorientableInput);
  CHECK_THROWS_AS(build_cover(materialize(family("plane"), 3), 4), NotNormalized);
}

TEST_CASE("composition with the staircase") {
  const LayeredCover plane = cover_of("plane", 4);
  const ComposedReport a = compose_with_staircase(plane, 3);
  CHECK(a.fiber_count == 8);
  CHECK(a.degree_by_depth.size() == 4);
  CHECK(a.degree_by_depth.front() == 2);
  CHECK(a.degree_by_depth.back() == 8);
  CHECK(std::is_sorted(a.degree_by_depth.begin(), a.degree_by_depth.end()));
  CHECK(std::is_sorted(a.labels.begin(), a.labels.end()));

  const LayeredCover cyl = cover_of("k_ended", 4, {{"ends", 2}});
  CHECK(compose_with_staircase(cyl, 1).fiber_count == 8);
  const ComposedReport id = compose_with_staircase(cyl, 0);
  CHECK(id.fiber_count == 4);

  LayeredCover broken = cyl;
  broken.blocks.front().meridians.front() = Perm::identity(2);
  CHECK_THROWS_AS(compose_with_staircase(broken, 2), UnverifiedInput);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "branchcov/errors.hpp"
#include "branchcov/perm.hpp"

using namespace branchcov;

TEST_CASE("compose uses the right action") {
  const Perm t01 = Perm::transposition(3, 0, 1);
  const Perm t12 = Perm::transposition(3, 1, 2);
  CHECK(compose(Perm::identity(3), t01) == t01);
  // i -> q(p(i)): 0 -> 1 -> 2, 1 -> 0, 2 -> 1
  CHECK(compose(t01, t12) == Perm({2, 0, 1}));
  CHECK(compose(Perm::transposition(2, 0, 1), Perm::transposition(2, 0, 1)) == Perm::identity(2));
  CHECK_THROWS_AS(compose(Perm::identity(2), Perm::identity(3)), DegreeMismatch);
}

TEST_CASE("construction rejects non-bijections") {
  CHECK_THROWS_AS(Perm({0, 0, 1}), InvalidPermutation);
  CHECK_THROWS_AS(Perm({0, 3}), InvalidPermutation);
  CHECK_THROWS_AS(Perm(std::vector<Sheet>{}), InvalidPermutation);
  CHECK_THROWS_AS(Perm::transposition(3, 1, 1), InvalidPermutation);
  const std::vector<Sheet> pts{0, 2};
  CHECK(Perm::cycle(4, pts) == Perm::transposition(4, 0, 2));
}

TEST_CASE("cycle type") {
  CHECK(cycle_type(Perm::identity(4)) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(cycle_type(Perm::transposition(3, 0, 1)) == std::vector<std::size_t>{2, 1});
  const Perm p = parse_cycles("(0 1 2)(3 4)", 5);
  CHECK(cycle_type(p) == std::vector<std::size_t>{3, 2});
  CHECK(cycle_count(p) == 2);
  CHECK(cycles(p) == std::vector<std::vector<Sheet>>{{0, 1, 2}, {3, 4}});
}

TEST_CASE("orbits") {
  using Orbits = std::vector<std::vector<Sheet>>;
  CHECK(orbits(std::vector<Perm>{}, 3) == Orbits{{0}, {1}, {2}});
  CHECK(orbits(std::vector<Perm>{Perm::transposition(3, 0, 1)}, 3) == Orbits{{0, 1}, {2}});
  CHECK(orbits(std::vector<Perm>{Perm::transposition(3, 0, 1), Perm::transposition(3, 1, 2)}, 3) == Orbits{{0, 1, 2}});
  CHECK(orbits(std::vector<Perm>{Perm::transposition(5, 3, 4), Perm::transposition(5, 0, 2)}, 5) ==
        Orbits{{0, 2}, {1}, {3, 4}});
  CHECK_THROWS_AS(orbits(std::vector<Perm>{Perm::identity(2)}, 3), DegreeMismatch);
}

TEST_CASE("inverse, commutator and product") {
  const Perm a = parse_cycles("(0 1 2)", 4);
  const Perm b = parse_cycles("(2 3)", 4);
  CHECK(a * a.inverse() == Perm::identity(4));
  CHECK(commutator(a, b) == a * b * a.inverse() * b.inverse());
  const std::vector<Perm> word{a, b, a};
  CHECK(product(word, 4) == a * b * a);
  CHECK(product(std::vector<Perm>{}, 4) == Perm::identity(4));
}

TEST_CASE("cycle notation round trip") {
  CHECK(to_cycle_string(Perm::identity(3)) == "()");
  CHECK(to_cycle_string(parse_cycles("(2 0 1)", 4)) == "(0 1 2)");
  CHECK(parse_cycles("", 3) == Perm::identity(3));
  CHECK(parse_cycles("id", 3) == Perm::identity(3));
  CHECK(parse_cycles("(0,1)", 3) == Perm::transposition(3, 0, 1));
  // cycles compose left to right
  CHECK(parse_cycles("(0 1)(1 2)", 3) == Perm::transposition(3, 0, 1) * Perm::transposition(3, 1, 2));
  CHECK_THROWS_AS(parse_cycles("(0 5)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(0 1", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("0 1", 3), ParseError);
}

TEST_CASE("extension and restriction") {
  const Perm t = Perm::transposition(2, 0, 1);
  CHECK(t.extended(4) == Perm::transposition(4, 0, 1));
  const Perm p = parse_cycles("(1 3)", 4);
  const std::vector<Sheet> pts{1, 3};
  CHECK(p.restricted(pts) == Perm::transposition(2, 0, 1));
  const std::vector<Sheet> bad{1, 2};
  CHECK_THROWS_AS(p.restricted(bad), InvalidData);
  CHECK(p.is_transposition());
  CHECK_FALSE(Perm::identity(3).is_transposition());
}

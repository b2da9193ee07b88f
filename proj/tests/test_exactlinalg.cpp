#include <catch2/catch.hpp>

#include "nilmult/rational.hpp"
#include "nilmult/subspace.hpp"
#include "property_support.hpp"

using namespace nilmult;

static Vec vec(std::initializer_list<long> entries) {
  Vec v;
  for (long e : entries) v.push_back(Rational(e));
  return v;
}

TEST_CASE("rational strings", "[exactlinalg]") {
  CHECK(to_string(rational(1, 2)) == "1/2");
  CHECK(to_string(rational(4, 2)) == "2");
  CHECK(to_string(rational(-3, 6)) == "-1/2");
  CHECK(to_string(Rational(0)) == "0");
  CHECK(parse_rational("7/3") == rational(7, 3));
  CHECK(parse_rational("-8") == Rational(-8));
  CHECK(parse_rational("6/4") == rational(3, 2));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(rational(1, 0), std::invalid_argument);
}

TEST_CASE("span basics", "[exactlinalg]") {
  CHECK(span({}, 4).dim() == 0);
  CHECK(span({vec({1, 0}), vec({2, 0})}, 2).dim() == 1);
  CHECK(span({vec({1, 2}), vec({3, 4})}, 2).dim() == 2);  // det = -2 != 0
  CHECK_THROWS_AS(span({vec({1, 2, 3})}, 2), DimensionMismatch);
}

TEST_CASE("reduced echelon invariants", "[exactlinalg]") {
  Subspace s = span({vec({2, 4, 6}), vec({1, 1, 1}), vec({0, 2, 4})}, 3);
  REQUIRE(s.dim() == 2);
  for (int r = 0; r < s.dim(); ++r) {
    int p = s.pivots()[r];
    CHECK(s.rows()[r][p] == 1);
    for (int other = 0; other < s.dim(); ++other)
      if (other != r) CHECK(sgn(s.rows()[other][p]) == 0);
  }
  CHECK(s.contains(vec({1, 1, 1})));
  CHECK(s.contains(vec({3, 5, 7})));
  CHECK_FALSE(s.contains(vec({1, 0, 0})));
}

TEST_CASE("sum and intersection basics", "[exactlinalg]") {
  Subspace x_axis = span({vec({1, 0})}, 2);
  Subspace y_axis = span({vec({0, 1})}, 2);
  CHECK(intersect(x_axis, y_axis).dim() == 0);
  CHECK(sum(x_axis, y_axis).dim() == 2);

  Subspace a = span({vec({1, 1, 0}), vec({0, 1, 1})}, 3);
  Subspace b = span({vec({1, 0, 0}), vec({0, 0, 1})}, 3);
  Subspace meet = intersect(a, b);
  REQUIRE(meet.dim() == 1);  // solved exactly: the line through (1, 0, -1)
  CHECK(meet.contains(vec({1, 0, -1})));

  CHECK_THROWS_AS(sum(x_axis, a), DimensionMismatch);
  CHECK_THROWS_AS(intersect(x_axis, a), DimensionMismatch);
}

TEST_CASE("echelon form is canonical", "[exactlinalg]") {
  // seed 101, 200 cases: scaled/permuted spanning sets give identical rows
  proptest::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    int ambient = (int)rng.range(1, 6);
    int count = (int)rng.range(1, 5);
    std::vector<Vec> vectors = proptest::random_vecs(rng, count, ambient);
    std::vector<Vec> shuffled;
    for (int i = count - 1; i >= 0; --i) {
      Vec w = vectors[i];
      Rational scale(rng.range(1, 5));
      for (Rational& x : w) x *= scale;
      shuffled.push_back(std::move(w));
    }
    CHECK(span(vectors, ambient) == span(shuffled, ambient));
  }
}

TEST_CASE("Grassmann identity on random subspaces", "[exactlinalg]") {
  // seed 202, 1000 cases, ambient <= 12, entries in -9..9
  proptest::Rng rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    int ambient = (int)rng.range(1, 12);
    Subspace a = span(proptest::random_vecs(rng, (int)rng.range(0, 4), ambient), ambient);
    Subspace b = span(proptest::random_vecs(rng, (int)rng.range(0, 4), ambient), ambient);
    CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
  }
}

TEST_CASE("coordinate tail intersection examples", "[exactlinalg]") {
  CHECK(coordinate_tail_intersection(span({vec({1, 0, 5}), vec({0, 1, 7})}, 3), 2).dim() == 0);
  CHECK(coordinate_tail_intersection(span({vec({0, 0, 1})}, 3), 2).dim() == 1);
  // eliminating coordinate 1 first exposes the pure-tail row
  Subspace a = span({vec({1, 0, 1}), vec({0, 0, 2})}, 3);
  Subspace tail = coordinate_tail_intersection(a, 2);
  REQUIRE(tail.dim() == 1);
  CHECK(tail.contains(vec({0, 0, 1})));
}

TEST_CASE("tail intersection requires a head-first priority", "[exactlinalg]") {
  Subspace bad(3, {2, 0, 1});  // eliminates the tail coordinate first
  bad.insert(vec({1, 0, 1}));
  CHECK_THROWS_AS(coordinate_tail_intersection(bad, 2), DimensionMismatch);
}

TEST_CASE("tail intersection agrees with generic intersect", "[exactlinalg]") {
  // seed 303, 500 cases; priority orders scramble head and tail separately
  proptest::Rng rng(303);
  for (int trial = 0; trial < 500; ++trial) {
    int ambient = (int)rng.range(2, 9);
    int first_tail = (int)rng.range(0, ambient);
    std::vector<int> priority;
    for (int c = 0; c < first_tail; ++c) priority.push_back(c);
    for (int c = first_tail; c < ambient; ++c) priority.push_back(c);
    for (int i = 1; i < first_tail; ++i)
      std::swap(priority[i], priority[rng.range(0, i)]);
    for (int i = first_tail + 1; i < ambient; ++i)
      std::swap(priority[i], priority[first_tail + rng.range(0, i - first_tail)]);

    Subspace a(ambient, priority);
    for (const Vec& v : proptest::random_vecs(rng, (int)rng.range(0, 5), ambient))
      a.insert(v);

    std::vector<Vec> tail_coords;
    for (int c = first_tail; c < ambient; ++c) {
      Vec e(ambient);
      e[c] = 1;
      tail_coords.push_back(std::move(e));
    }
    Subspace tail_space = span(tail_coords, ambient, priority);
    Subspace expected = intersect(a, tail_space);
    Subspace got = coordinate_tail_intersection(a, first_tail);
    CHECK(got.dim() == expected.dim());
    for (const Vec& row : got.rows()) CHECK(expected.contains(row));
  }
}

TEST_CASE("nullspace", "[exactlinalg]") {
  // x + y + z = 0, x - z = 0  ->  line through (1, -2, 1)
  Subspace k = nullspace({vec({1, 1, 1}), vec({1, 0, -1})}, 3);
  REQUIRE(k.dim() == 1);
  CHECK(k.contains(vec({1, -2, 1})));

  CHECK(nullspace({}, 3).dim() == 3);
  CHECK(nullspace({vec({1, 0}), vec({0, 1})}, 2).dim() == 0);

  // random consistency: every kernel row satisfies every constraint
  proptest::Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    int ambient = (int)rng.range(1, 8);
    std::vector<Vec> constraints =
        proptest::random_vecs(rng, (int)rng.range(0, 6), ambient);
    Subspace kernel = nullspace(constraints, ambient);
    CHECK(kernel.dim() == ambient - span(constraints, ambient).dim());
    for (const Vec& row : kernel.rows())
      for (const Vec& c : constraints) {
        Rational dot(0);
        for (int i = 0; i < ambient; ++i) dot += row[i] * c[i];
        CHECK(sgn(dot) == 0);
      }
  }
}

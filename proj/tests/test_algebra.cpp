#include <catch2/catch.hpp>

#include <memory>

#include "nilmult/catalog.hpp"
#include "nilmult/json_io.hpp"

using namespace nilmult;

static Vec unit(int n, int i) {
  Vec v(n);
  v[i - 1] = 1;
  return v;
}

TEST_CASE("abelian and Heisenberg construction", "[algebra]") {
  NilpotentAlgebra a3 = abelian(3);
  CHECK(a3.dim() == 3);
  CHECK(a3.nilpotency_class() == 1);
  CHECK(a3.center_dim() == 3);
  CHECK(a3.is_abelian());

  NilpotentAlgebra h1 = heisenberg(1);
  CHECK(h1.dim() == 3);
  CHECK(h1.nilpotency_class() == 2);
  CHECK(h1.derived_dim() == 1);
  CHECK(h1.center_dim() == 1);

  NilpotentAlgebra h2 = heisenberg(2);
  CHECK(h2.dim() == 5);
  CHECK(h2.nilpotency_class() == 2);
  CHECK(h2.derived_dim() == 1);
  CHECK(h2.center().contains(unit(5, 5)));
}

TEST_CASE("validation rejects non-nilpotent tables", "[algebra]") {
  NilpotentAlgebra::Table table;
  table[{1, 2}] = {{1, Rational(1)}};  // [x1,x2] = x1
  CHECK_THROWS_AS(NilpotentAlgebra::from_structure_constants(2, table), NotNilpotent);

  NilpotentAlgebra::Table swap_table;  // ad(x1) swaps x2 and x3
  swap_table[{1, 2}] = {{3, Rational(1)}};
  swap_table[{1, 3}] = {{2, Rational(1)}};
  CHECK_THROWS_AS(NilpotentAlgebra::from_structure_constants(3, swap_table), NotNilpotent);
}

TEST_CASE("validation reports the failing Jacobi triple", "[algebra]") {
  NilpotentAlgebra::Table table;
  table[{1, 2}] = {{3, Rational(1)}};
  table[{1, 3}] = {{1, Rational(1)}};  // [[x3,x1],x2] = -x3 breaks Jacobi
  try {
    NilpotentAlgebra::from_structure_constants(3, table);
    FAIL("expected JacobiViolation");
  } catch (const JacobiViolation& e) {
    CHECK(e.i == 1);
    CHECK(e.j == 2);
    CHECK(e.k == 3);
  }
}

TEST_CASE("index validation", "[algebra]") {
  NilpotentAlgebra::Table table;
  table[{2, 1}] = {{1, Rational(1)}};
  CHECK_THROWS_AS(NilpotentAlgebra::from_structure_constants(2, table),
                  std::invalid_argument);
  table.clear();
  table[{1, 2}] = {{5, Rational(1)}};
  CHECK_THROWS_AS(NilpotentAlgebra::from_structure_constants(2, table),
                  std::invalid_argument);
}

TEST_CASE("catalog entries", "[algebra]") {
  NilpotentAlgebra l43 = catalog("L4_3");
  CHECK(l43.dim() == 4);
  CHECK(l43.nilpotency_class() == 3);
  CHECK(l43.derived_dim() == 2);

  NilpotentAlgebra l58 = catalog("L5_8");
  CHECK(l58.dim() == 5);
  CHECK(l58.nilpotency_class() == 2);
  CHECK(l58.derived_dim() == 2);

  NilpotentAlgebra l55 = catalog("L5_5");
  CHECK(l55.dim() == 5);
  CHECK(l55.nilpotency_class() == 3);
  CHECK(l55.derived_dim() == 2);
  CHECK(l55.center_dim() == 1);

  CHECK(catalog("H(2)").dim() == 5);
  CHECK(catalog("A(0)").dim() == 0);
  CHECK(catalog(" A( 7 )").dim() == 7);
  CHECK_THROWS_AS(catalog("L6_19"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("H()"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("H(0)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("A(-1)"), std::invalid_argument);
}

TEST_CASE("sum expressions", "[algebra]") {
  NilpotentAlgebra l = algebra_from_expression("L4_3 + A(1)");
  CHECK(l.dim() == 5);
  CHECK(l.nilpotency_class() == 3);
  CHECK(l.derived_dim() == 2);
  CHECK(l.name() == "L4_3+A(1)");

  NilpotentAlgebra multi = algebra_from_expression("H(1)+A(1)+A(2)");
  CHECK(multi.dim() == 6);
  CHECK(multi.derived_dim() == 1);
  CHECK_THROWS_AS(algebra_from_expression("L4_3+"), std::invalid_argument);
  CHECK_THROWS_AS(algebra_from_expression(""), std::invalid_argument);
}

TEST_CASE("direct sums", "[algebra]") {
  NilpotentAlgebra s = direct_sum(heisenberg(1), abelian(1));
  CHECK(s.dim() == 4);
  CHECK(s.nilpotency_class() == 2);

  // A(2) + A(3) is A(5) as an algebra
  NilpotentAlgebra a5 = direct_sum(abelian(2), abelian(3));
  CHECK(a5.dim() == 5);
  CHECK(a5.structure_constants().empty());
  CHECK(a5.nilpotency_class() == 1);

  CHECK(direct_sum(heisenberg(1), abelian(0)).dim() == 3);

  // class is the max and derived dimensions add, over catalog pairs
  std::vector<NilpotentAlgebra> pool = {abelian(2), heisenberg(1), catalog("L4_3"),
                                        catalog("L5_5"), catalog("L5_8")};
  for (const NilpotentAlgebra& a : pool)
    for (const NilpotentAlgebra& b : pool) {
      NilpotentAlgebra d = direct_sum(a, b);
      CHECK(d.dim() == a.dim() + b.dim());
      CHECK(d.nilpotency_class() ==
            std::max(a.nilpotency_class(), b.nilpotency_class()));
      CHECK(d.derived_dim() == a.derived_dim() + b.derived_dim());
      CHECK(d.center_dim() == a.center_dim() + b.center_dim());
    }
}

TEST_CASE("series data", "[algebra]") {
  SeriesInfo l43 = series(catalog("L4_3"));
  CHECK(l43.lower_central_dims == std::vector<int>{4, 2, 1, 0});
  CHECK(l43.center_dim == 1);
  CHECK(l43.nilpotency_class == 3);

  SeriesInfo h2 = series(heisenberg(2));
  CHECK(h2.lower_central_dims == std::vector<int>{5, 1, 0});
  CHECK(h2.center_dim == 1);
  CHECK(h2.derived_dim == 1);

  SeriesInfo a4 = series(abelian(4));
  CHECK(a4.lower_central_dims == std::vector<int>{4, 0});
  CHECK(a4.center_dim == 4);
  CHECK(a4.nilpotency_class == 1);
}

TEST_CASE("central quotients", "[algebra]") {
  // L4_3 / <x4> is H(1)
  NilpotentAlgebra q = central_quotient(catalog("L4_3"), unit(4, 4));
  CHECK(q.dim() == 3);
  CHECK(q.nilpotency_class() == 2);
  CHECK(q.derived_dim() == 1);
  NilpotentAlgebra::Table h1_table;
  h1_table[{1, 2}] = {{3, Rational(1)}};
  CHECK(q.structure_constants() == h1_table);

  // H(1) / Z is A(2)
  NilpotentAlgebra h1_quotient = central_quotient(heisenberg(1), unit(3, 3));
  CHECK(h1_quotient.dim() == 2);
  CHECK(h1_quotient.is_abelian());

  // dropping the abelian summand of H(1) + A(1) needs the L^2 flag off
  NilpotentAlgebra s = direct_sum(heisenberg(1), abelian(1));
  CHECK_THROWS_AS(central_quotient(s, unit(4, 4), true), std::invalid_argument);
  NilpotentAlgebra back = central_quotient(s, unit(4, 4), false);
  CHECK(back.dim() == 3);
  CHECK(back.derived_dim() == 1);
  CHECK(back.nilpotency_class() == 2);

  // non-central line rejected
  CHECK_THROWS_AS(central_quotient(catalog("L4_3"), unit(4, 3)), std::invalid_argument);
  CHECK_THROWS_AS(central_quotient(catalog("L4_3"), Vec(4)), std::invalid_argument);

  // a central line that is not a coordinate axis: x4 + x5 in L5_8
  {
    Vec diag(5);
    diag[3] = diag[4] = 1;
    NilpotentAlgebra quotient = central_quotient(catalog("L5_8"), diag);
    CHECK(quotient.dim() == 4);
    CHECK(quotient.nilpotency_class() == 2);
    CHECK(quotient.derived_dim() == 1);  // both products now hit the same line
  }

  // class drops by at most one and the dimension by exactly one
  for (const char* name : {"L4_3", "L5_5", "L5_8", "H(2)"}) {
    NilpotentAlgebra l = catalog(name);
    Vec b = l.center().rows()[0];
    if (!l.derived_subalgebra().contains(b)) continue;
    NilpotentAlgebra quotient = central_quotient(l, b);
    CHECK(quotient.dim() == l.dim() - 1);
    CHECK(quotient.nilpotency_class() >= l.nilpotency_class() - 1);
    CHECK(quotient.nilpotency_class() <= l.nilpotency_class());
  }
}

TEST_CASE("full-basis presentations", "[algebra]") {
  FreePresentation a2 = FreePresentation::full_basis(abelian(2), 2);
  CHECK(a2.relators().size() == 1);
  CHECK(a2.algebra().max_length() == 3);

  FreePresentation h1 = FreePresentation::full_basis(heisenberg(1), 2);
  CHECK(h1.relators().size() == 3);
  CHECK(h1.algebra().max_length() == 4);
  CHECK(h1.relator_ideal().dim() == h1.algebra().dim() - 3);

  FreePresentation l43 = FreePresentation::full_basis(catalog("L4_3"), 2);
  CHECK(l43.relators().size() == 6);
  CHECK(l43.algebra().max_length() == 5);
  CHECK(l43.relator_ideal().dim() == l43.algebra().dim() - 4);

  // validation accepts every catalog entry (codimension = dim L)
  for (const char* name : {"A(3)", "H(1)", "H(2)", "L4_3", "L5_5", "L5_8"}) {
    NilpotentAlgebra l = catalog(name);
    FreePresentation p = FreePresentation::full_basis(l, 2);
    CHECK(p.relator_ideal().dim() == p.algebra().dim() - l.dim());
  }
}

TEST_CASE("user presentations validate against the target", "[algebra]") {
  // a minimal presentation of L5_8 on three generators: R = <[x2,x3]> + F^3
  auto f = std::make_shared<TruncatedFreeAlgebra>(3, 4);
  std::vector<FreeLieElement> relators;
  relators.push_back(f->bracket(f->generator(2), f->generator(3)));
  const HallBasis& basis = f->basis();
  for (int r = basis.first_rank_of_length(3); r < basis.first_rank_of_length(4); ++r)
    relators.push_back(f->basis_element(r));
  std::vector<Vec> images = {unit(5, 1), unit(5, 2), unit(5, 3)};
  FreePresentation p(f, relators, images, catalog("L5_8"));
  CHECK(p.relator_ideal().dim() == f->dim() - 5);

  // wrong target dies loudly (the ideal no longer maps to zero)
  CHECK_THROWS_AS(
      FreePresentation(f, relators, std::vector<Vec>{unit(5, 1), unit(5, 2), unit(5, 4)},
                       catalog("L5_5")),
      ValidationError);
}

TEST_CASE("algebra JSON round trip", "[algebra]") {
  for (const char* name : {"L4_3", "L5_5", "H(2)", "A(3)"}) {
    NilpotentAlgebra l = catalog(name);
    Json j = algebra_to_json(l);
    NilpotentAlgebra back = algebra_from_json(j);
    CHECK(back.dim() == l.dim());
    CHECK(back.structure_constants() == l.structure_constants());
    CHECK(back.name() == l.name());
    CHECK(algebra_to_json(back) == j);
  }

  Json fractional = Json::parse(
      R"({"dim": 3, "brackets": {"1,2": {"3": "1/2"}}, "name": "half"})");
  NilpotentAlgebra l = algebra_from_json(fractional);
  CHECK(l.bracket_basis(1, 2).at(3) == rational(1, 2));
  CHECK(algebra_to_json(l)["brackets"]["1,2"]["3"] == "1/2");

  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"dim": "x"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      algebra_from_json(Json::parse(R"({"dim": 2, "brackets": {"2,1": {"1": "1"}}})")),
      std::invalid_argument);
}

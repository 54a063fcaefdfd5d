#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "secamp/field.hpp"
#include "secamp/rng.hpp"

using namespace secamp;

TEST_CASE("scalar arithmetic") {
  FieldSpec f2(2), f5(5), f7(7);
  CHECK(f2.add(1, 1) == 0);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f2.sub(0, 1) == 1);
  CHECK(f5.sub(2, 4) == 3);
  for (uint32_t a = 0; a < 5; ++a) CHECK(f5.sub(a, a) == 0);
  CHECK(f7.inv(3) == 5);
  CHECK(f2.inv(1) == 1);
  CHECK(f5.inv(4) == 4);
  CHECK_THROWS_AS(f5.inv(0), DivisionByZeroError);
  CHECK_THROWS(FieldSpec(4));
  CHECK_THROWS(FieldSpec(1));
}

TEST_CASE("field axioms, random triples") {
  SplitMix64 rng(1);
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    FieldSpec f(p);
    for (int t = 0; t < 500; ++t) {
      const uint32_t a = uint32_t(rng.next_below(p)), b = uint32_t(rng.next_below(p)),
                     c = uint32_t(rng.next_below(p));
      CHECK(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
      CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    }
  }
}

TEST_CASE("element spec mismatch") {
  FieldSpec f2(2), f3(3);
  FieldElement a(1, f2), b(1, f3);
  CHECK_THROWS_AS(a + b, FieldMismatchError);
  CHECK((FieldElement(1, f2) + FieldElement(1, f2)).value() == 0);
}

TEST_CASE("vec_mat_mul basics and linearity") {
  FieldSpec f2(2);
  FieldMatrix eye = FieldMatrix::identity(2, f2);
  CHECK(vec_mat_mul({1, 0}, eye) == FieldVec{1, 0});

  FieldMatrix col(2, 1, f2);
  col.set(0, 0, 1);
  col.set(1, 0, 1);
  CHECK(vec_mat_mul({1, 1}, col) == FieldVec{0});

  // random GF(3) case against a naive double loop
  FieldSpec f3(3);
  SplitMix64 rng(2);
  for (int t = 0; t < 50; ++t) {
    FieldMatrix a(4, 2, f3);
    FieldVec x(4), v(4);
    for (std::size_t i = 0; i < 4; ++i) {
      x[i] = uint32_t(rng.next_below(3));
      v[i] = uint32_t(rng.next_below(3));
      for (std::size_t j = 0; j < 2; ++j) a.set(i, j, uint32_t(rng.next_below(3)));
    }
    FieldVec naive(2, 0);
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t i = 0; i < 4; ++i) naive[j] = (naive[j] + x[i] * a.at(i, j)) % 3;
    CHECK(vec_mat_mul(x, a) == naive);
    CHECK(vec_mat_mul(vec_add(x, v, f3), a) ==
          vec_add(vec_mat_mul(x, a), vec_mat_mul(v, a), f3));
  }
}

TEST_CASE("solve_affine_system small cases") {
  FieldSpec f2(2);
  FieldMatrix eye = FieldMatrix::identity(2, f2);
  auto sol = solve_affine_system(eye, {1, 0});
  REQUIRE(sol.particular.has_value());
  CHECK(*sol.particular == FieldVec{1, 0});
  CHECK(sol.kernel_basis.empty());

  FieldMatrix zero(2, 1, f2);
  CHECK(!solve_affine_system(zero, {1}).particular.has_value());

  FieldMatrix col(2, 1, f2);
  col.set(0, 0, 1);
  col.set(1, 0, 1);
  auto sol2 = solve_affine_system(col, {0});
  REQUIRE(sol2.particular.has_value());
  CHECK(sol2.kernel_basis.size() == 1);
  // preimage must be exactly {(0,0),(1,1)}
  FieldVec other = vec_add(*sol2.particular, sol2.kernel_basis[0], f2);
  CHECK(((*sol2.particular == FieldVec{0, 0} && other == FieldVec{1, 1}) ||
         (*sol2.particular == FieldVec{1, 1} && other == FieldVec{0, 0})));
}

TEST_CASE("solve_affine_system vs exhaustive enumeration") {
  SplitMix64 rng(3);
  for (uint32_t p : {2u, 3u}) {
    FieldSpec f(p);
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 2 + rng.next_below(4), m = 1 + rng.next_below(3);
      FieldMatrix a(n, m, f);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) a.set(i, j, uint32_t(rng.next_below(p)));
      FieldVec y(m);
      for (std::size_t j = 0; j < m; ++j) y[j] = uint32_t(rng.next_below(p));

      // enumerate all p^n inputs
      std::size_t matches = 0;
      FieldVec x(n, 0);
      bool more = true;
      while (more) {
        if (vec_mat_mul(x, a) == y) ++matches;
        std::size_t pos = 0;
        while (pos < n && ++x[pos] == p) x[pos++] = 0;
        more = pos < n;
      }

      auto sol = solve_affine_system(a, y);
      std::size_t predicted = 0;
      if (sol.particular) {
        predicted = 1;
        for (std::size_t k = 0; k < sol.kernel_basis.size(); ++k) predicted *= p;
        CHECK(vec_mat_mul(*sol.particular, a) == y);
        for (const FieldVec& v : sol.kernel_basis)
          CHECK(vec_mat_mul(v, a) == FieldVec(m, 0));
        CHECK(sol.kernel_basis.size() == n - sol.rank);
      }
      CHECK(matches == predicted);
    }
  }
}

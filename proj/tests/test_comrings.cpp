#include <doctest.h>

#include <random>
#include <set>

#include "gradwb/comrings.hpp"

using namespace gw;

namespace {

Field f9() {
  Field f3 = Field::prime(3);
  return Field::extension(f3, {f3.one(), f3.zero(), f3.one()});
}

TestRing::Elem vec(const TestRing& R, std::initializer_list<long> cs) {
  TestRing::Elem e;
  for (long c : cs) e.push_back(R.field().from_int(c));
  return e;
}

std::set<TestRing::Elem> as_set(const std::vector<TestRing::Elem>& v) { return {v.begin(), v.end()}; }

// A maximal ideal contains x iff x is a zero divisor, in a finite ring.
bool exhaustive_zero_divisor(const TestRing& R, const TestRing::Elem& x) {
  for (std::int64_t c = 1; c < R.cardinality(); ++c) {
    if (R.is_zero(R.mul(x, R.element(c)))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("constructors") {
  Field f3 = Field::prime(3);
  TestRing D = TestRing::dual_numbers(f3, 2);
  CHECK(D.dim() == 2);
  CHECK(D.is_zero(D.mul(D.basis(1), D.basis(1))));
  TestRing P = TestRing::product(TestRing::base_field(f3), TestRing::base_field(f3));
  CHECK(P.idempotents().size() == 2);
  TestRing Q6 = TestRing::group_algebra_finite(Field::rationals(), AbelianGroup::cyclic(6));
  CHECK(Q6.dim() == 6);
  CHECK_THROWS_AS(TestRing::from_table(f3, {{vec(D, {1, 0}), vec(D, {0, 1})}, {vec(D, {1, 0}), vec(D, {1, 1})}}, "bad"),
                  InputError);
}

TEST_CASE("non-associative table is rejected") {
  Field q = Field::rationals();
  // Basis 1, a with a*a = 1 + a is fine; make a*a depend inconsistently by breaking the unit row.
  std::vector<std::vector<TestRing::Elem>> t = {
      {{q.one(), q.zero(), q.zero()}, {q.zero(), q.one(), q.zero()}, {q.zero(), q.zero(), q.one()}},
      {{q.zero(), q.one(), q.zero()}, {q.zero(), q.zero(), q.one()}, {q.one(), q.zero(), q.zero()}},
      {{q.zero(), q.zero(), q.one()}, {q.one(), q.zero(), q.zero()}, {q.zero(), q.zero(), q.from_int(2)}}};
  CHECK_THROWS_AS(TestRing::from_table(q, t, "broken"), InputError);
}

TEST_CASE("units and nilpotents") {
  Field f3 = Field::prime(3);
  TestRing D = TestRing::dual_numbers(f3, 2);
  auto x = vec(D, {1, 1});
  CHECK(D.is_unit(x));
  CHECK(D.equal(D.inv(x), vec(D, {1, 2})));
  auto eps = vec(D, {0, 1});
  CHECK(D.is_nilpotent(eps));
  CHECK_FALSE(D.is_unit(eps));
  TestRing P = TestRing::product(TestRing::base_field(f3), TestRing::base_field(f3));
  auto e = vec(P, {1, 0});
  CHECK_FALSE(P.is_unit(e));
  CHECK_FALSE(P.is_nilpotent(e));
}

TEST_CASE("idempotent counts") {
  TestRing Q6 = TestRing::group_algebra_finite(Field::rationals(), AbelianGroup::cyclic(6));
  CHECK(Q6.idempotents().size() == 4);
  TestRing F76 = TestRing::group_algebra_finite(Field::prime(7), AbelianGroup::cyclic(6));
  CHECK(F76.idempotents().size() == 6);
  TestRing D = TestRing::dual_numbers(Field::prime(3), 2);
  REQUIRE(D.idempotents().size() == 1);
  CHECK(D.equal(D.idempotents()[0], D.one()));
  // F3[Z/3] is local; F3[Z/2] splits; F9[Z/2] x F9 gives three blocks.
  CHECK(TestRing::group_algebra_finite(Field::prime(3), AbelianGroup::cyclic(3)).idempotents().size() == 1);
  CHECK(TestRing::group_algebra_finite(Field::prime(3), AbelianGroup::cyclic(2)).idempotents().size() == 2);
  TestRing big = TestRing::product(TestRing::group_algebra_finite(f9(), AbelianGroup::cyclic(2)),
                                   TestRing::base_field(f9()));
  CHECK(big.idempotents().size() == 3);
  // F2[Z/2 + Z/2] is local in characteristic 2.
  CHECK(TestRing::group_algebra_finite(Field::prime(2), AbelianGroup({2, 2}, 0)).idempotents().size() == 1);
  // Q[Z/4] = Q x Q x Q(i).
  CHECK(TestRing::group_algebra_finite(Field::rationals(), AbelianGroup::cyclic(4)).idempotents().size() == 3);
}

TEST_CASE("product ordering puts the first factor first") {
  Field f3 = Field::prime(3);
  TestRing P = TestRing::product(TestRing::base_field(f3), TestRing::base_field(f3));
  CHECK(P.idempotents()[0] == vec(P, {1, 0}));
  CHECK(P.idempotents()[1] == vec(P, {0, 1}));
}

TEST_CASE("idempotent count is additive over products") {
  Field f5 = Field::prime(5);
  std::vector<TestRing> rings = {TestRing::base_field(f5), TestRing::dual_numbers(f5, 3),
                                 TestRing::group_algebra_finite(f5, AbelianGroup::cyclic(2)),
                                 TestRing::group_algebra_finite(f5, AbelianGroup::cyclic(4))};
  for (const auto& a : rings) {
    for (const auto& b : rings) {
      CHECK(TestRing::product(a, b).idempotents().size() == a.idempotents().size() + b.idempotents().size());
    }
  }
}

TEST_CASE("decomposition is basis independent") {
  std::mt19937_64 rng(41);
  std::vector<TestRing> rings = {TestRing::group_algebra_finite(Field::rationals(), AbelianGroup::cyclic(6)),
                                 TestRing::group_algebra_finite(Field::prime(7), AbelianGroup::cyclic(6)),
                                 TestRing::product(TestRing::dual_numbers(Field::prime(3), 2),
                                                   TestRing::base_field(Field::prime(3)))};
  for (const auto& R : rings) {
    const Field& F = R.field();
    for (int trial = 0; trial < 10; ++trial) {
      linalg::Mat P;
      do {
        P = linalg::zeros(F, R.dim(), R.dim());
        for (auto& row : P) {
          for (auto& c : row) c = F.random(rng);
        }
      } while (!linalg::inverse(F, P));
      TestRing S = R.change_basis(P, "rebased");
      std::vector<TestRing::Elem> back;
      for (const auto& e : S.idempotents()) back.push_back(linalg::apply(F, P, e));
      CHECK(as_set(back) == as_set(R.idempotents()));
    }
  }
}

TEST_CASE("nilradical is an ideal and the quotient is reduced") {
  Field f3 = Field::prime(3);
  std::vector<TestRing> rings = {TestRing::dual_numbers(f3, 3), TestRing::group_algebra_finite(f3, AbelianGroup::cyclic(3)),
                                 TestRing::group_algebra_finite(f3, AbelianGroup::cyclic(6)),
                                 TestRing::product(TestRing::dual_numbers(Field::rationals(), 2),
                                                   TestRing::base_field(Field::rationals()))};
  for (const auto& R : rings) {
    const auto& N = R.nilradical();
    for (const auto& x : N) CHECK(R.is_nilpotent(x));
    if (!R.is_finite()) continue;
    // Every nilpotent element lies in the span of N.
    for (std::int64_t c = 0; c < R.cardinality(); ++c) {
      auto x = R.element(c);
      std::vector<TestRing::Elem> ext = N;
      ext.push_back(x);
      bool in_span = linalg::rank(R.field(), ext) == N.size();
      CHECK(in_span == R.is_nilpotent(x));
    }
  }
  CHECK(TestRing::dual_numbers(f3, 3).nilradical().size() == 2);
  CHECK(TestRing::group_algebra_finite(f3, AbelianGroup::cyclic(6)).nilradical().size() == 4);
}

TEST_CASE("unit xor zero divisor in finite rings") {
  Field f3 = Field::prime(3);
  std::vector<TestRing> rings = {TestRing::dual_numbers(f3, 2), TestRing::product(TestRing::base_field(f3), TestRing::base_field(f3)),
                                 TestRing::group_algebra_finite(f3, AbelianGroup::cyclic(3)),
                                 TestRing::group_algebra_finite(Field::prime(2), AbelianGroup::cyclic(3))};
  for (const auto& R : rings) {
    for (std::int64_t c = 0; c < R.cardinality(); ++c) {
      auto x = R.element(c);
      CHECK(R.is_unit(x) != exhaustive_zero_divisor(R, x));
    }
  }
}

TEST_CASE("unit groups") {
  Field f3 = Field::prime(3);
  CHECK(enumerate_units(TestRing::dual_numbers(f3, 2)).elements.size() == 6);
  CHECK(enumerate_units(TestRing::product(TestRing::base_field(f3), TestRing::base_field(f3))).elements.size() == 4);
  auto U7 = enumerate_units(TestRing::base_field(Field::prime(7)));
  CHECK(U7.elements.size() == 6);
  REQUIRE(U7.generators.size() == 1);
  CHECK(U7.generators[0][0] == Field::prime(7).from_int(3));
  CHECK(U7.orders[0] == 6);
  CHECK_THROWS_AS(enumerate_units(TestRing::dual_numbers(f3, 2), 5), CapExceeded);
  CHECK_THROWS_AS(enumerate_units(TestRing::base_field(Field::rationals())), NotEnumerable);
}

TEST_CASE("tables agree with generic arithmetic") {
  std::vector<TestRing> rings = {TestRing::dual_numbers(f9(), 2), TestRing::group_algebra_finite(Field::prime(5), AbelianGroup::cyclic(3)),
                                 TestRing::product(TestRing::dual_numbers(Field::prime(2), 2), TestRing::base_field(Field::prime(2)))};
  std::mt19937_64 rng(8);
  for (const auto& R : rings) {
    const RingTables* T = R.tables();
    REQUIRE(T);
    for (int trial = 0; trial < 300; ++trial) {
      auto a = R.random(rng), b = R.random(rng);
      auto ca = static_cast<std::int32_t>(R.code_of(a)), cb = static_cast<std::int32_t>(R.code_of(b));
      CHECK(T->op_mul(ca, cb) == R.code_of(R.mul(a, b)));
      CHECK(T->op_add(ca, cb) == R.code_of(R.add(a, b)));
      CHECK(T->neg[ca] == R.code_of(R.neg(a)));
      CHECK((T->inv[ca] >= 0) == !Field(R.field()).is_zero(linalg::det(R.field(), R.mult_matrix(a))));
    }
  }
}

TEST_CASE("group algebra arithmetic") {
  Field f3 = Field::prime(3);
  TestRing D = TestRing::dual_numbers(f3, 2);
  GroupAlgebra RG(D, AbelianGroup::cyclic(6));
  auto r1 = vec(D, {1, 1}), r2 = vec(D, {2, 0});
  auto a = RG.add(RG.monomial(r1, {2}), RG.monomial(r2, {3}));
  CHECK(RG.counit(a) == D.add(r1, r2));
  auto g = RG.monomial(D.one(), {1});
  auto ginv = RG.monomial(D.one(), {5});
  CHECK(RG.equal(RG.mul(g, ginv), RG.one()));
  auto u = RG.monomial(r1, {1});
  CHECK(RG.is_unit_monomial(u));
  auto uinv = RG.inverse_monomial(u);
  CHECK(RG.equal(uinv, RG.monomial(vec(D, {1, 2}), {5})));
  CHECK(RG.equal(RG.mul(u, uinv), RG.one()));
  CHECK_FALSE(RG.is_unit_monomial(RG.monomial(vec(D, {0, 1}), {1})));
  // Infinite group: sparse arithmetic still works.
  GroupAlgebra RZ(D, AbelianGroup::free(2));
  auto x = RZ.monomial(D.one(), {1, -3});
  CHECK(RZ.equal(RZ.mul(x, RZ.inverse_monomial(x)), RZ.one()));
  // Ring axioms on random sparse elements.
  std::mt19937_64 rng(3);
  auto rnd = [&] {
    GroupAlgebraElement s;
    for (int k = 0; k < 3; ++k) s = RG.add(s, RG.monomial(D.random(rng), {static_cast<std::int64_t>(rng() % 6)}));
    return s;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto p = rnd(), q = rnd(), r = rnd();
    CHECK(RG.equal(RG.mul(RG.mul(p, q), r), RG.mul(p, RG.mul(q, r))));
    CHECK(RG.equal(RG.mul(p, RG.add(q, r)), RG.add(RG.mul(p, q), RG.mul(p, r))));
    CHECK(RG.equal(RG.mul(p, q), RG.mul(q, p)));
    CHECK(RG.counit(RG.mul(p, q)) == D.mul(RG.counit(p), RG.counit(q)));
  }
}

TEST_CASE("ring literals") {
  TestRing D = TestRing::dual_numbers(Field::prime(3), 2);
  CHECK(D.parse("[1,2]") == vec(D, {1, 2}));
  CHECK(D.parse("2") == vec(D, {2, 0}));
  CHECK(D.format(vec(D, {1, 2})) == "[1,2]");
  CHECK_THROWS_AS(D.parse("[1,2,0]"), InputError);
  TestRing K = TestRing::base_field(f9());
  CHECK(K.format(K.parse("[1,2]")) == "[1,2]");
}

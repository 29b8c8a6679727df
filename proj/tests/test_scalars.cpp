#include <doctest.h>

#include <random>

#include "gradwb/poly.hpp"
#include "gradwb/scalars.hpp"

using namespace gw;

namespace {

Field f9() { return Field::extension(Field::prime(3), {Scalar(std::int64_t{1}), Scalar(std::int64_t{0}), Scalar(std::int64_t{1})}); }

std::vector<Field> small_fields() {
  std::vector<Field> out;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79}) out.push_back(Field::prime(p));
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {7, 2}}) {
    Field base = Field::prime(p);
    out.push_back(Field::extension(base, poly::find_irreducible(base, m)));
  }
  return out;
}

}  // namespace

TEST_CASE("field construction and basic queries") {
  Field f3 = Field::prime(3);
  CHECK(f3.cardinality() == 3);
  CHECK(f3.characteristic() == 3);
  CHECK_THROWS_AS(Field::prime(4), InputError);
  CHECK_THROWS_AS(Field::prime(1), InputError);
  Field k = f9();
  CHECK(k.cardinality() == 9);
  CHECK(k.characteristic() == 3);
  // t^2 + 1 has no root mod 3.
  for (std::int64_t a = 0; a < 3; ++a) CHECK((a * a + 1) % 3 != 0);
  CHECK_THROWS_AS(Field::extension(f3, {Scalar(std::int64_t{1}), Scalar(std::int64_t{1})}), InputError);
  CHECK_THROWS_AS(Field::extension(f3, {Scalar(std::int64_t{1}), Scalar(std::int64_t{0}), Scalar(std::int64_t{2})}),
                  InputError);
  Field q = Field::rationals();
  CHECK(q.characteristic() == 0);
  CHECK_FALSE(q.is_finite());
  CHECK_THROWS_AS(q.cardinality(), NotEnumerable);
}

TEST_CASE("inversion") {
  Field q = Field::rationals();
  CHECK(q.inv(q.parse("3/2")) == q.parse("2/3"));
  Field f7 = Field::prime(7);
  CHECK(f7.inv(f7.from_int(3)) == f7.from_int(5));
  Field k = f9();
  Scalar t = k.generator();
  CHECK(k.inv(t) == k.mul(k.from_int(2), t));
  CHECK_THROWS_AS(f7.inv(f7.zero()), DivisionByZero);
  CHECK_THROWS_AS(q.inv(q.zero()), DivisionByZero);
}

TEST_CASE("reducible modulus is detected lazily") {
  // t^2 - 1 = (t - 1)(t + 1) over F_5: construction succeeds, inverting t - 1 fails.
  Field f5 = Field::prime(5);
  Field f25bad = Field::extension(f5, {f5.from_int(-1), f5.zero(), f5.one()});
  CHECK_THROWS_AS(f25bad.inv(f25bad.sub(f25bad.generator(), f25bad.one())), ReducibleModulus);
  CHECK(f25bad.is_one(f25bad.mul(f25bad.generator(), f25bad.inv(f25bad.generator()))));
  // Over Q there is no table; inversion of t - 1 hits the common factor.
  Field q = Field::rationals();
  Field bad = Field::extension(q, {q.from_int(-1), q.zero(), q.one()});
  Scalar tm1 = bad.sub(bad.generator(), bad.one());
  CHECK_THROWS_AS(bad.inv(tm1), ReducibleModulus);
}

TEST_CASE("unit order") {
  Field f7 = Field::prime(7);
  CHECK(f7.unit_order(f7.from_int(6)) == 2);
  CHECK(f7.unit_order(f7.from_int(3)) == 6);
  CHECK(f7.unit_order(f7.one()) == 1);
  CHECK_THROWS_AS(f7.unit_order(f7.zero()), DivisionByZero);
  CHECK_THROWS_AS(Field::rationals().unit_order(Field::rationals().one()), InputError);
  for (const Field& F : small_fields()) {
    for (const Scalar& x : F.elements()) {
      if (F.is_zero(x)) continue;
      CHECK((F.cardinality() - 1) % F.unit_order(x) == 0);
    }
  }
}

TEST_CASE("dth roots over Q") {
  Field q = Field::rationals();
  auto r = q.dth_root(q.from_int(8), 3);
  REQUIRE(r.status == RootStatus::Witness);
  CHECK(*r.root == q.from_int(2));
  CHECK(q.dth_root(q.parse("1/2"), 3).status == RootStatus::NoSolution);
  r = q.dth_root(q.parse("-27/8"), 3);
  REQUIRE(r.status == RootStatus::Witness);
  CHECK(*r.root == q.parse("-3/2"));
  CHECK(q.dth_root(q.from_int(-4), 2).status == RootStatus::NoSolution);
  r = q.dth_root(q.parse("4/9"), 2);
  REQUIRE(r.status == RootStatus::Witness);
  CHECK(q.pow(*r.root, 2) == q.parse("4/9"));
  CHECK_THROWS_AS(q.dth_root(q.zero(), 3), ArithmeticError);
}

TEST_CASE("dth roots over Q extensions may be unknown, never wrong") {
  Field q = Field::rationals();
  Field k = Field::extension(q, {q.one(), q.one(), q.one()});
  auto r = k.dth_root(k.from_int(8), 3);
  REQUIRE(r.status == RootStatus::Witness);
  CHECK(k.pow(*r.root, 3) == k.from_int(8));
  CHECK(k.dth_root(k.generator(), 2).status == RootStatus::Unknown);
}

TEST_CASE("dth roots over finite fields agree with exhaustive search") {
  Field f7 = Field::prime(7);
  auto r = f7.dth_root(f7.from_int(6), 3);
  REQUIRE(r.status == RootStatus::Witness);
  CHECK(f7.pow(*r.root, 3) == f7.from_int(6));
  // 4 = 1/2 is not a cube mod 7: the cubes are {1, 6}.
  CHECK(f7.dth_root(f7.from_int(4), 3).status == RootStatus::NoSolution);
  for (const Field& F : small_fields()) {
    if (F.cardinality() > 81) continue;
    auto elems = F.elements();
    for (std::int64_t d : {1, 2, 3, 4, 5, 6, 8, 9}) {
      for (const Scalar& c : elems) {
        if (F.is_zero(c)) continue;
        bool exists = false;
        for (const Scalar& x : elems) exists = exists || F.pow(x, d) == c;
        auto res = F.dth_root(c, d);
        CHECK(res.status != RootStatus::Unknown);
        CHECK((res.status == RootStatus::Witness) == exists);
        if (res.status == RootStatus::Witness) CHECK(F.pow(*res.root, d) == c);
      }
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  auto fields = small_fields();
  Field q = Field::rationals();
  fields.push_back(q);
  fields.push_back(Field::extension(q, {q.from_int(-2), q.zero(), q.zero(), q.one()}));
  for (const Field& F : fields) {
    for (int trial = 0; trial < 60; ++trial) {
      Scalar a = F.random(rng), b = F.random(rng), c = F.random(rng);
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.is_zero(F.add(a, F.neg(a))));
      if (!F.is_zero(a)) CHECK(F.is_one(F.mul(a, F.inv(a))));
      CHECK(F.parse(F.format(a)) == a);
    }
  }
}

TEST_CASE("Frobenius fixes every element") {
  for (const Field& F : small_fields()) {
    mpz_class q = F.cardinality();
    for (const Scalar& x : F.elements()) CHECK(F.pow(x, q) == x);
  }
}

TEST_CASE("element literals") {
  Field q = Field::rationals();
  CHECK(q.format(q.parse("-6/4 ")) == "-3/2");
  CHECK_THROWS_AS(q.parse("6/-4"), InputError);
  CHECK(q.format(q.parse("4/2")) == "2");
  CHECK_THROWS_AS(q.parse("1/0"), InputError);
  CHECK_THROWS_AS(q.parse("abc"), InputError);
  Field f7 = Field::prime(7);
  CHECK(f7.format(f7.parse("-1")) == "6");
  Field k = f9();
  CHECK(k.format(k.generator()) == "[0,1]");
  CHECK(k.parse("[2,1]") == k.add(k.from_int(2), k.generator()));
  CHECK(k.parse("2") == k.from_int(2));
}

TEST_CASE("coercion along the tower") {
  Field q = Field::rationals();
  Field f7 = Field::prime(7);
  CHECK(f7.coerce(q, q.parse("1/2")) == f7.from_int(4));
  CHECK_THROWS_AS(f7.coerce(q, q.parse("1/7")), InputError);
  Field k = f9();
  CHECK(k.contains(Field::prime(3)));
  CHECK(k.coerce(Field::prime(3), Field::prime(3).from_int(2)) == k.from_int(2));
}

#include <doctest.h>

#include <random>

#include "gradwb/linalg.hpp"
#include "gradwb/poly.hpp"

using namespace gw;
using poly::Poly;

namespace {

Poly ints(const Field& F, std::initializer_list<long> cs) {
  Poly p;
  for (long c : cs) p.push_back(F.from_int(c));
  return poly::trim(F, p);
}

Poly product(const Field& F, const std::vector<Poly>& fs) {
  Poly out = poly::constant(F, F.one());
  for (const auto& f : fs) out = poly::mul(F, out, f);
  return out;
}

bool has_root(const Field& F, const Poly& p) {
  for (const Scalar& x : F.elements()) {
    if (F.is_zero(poly::eval(F, p, x))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("x^6 - 1 factors into cyclotomic pieces over Q and linear pieces mod 7") {
  Field q = Field::rationals();
  Poly f = ints(q, {-1, 0, 0, 0, 0, 0, 1});
  auto fs = poly::factor_squarefree(q, f);
  CHECK(fs.size() == 4);
  CHECK(poly::equal(q, product(q, fs), f));
  Field f7 = Field::prime(7);
  Poly g = ints(f7, {-1, 0, 0, 0, 0, 0, 1});
  auto gs = poly::factor_squarefree(f7, g);
  CHECK(gs.size() == 6);
  for (const auto& h : gs) CHECK(poly::degree(h) == 1);
  CHECK(poly::equal(f7, product(f7, gs), g));
}

TEST_CASE("integer factorization over Q handles polynomials that split modulo every prime") {
  Field q = Field::rationals();
  CHECK(poly::factor_squarefree(q, ints(q, {-2, 0, 0, 1})).size() == 1);
  // x^4 + 1 and x^4 - 10x^2 + 1 are irreducible but reducible mod every prime.
  CHECK(poly::factor_squarefree(q, ints(q, {1, 0, 0, 0, 1})).size() == 1);
  CHECK(poly::factor_squarefree(q, ints(q, {1, 0, -10, 0, 1})).size() == 1);
  Poly two = poly::mul(q, ints(q, {-2, 0, 1}), ints(q, {-3, 0, 1}));
  auto fs = poly::factor_squarefree(q, two);
  CHECK(fs.size() == 2);
  CHECK(poly::equal(q, product(q, fs), two));
}

TEST_CASE("factor counts over Q survive rational substitutions") {
  Field q = Field::rationals();
  std::mt19937_64 rng(7);
  // Irreducible building blocks: x^2 - k and x^3 - k for k not a square or cube.
  const std::vector<Poly> blocks = {ints(q, {-2, 0, 1}), ints(q, {-3, 0, 1}), ints(q, {-5, 0, 0, 1}),
                                    ints(q, {1, 1, 1}), ints(q, {1, 0, 0, 0, 1}), ints(q, {-7, 1})};
  for (int trial = 0; trial < 40; ++trial) {
    // x -> (a x + b) / c keeps irreducibility and the factor count.
    std::uniform_int_distribution<int> coef(1, 9), shift(-9, 9);
    mpq_class a(coef(rng), coef(rng)), b(shift(rng), coef(rng));
    a.canonicalize();
    b.canonicalize();
    Poly sub = {Scalar(b), Scalar(a)};
    Poly f = poly::constant(q, q.one());
    std::size_t count = 0;
    for (const auto& blk : blocks) {
      if (rng() % 2 == 0) continue;
      Poly composed;
      for (auto it = blk.rbegin(); it != blk.rend(); ++it) composed = poly::add(q, poly::mul(q, composed, sub), poly::constant(q, *it));
      f = poly::mul(q, f, composed);
      ++count;
    }
    if (count == 0) continue;
    auto fs = poly::factor_squarefree(q, f);
    CHECK(fs.size() == count);
    CHECK(poly::equal(q, product(q, fs), poly::monic(q, f)));
  }
}

TEST_CASE("finite-field factorization reproduces the input with irreducible factors") {
  std::mt19937_64 rng(11);
  for (std::int64_t p : {2, 3, 5, 7}) {
    Field F = Field::prime(p);
    for (int trial = 0; trial < 30; ++trial) {
      Poly f;
      int deg = 1 + static_cast<int>(rng() % 8);
      for (int i = 0; i < deg; ++i) f.push_back(F.random(rng));
      f.push_back(F.one());
      f = poly::radical(F, f);
      auto fs = poly::factor_squarefree(F, f);
      CHECK(poly::equal(F, product(F, fs), poly::monic(F, f)));
      for (const auto& h : fs) CHECK(poly::is_irreducible_finite(F, h));
    }
  }
}

TEST_CASE("irreducibility test agrees with exhaustive root search for quadratics and cubics over F9") {
  Field f3 = Field::prime(3);
  Field f9 = Field::extension(f3, ints(f3, {1, 0, 1}));
  auto elems = f9.elements();
  for (const Scalar& a : elems) {
    for (const Scalar& b : elems) {
      Poly p = poly::trim(f9, {b, a, f9.one()});
      CHECK(poly::is_irreducible_finite(f9, p) == !has_root(f9, p));
    }
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    Poly p = poly::trim(f9, {f9.random(rng), f9.random(rng), f9.random(rng), f9.one()});
    CHECK(poly::is_irreducible_finite(f9, p) == !has_root(f9, p));
  }
}

TEST_CASE("radical strips repeated factors in every characteristic") {
  Field f3 = Field::prime(3);
  // (x - 1)^3 (x + 1)^2 = x^3 - 1 squared-ish in char 3.
  Poly p = poly::mul(f3, poly::mul(f3, ints(f3, {-1, 0, 0, 1}), ints(f3, {1, 1})), ints(f3, {1, 1}));
  Poly r = poly::radical(f3, p);
  CHECK(poly::equal(f3, r, poly::mul(f3, ints(f3, {-1, 1}), ints(f3, {1, 1}))));
  Field q = Field::rationals();
  Poly s = poly::mul(q, ints(q, {-2, 0, 1}), ints(q, {-2, 0, 1}));
  CHECK(poly::equal(q, poly::radical(q, s), ints(q, {-2, 0, 1})));
}

TEST_CASE("find_irreducible gives irreducible polynomials of the requested degree") {
  for (std::int64_t p : {2, 3, 5}) {
    Field F = Field::prime(p);
    for (int d = 1; d <= 5; ++d) {
      Poly f = poly::find_irreducible(F, d);
      CHECK(poly::degree(f) == d);
      CHECK(poly::is_irreducible_finite(F, f));
    }
  }
}

TEST_CASE("dense linear algebra") {
  Field q = Field::rationals();
  linalg::Mat A = {{q.from_int(2), q.from_int(1)}, {q.from_int(4), q.from_int(3)}};
  CHECK(linalg::det(q, A) == q.from_int(2));
  auto inv = linalg::inverse(q, A);
  REQUIRE(inv);
  CHECK(linalg::mul(q, A, *inv) == linalg::identity(q, 2));
  linalg::Mat S = {{q.from_int(1), q.from_int(2)}, {q.from_int(2), q.from_int(4)}};
  CHECK_FALSE(linalg::inverse(q, S));
  CHECK(linalg::rank(q, S) == 1);
  auto K = linalg::kernel(q, S, 2);
  REQUIRE(K.size() == 1);
  CHECK(linalg::is_zero(q, linalg::apply(q, S, K[0])));
  CHECK(linalg::solve(q, S, {q.from_int(1), q.from_int(2)}));
  CHECK_FALSE(linalg::solve(q, S, {q.from_int(1), q.from_int(3)}));
}

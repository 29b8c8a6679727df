#include <doctest.h>

#include <random>
#include <set>

#include "gradwb/fixtures.hpp"
#include "gradwb/points.hpp"

using namespace gw;

namespace {

Field f9() {
  Field f3 = Field::prime(3);
  return Field::extension(f3, {f3.one(), f3.zero(), f3.one()});
}

TestRing::Elem el(const TestRing& R, std::initializer_list<long> cs) {
  TestRing::Elem e;
  for (long c : cs) e.push_back(R.field().from_int(c));
  return e;
}

PointMatrix mat(const TestRing& R, std::vector<std::vector<TestRing::Elem>> m) { return PointMatrix{R, std::move(m)}; }

// Every n x n matrix over R, checked against the definitions with plain ring arithmetic.
struct NaiveCounts {
  std::int64_t aut = 0, stab = 0, autgamma = 0, diag = 0;
};

NaiveCounts naive_counts(const Grading& g, const TestRing& R) {
  const Algebra& A = g.algebra();
  const std::size_t n = A.dim();
  const std::int64_t q = R.cardinality();
  NaiveCounts c;
  std::vector<std::int64_t> code(n * n, 0);
  for (;;) {
    std::vector<std::vector<TestRing::Elem>> m(n, std::vector<TestRing::Elem>(n));
    for (std::size_t i = 0; i < n * n; ++i) m[i / n][i % n] = R.element(code[i]);
    // det by permutation expansion (n <= 3 here)
    TestRing::Elem det = R.zero();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
      int inv = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) inv += perm[a] > perm[b];
      }
      TestRing::Elem t = R.one();
      for (std::size_t i = 0; i < n; ++i) t = R.mul(t, m[i][perm[i]]);
      det = inv % 2 ? R.sub(det, t) : R.add(det, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    bool aut = R.is_unit(det);
    for (std::size_t i = 0; i < n && aut; ++i) {
      for (std::size_t j = 0; j < n && aut; ++j) {
        for (std::size_t k = 0; k < n && aut; ++k) {
          TestRing::Elem lhs = R.zero(), rhs = R.zero();
          for (std::size_t l = 0; l < n; ++l) lhs = R.add(lhs, R.scale(A.product(i, j)[l], m[k][l]));
          for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) rhs = R.add(rhs, R.scale(A.product(a, b)[k], R.mul(m[a][i], m[b][j])));
          }
          aut = R.equal(lhs, rhs);
        }
      }
    }
    if (aut) {
      ++c.aut;
      bool stab = true, diag = true;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (g.component_of(i) != g.component_of(j) && !R.is_zero(m[i][j])) stab = diag = false;
          if (i != j && !R.is_zero(m[i][j])) diag = false;
        }
      }
      for (std::size_t s = 0; s < g.support_size() && diag; ++s) {
        for (std::size_t i : g.component(s)) diag = diag && R.equal(m[i][i], m[g.component(s)[0]][g.component(s)[0]]);
      }
      c.stab += stab;
      c.diag += diag;
      // Aut(Gamma): on each block e, every column of a component lies in one common component.
      bool graded = true;
      for (const auto& e : R.idempotents()) {
        std::set<std::size_t> targets;
        for (std::size_t s = 0; s < g.support_size(); ++s) {
          std::set<std::size_t> hit;
          for (std::size_t j : g.component(s)) {
            for (std::size_t i = 0; i < n; ++i) {
              if (!R.is_zero(R.mul(e, m[i][j]))) hit.insert(g.component_of(i));
            }
          }
          if (hit.size() != 1) graded = false;
          else targets.insert(*hit.begin());
        }
        if (targets.size() != g.support_size()) graded = false;
      }
      c.autgamma += graded;
    }
    std::size_t t = n * n;
    while (t > 0) {
      if (++code[t - 1] < q) break;
      code[t - 1] = 0;
      --t;
    }
    if (t == 0) break;
  }
  return c;
}

}  // namespace

TEST_CASE("character points") {
  const Grading c = fixtures::pure_cubic(Field::prime(7));
  const TestRing F7 = TestRing::base_field(Field::prime(7));
  const PointMatrix tau = tau_from_character(c, F7, {el(F7, {2})});
  CHECK(tau.format() == "[[1,0,0],[0,2,0],[0,0,4]]");
  CHECK(automorphism_membership(c.algebra(), tau));
  CHECK_THROWS_AS(tau_from_character(c, F7, {el(F7, {3})}), InputError);

  const Grading h = fixtures::para_hurwitz(Field::prime(3));
  const TestRing D = TestRing::dual_numbers(Field::prime(3), 2);
  const PointMatrix t2 = tau_from_character(h, D, {el(D, {1, 1})});
  CHECK(t2.m[0][0] == el(D, {1, 1}));
  CHECK(t2.m[1][1] == D.mul(el(D, {1, 1}), el(D, {1, 1})));
  CHECK(diag_membership(h, t2).member);
  CHECK(stab_membership(h, t2));
  CHECK(cent_membership_generic(h, t2));
}

TEST_CASE("membership examples") {
  const TestRing F3 = TestRing::base_field(Field::prime(3));
  const Grading h = fixtures::para_hurwitz(Field::prime(3));
  const PointMatrix swap = mat(F3, {{el(F3, {0}), el(F3, {1})}, {el(F3, {1}), el(F3, {0})}});
  CHECK(automorphism_membership(h.algebra(), swap));
  CHECK_FALSE(stab_membership(h, swap));
  CHECK_FALSE(cent_membership_generic(h, swap));
  CHECK(autgamma_membership(h, swap));
  const auto norm = norm_membership_generic(h, swap);
  REQUIRE(norm.member);
  CHECK(format_permutation(h, norm.shifts[0].sigma) == "(1 2)");
  const auto bp = block_permutations(h, swap);
  REQUIRE(bp.ok);
  CHECK(format_permutation(h, bp.blocks[0].sigma) == "(1 2)");
  CHECK(dgroup_norm_membership(h, swap).status == DGroupStatus::Member);

  const TestRing Q = TestRing::base_field(Field::rationals());
  const Grading c = fixtures::pure_cubic(Field::rationals());
  const PointMatrix scale_u = mat(Q, {{el(Q, {1}), el(Q, {0}), el(Q, {0})},
                                      {el(Q, {0}), el(Q, {2}), el(Q, {0})},
                                      {el(Q, {0}), el(Q, {0}), el(Q, {4})}});
  CHECK_FALSE(automorphism_membership(c.algebra(), scale_u));
  CHECK_FALSE(autgamma_membership(c.algebra().dim() ? c : c, scale_u));
  CHECK(automorphism_membership(c.algebra(), PointMatrix::identity(Q, 3)));

  const Grading z = fixtures::zero_product_pair(Field::rationals());
  const PointMatrix d57 = mat(Q, {{el(Q, {5}), el(Q, {0})}, {el(Q, {0}), el(Q, {7})}});
  CHECK(stab_membership(z, d57));
  CHECK(cent_membership_generic(z, d57));
  const auto dm = diag_membership(z, d57);
  REQUIRE(dm.member);
  CHECK(dm.scalars == std::vector<TestRing::Elem>{el(Q, {5}), el(Q, {7})});
  const PointMatrix upper = mat(Q, {{el(Q, {1}), el(Q, {1})}, {el(Q, {0}), el(Q, {1})}});
  CHECK(automorphism_membership(z.algebra(), upper));
  CHECK_FALSE(block_permutations(z, upper).ok);
  CHECK_FALSE(autgamma_membership(z, upper));
  CHECK_FALSE(norm_membership_generic(z, upper).member);
  CHECK_THROWS_AS(stab_membership(c, scale_u), InputError);
}

TEST_CASE("swap of the zero-product pair normalizes generically but not through characters of G") {
  const TestRing Q = TestRing::base_field(Field::rationals());
  const Grading z = fixtures::zero_product_pair(Field::rationals());
  const PointMatrix swap = mat(Q, {{el(Q, {0}), el(Q, {1})}, {el(Q, {1}), el(Q, {0})}});
  CHECK(autgamma_membership(z, swap));
  const auto norm = norm_membership_generic(z, swap);
  REQUIRE(norm.member);
  CHECK(norm.shifts[0].sigma == std::vector<std::size_t>{1, 0});
  const auto dg = dgroup_norm_membership(z, swap);
  CHECK(dg.status == DGroupStatus::NonMember);
  CHECK(dg.relation == std::vector<std::int64_t>{3, 0});
  CHECK(dg.forced == std::vector<std::string>{"1*g3", "1*g2"});
  CHECK(dg.relation_value == "1*g3");
  // Characters themselves normalize.
  CHECK(dgroup_norm_membership(z, PointMatrix::identity(Q, 2)).status == DGroupStatus::Member);
}

TEST_CASE("block permutations over a product ring") {
  const Field f3 = Field::prime(3);
  const TestRing P = TestRing::product(TestRing::base_field(f3), TestRing::base_field(f3));
  const Grading z = fixtures::zero_product_pair(f3);
  // Identity on the first block, swap on the second.
  const PointMatrix phi = mat(P, {{el(P, {1, 0}), el(P, {0, 1})}, {el(P, {0, 1}), el(P, {1, 0})}});
  const auto bp = block_permutations(z, phi);
  REQUIRE(bp.ok);
  REQUIRE(bp.blocks.size() == 2);
  CHECK(bp.blocks[0].idempotent == el(P, {1, 0}));
  CHECK(format_permutation(z, bp.blocks[0].sigma) == "()");
  CHECK(format_permutation(z, bp.blocks[1].sigma) == "(2 3)");
  const auto norm = norm_membership_generic(z, phi);
  REQUIRE(norm.member);
  CHECK(norm.shifts[1].sigma == std::vector<std::size_t>{1, 0});
}

TEST_CASE("enumerated counts match a naive search") {
  const Field f3 = Field::prime(3);
  struct Case {
    Grading g;
    TestRing R;
    std::int64_t aut, diag;
  };
  const std::vector<Case> cases = {
      {fixtures::para_hurwitz(f3), TestRing::base_field(f3), 2, 1},
      {fixtures::para_hurwitz(f3), TestRing::dual_numbers(f3, 2), 6, 3},
      {fixtures::zero_product_pair(f3), TestRing::base_field(f3), 48, 4},
      {fixtures::zero_product_pair(Field::prime(2)), TestRing::dual_numbers(Field::prime(2), 2), -1, -1},
      {fixtures::trivial_dual(f3), TestRing::base_field(f3), -1, -1},
      {fixtures::pure_cubic(Field::prime(2)), TestRing::base_field(Field::prime(2)), -1, -1},
      {fixtures::para_hurwitz(f3), TestRing::product(TestRing::base_field(f3), TestRing::base_field(f3)), 4, 1},
  };
  for (const auto& c : cases) {
    const NaiveCounts naive = naive_counts(c.g, c.R);
    CHECK(count_points(c.g, c.R, PointSet::Aut) == naive.aut);
    CHECK(count_points(c.g, c.R, PointSet::Stab) == naive.stab);
    CHECK(count_points(c.g, c.R, PointSet::AutGamma) == naive.autgamma);
    CHECK(count_points(c.g, c.R, PointSet::Diag) == naive.diag);
    CHECK(static_cast<std::int64_t>(diag_points(c.g, c.R).size()) == naive.diag);
    if (c.aut >= 0) CHECK(naive.aut == c.aut);
    if (c.diag >= 0) CHECK(naive.diag == c.diag);
  }
  CHECK(count_points(fixtures::zero_product_pair(f3), TestRing::base_field(f3), PointSet::AutGamma) == 8);
}

TEST_CASE("diagonal points through the universal group") {
  const Field f3 = Field::prime(3);
  CHECK(diag_points(fixtures::para_hurwitz(f3), TestRing::base_field(f3)).size() == 1);
  CHECK(diag_points(fixtures::para_hurwitz(f3), TestRing::dual_numbers(f3, 2)).size() == 3);
  CHECK(diag_points(fixtures::zero_product_pair(f3), TestRing::base_field(f3)).size() == 4);
  CHECK(diag_points(fixtures::pure_cubic(Field::rationals()), TestRing::base_field(Field::rationals())).size() == 1);
  CHECK(diag_points(fixtures::pure_cubic(Field::prime(7)), TestRing::base_field(Field::prime(7))).size() == 3);
  CHECK_THROWS_AS(diag_points(fixtures::zero_product_pair(Field::rationals()), TestRing::base_field(Field::rationals())),
                  NotEnumerable);
}

TEST_CASE("enumerated point sets are groups") {
  const Field f3 = Field::prime(3);
  const Grading h = fixtures::para_hurwitz(f3);
  const TestRing D = TestRing::dual_numbers(f3, 2);
  for (PointSet which : {PointSet::Aut, PointSet::Stab, PointSet::AutGamma, PointSet::Diag}) {
    const auto pts = enumerate_points(h, D, which);
    const std::set<PointMatrix> set(pts.begin(), pts.end());
    for (const auto& a : pts) {
      CHECK(set.count(inverse(a)));
      for (const auto& b : pts) CHECK(set.count(compose(a, b)));
    }
  }
}

TEST_CASE("generic normalizer equals the group normalizer of Diag in the smooth case") {
  const Field f5 = Field::prime(5);
  const Grading z = fixtures::zero_product_pair(f5);
  const TestRing F5 = TestRing::base_field(f5);
  const auto aut = enumerate_points(z, F5, PointSet::Aut);
  const auto diag = enumerate_points(z, F5, PointSet::Diag);
  const std::set<PointMatrix> dset(diag.begin(), diag.end());
  std::size_t generic = 0, group = 0, both = 0;
  for (const auto& phi : aut) {
    const bool gen = norm_membership_generic(z, phi).member;
    bool normal = true;
    const PointMatrix inv = inverse(phi);
    for (const auto& d : diag) normal = normal && dset.count(compose(compose(phi, d), inv));
    generic += gen;
    group += normal;
    both += gen && normal;
  }
  CHECK(generic == 32);
  CHECK(group == 32);
  CHECK(both == 32);
}

TEST_CASE("table engine and sparse group-algebra tests agree") {
  const Field f3 = Field::prime(3);
  const Grading z = fixtures::zero_product_pair(f3);
  const TestRing P = TestRing::product(TestRing::base_field(f3), TestRing::base_field(f3));
  const auto pts = enumerate_points(z, P, PointSet::Aut);
  const TheoremTally sparse = theorem_tally(z, pts);
  const TheoremTally fast = theorem_tally_enumerated(z, P);
  CHECK(sparse.ok());
  CHECK(fast.ok());
  CHECK(sparse.points == fast.points);
  CHECK(sparse.stab == fast.stab);
  CHECK(sparse.autgamma == fast.autgamma);
  CHECK(fast.autgamma == 64);
}

TEST_CASE("sampled automorphisms over infinite and large rings") {
  std::mt19937_64 rng(5);
  const Field q = Field::rationals();
  const std::vector<Grading> gs = {fixtures::zero_product_pair(q), fixtures::pure_cubic(q), fixtures::trivial_dual(q)};
  const std::vector<TestRing> rings = {TestRing::dual_numbers(q, 2), TestRing::group_algebra_finite(q, AbelianGroup::cyclic(3)),
                                       TestRing::product(TestRing::base_field(q), TestRing::base_field(q))};
  for (const auto& g : gs) {
    for (const auto& R : rings) {
      const auto pts = sample_automorphisms(g, R, 30, rng);
      CHECK(pts.size() == 30);
      CHECK(theorem_tally(g, pts).ok());
    }
  }
  // Q[Z/3] carries the cube roots of unity, so the cubic grading has three diagonal points there.
  const auto pts = sample_automorphisms(fixtures::pure_cubic(q), TestRing::group_algebra_finite(q, AbelianGroup::cyclic(3)), 60, rng);
  std::set<PointMatrix> distinct(pts.begin(), pts.end());
  CHECK(distinct.size() == 3);
}

TEST_CASE("derivations") {
  CHECK(derivations(fixtures::zero_product_pair(Field::rationals()).algebra()).size() == 4);
  CHECK(derivations(fixtures::para_hurwitz(Field::prime(3)).algebra()).size() == 1);
  CHECK(derivations(fixtures::pure_cubic(Field::rationals()).algebra()).empty());
  CHECK(derivations(fixtures::trivial_dual(Field::rationals()).algebra()).size() == 1);
}

TEST_CASE("point matrix literals round-trip") {
  const TestRing D = TestRing::dual_numbers(Field::prime(3), 2);
  const PointMatrix p = mat(D, {{el(D, {1, 1}), el(D, {0, 2})}, {el(D, {0, 0}), el(D, {2, 0})}});
  CHECK(PointMatrix::parse(D, 2, p.format()) == p);
  CHECK_THROWS_AS(PointMatrix::parse(D, 3, p.format()), InputError);
}

#include <doctest.h>

#include <random>
#include <set>

#include "gradwb/abgroups.hpp"

using namespace gw;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  IntMatrix M(r, c);
  std::uniform_int_distribution<int> dist(lo, hi);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) M(i, j) = dist(rng);
  }
  return M;
}

// gcd of all k x k minors, by brute subset enumeration.
mpz_class determinantal_divisor(const IntMatrix& M, std::size_t k) {
  std::vector<std::size_t> rs, cs;
  mpz_class g = 0;
  std::function<void(std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
    if (rs.size() == k) {
      pick_cols(0);
      return;
    }
    for (std::size_t i = start; i < M.rows(); ++i) {
      rs.push_back(i);
      pick_rows(i + 1);
      rs.pop_back();
    }
  };
  pick_cols = [&](std::size_t start) {
    if (cs.size() == k) {
      IntMatrix sub(k, k);
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) sub(a, b) = M(rs[a], cs[b]);
      }
      mpz_class d = determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t j = start; j < M.cols(); ++j) {
      cs.push_back(j);
      pick_cols(j + 1);
      cs.pop_back();
    }
  };
  pick_rows(0);
  return g;
}

std::vector<mpz_class> invariant_factors_by_minors(const IntMatrix& M) {
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(M.rows(), M.cols()); ++k) {
    mpz_class dk = determinantal_divisor(M, k);
    if (dk == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

}  // namespace

TEST_CASE("Smith form of the three-relation example gives diag(1,3)") {
  IntMatrix M = IntMatrix::from_rows({{2, -1}, {1, 1}, {-1, 2}}, 2);
  SmithForm S = smith_normal_form(M);
  CHECK(S.diagonal() == std::vector<mpz_class>{1, 3});
  CHECK(S.U * M * S.V == S.D);
}

TEST_CASE("Smith form of zero and identity matrices") {
  IntMatrix Z(2, 2);
  CHECK(smith_normal_form(Z).D == Z);
  IntMatrix I = IntMatrix::identity(3);
  SmithForm S = smith_normal_form(I);
  CHECK(S.D == I);
  IntMatrix E(0, 3);
  CHECK(smith_normal_form(E).V.rows() == 3);
}

TEST_CASE("Smith diagonal matches determinantal divisors on random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix M = random_matrix(rng, r, c, -6, 6);
    SmithForm S = smith_normal_form(M);
    CHECK(S.diagonal() == invariant_factors_by_minors(M));
    CHECK(abs(determinant(S.U)) == 1);
    CHECK(abs(determinant(S.V)) == 1);
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(3);
  std::function<mpz_class(const IntMatrix&)> cofactor = [&](const IntMatrix& A) -> mpz_class {
    if (A.rows() == 1) return A(0, 0);
    mpz_class s = 0;
    for (std::size_t j = 0; j < A.cols(); ++j) {
      IntMatrix m(A.rows() - 1, A.cols() - 1);
      for (std::size_t i = 1; i < A.rows(); ++i) {
        for (std::size_t k = 0, kk = 0; k < A.cols(); ++k) {
          if (k != j) m(i - 1, kk++) = A(i, k);
        }
      }
      s += (j % 2 ? -1 : 1) * A(0, j) * cofactor(m);
    }
    return s;
  };
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix M = random_matrix(rng, n, n, -9, 9);
    if (trial % 7 == 0 && n > 1) {
      for (std::size_t j = 0; j < n; ++j) M(1, j) = M(0, j) * 2;
    }
    CHECK(determinant(M) == cofactor(M));
  }
}

TEST_CASE("presentations") {
  auto P = group_from_presentation({2, IntMatrix::from_rows({{2, -1}, {1, 1}, {-1, 2}}, 2)});
  CHECK(P.group.format() == "Z/3");
  auto F = group_from_presentation({2, IntMatrix(0, 2)});
  CHECK(F.group.format() == "Z^2");
  auto C = group_from_presentation({1, IntMatrix::from_rows({{6}}, 1)});
  CHECK(C.group.format() == "Z/6");
  auto T = group_from_presentation({2, IntMatrix::from_rows({{1, 0}, {0, 1}}, 2)});
  CHECK(T.group.format() == "0");
}

TEST_CASE("presentation invariance under row operations and relations vanish under projection") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t m = 1 + rng() % 4, r = rng() % 5;
    IntMatrix R = random_matrix(rng, r, m, -5, 5);
    auto P = group_from_presentation({m, R});
    for (std::size_t i = 0; i < r; ++i) {
      AbelianGroup::Elem e = P.group.zero();
      for (std::size_t j = 0; j < m; ++j) {
        e = P.group.add(e, P.group.scale(R(i, j).get_si(), P.projection[j]));
      }
      CHECK(P.group.is_zero(e));
    }
    IntMatrix R2 = R;
    if (r >= 2) {
      R2.swap_rows(0, r - 1);
      R2.add_row(0, 1, static_cast<long>(rng() % 7) - 3);
      R2.negate_row(1);
    }
    CHECK(group_from_presentation({m, R2}).group == P.group);
    // Each canonical generator is the image of its lift.
    for (std::size_t i = 0; i < P.lift.size(); ++i) {
      AbelianGroup::Elem e = P.group.zero();
      for (std::size_t j = 0; j < m; ++j) e = P.group.add(e, P.group.scale(P.lift[i][j].get_si(), P.projection[j]));
      CHECK(e == P.group.generator(i));
    }
  }
}

TEST_CASE("subgroups and relation lattices") {
  AbelianGroup Z6 = AbelianGroup::cyclic(6);
  Subgroup H = subgroup_generated(Z6, {{2}, {3}});
  CHECK(H.H.format() == "Z/6");
  CHECK(H.is_whole_group);
  CHECK(H.relation_lattice == IntMatrix::from_rows({{3, 0}, {0, 2}}, 2));
  // Index check: |Z^2 / lattice| = 6.
  CHECK(determinant(H.relation_lattice) == 6);

  Subgroup H2 = subgroup_generated(Z6, {{2}});
  CHECK(H2.H.format() == "Z/3");
  CHECK_FALSE(H2.is_whole_group);

  Subgroup H3 = subgroup_generated(AbelianGroup::free(2), {});
  CHECK(H3.H.is_trivial());

  Subgroup H4 = subgroup_generated(AbelianGroup::cyclic(3), {{1}, {2}});
  CHECK(H4.relation_lattice == IntMatrix::from_rows({{1, 1}, {0, 3}}, 2));
}

TEST_CASE("subgroup contains its generators and the lattice annihilates them") {
  std::mt19937_64 rng(17);
  std::vector<AbelianGroup> groups = {AbelianGroup({2, 4}, 1), AbelianGroup({6}, 0), AbelianGroup({}, 2),
                                      AbelianGroup({3, 9}, 0)};
  for (const auto& G : groups) {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<AbelianGroup::Elem> S;
      std::size_t s = rng() % 4;
      for (std::size_t k = 0; k < s; ++k) {
        AbelianGroup::Elem x(G.ngens());
        for (auto& v : x) v = static_cast<std::int64_t>(rng() % 11) - 5;
        S.push_back(G.normalize(x));
      }
      Subgroup H = subgroup_generated(G, S);
      for (const auto& x : S) CHECK(express_in(G, S, x).has_value());
      for (std::size_t i = 0; i < H.relation_lattice.rows(); ++i) {
        AbelianGroup::Elem e = G.zero();
        for (std::size_t j = 0; j < s; ++j) e = G.add(e, G.scale(H.relation_lattice(i, j).get_si(), S[j]));
        CHECK(G.is_zero(e));
      }
      // Inclusion of H generators lands on sums of S.
      for (const auto& g : H.inclusion) CHECK(express_in(G, S, g).has_value());
      if (G.is_finite()) {
        std::set<AbelianGroup::Elem> span;
        span.insert(G.zero());
        bool grew = true;
        while (grew) {
          grew = false;
          for (auto x : std::vector<AbelianGroup::Elem>(span.begin(), span.end())) {
            for (const auto& y : S) grew |= span.insert(G.add(x, y)).second;
          }
        }
        CHECK(static_cast<std::int64_t>(span.size()) == H.H.order());
        for (const auto& g : G.elements()) CHECK(express_in(G, S, g).has_value() == (span.count(g) > 0));
      }
    }
  }
}

TEST_CASE("group literals") {
  CHECK(AbelianGroup::parse("Z/2 + Z/4 + Z^1").format() == "Z/2 + Z/4 + Z^1");
  CHECK(AbelianGroup::parse("Z^2").rank() == 2);
  CHECK(AbelianGroup::parse("Z").rank() == 1);
  CHECK(AbelianGroup::parse("0").is_trivial());
  CHECK_THROWS_AS(AbelianGroup::parse("Z/2 + Z/3"), InputError);
  CHECK_THROWS_AS(AbelianGroup::parse("Q"), InputError);
  AbelianGroup G = AbelianGroup::parse("Z/2 + Z/4 + Z^1");
  CHECK(G.parse_element("3,5,-2") == AbelianGroup::Elem{1, 1, -2});
  CHECK(G.format(G.parse_element("(1,2,3)")) == "(1,2,3)");
  CHECK_THROWS_AS(G.parse_element("1,2"), InputError);
  CHECK(AbelianGroup::cyclic(6).element_order({2}) == 3);
  CHECK(G.element_order({1, 0, 1}) == 0);
}

TEST_CASE("character counts") {
  // Z/3 into F_7^x (cyclic of order 6): 3 characters.
  auto cyc = [](std::int64_t n) {
    return [n](std::size_t i, std::int64_t d) { return (static_cast<std::int64_t>(i) * d) % n == 0; };
  };
  CHECK(enumerate_characters(AbelianGroup::cyclic(3), 6, cyc(6)).size() == 3);
  CHECK(hom_count(AbelianGroup::cyclic(3), AbelianGroup::cyclic(6)) == 3);
  // Z/3 into {+1, -1}: only the trivial character.
  CHECK(enumerate_characters(AbelianGroup::cyclic(3), 2, cyc(2)).size() == 1);
  // Z^2 into F_3^x: 4 characters.
  CHECK(enumerate_characters(AbelianGroup::free(2), 2, cyc(2)).size() == 4);
  CHECK(hom_count(AbelianGroup::free(2), AbelianGroup::cyclic(2)) == 4);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 12);
    AbelianGroup U({}, 0);
    std::int64_t d1 = 2 + static_cast<std::int64_t>(rng() % 4);
    U = AbelianGroup({d1, d1 * (1 + static_cast<std::int64_t>(rng() % 3))}, static_cast<int>(rng() % 2));
    auto chars = enumerate_characters(U, static_cast<std::size_t>(n), cyc(n));
    CHECK(static_cast<std::int64_t>(chars.size()) == hom_count(U, AbelianGroup::cyclic(n)));
  }
}

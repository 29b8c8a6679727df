#include "gradwb/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gradwb/comrings.hpp"
#include "gradwb/poly.hpp"

namespace gw {

PermGroup::Perm perm_compose(const PermGroup::Perm& a, const PermGroup::Perm& b) {
  PermGroup::Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

namespace {

PermGroup::Perm identity_perm(std::size_t n) {
  PermGroup::Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

}  // namespace

PermGroup PermGroup::trivial(std::size_t degree) { return generated(degree, {}); }

PermGroup PermGroup::generated(std::size_t degree, const std::vector<Perm>& gens) {
  std::set<Perm> seen{identity_perm(degree)};
  std::vector<Perm> frontier{identity_perm(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier) {
      for (const auto& s : gens) {
        if (s.size() != degree) throw InputError("permutation has the wrong degree");
        Perm y = perm_compose(s, x);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return from_elements(degree, std::vector<Perm>(seen.begin(), seen.end()));
}

PermGroup PermGroup::from_elements(std::size_t degree, std::vector<Perm> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  const std::set<Perm> set(elems.begin(), elems.end());
  if (!set.count(identity_perm(degree))) throw IdentityViolation("permutation set lacks the identity");
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      if (!set.count(perm_compose(a, b))) throw IdentityViolation("permutation set is not closed under composition");
    }
  }
  PermGroup g;
  g.degree_ = degree;
  g.elements_ = std::move(elems);
  // Greedy generators: add each element not yet reached, in sorted order.
  std::set<Perm> reached{identity_perm(degree)};
  for (const auto& x : g.elements_) {
    if (reached.count(x)) continue;
    g.gens_.push_back(x);
    std::vector<Perm> frontier(reached.begin(), reached.end());
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const auto& y : frontier) {
        for (const auto& s : g.gens_) {
          Perm z = perm_compose(s, y);
          if (reached.insert(z).second) next.push_back(std::move(z));
        }
      }
      frontier = std::move(next);
    }
  }
  return g;
}

bool PermGroup::contains(const Perm& p) const { return std::binary_search(elements_.begin(), elements_.end(), p); }

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  return degree_ == other.degree_ &&
         std::all_of(elements_.begin(), elements_.end(), [&](const Perm& p) { return other.contains(p); });
}

namespace {

bool admissible(const Grading& g, const PermGroup::Perm& sigma) {
  const std::size_t m = g.support_size();
  const auto& P = g.pattern();
  const auto& G = g.group();
  for (std::size_t s = 0; s < m; ++s) {
    if (g.component(sigma[s]).size() != g.component(s).size()) return false;
  }
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      if (P[s][t] != P[sigma[s]][sigma[t]]) return false;
      if (!P[s][t]) continue;
      const std::size_t st = g.support_index(G.add(g.support()[s], g.support()[t]));
      const auto image = g.find_support(G.add(g.support()[sigma[s]], g.support()[sigma[t]]));
      if (!image || *image != sigma[st]) return false;
    }
  }
  return true;
}

// Coordinate of x_s x_t on x_{s+t} for a thin grading.
Scalar structure_constant(const Grading& g, std::size_t s, std::size_t t) {
  const auto& G = g.group();
  const std::size_t st = g.support_index(G.add(g.support()[s], g.support()[t]));
  return g.algebra().product(g.component(s)[0], g.component(t)[0])[g.component(st)[0]];
}

std::string equation_text(const Field& F, const PowerEquation& e, std::size_t r) {
  return "mu" + std::to_string(r) + "^" + std::to_string(e.d) + " = " + F.format(e.c);
}

}  // namespace

std::vector<PermGroup::Perm> admissible_permutations(const Grading& g) {
  const std::size_t m = g.support_size();
  if (m > 9) throw CapExceeded("support too large to enumerate permutations");
  std::vector<PermGroup::Perm> out;
  PermGroup::Perm sigma = identity_perm(m);
  do {
    if (admissible(g, sigma)) out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<PowerEquation> ThinConstraintSystem::power_equations() const {
  return std::vector<PowerEquation>(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(rank));
}

ThinConstraintSystem thin_constraints(const Grading& g, const PermGroup::Perm& sigma) {
  if (!g.is_thin()) throw InputError("thin constraints need every component to be one-dimensional");
  const std::size_t m = g.support_size();
  if (sigma.size() != m || !admissible(g, sigma)) throw InputError("permutation is not admissible for the grading");
  const Field& F = g.algebra().field();
  const auto& G = g.group();
  ThinConstraintSystem sys;
  sys.field = F;
  sys.sigma = sigma;
  sys.exponents = IntMatrix(0, m);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      if (!g.pattern()[s][t]) continue;
      const std::size_t st = g.support_index(G.add(g.support()[s], g.support()[t]));
      // lambda_s lambda_t c(sigma s, sigma t) = c(s, t) lambda_{s+t}
      std::vector<mpz_class> row(m, 0);
      row[s] += 1;
      row[t] += 1;
      row[st] -= 1;
      sys.pairs.emplace_back(s, t);
      sys.exponents.append_row(row);
      sys.constants.push_back(F.div(structure_constant(g, s, t), structure_constant(g, sigma[s], sigma[t])));
    }
  }
  const SmithForm snf = smith_normal_form(sys.exponents);
  sys.V = snf.V;
  sys.rank = snf.rank();
  const std::size_t rows = sys.exponents.rows();
  for (std::size_t r = 0; r < rows; ++r) {
    PowerEquation e;
    e.d = r < m ? snf.D(r, r).get_si() : 0;
    e.c = F.one();
    for (std::size_t k = 0; k < rows; ++k) {
      if (snf.U(r, k) != 0) e.c = F.mul(e.c, F.pow(sys.constants[k], snf.U(r, k)));
    }
    sys.reduced.push_back(std::move(e));
  }
  return sys;
}

std::string solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solvable:
      return "solvable";
    case SolveStatus::Unsolvable:
      return "unsolvable";
    case SolveStatus::Unknown:
      break;
  }
  return "unknown";
}

ThinSolution thin_solve_closure(const ThinConstraintSystem& sys) {
  ThinSolution out;
  for (std::size_t r = sys.rank; r < sys.reduced.size(); ++r) {
    if (!sys.field.is_one(sys.reduced[r].c)) {
      out.status = SolveStatus::Unsolvable;
      out.obstruction = equation_text(sys.field, sys.reduced[r], r);
      return out;
    }
  }
  out.status = SolveStatus::Solvable;
  return out;
}

ThinSolution thin_solve_field(const ThinConstraintSystem& sys) {
  ThinSolution out = thin_solve_closure(sys);
  if (out.status != SolveStatus::Solvable) return out;
  const Field& F = sys.field;
  const std::size_t n = sys.unknowns();
  std::vector<Scalar> mu(n, F.one());
  for (std::size_t r = 0; r < sys.rank; ++r) {
    const RootResult root = F.dth_root(sys.reduced[r].c, sys.reduced[r].d);
    if (root.status != RootStatus::Witness) {
      out.status = root.status == RootStatus::NoSolution ? SolveStatus::Unsolvable : SolveStatus::Unknown;
      out.obstruction = equation_text(F, sys.reduced[r], r);
      return out;
    }
    mu[r] = *root.root;
  }
  out.witness.assign(n, F.one());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      if (sys.V(j, l) != 0) out.witness[j] = F.mul(out.witness[j], F.pow(mu[l], sys.V(j, l)));
    }
  }
  // The witness must satisfy the raw system.
  for (std::size_t r = 0; r < sys.exponents.rows(); ++r) {
    Scalar v = F.one();
    for (std::size_t j = 0; j < n; ++j) v = F.mul(v, F.pow(out.witness[j], sys.exponents(r, j)));
    if (!(v == sys.constants[r])) throw IdentityViolation("thin solver witness fails a raw constraint");
  }
  return out;
}

std::int64_t thin_solution_count(const ThinConstraintSystem& sys) {
  const Field& F = sys.field;
  const std::int64_t units = F.cardinality() - 1;
  if (thin_solve_closure(sys).status != SolveStatus::Solvable) return 0;
  std::int64_t count = 1;
  for (std::size_t r = 0; r < sys.rank; ++r) {
    const auto& e = sys.reduced[r];
    const RootResult root = F.dth_root(e.c, e.d);
    if (root.status != RootStatus::Witness) return 0;
    count *= std::gcd(e.d, units);
  }
  for (std::size_t l = sys.rank; l < sys.unknowns(); ++l) count *= units;
  return count;
}

PointMatrix thin_point(const Grading& g, const PermGroup::Perm& sigma, const std::vector<Scalar>& lambda) {
  const TestRing R = TestRing::base_field(g.algebra().field());
  const std::size_t n = g.algebra().dim();
  PointMatrix p{R, std::vector<std::vector<TestRing::Elem>>(n, std::vector<TestRing::Elem>(n, R.zero()))};
  for (std::size_t s = 0; s < g.support_size(); ++s) {
    p.m[g.component(sigma[s])[0]][g.component(s)[0]] = TestRing::Elem{lambda[s]};
  }
  return p;
}

PermGroup weyl_closure(const Grading& g) {
  if (!g.is_thin()) throw InputError("the closure Weyl group is only computed for thin gradings");
  std::vector<PermGroup::Perm> found;
  for (const auto& sigma : admissible_permutations(g)) {
    if (thin_solve_closure(thin_constraints(g, sigma)).status == SolveStatus::Solvable) found.push_back(sigma);
  }
  return PermGroup::from_elements(g.support_size(), std::move(found));
}

namespace {

Grading read_in(const Grading& g, const Field& K) { return K == g.algebra().field() ? g : reduce_to(g, K); }

}  // namespace

PermGroup weyl_over_field(const Grading& g0, const Field& K, std::int64_t cap) {
  const Grading g = read_in(g0, K);
  std::vector<PermGroup::Perm> found;
  if (g.is_thin()) {
    for (const auto& sigma : admissible_permutations(g)) {
      const ThinSolution sol = thin_solve_field(thin_constraints(g, sigma));
      if (sol.status == SolveStatus::Unknown) {
        throw NotEnumerable("cannot decide " + sol.obstruction + " over " + K.name());
      }
      if (sol.status != SolveStatus::Solvable) continue;
      if (!autgamma_membership(g, thin_point(g, sigma, sol.witness))) {
        throw IdentityViolation("thin solver witness is not a graded automorphism");
      }
      found.push_back(sigma);
    }
  } else {
    if (!K.is_finite()) throw NotEnumerable("Weyl group of a non-thin grading over an infinite field");
    for (const auto& p : enumerate_points(g, TestRing::base_field(K), PointSet::AutGamma, cap)) {
      const auto bp = block_permutations(g, p);
      if (!bp.ok) throw IdentityViolation("enumerated Aut(Gamma) point permutes no components");
      found.push_back(bp.blocks[0].sigma);
    }
  }
  return PermGroup::from_elements(g.support_size(), std::move(found));
}

std::int64_t thin_autgamma_count(const Grading& g0, const Field& K) {
  const Grading g = read_in(g0, K);
  std::int64_t total = 0;
  for (const auto& sigma : admissible_permutations(g)) total += thin_solution_count(thin_constraints(g, sigma));
  return total;
}

SesReport ses_check(const Grading& g0, const Field& K, std::int64_t cap) {
  if (!K.is_finite()) throw NotEnumerable("exact sequence check needs a finite field");
  const Grading g = read_in(g0, K);
  const TestRing R = TestRing::base_field(K);
  SesReport rep;
  rep.autgamma = count_points(g, R, PointSet::AutGamma, cap);
  rep.stab = count_points(g, R, PointSet::Stab, cap);
  const PermGroup W = weyl_over_field(g, K, cap);
  rep.weyl_order = W.order();
  rep.counts_ok = rep.autgamma == rep.stab * static_cast<std::int64_t>(rep.weyl_order);
  if (g.is_thin()) {
    const PermGroup C = weyl_closure(g);
    rep.closure_order = C.order();
    rep.contained = W.is_subgroup_of(C);
    rep.thin_count = thin_autgamma_count(g, K);
  }
  return rep;
}

Field finite_extension(const Field& F, int m) {
  if (m == 1) return F;
  return Field::extension(F, poly::find_irreducible(F, m));
}

}  // namespace gw

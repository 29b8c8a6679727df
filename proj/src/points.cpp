#include "gradwb/points.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "gradwb/text.hpp"
#include "point_engine.hpp"

namespace gw {

using detail::CodeOps;
using detail::Engine;
using detail::GeneralOps;
using detail::SearchSet;

namespace {

Grading trivial_grading(const Field& F, std::size_t n) {
  Algebra::Table t(n, std::vector<Algebra::Vec>(n, Algebra::Vec(n, F.zero())));
  return Grading::build(Algebra(F, std::move(t)), AbelianGroup(), std::vector<AbelianGroup::Elem>(n));
}

template <class Ops>
typename Engine<Ops>::Mat to_mat(const Ops& ops, const PointMatrix& p) {
  typename Engine<Ops>::Mat M;
  for (const auto& row : p.m) {
    for (const auto& x : row) M.push_back(ops.from_elem(x));
  }
  return M;
}

template <class Ops>
PointMatrix from_mat(const Ops& ops, const TestRing& R, std::size_t n, const typename Engine<Ops>::Mat& M) {
  PointMatrix p{R, std::vector<std::vector<TestRing::Elem>>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.m[i].push_back(ops.to_elem(M[i * n + j]));
  }
  return p;
}

template <class Ops>
std::vector<typename Ops::E> idempotents_as(const Ops& ops, const TestRing& R) {
  std::vector<typename Ops::E> out;
  for (const auto& e : R.idempotents()) out.push_back(ops.from_elem(e));
  return out;
}

// Calls fn(engine) with table-coded arithmetic when R is small enough.
template <class Fn>
decltype(auto) with_engine(const Grading& g, const TestRing& R, Fn&& fn) {
  if (const RingTables* T = R.tables()) {
    Engine<CodeOps> eng(g, CodeOps{&R, T});
    return fn(eng);
  }
  Engine<GeneralOps> eng(g, GeneralOps{&R});
  return fn(eng);
}

void check_shape(const Grading& g, const PointMatrix& p) {
  if (p.dim() != g.algebra().dim()) throw InputError("point matrix size does not match the algebra dimension");
  if (!(p.R.field() == g.algebra().field())) {
    throw InputError("test ring " + p.R.name() + " is not an algebra over " + g.algebra().field().name());
  }
}

void require_automorphism(const Grading& g, const PointMatrix& p) {
  if (!automorphism_membership(g.algebra(), p)) throw InputError("point is not an automorphism of the algebra");
}

// Unit of the corner ring eR, tested as x + (1 - e) in R.
bool unit_in_block(const TestRing& R, const TestRing::Elem& e, const TestRing::Elem& x) {
  return R.is_unit(R.add(x, R.sub(R.one(), e)));
}

using RGMatrix = std::vector<std::vector<GroupAlgebraElement>>;

RGMatrix rg_matmul(const GroupAlgebra& RG, const RGMatrix& A, const RGMatrix& B) {
  const std::size_t n = A.size();
  RGMatrix C(n, std::vector<GroupAlgebraElement>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (A[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) C[i][j] = RG.add(C[i][j], RG.mul(A[i][k], B[k][j]));
    }
  }
  return C;
}

RGMatrix rg_constant(const GroupAlgebra& RG, const PointMatrix& p) {
  RGMatrix out(p.dim(), std::vector<GroupAlgebraElement>(p.dim()));
  for (std::size_t i = 0; i < p.dim(); ++i) {
    for (std::size_t j = 0; j < p.dim(); ++j) out[i][j] = RG.monomial(p.m[i][j], RG.group().zero());
  }
  return out;
}

RGMatrix rg_psi(const GroupAlgebra& RG, const Grading& g) {
  const std::size_t n = g.algebra().dim();
  RGMatrix out(n, std::vector<GroupAlgebraElement>(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = RG.monomial(RG.ring().one(), g.degree(i));
  return out;
}

TestRing::Elem char_value(const TestRing& R, const AbelianGroup& G, const std::vector<TestRing::Elem>& chi,
                          const AbelianGroup::Elem& x) {
  TestRing::Elem v = R.one();
  for (std::size_t i = 0; i < G.ngens(); ++i) {
    std::int64_t k = x[i];
    const TestRing::Elem base = k < 0 ? R.inv(chi[i]) : chi[i];
    v = R.mul(v, R.pow(base, static_cast<std::uint64_t>(k < 0 ? -k : k)));
  }
  return v;
}

double log_size(const Grading& g, const TestRing& R) {
  const double n = static_cast<double>(g.algebra().dim());
  return n * n * std::log10(static_cast<double>(R.cardinality()));
}

}  // namespace

// ---------------------------------------------------------------------------
// PointMatrix

PointMatrix PointMatrix::identity(const TestRing& R, std::size_t n) {
  PointMatrix p{R, std::vector<std::vector<TestRing::Elem>>(n, std::vector<TestRing::Elem>(n, R.zero()))};
  for (std::size_t i = 0; i < n; ++i) p.m[i][i] = R.one();
  return p;
}

PointMatrix PointMatrix::from_field(const TestRing& R, const linalg::Mat& M) {
  PointMatrix p{R, {}};
  for (const auto& row : M) {
    std::vector<TestRing::Elem> r;
    for (const auto& c : row) r.push_back(R.scalar(c));
    p.m.push_back(std::move(r));
  }
  return p;
}

std::string PointMatrix::format() const {
  return "[" +
         text::join(m, ",",
                    [&](const std::vector<TestRing::Elem>& row) {
                      return "[" + text::join(row, ",", [&](const TestRing::Elem& x) { return R.format(x); }) + "]";
                    }) +
         "]";
}

PointMatrix PointMatrix::parse(const TestRing& R, std::size_t n, const std::string& raw) {
  auto unwrap = [](const std::string& s) {
    std::string t = text::strip(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw InputError("expected a bracketed list: " + t);
    return t.substr(1, t.size() - 2);
  };
  const auto rows = text::split_top(unwrap(raw), ',');
  if (rows.size() != n) throw InputError("point matrix needs " + std::to_string(n) + " rows");
  PointMatrix p{R, {}};
  for (const auto& row : rows) {
    const auto entries = text::split_top(unwrap(row), ',');
    if (entries.size() != n) throw InputError("point matrix row needs " + std::to_string(n) + " entries");
    std::vector<TestRing::Elem> r;
    for (const auto& e : entries) r.push_back(R.parse(e));
    p.m.push_back(std::move(r));
  }
  return p;
}

PointMatrix compose(const PointMatrix& a, const PointMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw InputError("composing point matrices of different sizes");
  const TestRing& R = a.R;
  PointMatrix c{R, std::vector<std::vector<TestRing::Elem>>(n, std::vector<TestRing::Elem>(n, R.zero()))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (R.is_zero(a.m[i][k])) continue;
      for (std::size_t j = 0; j < n; ++j) c.m[i][j] = R.add(c.m[i][j], R.mul(a.m[i][k], b.m[k][j]));
    }
  }
  return c;
}

TestRing::Elem determinant(const PointMatrix& p) {
  const Grading g = trivial_grading(p.R.field(), p.dim());
  Engine<GeneralOps> eng(g, GeneralOps{&p.R});
  return eng.det(to_mat(eng.ops(), p));
}

PointMatrix inverse(const PointMatrix& p) {
  const Grading g = trivial_grading(p.R.field(), p.dim());
  Engine<GeneralOps> eng(g, GeneralOps{&p.R});
  Engine<GeneralOps>::Mat out;
  if (!eng.inverse(to_mat(eng.ops(), p), out)) throw ArithmeticError("point matrix is not invertible over " + p.R.name());
  return from_mat(eng.ops(), p.R, p.dim(), out);
}

// ---------------------------------------------------------------------------
// Membership

PointMatrix tau_from_character(const Grading& g, const TestRing& R, const std::vector<TestRing::Elem>& chi) {
  const AbelianGroup& G = g.group();
  if (chi.size() != G.ngens()) throw InputError("character needs one value per generator of " + G.format());
  for (std::size_t i = 0; i < G.ngens(); ++i) {
    if (!R.is_unit(chi[i])) throw InputError("character value " + R.format(chi[i]) + " is not a unit");
    const std::int64_t d = G.modulus(i);
    if (d > 0 && !R.equal(R.pow(chi[i], static_cast<std::uint64_t>(d)), R.one())) {
      throw InputError("character value " + R.format(chi[i]) + " does not have order dividing " + std::to_string(d));
    }
  }
  const std::size_t n = g.algebra().dim();
  PointMatrix p = PointMatrix::identity(R, n);
  for (std::size_t i = 0; i < n; ++i) p.m[i][i] = char_value(R, G, chi, g.degree(i));
  return p;
}

bool automorphism_membership(const Algebra& A, const PointMatrix& p) {
  if (p.dim() != A.dim()) throw InputError("point matrix size does not match the algebra dimension");
  const Grading g = Grading::build(A, AbelianGroup(), std::vector<AbelianGroup::Elem>(A.dim()));
  return with_engine(g, p.R, [&](auto& eng) { return eng.is_aut(to_mat(eng.ops(), p)); });
}

bool stab_membership(const Grading& g, const PointMatrix& p) {
  check_shape(g, p);
  require_automorphism(g, p);
  return with_engine(g, p.R, [&](auto& eng) { return eng.is_stab(to_mat(eng.ops(), p)); });
}

DiagMembership diag_membership(const Grading& g, const PointMatrix& p) {
  check_shape(g, p);
  require_automorphism(g, p);
  return with_engine(g, p.R, [&](auto& eng) {
    DiagMembership out;
    std::vector<typename std::decay_t<decltype(eng)>::E> mu;
    out.member = eng.diag(to_mat(eng.ops(), p), &mu);
    for (const auto& x : mu) out.scalars.push_back(eng.ops().to_elem(x));
    return out;
  });
}

BlockPermutationResult block_permutations(const Grading& g, const PointMatrix& p) {
  check_shape(g, p);
  return with_engine(g, p.R, [&](auto& eng) {
    BlockPermutationResult out;
    const auto M = to_mat(eng.ops(), p);
    if (!eng.ops().is_unit(eng.det(M))) throw InputError("block_permutations needs an invertible point");
    const auto idem = idempotents_as(eng.ops(), p.R);
    std::vector<std::vector<std::size_t>> sigmas;
    typename std::decay_t<decltype(eng)>::BlockFailure fail;
    out.ok = eng.block_perm(M, idem, &sigmas, &fail);
    if (out.ok) {
      for (std::size_t b = 0; b < sigmas.size(); ++b) out.blocks.push_back({p.R.idempotents()[b], sigmas[b]});
    } else {
      out.fail_block = fail.block;
      out.fail_row = fail.row;
      out.fail_col = fail.col;
      out.reason = fail.reason;
    }
    return out;
  });
}

bool autgamma_membership(const Grading& g, const PointMatrix& p) {
  check_shape(g, p);
  if (!automorphism_membership(g.algebra(), p)) return false;
  return block_permutations(g, p).ok;
}

std::vector<GroupAlgebraElement> generic_psi(const Grading& g, const TestRing& R) {
  const GroupAlgebra RG(R, g.group());
  std::vector<GroupAlgebraElement> out;
  for (std::size_t i = 0; i < g.algebra().dim(); ++i) out.push_back(RG.monomial(R.one(), g.degree(i)));
  return out;
}

bool cent_membership_generic(const Grading& g, const PointMatrix& p) {
  check_shape(g, p);
  require_automorphism(g, p);
  const GroupAlgebra RG(p.R, g.group());
  const RGMatrix Phi = rg_constant(RG, p), Psi = rg_psi(RG, g);
  const RGMatrix a = rg_matmul(RG, Psi, Phi), b = rg_matmul(RG, Phi, Psi);
  for (std::size_t i = 0; i < p.dim(); ++i) {
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (!RG.equal(a[i][j], b[i][j])) return false;
    }
  }
  return true;
}

NormMembership norm_membership_generic(const Grading& g, const PointMatrix& p) {
  check_shape(g, p);
  require_automorphism(g, p);
  const TestRing& R = p.R;
  const GroupAlgebra RG(R, g.group());
  const RGMatrix N = rg_matmul(RG, rg_matmul(RG, rg_constant(RG, inverse(p)), rg_psi(RG, g)), rg_constant(RG, p));
  const std::size_t n = p.dim();
  NormMembership out;
  for (const auto& e : R.idempotents()) {
    auto part = [&](const GroupAlgebraElement& x) { return RG.scale(e, x); };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && !part(N[i][j]).is_zero()) return out;
      }
    }
    BlockPermutation shift{e, std::vector<std::size_t>(g.support_size())};
    for (std::size_t s = 0; s < g.support_size(); ++s) {
      const auto& C = g.component(s);
      const GroupAlgebraElement sg = part(N[C[0]][C[0]]);
      for (std::size_t i : C) {
        if (!RG.equal(part(N[i][i]), sg)) return out;
      }
      if (sg.size() != 1 || !unit_in_block(R, e, sg.terms().begin()->second)) {
        throw IdentityViolation("conjugated generic scalar on component " + g.format_support(s) +
                                " is not a unit times a group element: " + RG.format(sg));
      }
      const auto t = g.find_support(sg.terms().begin()->first);
      if (!t) throw IdentityViolation("conjugated generic scalar lands outside the support");
      shift.sigma[s] = *t;
    }
    out.shifts.push_back(std::move(shift));
  }
  out.member = true;
  return out;
}

DGroupNormResult dgroup_norm_membership(const Grading& g, const PointMatrix& p) {
  check_shape(g, p);
  if (!autgamma_membership(g, p)) throw InputError("dGnorm needs a point of Aut(Gamma)");
  DGroupNormResult out;
  const AbelianGroup& G = g.group();
  const Subgroup H = subgroup_generated(G, g.support());
  if (!H.is_whole_group) {
    out.status = DGroupStatus::Indeterminate;
    out.note = "support generates a proper subgroup " + H.H.format();
    return out;
  }
  const TestRing& R = p.R;
  const GroupAlgebra RG(R, G);
  // phi psi phi^-1 acts on A_t by the value forced on t.
  const RGMatrix P = rg_matmul(RG, rg_matmul(RG, rg_constant(RG, p), rg_psi(RG, g)), rg_constant(RG, inverse(p)));
  const std::size_t m = g.support_size();
  for (const auto& e : R.idempotents()) {
    auto part = [&](const GroupAlgebraElement& x) { return RG.scale(e, x); };
    std::vector<GroupAlgebraElement> forced(m);
    for (std::size_t t = 0; t < m; ++t) {
      forced[t] = part(P[g.component(t)[0]][g.component(t)[0]]);
      if (forced[t].size() != 1 || !unit_in_block(R, e, forced[t].terms().begin()->second)) {
        throw IdentityViolation("forced value on " + g.format_support(t) + " is not a unit monomial: " +
                                RG.format(forced[t]));
      }
    }
    out.forced.clear();
    for (const auto& f : forced) out.forced.push_back(RG.format(f));
    const GroupAlgebraElement one = RG.monomial(e, G.zero());
    for (std::size_t r = 0; r < H.relation_lattice.rows(); ++r) {
      GroupAlgebraElement prod = one;
      std::vector<std::int64_t> rel;
      for (std::size_t t = 0; t < m; ++t) {
        const std::int64_t a = H.relation_lattice(r, t).get_si();
        rel.push_back(a);
        // Inverse inside the block: coefficient inverted in eR.
        const auto& [h, c] = *forced[t].terms().begin();
        const GroupAlgebraElement base =
            a >= 0 ? forced[t] : RG.monomial(R.mul(e, R.inv(R.add(c, R.sub(R.one(), e)))), G.neg(h));
        for (std::int64_t k = 0; k < (a < 0 ? -a : a); ++k) prod = RG.mul(prod, base);
      }
      if (!RG.equal(prod, one)) {
        out.status = DGroupStatus::NonMember;
        out.relation = rel;
        out.relation_value = RG.format(prod);
        out.note = "forced values violate a relation among the support";
        return out;
      }
    }
  }
  out.status = DGroupStatus::Member;
  return out;
}

// ---------------------------------------------------------------------------
// Diagonal points

namespace {

std::vector<TestRing::Elem> unit_list(const TestRing& R) {
  if (R.is_finite()) return enumerate_units(R).elements;
  if (R.dim() == 1 && R.field().kind() == FieldKind::Rationals) return {R.one(), R.neg(R.one())};
  throw NotEnumerable("unit group of " + R.name() + " is not enumerable");
}

}  // namespace

std::int64_t exhaustive_diag_count(const Grading& g, const TestRing& R) {
  constexpr std::int64_t kNodeCap = 10000000;
  const auto units = unit_list(R);
  const std::size_t n = g.algebra().dim(), m = g.support_size();
  const auto& G = g.group();
  // Support pairs (a, b) with A_a A_b != 0, keyed by the largest index among a, b, a+b.
  // A diagonal automorphism must satisfy lambda_a lambda_b = lambda_{a+b} on each of them,
  // since some structure constant of the pair is a unit; candidates failing this are pruned.
  std::vector<std::vector<std::array<std::size_t, 3>>> checks(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (!g.pattern()[a][b]) continue;
      const std::size_t c = g.support_index(G.add(g.support()[a], g.support()[b]));
      checks[std::max({a, b, c})].push_back({a, b, c});
    }
  }
  return with_engine(g, R, [&](auto& eng) {
    using E = typename std::decay_t<decltype(eng)>::E;
    const auto& ops = eng.ops();
    std::vector<E> u;
    for (const auto& x : units) u.push_back(ops.from_elem(x));
    std::vector<E> lambda(m, ops.one());
    typename std::decay_t<decltype(eng)>::Mat M(n * n, ops.zero());
    std::int64_t count = 0, nodes = 0;
    std::function<void(std::size_t)> extend = [&](std::size_t s) {
      if (++nodes > kNodeCap) throw CapExceeded("more than 1e7 nodes in the diagonal search");
      if (s == m) {
        // Every surviving candidate is checked against the definition.
        for (std::size_t i = 0; i < n; ++i) M[i * n + i] = lambda[g.component_of(i)];
        if (eng.is_aut(M) && eng.diag(M, nullptr)) ++count;
        return;
      }
      for (const auto& x : u) {
        lambda[s] = x;
        bool ok = true;
        for (const auto& [a, b, c] : checks[s]) {
          if (!ops.eq(ops.mul(lambda[a], lambda[b]), lambda[c])) {
            ok = false;
            break;
          }
        }
        if (ok) extend(s + 1);
      }
    };
    extend(0);
    return count;
  });
}

std::vector<PointMatrix> diag_points(const Grading& g, const TestRing& R) {
  const UniversalGrading ug = universal_group(g);
  const auto units = unit_list(R);
  const auto chars = enumerate_characters(ug.U, units.size(), [&](std::size_t i, std::int64_t d) {
    return R.equal(R.pow(units[i], static_cast<std::uint64_t>(d)), R.one());
  });
  if (!R.is_finite() && ug.U.rank() > 0) throw NotEnumerable("universal group has free rank over an infinite ring");
  const std::size_t n = g.algebra().dim();
  std::vector<PointMatrix> out;
  for (const auto& chi : chars) {
    std::vector<TestRing::Elem> vals;
    for (std::size_t i : chi) vals.push_back(units[i]);
    PointMatrix p = PointMatrix::identity(R, n);
    for (std::size_t i = 0; i < n; ++i) p.m[i][i] = char_value(R, ug.U, vals, ug.degU[g.component_of(i)]);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  for (const auto& p : out) {
    if (!diag_membership(g, p).member) throw IdentityViolation("character of the universal group is not diagonal");
  }
  if (R.is_finite()) {
    const std::int64_t direct = exhaustive_diag_count(g, R);
    if (direct != static_cast<std::int64_t>(out.size())) {
      throw IdentityViolation("Diag point count " + std::to_string(out.size()) + " via the universal group differs from " +
                              std::to_string(direct) + " by direct search");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

PointSet parse_point_set(const std::string& name) {
  if (name == "aut") return PointSet::Aut;
  if (name == "stab") return PointSet::Stab;
  if (name == "autgamma" || name == "autGamma") return PointSet::AutGamma;
  if (name == "diag") return PointSet::Diag;
  throw InputError("unknown point set '" + name + "' (aut, stab, autgamma, diag)");
}

std::string point_set_name(PointSet s) {
  switch (s) {
    case PointSet::Aut: return "aut";
    case PointSet::Stab: return "stab";
    case PointSet::AutGamma: return "autgamma";
    case PointSet::Diag: return "diag";
  }
  return "?";
}

bool enumeration_feasible(const Grading& g, const TestRing& R, std::int64_t cap) {
  if (!R.is_finite()) return false;
  return log_size(g, R) <= std::log10(static_cast<double>(cap)) + 1e-9;
}

namespace {

void require_feasible(const Grading& g, const TestRing& R, std::int64_t cap) {
  if (!R.is_finite()) throw NotEnumerable("cannot enumerate points over the infinite ring " + R.name());
  if (!enumeration_feasible(g, R, cap)) {
    throw CapExceeded("|R|^(n^2) = " + std::to_string(R.cardinality()) + "^" +
                      std::to_string(g.algebra().dim() * g.algebra().dim()) + " exceeds the cap " + std::to_string(cap));
  }
}

template <class Eng, class Visit>
void visit_points(const Eng& eng, const Grading& g, const TestRing& R, PointSet which, Visit&& visit) {
  using E = typename Eng::E;
  if (which == PointSet::Diag) {
    const auto units = unit_list(R);
    const std::size_t n = eng.n(), m = eng.m();
    std::vector<E> u;
    for (const auto& x : units) u.push_back(eng.ops().from_elem(x));
    std::vector<std::size_t> digit(m, 0);
    typename Eng::Mat M(n * n, eng.ops().zero());
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) M[i * n + i] = u[digit[g.component_of(i)]];
      if (eng.is_aut(M)) visit(M);
      std::size_t t = m;
      while (t > 0) {
        if (++digit[t - 1] < u.size()) break;
        digit[t - 1] = 0;
        --t;
      }
      if (t == 0) break;
    }
    return;
  }
  const auto idem = idempotents_as(eng.ops(), R);
  eng.search(which == PointSet::Stab ? SearchSet::Stab : SearchSet::Aut, [&](const typename Eng::Mat& M) {
    if (which == PointSet::AutGamma && !eng.block_perm(M, idem, nullptr, nullptr)) return;
    visit(M);
  });
}

}  // namespace

std::vector<PointMatrix> enumerate_points(const Grading& g, const TestRing& R, PointSet which, std::int64_t cap) {
  require_feasible(g, R, cap);
  return with_engine(g, R, [&](auto& eng) {
    std::vector<PointMatrix> out;
    visit_points(eng, g, R, which, [&](const auto& M) { out.push_back(from_mat(eng.ops(), R, eng.n(), M)); });
    std::sort(out.begin(), out.end());
    return out;
  });
}

std::int64_t count_points(const Grading& g, const TestRing& R, PointSet which, std::int64_t cap) {
  require_feasible(g, R, cap);
  return with_engine(g, R, [&](auto& eng) {
    std::int64_t count = 0;
    visit_points(eng, g, R, which, [&](const auto&) { ++count; });
    return count;
  });
}

TheoremTally theorem_tally_enumerated(const Grading& g, const TestRing& R, std::int64_t cap) {
  require_feasible(g, R, cap);
  return with_engine(g, R, [&](auto& eng) {
    TheoremTally t;
    const auto idem = idempotents_as(eng.ops(), R);
    eng.search(SearchSet::Aut, [&](const auto& M) {
      ++t.points;
      const bool stab = eng.is_stab(M);
      const bool cent = eng.cent_generic(M);
      const bool ag = eng.block_perm(M, idem, nullptr, nullptr);
      const bool norm = eng.norm_generic(M, idem, nullptr);
      t.stab += stab;
      t.autgamma += ag;
      t.cent_agree += (stab == cent);
      t.norm_agree += (ag == norm);
      if ((stab != cent || ag != norm) && t.first_failure.empty()) {
        t.first_failure = from_mat(eng.ops(), R, eng.n(), M).format();
      }
    });
    return t;
  });
}

TheoremTally theorem_tally(const Grading& g, const std::vector<PointMatrix>& points) {
  TheoremTally t;
  for (const auto& p : points) {
    ++t.points;
    const bool stab = stab_membership(g, p), cent = cent_membership_generic(g, p);
    const bool ag = autgamma_membership(g, p), norm = norm_membership_generic(g, p).member;
    t.stab += stab;
    t.autgamma += ag;
    t.cent_agree += (stab == cent);
    t.norm_agree += (ag == norm);
    if ((stab != cent || ag != norm) && t.first_failure.empty()) t.first_failure = p.format();
  }
  return t;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<linalg::Mat> derivations(const Algebra& A) {
  const Field& F = A.field();
  const std::size_t n = A.dim();
  // Unknown D[k][c] at index k*n + c; D(b_a b_b) = D(b_a) b_b + b_a D(b_b), coordinate k.
  linalg::Mat sys;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t k = 0; k < n; ++k) {
        linalg::Vec row(n * n, F.zero());
        for (std::size_t c = 0; c < n; ++c) row[k * n + c] = F.add(row[k * n + c], A.product(a, b)[c]);
        for (std::size_t i = 0; i < n; ++i) {
          row[i * n + a] = F.sub(row[i * n + a], A.product(i, b)[k]);
          row[i * n + b] = F.sub(row[i * n + b], A.product(a, i)[k]);
        }
        sys.push_back(std::move(row));
      }
    }
  }
  std::vector<linalg::Mat> out;
  for (const auto& v : linalg::kernel(F, sys, n * n)) {
    linalg::Mat D = linalg::zeros(F, n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < n; ++c) D[k][c] = v[k * n + c];
    }
    out.push_back(std::move(D));
  }
  return out;
}

std::vector<PointMatrix> base_field_automorphisms(const Grading& g, std::mt19937_64& rng) {
  const TestRing F = TestRing::base_field(g.algebra().field());
  if (enumeration_feasible(g, F, 1000000)) return enumerate_points(g, F, PointSet::Aut, 1000000);
  std::set<PointMatrix> found{PointMatrix::identity(F, g.algebra().dim())};
  Engine<GeneralOps> eng(g, GeneralOps{&F});
  const Field& K = F.field();
  std::uniform_int_distribution<int> small(-3, 3);
  Engine<GeneralOps>::Mat M;
  for (int attempt = 0; attempt < 4000 && found.size() < 24; ++attempt) {
    auto rand = [&] { return K.is_finite() ? TestRing::Elem{K.random(rng)} : TestRing::Elem{K.from_int(small(rng))}; };
    if (eng.random_point(rand, M) && eng.multiplicative(M)) found.insert(from_mat(eng.ops(), F, eng.n(), M));
  }
  return {found.begin(), found.end()};
}

namespace {

// Torsion units of R that are cheap to find: all units for small finite R,
// otherwise signed idempotent sums and basis elements of finite order, closed under products.
std::vector<TestRing::Elem> torsion_units(const TestRing& R) {
  if (R.is_finite() && R.cardinality() <= 100000) return enumerate_units(R).elements;
  std::set<TestRing::Elem> pool{R.one(), R.neg(R.one())};
  const auto& idem = R.idempotents();
  if (idem.size() <= 6) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << idem.size()); ++mask) {
      TestRing::Elem x = R.zero();
      for (std::size_t i = 0; i < idem.size(); ++i) x = (mask >> i) & 1 ? R.sub(x, idem[i]) : R.add(x, idem[i]);
      pool.insert(x);
    }
  }
  for (std::size_t k = 0; k < R.dim(); ++k) {
    const TestRing::Elem b = R.basis(k);
    TestRing::Elem y = b;
    for (int d = 1; d <= 12; ++d) {
      if (R.equal(y, R.one())) {
        pool.insert(b);
        pool.insert(R.neg(b));
        break;
      }
      y = R.mul(y, b);
    }
  }
  for (int round = 0; round < 2 && pool.size() < 64; ++round) {
    std::vector<TestRing::Elem> cur(pool.begin(), pool.end());
    for (const auto& a : cur) {
      for (const auto& b : cur) {
        if (pool.size() >= 64) break;
        pool.insert(R.mul(a, b));
      }
    }
  }
  return {pool.begin(), pool.end()};
}

}  // namespace

std::vector<PointMatrix> sample_automorphisms(const Grading& g, const TestRing& R, std::size_t count,
                                              std::mt19937_64& rng) {
  const Algebra& A = g.algebra();
  const std::size_t n = A.dim();
  std::vector<PointMatrix> pool{PointMatrix::identity(R, n)};
  for (const auto& p : base_field_automorphisms(g, rng)) {
    linalg::Mat M;
    for (const auto& row : p.m) {
      linalg::Vec r;
      for (const auto& x : row) r.push_back(x[0]);
      M.push_back(std::move(r));
    }
    pool.push_back(PointMatrix::from_field(R, M));
  }
  // Diagonal points from characters of G with torsion-unit values.
  const AbelianGroup& G = g.group();
  const auto units = torsion_units(R);
  for (int k = 0; k < 24; ++k) {
    std::vector<TestRing::Elem> chi;
    bool ok = true;
    for (std::size_t i = 0; i < G.ngens() && ok; ++i) {
      const std::int64_t d = G.modulus(i);
      std::vector<TestRing::Elem> allowed;
      for (const auto& u : units) {
        if (d == 0 || R.equal(R.pow(u, static_cast<std::uint64_t>(d)), R.one())) allowed.push_back(u);
      }
      if (allowed.empty()) ok = false;
      else chi.push_back(allowed[rng() % allowed.size()]);
    }
    if (ok) pool.push_back(tau_from_character(g, R, chi));
  }
  // Square-zero unipotents 1 + eD.
  std::vector<TestRing::Elem> square_zero;
  for (const auto& x : R.nilradical()) {
    TestRing::Elem y = x;
    while (!R.is_zero(y)) {
      if (R.is_zero(R.mul(y, y))) {
        square_zero.push_back(y);
        break;
      }
      y = R.mul(y, x);
    }
  }
  for (const auto& D : derivations(A)) {
    for (const auto& eps : square_zero) {
      PointMatrix p = PointMatrix::identity(R, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) p.m[i][j] = R.add(p.m[i][j], R.scale(D[i][j], eps));
      }
      pool.push_back(std::move(p));
    }
  }
  for (const auto& p : pool) {
    if (!automorphism_membership(A, p)) throw IdentityViolation("sampling pool contains a non-automorphism");
  }
  const auto& idem = R.idempotents();
  auto draw = [&] {
    if (idem.size() > 1 && rng() % 3 == 0) {
      // Independent pool elements on the idempotent blocks.
      PointMatrix mix{R, std::vector<std::vector<TestRing::Elem>>(n, std::vector<TestRing::Elem>(n, R.zero()))};
      for (const auto& e : idem) {
        const PointMatrix& q = pool[rng() % pool.size()];
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) mix.m[i][j] = R.add(mix.m[i][j], R.mul(e, q.m[i][j]));
        }
      }
      return mix;
    }
    return pool[rng() % pool.size()];
  };
  std::vector<PointMatrix> out;
  while (out.size() < count) {
    PointMatrix p = draw();
    const std::size_t len = rng() % 4;
    for (std::size_t k = 0; k < len; ++k) p = compose(p, draw());
    if (!automorphism_membership(A, p)) throw IdentityViolation("product of sampled automorphisms is not an automorphism");
    out.push_back(std::move(p));
  }
  return out;
}

std::string format_permutation(const Grading& g, const std::vector<std::size_t>& sigma) {
  std::string out;
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t s = 0; s < sigma.size(); ++s) {
    if (seen[s] || sigma[s] == s) continue;
    std::vector<std::string> cycle;
    for (std::size_t t = s; !seen[t]; t = sigma[t]) {
      seen[t] = true;
      cycle.push_back(g.format_support(t));
    }
    out += "(" + text::join(cycle, " ", [](const std::string& x) { return x; }) + ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace gw

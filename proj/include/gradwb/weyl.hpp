#ifndef GRADWB_WEYL_HPP
#define GRADWB_WEYL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gradwb/abgroups.hpp"
#include "gradwb/galg.hpp"
#include "gradwb/points.hpp"

namespace gw {

/// Permutation group on {0, ..., degree-1}, stored with its full element list.
class PermGroup {
 public:
  using Perm = std::vector<std::size_t>;

  PermGroup() = default;
  static PermGroup trivial(std::size_t degree);
  /// Closure of the generators under composition.
  static PermGroup generated(std::size_t degree, const std::vector<Perm>& gens);
  /// IdentityViolation unless the list is closed under composition and contains the identity.
  static PermGroup from_elements(std::size_t degree, std::vector<Perm> elems);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  /// Sorted lexicographically; the identity comes first.
  const std::vector<Perm>& elements() const { return elements_; }
  /// Greedy generating set taken from the sorted element list.
  const std::vector<Perm>& generators() const { return gens_; }
  bool contains(const Perm& p) const;
  bool is_subgroup_of(const PermGroup& other) const;

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> elements_;
  std::vector<Perm> gens_;
};

/// (a o b)(i) = a(b(i)).
PermGroup::Perm perm_compose(const PermGroup::Perm& a, const PermGroup::Perm& b);

/// Permutations of the support that preserve component dimensions and the zero
/// pattern, and satisfy sigma(s + t) = sigma(s) + sigma(t) whenever A_s A_t != 0.
/// Sorted, identity first.
std::vector<PermGroup::Perm> admissible_permutations(const Grading& g);

/// x^d = c after the unimodular change of unknowns.
struct PowerEquation {
  std::int64_t d = 0;
  Scalar c;
};

/// Multiplicative constraints on lambda for phi(x_s) = lambda_s x_{sigma(s)}
/// on a thin grading. Row r reads prod_s lambda_s^{exponents(r,s)} = constants[r].
struct ThinConstraintSystem {
  Field field = Field::rationals();
  PermGroup::Perm sigma;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  IntMatrix exponents;
  std::vector<Scalar> constants;
  /// U * exponents * V = diag; with lambda = mu^V the system becomes mu_r^{d_r} = c'_r.
  /// Equations r < rank have d_r > 0; the rest have d_r = 0.
  std::vector<PowerEquation> reduced;
  std::size_t rank = 0;
  IntMatrix V;

  std::size_t unknowns() const { return sigma.size(); }
  /// Equations with d > 0, in SNF order.
  std::vector<PowerEquation> power_equations() const;
};

/// InputError on a non-thin grading or a non-admissible sigma.
ThinConstraintSystem thin_constraints(const Grading& g, const PermGroup::Perm& sigma);

enum class SolveStatus { Solvable, Unsolvable, Unknown };
std::string solve_status_name(SolveStatus s);

struct ThinSolution {
  SolveStatus status = SolveStatus::Unknown;
  /// lambda by support index, field mode only.
  std::vector<Scalar> witness;
  /// Failing reduced equation, as text.
  std::string obstruction;
};

/// Closure mode: only d = 0 equations can obstruct.
ThinSolution thin_solve_closure(const ThinConstraintSystem& sys);
/// Rational points over the system's field, with a witness.
ThinSolution thin_solve_field(const ThinConstraintSystem& sys);
/// |{lambda in (F^x)^n solving the system}| over a finite field.
std::int64_t thin_solution_count(const ThinConstraintSystem& sys);

/// The point phi(x_s) = lambda_s x_{sigma(s)} over the base field.
PointMatrix thin_point(const Grading& g, const PermGroup::Perm& sigma, const std::vector<Scalar>& lambda);

/// Weyl group over an algebraic closure of the base field. InputError unless thin.
PermGroup weyl_closure(const Grading& g);

/// Image of Aut(Gamma)(K) in Sym(support). The table is first read in K. Thin
/// gradings use the constraint solver; otherwise K must be finite and the
/// Aut(Gamma)-points are enumerated within `cap`.
PermGroup weyl_over_field(const Grading& g, const Field& K, std::int64_t cap = kDefaultPointCap);

/// Sum over admissible sigma of thin_solution_count, the thin-solver count of Aut(Gamma)(K).
std::int64_t thin_autgamma_count(const Grading& g, const Field& K);

struct SesReport {
  std::int64_t autgamma = 0, stab = 0;
  std::size_t weyl_order = 0;
  /// Present for thin gradings.
  std::optional<std::size_t> closure_order;
  std::optional<std::int64_t> thin_count;
  bool counts_ok = false;
  bool contained = true;
  bool ok() const { return counts_ok && contained && (!thin_count || *thin_count == autgamma); }
};

/// |Aut(Gamma)(K)| = |Stab(Gamma)(K)| * |W(K)| with W(K) inside the closure Weyl group.
SesReport ses_check(const Grading& g, const Field& K, std::int64_t cap = kDefaultPointCap);

/// F[t]/(f) for the first irreducible f of degree m; F itself when m = 1.
Field finite_extension(const Field& F, int m);

}  // namespace gw

#endif  // GRADWB_WEYL_HPP

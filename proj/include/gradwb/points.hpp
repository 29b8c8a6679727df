#ifndef GRADWB_POINTS_HPP
#define GRADWB_POINTS_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gradwb/comrings.hpp"
#include "gradwb/galg.hpp"

namespace gw {

/// Candidate R-point of GL(A): phi(b_j) = sum_i m[i][j] b_i, entries in R.
struct PointMatrix {
  TestRing R;
  std::vector<std::vector<TestRing::Elem>> m;

  std::size_t dim() const { return m.size(); }
  static PointMatrix identity(const TestRing& R, std::size_t n);
  /// Entries of a base-field matrix read as scalars of R.
  static PointMatrix from_field(const TestRing& R, const linalg::Mat& M);
  /// Row-major "[[a,b],[c,d]]" with ring-element literals.
  std::string format() const;
  static PointMatrix parse(const TestRing& R, std::size_t n, const std::string& text);

  friend bool operator==(const PointMatrix& a, const PointMatrix& b) { return a.m == b.m; }
  friend bool operator<(const PointMatrix& a, const PointMatrix& b) { return a.m < b.m; }
};

/// a o b.
PointMatrix compose(const PointMatrix& a, const PointMatrix& b);
TestRing::Elem determinant(const PointMatrix& p);
/// Inverse over R; ArithmeticError when det is not a unit.
PointMatrix inverse(const PointMatrix& p);

/// Diagonal point scaling A_g by chi(g); chi is given on the canonical generators of G.
/// InputError unless chi(gen_i)^{d_i} = 1 for every torsion generator.
PointMatrix tau_from_character(const Grading& g, const TestRing& R, const std::vector<TestRing::Elem>& chi);

/// det unit in R and phi(b_i b_j) = phi(b_i) phi(b_j) on all basis pairs.
bool automorphism_membership(const Algebra& A, const PointMatrix& p);

/// Block diagonal with respect to the components. InputError on non-automorphisms.
bool stab_membership(const Grading& g, const PointMatrix& p);

struct DiagMembership {
  bool member = false;
  /// Unit scalar per support index when member.
  std::vector<TestRing::Elem> scalars;
};
DiagMembership diag_membership(const Grading& g, const PointMatrix& p);

struct BlockPermutation {
  TestRing::Elem idempotent;
  /// sigma[s] = t: the idempotent block maps A_s onto A_t (support indices).
  std::vector<std::size_t> sigma;
};

struct BlockPermutationResult {
  bool ok = false;
  std::vector<BlockPermutation> blocks;
  /// On failure: block index and the offending entry (row, column).
  std::size_t fail_block = 0, fail_row = 0, fail_col = 0;
  std::string reason;
};

BlockPermutationResult block_permutations(const Grading& g, const PointMatrix& p);
bool autgamma_membership(const Grading& g, const PointMatrix& p);

/// Diagonal operator x_i -> x_i (x) deg(i) on A (x) RG.
std::vector<GroupAlgebraElement> generic_psi(const Grading& g, const TestRing& R);

/// phi commutes with the generic operator over RG. InputError on non-automorphisms.
bool cent_membership_generic(const Grading& g, const PointMatrix& p);

struct NormMembership {
  bool member = false;
  /// Per idempotent block: shift[s] = t when phi^-1 psi phi acts on A_s by a unit times t.
  std::vector<BlockPermutation> shifts;
};

/// phi^-1 psi phi is diagonal on components over every idempotent block of R.
/// IdentityViolation if a diagonal conjugate has a scalar that is not a unit monomial.
NormMembership norm_membership_generic(const Grading& g, const PointMatrix& p);

enum class DGroupStatus { Member, NonMember, Indeterminate };

struct DGroupNormResult {
  DGroupStatus status = DGroupStatus::Indeterminate;
  /// Violated relation among support elements (coefficients by support index).
  std::vector<std::int64_t> relation;
  /// forced[t]: the RG scalar by which phi tau phi^-1 acts on A_t, formatted.
  std::vector<std::string> forced;
  /// The product of forced values along `relation`, formatted.
  std::string relation_value;
  std::string note;
};

/// Whether conjugation by phi maps the generic character of G to a character of G.
/// Requires phi in Aut(Gamma)(R).
DGroupNormResult dgroup_norm_membership(const Grading& g, const PointMatrix& p);

/// Diag(Gamma)(R) through characters of the universal group with values in R^x.
/// Finite R, or R = Q with a finite universal group. The count is cross-checked
/// against the exhaustive diagonal search over finite R.
std::vector<PointMatrix> diag_points(const Grading& g, const TestRing& R);

/// Number of diagonal candidates (unit scalar per component) that are automorphisms,
/// by a pruned exhaustive search. CapExceeded past 1e7 search nodes.
std::int64_t exhaustive_diag_count(const Grading& g, const TestRing& R);

enum class PointSet { Aut, Stab, AutGamma, Diag };

PointSet parse_point_set(const std::string& name);
std::string point_set_name(PointSet s);

constexpr std::int64_t kDefaultPointCap = 100000000;

/// Exhaustive R-points over a finite R in deterministic order.
/// CapExceeded when |R|^(n^2) > cap.
std::vector<PointMatrix> enumerate_points(const Grading& g, const TestRing& R, PointSet which,
                                          std::int64_t cap = kDefaultPointCap);
std::int64_t count_points(const Grading& g, const TestRing& R, PointSet which, std::int64_t cap = kDefaultPointCap);
bool enumeration_feasible(const Grading& g, const TestRing& R, std::int64_t cap = kDefaultPointCap);

/// Agreement counts of the generic tests with their definitions.
struct TheoremTally {
  std::int64_t points = 0;
  std::int64_t cent_agree = 0, norm_agree = 0;
  std::int64_t stab = 0, autgamma = 0;
  /// First disagreeing point, formatted.
  std::string first_failure;
  bool ok() const { return cent_agree == points && norm_agree == points; }
};

/// Runs both generic tests against stab/autgamma on every automorphism point over a finite R.
TheoremTally theorem_tally_enumerated(const Grading& g, const TestRing& R, std::int64_t cap = kDefaultPointCap);
/// Same comparison on a given list of automorphism points.
TheoremTally theorem_tally(const Grading& g, const std::vector<PointMatrix>& points);

/// Basis of the derivations of A over its field, as matrices in the column convention.
std::vector<linalg::Mat> derivations(const Algebra& A);

/// Random automorphism points drawn from the group generated by a pool of known
/// points: base-field automorphisms, diagonal points on torsion units, square-zero
/// unipotents 1 + eD for derivations D, and idempotent-wise mixtures. Every sample is
/// verified to be an automorphism.
std::vector<PointMatrix> sample_automorphisms(const Grading& g, const TestRing& R, std::size_t count,
                                              std::mt19937_64& rng);

/// Automorphisms of A over a finite base field, or some found by random search over Q.
std::vector<PointMatrix> base_field_automorphisms(const Grading& g, std::mt19937_64& rng);

/// Permutation of support indices in cycle notation on support labels, "()" for the identity.
std::string format_permutation(const Grading& g, const std::vector<std::size_t>& sigma);

}  // namespace gw

#endif  // GRADWB_POINTS_HPP

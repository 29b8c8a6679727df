#ifndef GRADWB_GALG_HPP
#define GRADWB_GALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "gradwb/abgroups.hpp"
#include "gradwb/scalars.hpp"

namespace gw {

/// Finite-dimensional algebra over a field, not necessarily associative, unital
/// or commutative. table[i][j] holds the coordinates of b_i * b_j.
class Algebra {
 public:
  using Vec = std::vector<Scalar>;
  using Table = std::vector<std::vector<Vec>>;

  Algebra() = default;
  /// Throws InputError on shape mismatch. Basis names default to b0, b1, ...
  Algebra(Field F, Table table, std::vector<std::string> basis_names = {});

  const Field& field() const { return F_; }
  std::size_t dim() const { return n_; }
  const Table& table() const { return table_; }
  const Vec& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const std::vector<std::string>& basis_names() const { return names_; }
  /// Index of a basis name; InputError if unknown.
  std::size_t basis_index(const std::string& name) const;

  Vec mul(const Vec& x, const Vec& y) const;
  /// Two-sided unit, if any.
  std::optional<Vec> unit() const;
  bool is_zero_product() const;

  /// Same table read in K through K.coerce (tower embedding or reduction mod p).
  Algebra over(const Field& K) const;

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  Field F_ = Field::rationals();
  std::size_t n_ = 0;
  Table table_;
  std::vector<std::string> names_;
};

/// b_i * b_j has a nonzero b_k-coordinate although deg b_k != deg b_i + deg b_j.
struct GradingWitness {
  std::size_t i = 0, j = 0, k = 0;
};

class GradingAxiomError : public InputError {
 public:
  GradingAxiomError(const std::string& what, GradingWitness w) : InputError(what), witness(w) {}
  GradingWitness witness;
};

/// First violation of the grading axiom in (i, j, k) order, if any.
std::optional<GradingWitness> find_grading_violation(const Algebra& A, const AbelianGroup& G,
                                                     const std::vector<AbelianGroup::Elem>& labels);

/// A grading presented by degree labels on a homogeneous basis.
///
/// Support elements are kept sorted; "support index" s refers to support()[s].
class Grading {
 public:
  Grading() = default;
  /// Verifies the axiom; GradingAxiomError carries the first witness.
  static Grading build(Algebra A, AbelianGroup G, std::vector<AbelianGroup::Elem> labels);

  const Algebra& algebra() const { return A_; }
  const AbelianGroup& group() const { return G_; }
  const std::vector<AbelianGroup::Elem>& labels() const { return labels_; }
  const AbelianGroup::Elem& degree(std::size_t i) const { return labels_[i]; }

  const std::vector<AbelianGroup::Elem>& support() const { return support_; }
  std::size_t support_size() const { return support_.size(); }
  /// Support index of g; InputError if g is not in the support.
  std::size_t support_index(const AbelianGroup::Elem& g) const;
  std::optional<std::size_t> find_support(const AbelianGroup::Elem& g) const;
  /// Basis indices of the component of support()[s], ascending.
  const std::vector<std::size_t>& component(std::size_t s) const { return components_[s]; }
  /// Support index of the component containing basis vector i.
  std::size_t component_of(std::size_t i) const { return comp_of_[i]; }
  /// pattern()[s][t] iff A_s * A_t != 0.
  const std::vector<std::vector<bool>>& pattern() const { return pattern_; }
  bool is_thin() const;

  std::string format_support(std::size_t s) const { return G_.format(support_[s]); }

 private:
  Algebra A_;
  AbelianGroup G_;
  std::vector<AbelianGroup::Elem> labels_;
  std::vector<AbelianGroup::Elem> support_;
  std::vector<std::vector<std::size_t>> components_;
  std::vector<std::size_t> comp_of_;
  std::vector<std::vector<bool>> pattern_;
};

/// Grading check through the generic element: x_i -> x_i (x) deg(i) on A (x) FG
/// must be multiplicative on basis pairs.
bool verify_grading_generic(const Algebra& A, const AbelianGroup& G, const std::vector<AbelianGroup::Elem>& labels);

struct UniversalGrading {
  AbelianGroup U;
  /// degU[s] is the universal degree of support()[s].
  std::vector<AbelianGroup::Elem> degU;
  /// fold[i] is the image in G of canonical generator i of U.
  std::vector<AbelianGroup::Elem> fold;
  /// The same algebra graded by U.
  Grading regraded;

  AbelianGroup::Elem fold_apply(const AbelianGroup& G, const AbelianGroup::Elem& u) const;
};

/// Free abelian group on the support modulo s + t - (s t) for every ordered pair in the pattern.
UniversalGrading universal_group(const Grading& g);

/// The grading read over an extension K of its base field; K must contain the base field.
Grading extend_scalars(const Grading& g, const Field& K);

/// Grading with the table coefficients mapped into K through K.coerce; used to
/// read a rational fixture over a finite field.
Grading reduce_to(const Grading& g, const Field& K);

struct ProductPattern {
  /// Ordered pairs of support indices.
  std::vector<std::pair<std::size_t, std::size_t>> nonzero, zero;
};

ProductPattern product_pattern(const Grading& g);

}  // namespace gw

#endif  // GRADWB_GALG_HPP

#ifndef GRADWB_COMRINGS_HPP
#define GRADWB_COMRINGS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gradwb/abgroups.hpp"
#include "gradwb/linalg.hpp"
#include "gradwb/poly.hpp"
#include "gradwb/scalars.hpp"

namespace gw {

/// Add/multiply/inverse tables for a small finite ring, on integer codes.
/// Code of an element = sum of field codes c_i * q^i over the basis coordinates.
struct RingTables {
  std::int32_t size = 0;
  std::int32_t zero = 0, one = 0;
  std::vector<std::int32_t> add, mul, neg;
  std::vector<std::int32_t> inv;  // -1 for non-units
  std::int32_t op_add(std::int32_t a, std::int32_t b) const { return add[static_cast<std::size_t>(a) * size + b]; }
  std::int32_t op_mul(std::int32_t a, std::int32_t b) const { return mul[static_cast<std::size_t>(a) * size + b]; }
};

/// A finite-dimensional commutative unital algebra over an ExactField, given by
/// structure constants on a basis b_0..b_{n-1}. Elements are coordinate vectors.
///
/// Commutativity, associativity and the unit axioms are checked at construction.
/// Handle semantics: copies share the immutable state and the lazily filled caches.
class TestRing {
 public:
  using Elem = std::vector<Scalar>;

  /// table[i][j] = b_i * b_j. The unit is found by linear solving.
  static TestRing from_table(const Field& F, std::vector<std::vector<Elem>> table, std::string name,
                             std::vector<Elem> idempotent_hints = {});
  static TestRing base_field(const Field& F);
  /// F[e]/(e^n), basis 1, e, ..., e^(n-1).
  static TestRing dual_numbers(const Field& F, int n);
  /// F[x]/(f) for monic f, basis 1, x, ..., x^(deg f - 1).
  static TestRing truncated_poly(const Field& F, const poly::Poly& f);
  /// R1 x R2, basis of R1 followed by basis of R2; records the two block units as hints.
  static TestRing product(const TestRing& R1, const TestRing& R2);
  /// F[G] for finite G, basis indexed by G.elements().
  static TestRing group_algebra_finite(const Field& F, const AbelianGroup& G);

  const Field& field() const;
  std::size_t dim() const;
  const std::string& name() const;
  const std::vector<std::vector<Elem>>& table() const;

  Elem zero() const;
  Elem one() const;
  Elem basis(std::size_t i) const;
  Elem scalar(const Scalar& c) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Scalar& c, const Elem& a) const;
  Elem pow(const Elem& a, std::uint64_t e) const;
  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const;

  /// Matrix of y -> x*y; column j is x*b_j.
  linalg::Mat mult_matrix(const Elem& x) const;
  bool is_unit(const Elem& x) const;
  bool is_nilpotent(const Elem& x) const;
  /// Inverse of a unit; ArithmeticError otherwise.
  Elem inv(const Elem& x) const;
  bool is_idempotent(const Elem& x) const;

  /// Basis of the nilradical (verified to be an ideal).
  const std::vector<Elem>& nilradical() const;
  /// Primitive orthogonal idempotents summing to 1, sorted by descending coordinate vector.
  const std::vector<Elem>& idempotents() const;
  /// Dimension of the ideal x R.
  std::size_t ideal_dim(const Elem& x) const;

  bool is_finite() const;
  /// |R|; CapExceeded if it does not fit comfortably in 63 bits.
  std::int64_t cardinality() const;
  Elem element(std::int64_t code) const;
  std::int64_t code_of(const Elem& x) const;
  /// Tables for finite rings with at most `kTableLimit` elements, else null.
  const RingTables* tables() const;
  static constexpr std::int64_t kTableLimit = 1024;

  Elem random(std::mt19937_64& rng) const;

  /// Same ring in the basis given by the columns of P (old coordinates of new basis vectors).
  TestRing change_basis(const linalg::Mat& P, std::string name) const;

  std::string format(const Elem& x) const;
  Elem parse(const std::string& text) const;

  /// Structural description used by deck printing, e.g. "dual F3 2".
  const std::string& recipe() const;
  TestRing with_recipe(std::string recipe) const;

  friend bool operator==(const TestRing& a, const TestRing& b);

  struct Impl;

 private:
  explicit TestRing(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

struct UnitGroupData {
  std::vector<TestRing::Elem> elements;  // all units, in code order
  std::vector<TestRing::Elem> generators;
  std::vector<std::int64_t> orders;
};

/// Units of a finite ring with |R| <= cap (default 1e6).
UnitGroupData enumerate_units(const TestRing& R, std::int64_t cap = 1000000);

/// Multiplicative order of a unit of a finite ring.
std::int64_t unit_order(const TestRing& R, const TestRing::Elem& x);

/// Finitely supported element sum r_h h of R G.
class GroupAlgebraElement {
 public:
  using Terms = std::map<AbelianGroup::Elem, TestRing::Elem>;
  GroupAlgebraElement() = default;
  explicit GroupAlgebraElement(Terms t) : terms_(std::move(t)) {}
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

 private:
  Terms terms_;
};

/// Sparse arithmetic in R G for a finitely generated abelian G.
class GroupAlgebra {
 public:
  GroupAlgebra(TestRing R, AbelianGroup G) : R_(std::move(R)), G_(std::move(G)) {}
  const TestRing& ring() const { return R_; }
  const AbelianGroup& group() const { return G_; }

  GroupAlgebraElement zero() const { return {}; }
  GroupAlgebraElement one() const;
  GroupAlgebraElement monomial(const TestRing::Elem& r, const AbelianGroup::Elem& g) const;
  GroupAlgebraElement add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
  GroupAlgebraElement sub(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
  GroupAlgebraElement mul(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
  GroupAlgebraElement scale(const TestRing::Elem& r, const GroupAlgebraElement& a) const;
  bool equal(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
  /// Ring map R G -> R sending every group element to 1.
  TestRing::Elem counit(const GroupAlgebraElement& a) const;
  /// r h is a unit of R G iff r is a unit of R; returns whether `a` has that shape.
  bool is_unit_monomial(const GroupAlgebraElement& a) const;
  GroupAlgebraElement inverse_monomial(const GroupAlgebraElement& a) const;
  std::string format(const GroupAlgebraElement& a) const;

 private:
  TestRing R_;
  AbelianGroup G_;
};

}  // namespace gw

#endif  // GRADWB_COMRINGS_HPP

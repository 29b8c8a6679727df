#ifndef GRADWB_ABGROUPS_HPP
#define GRADWB_ABGROUPS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gradwb/errors.hpp"

namespace gw {

/// Dense integer matrix, row-major. Dimensions are explicit so that 0 x n and
/// n x 0 matrices keep their shape.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<mpz_class> row(std::size_t i) const;
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row i += k * row j
  void add_row(std::size_t i, std::size_t j, const mpz_class& k);
  void add_col(std::size_t i, std::size_t j, const mpz_class& k);
  void negate_row(std::size_t i);
  void append_row(const std::vector<mpz_class>& r);

  friend IntMatrix operator*(const IntMatrix& A, const IntMatrix& B);
  friend bool operator==(const IntMatrix& A, const IntMatrix& B) = default;

  std::string format() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

/// Exact determinant by fraction-free elimination.
mpz_class determinant(const IntMatrix& M);

/// U * M * V = D with U, V unimodular, D diagonal, d_1 | d_2 | ..., all d_i >= 0.
struct SmithForm {
  IntMatrix D, U, V;
  std::vector<mpz_class> diagonal() const;
  std::size_t rank() const;
};

/// Smith normal form. The postcondition is re-verified before returning.
SmithForm smith_normal_form(const IntMatrix& M);

/// Row Hermite normal form: nonzero rows only, positive pivots, entries above
/// each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& M);

/// Finitely generated abelian group Z/d_1 + ... + Z/d_k + Z^r with d_i | d_{i+1}, d_i >= 2.
/// Elements are vectors of length k + r, torsion coordinates first, each in [0, d_i).
class AbelianGroup {
 public:
  using Elem = std::vector<std::int64_t>;

  AbelianGroup() = default;
  /// Throws InputError unless `torsion` is a divisibility chain of integers >= 2.
  AbelianGroup(std::vector<std::int64_t> torsion, int rank);
  static AbelianGroup cyclic(std::int64_t n);  // n = 0 gives Z
  static AbelianGroup free(int rank);
  /// Parse `Z/2 + Z/4 + Z^1`, `Z^2`, `Z/6`, `Z`, or `0`.
  static AbelianGroup parse(const std::string& text);

  int rank() const { return rank_; }
  const std::vector<std::int64_t>& torsion() const { return torsion_; }
  std::size_t ngens() const { return torsion_.size() + static_cast<std::size_t>(rank_); }
  /// Modulus of coordinate i; 0 for free coordinates.
  std::int64_t modulus(std::size_t i) const;
  bool is_finite() const { return rank_ == 0; }
  bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
  /// |G|; throws NotEnumerable for infinite groups.
  std::int64_t order() const;

  Elem zero() const { return Elem(ngens(), 0); }
  Elem generator(std::size_t i) const;
  Elem normalize(Elem x) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem scale(std::int64_t k, const Elem& a) const;
  bool is_zero(const Elem& a) const;
  /// Element order, 0 when infinite.
  std::int64_t element_order(const Elem& a) const;
  /// All elements of a finite group in lexicographic coordinate order.
  std::vector<Elem> elements() const;

  std::string format() const;
  std::string format(const Elem& x) const;
  /// Comma-separated integers; a bare integer is accepted for one-coordinate groups.
  Elem parse_element(const std::string& text) const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) = default;

 private:
  std::vector<std::int64_t> torsion_;
  int rank_ = 0;
};

/// Abstract generators x_1..x_m subject to integer relations (rows).
struct Presentation {
  std::size_t ngens = 0;
  IntMatrix relations;  // rows x ngens
};

struct PresentedGroup {
  AbelianGroup group;
  /// projection[j] is the image of abstract generator j.
  std::vector<AbelianGroup::Elem> projection;
  /// lift[i] expresses canonical generator i of `group` in abstract generators.
  std::vector<std::vector<mpz_class>> lift;
};

PresentedGroup group_from_presentation(const Presentation& P);

struct Subgroup {
  AbelianGroup H;
  /// inclusion[i] is canonical generator i of H written in G-coordinates.
  std::vector<AbelianGroup::Elem> inclusion;
  /// projection[j] is S_j written in H-coordinates.
  std::vector<AbelianGroup::Elem> projection;
  /// Hermite basis of {a in Z^|S| : sum a_j S_j = 0 in G}.
  IntMatrix relation_lattice;
  bool is_whole_group = false;
};

Subgroup subgroup_generated(const AbelianGroup& G, const std::vector<AbelianGroup::Elem>& S);

/// Integer coefficients a with sum a_j S_j = g, if g lies in <S>.
std::optional<std::vector<mpz_class>> express_in(const AbelianGroup& G, const std::vector<AbelianGroup::Elem>& S,
                                                 const AbelianGroup::Elem& g);

/// |Hom(U, A)| for finite A, from invariant factors: prod gcd(d_i, e_j) times |A|^rank(U).
std::int64_t hom_count(const AbelianGroup& U, const AbelianGroup& A);

/// All homomorphisms U -> M where M is a finite abelian group given by an explicit
/// element list (the units of a finite ring). A character is the list of values on
/// the canonical generators of U. Values are indices into `elements`.
///
/// `pow_is_one(i, d)` reports whether elements[i]^d is the identity.
std::vector<std::vector<std::size_t>> enumerate_characters(
    const AbelianGroup& U, std::size_t nelements, const std::function<bool(std::size_t, std::int64_t)>& pow_is_one);

}  // namespace gw

#endif  // GRADWB_ABGROUPS_HPP

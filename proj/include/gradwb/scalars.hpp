#ifndef GRADWB_SCALARS_HPP
#define GRADWB_SCALARS_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gradwb/errors.hpp"

namespace gw {

/// An element of some ExactField. The owning Field gives it meaning:
///   finite fields use an integer code in [0, q),
///   the rationals use a canonical mpq,
///   extensions of infinite fields use a coefficient vector over the base.
class Scalar {
 public:
  using Coeffs = std::vector<Scalar>;

  Scalar() = default;
  explicit Scalar(std::int64_t code) : rep_(code) {}
  explicit Scalar(mpq_class q) : rep_(std::move(q)) {}
  explicit Scalar(Coeffs c) : rep_(std::move(c)) {}

  bool is_code() const { return rep_.index() == 0; }
  bool is_rational() const { return rep_.index() == 1; }
  bool is_coeffs() const { return rep_.index() == 2; }

  std::int64_t code() const { return std::get<0>(rep_); }
  const mpq_class& rational() const { return std::get<1>(rep_); }
  const Coeffs& coeffs() const { return std::get<2>(rep_); }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  std::variant<std::int64_t, mpq_class, Coeffs> rep_{std::int64_t{0}};
};

enum class FieldKind { Rationals, Prime, Extension };

enum class RootStatus { Witness, NoSolution, Unknown };

struct RootResult {
  RootStatus status = RootStatus::Unknown;
  std::optional<Scalar> root;
};

/// A field in a tower built from Q or F_p by simple extensions F[t]/(f).
///
/// Cheap to copy: a handle onto immutable shared state. Irreducibility of an
/// extension modulus is not checked up front; any nonzero element that turns
/// out to be non-invertible raises ReducibleModulus.
class Field {
 public:
  static Field rationals();
  static Field prime(std::int64_t p);
  /// `modulus` is monic, low-degree-first, with coefficients in `base`; degree >= 2.
  static Field extension(const Field& base, std::vector<Scalar> modulus);

  FieldKind kind() const;
  std::int64_t characteristic() const;
  bool is_finite() const;
  /// |F| for finite fields; throws NotEnumerable otherwise.
  std::int64_t cardinality() const;
  /// Degree over the immediate base (1 for Q and F_p).
  int degree() const;
  const Field& base() const;
  const std::vector<Scalar>& modulus() const;
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t n) const;
  Scalar from_rational(const mpq_class& q) const;
  /// The generator t of an extension field.
  Scalar generator() const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar pow(const Scalar& a, const mpz_class& e) const;
  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;

  /// Least n >= 1 with x^n = 1 (finite fields only).
  std::int64_t unit_order(const Scalar& x) const;
  /// Solve x^d = c. NoSolution is always backed by a proof; Unknown only over
  /// extensions of Q.
  RootResult dth_root(const Scalar& c, std::int64_t d) const;

  /// True if `sub` is this field or lies below it in the tower.
  bool contains(const Field& sub) const;
  /// Map an element of `sub` into this field: tower embedding, or reduction
  /// of rationals modulo the characteristic.
  Scalar coerce(const Field& sub, const Scalar& x) const;

  /// Finite fields: the element with the given code, and all elements in code order.
  Scalar element(std::int64_t index) const;
  std::int64_t index_of(const Scalar& x) const;
  std::vector<Scalar> elements() const;

  Scalar random(std::mt19937_64& rng) const;

  std::string format(const Scalar& x) const;
  Scalar parse(std::string_view text) const;

  friend bool operator==(const Field& a, const Field& b);

  struct Impl;

 private:
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

bool is_prime(std::int64_t n);

}  // namespace gw

#endif  // GRADWB_SCALARS_HPP

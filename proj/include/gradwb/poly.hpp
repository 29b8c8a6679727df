#ifndef GRADWB_POLY_HPP
#define GRADWB_POLY_HPP

#include <random>
#include <vector>

#include "gradwb/scalars.hpp"

// Dense univariate polynomials over an ExactField, low-degree-first.
// The zero polynomial is the empty vector; every result is trimmed.
namespace gw::poly {

using Poly = std::vector<Scalar>;

Poly trim(const Field& F, Poly p);
int degree(const Poly& p);  // -1 for zero
Poly constant(const Field& F, const Scalar& c);
Poly monomial(const Field& F, int deg);  // t^deg
Poly x_minus(const Field& F, const Scalar& a);

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, const Scalar& c);
void divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly quo(const Field& F, const Poly& a, const Poly& b);
Poly rem(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, const Poly& a, const Poly& b);
/// Returns g = gcd(a, b) (monic) and s, t with s a + t b = g.
Poly ext_gcd(const Field& F, const Poly& a, const Poly& b, Poly& s, Poly& t);
Poly derivative(const Field& F, const Poly& a);
Poly powmod(const Field& F, const Poly& base, const mpz_class& e, const Poly& m);
Scalar eval(const Field& F, const Poly& p, const Scalar& x);
bool equal(const Field& F, const Poly& a, const Poly& b);

/// Product of the distinct monic irreducible factors of p (p nonzero).
Poly radical(const Field& F, const Poly& p);

/// Monic irreducible factors of a squarefree polynomial.
///
/// Complete over finite fields (distinct-degree then equal-degree splitting).
/// Over Q: rational roots, then cyclotomic factors, then a leftover of degree
/// <= 3 with no rational root is irreducible. Anything else throws
/// FactorizationIncomplete.
std::vector<Poly> factor_squarefree(const Field& F, const Poly& p);

bool is_irreducible_finite(const Field& F, const Poly& p);
/// Deterministic search for a monic irreducible of the given degree over a finite field.
Poly find_irreducible(const Field& F, int deg);

/// The n-th cyclotomic polynomial with coefficients in F.
Poly cyclotomic(const Field& F, int n);

std::string format(const Field& F, const Poly& p);

}  // namespace gw::poly

#endif  // GRADWB_POLY_HPP

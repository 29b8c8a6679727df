#ifndef GRADWB_FIXTURES_HPP
#define GRADWB_FIXTURES_HPP

#include "gradwb/galg.hpp"

// The reference gradings used by tests, decks and the acceptance run.
namespace gw::fixtures {

/// Zero multiplication on span(u, v), graded by Z/6 with deg u = 2, deg v = 3.
Grading zero_product_pair(const Field& F);

/// e1^2 = e2, e2^2 = e1, e1 e2 = e2 e1 = 0, graded by Z/3 with deg e1 = 1, deg e2 = 2.
Grading para_hurwitz(const Field& F);

/// Basis 1, u, u^2 with u^3 = c, graded by Z/3 by the power of u.
Grading pure_cubic(const Field& F, std::int64_t c = 2);

/// F[x]/(x^2) with every element in degree 0 of the trivial group.
Grading trivial_dual(const Field& F);

}  // namespace gw::fixtures

#endif  // GRADWB_FIXTURES_HPP

#ifndef GRADWB_LINALG_HPP
#define GRADWB_LINALG_HPP

#include <optional>
#include <vector>

#include "gradwb/scalars.hpp"

// Dense linear algebra over an ExactField. Matrices are row-major vectors of rows.
namespace gw::linalg {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

Mat zeros(const Field& F, std::size_t rows, std::size_t cols);
Mat identity(const Field& F, std::size_t n);
Mat transpose(const Mat& A);
Mat mul(const Field& F, const Mat& A, const Mat& B);
Vec apply(const Field& F, const Mat& A, const Vec& x);
bool is_zero(const Field& F, const Vec& v);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(const Field& F, Mat& A);
std::size_t rank(const Field& F, Mat A);
/// Basis of the right null space {x : A x = 0}.
Mat kernel(const Field& F, const Mat& A, std::size_t cols);
/// Some x with A x = b, if one exists.
std::optional<Vec> solve(const Field& F, const Mat& A, const Vec& b);
Scalar det(const Field& F, Mat A);
std::optional<Mat> inverse(const Field& F, const Mat& A);
/// Rows of `vectors` reduced to a basis of their span (rref rows).
Mat row_basis(const Field& F, Mat vectors);

}  // namespace gw::linalg

#endif  // GRADWB_LINALG_HPP

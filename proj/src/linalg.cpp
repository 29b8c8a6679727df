#include "gradwb/linalg.hpp"

#include <algorithm>

namespace gw::linalg {

Mat zeros(const Field& F, std::size_t rows, std::size_t cols) {
  return Mat(rows, Vec(cols, F.zero()));
}

Mat identity(const Field& F, std::size_t n) {
  Mat I = zeros(F, n, n);
  for (std::size_t i = 0; i < n; ++i) I[i][i] = F.one();
  return I;
}

Mat transpose(const Mat& A) {
  if (A.empty()) return {};
  Mat T(A[0].size(), Vec(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  }
  return T;
}

Mat mul(const Field& F, const Mat& A, const Mat& B) {
  const std::size_t inner = B.size();
  const std::size_t cols = inner ? B[0].size() : 0;
  Mat C = zeros(F, A.size(), cols);
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (F.is_zero(A[i][k])) continue;
      for (std::size_t j = 0; j < cols; ++j) C[i][j] = F.add(C[i][j], F.mul(A[i][k], B[k][j]));
    }
  }
  return C;
}

Vec apply(const Field& F, const Mat& A, const Vec& x) {
  Vec y(A.size(), F.zero());
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!F.is_zero(A[i][j]) && !F.is_zero(x[j])) y[i] = F.add(y[i], F.mul(A[i][j], x[j]));
    }
  }
  return y;
}

bool is_zero(const Field& F, const Vec& v) {
  return std::all_of(v.begin(), v.end(), [&](const Scalar& s) { return F.is_zero(s); });
}

std::vector<std::size_t> rref(const Field& F, Mat& A) {
  std::vector<std::size_t> pivots;
  if (A.empty()) return pivots;
  const std::size_t rows = A.size(), cols = A[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && F.is_zero(A[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(A[r], A[piv]);
    Scalar inv = F.inv(A[r][c]);
    for (std::size_t j = c; j < cols; ++j) A[r][j] = F.mul(A[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || F.is_zero(A[i][c])) continue;
      Scalar f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const Field& F, Mat A) { return rref(F, A).size(); }

Mat kernel(const Field& F, const Mat& A, std::size_t cols) {
  Mat R = A;
  auto pivots = rref(F, R);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Mat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, F.zero());
    v[free] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(R[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Field& F, const Mat& A, const Vec& b) {
  const std::size_t cols = A.empty() ? 0 : A[0].size();
  Mat aug = A;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = rref(F, aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vec x(cols, F.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

Scalar det(const Field& F, Mat A) {
  const std::size_t n = A.size();
  Scalar d = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && F.is_zero(A[piv][c])) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      std::swap(A[piv], A[c]);
      d = F.neg(d);
    }
    d = F.mul(d, A[c][c]);
    Scalar inv = F.inv(A[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (F.is_zero(A[i][c])) continue;
      Scalar f = F.mul(A[i][c], inv);
      for (std::size_t j = c; j < n; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[c][j]));
    }
  }
  return d;
}

std::optional<Mat> inverse(const Field& F, const Mat& A) {
  const std::size_t n = A.size();
  Mat aug = A;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, F.zero());
    aug[i][n + i] = F.one();
  }
  auto pivots = rref(F, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = Vec(aug[i].begin() + static_cast<long>(n), aug[i].end());
  return inv;
}

Mat row_basis(const Field& F, Mat vectors) {
  auto pivots = rref(F, vectors);
  vectors.resize(pivots.size());
  return vectors;
}

}  // namespace gw::linalg

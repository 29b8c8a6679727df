#include "gradwb/abgroups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gradwb/text.hpp"

namespace gw {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  IntMatrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged integer matrix");
    for (std::size_t j = 0; j < cols; ++j) M(i, j) = static_cast<long>(rows[i][j]);
  }
  return M;
}

std::vector<mpz_class> IntMatrix::row(std::size_t i) const {
  return std::vector<mpz_class>(a_.begin() + static_cast<long>(i * cols_),
                                a_.begin() + static_cast<long>((i + 1) * cols_));
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::append_row(const std::vector<mpz_class>& r) {
  if (r.size() != cols_) throw InputError("row length mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

IntMatrix operator*(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols() != B.rows()) throw InputError("integer matrix shape mismatch");
  IntMatrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t k = 0; k < A.cols(); ++k) {
      if (A(i, k) == 0) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) += A(i, k) * B(k, j);
    }
  }
  return C;
}

std::string IntMatrix::format() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

mpz_class determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      A.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        A(i, j) = v;
      }
      A(i, k) = 0;
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Normal forms

std::vector<mpz_class> SmithForm::diagonal() const {
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal()) r += d != 0;
  return r;
}

namespace {

bool smallest_nonzero(const IntMatrix& D, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  mpz_class best;
  for (std::size_t i = t; i < D.rows(); ++i) {
    for (std::size_t j = t; j < D.cols(); ++j) {
      if (D(i, j) == 0) continue;
      mpz_class a = abs(D(i, j));
      if (!found || a < best) {
        best = a;
        pi = i;
        pj = j;
        found = true;
      }
    }
  }
  return found;
}

void verify_smith(const IntMatrix& M, const SmithForm& S) {
  if (S.U * M * S.V != S.D) throw IdentityViolation("Smith form: U*M*V != D");
  const std::size_t k = std::min(S.D.rows(), S.D.cols());
  for (std::size_t i = 0; i < S.D.rows(); ++i) {
    for (std::size_t j = 0; j < S.D.cols(); ++j) {
      if (i != j && S.D(i, j) != 0) throw IdentityViolation("Smith form: off-diagonal entry");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (S.D(i, i) < 0) throw IdentityViolation("Smith form: negative diagonal entry");
    if (i + 1 < k) {
      const mpz_class& a = S.D(i, i);
      const mpz_class& b = S.D(i + 1, i + 1);
      bool divides = a == 0 ? b == 0 : mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
      if (!divides) throw IdentityViolation("Smith form: divisibility chain broken");
    }
  }
  if (abs(determinant(S.U)) != 1 || abs(determinant(S.V)) != 1) {
    throw IdentityViolation("Smith form: transform is not unimodular");
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
  SmithForm S{M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols())};
  IntMatrix& D = S.D;
  const std::size_t k = std::min(D.rows(), D.cols());
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t pi = t, pj = t;
    if (!smallest_nonzero(D, t, pi, pj)) break;
    D.swap_rows(t, pi);
    S.U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    S.V.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < D.rows(); ++i) {
        if (D(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_row(i, t, -q);
        S.U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < D.cols(); ++j) {
        if (D(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_col(j, t, -q);
        S.V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Bring the smallest remainder in row/column t to the pivot.
        std::size_t bi = t, bj = t;
        mpz_class best = abs(D(t, t));
        for (std::size_t i = t + 1; i < D.rows(); ++i) {
          if (D(i, t) != 0 && abs(D(i, t)) < best) best = abs(D(i, t)), bi = i, bj = t;
        }
        for (std::size_t j = t + 1; j < D.cols(); ++j) {
          if (D(t, j) != 0 && abs(D(t, j)) < best) best = abs(D(t, j)), bi = t, bj = j;
        }
        D.swap_rows(t, bi);
        S.U.swap_rows(t, bi);
        D.swap_cols(t, bj);
        S.V.swap_cols(t, bj);
        continue;
      }
      // Enforce divisibility of the remaining block by the pivot.
      bool fixed = false;
      for (std::size_t i = t + 1; i < D.rows() && !fixed; ++i) {
        for (std::size_t j = t + 1; j < D.cols(); ++j) {
          if (D(i, j) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            D.add_row(t, i, 1);
            S.U.add_row(t, i, 1);
            fixed = true;
            break;
          }
        }
      }
      if (!fixed) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      S.U.negate_row(t);
    }
  }
  verify_smith(M, S);
  return S;
}

IntMatrix hermite_normal_form(const IntMatrix& M) {
  IntMatrix A = M;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    for (;;) {
      std::size_t best = A.rows();
      for (std::size_t i = r; i < A.rows(); ++i) {
        if (A(i, c) != 0 && (best == A.rows() || abs(A(i, c)) < abs(A(best, c)))) best = i;
      }
      if (best == A.rows()) break;
      A.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < A.rows(); ++i) {
        if (A(i, c) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), A(i, c).get_mpz_t(), A(r, c).get_mpz_t());
        A.add_row(i, r, -q);
        if (A(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) A.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), A(i, c).get_mpz_t(), A(r, c).get_mpz_t());
      A.add_row(i, r, -q);
    }
    ++r;
  }
  IntMatrix H(0, A.cols());
  for (std::size_t i = 0; i < r; ++i) H.append_row(A.row(i));
  return H;
}

namespace {

IntMatrix unimodular_inverse(const IntMatrix& V) {
  const std::size_t n = V.rows();
  IntMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = V(i, j);
    aug(i, n + i) = 1;
  }
  IntMatrix H = hermite_normal_form(aug);
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (H(i, i) != 1) throw IdentityViolation("matrix is not unimodular");
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = H(i, n + j);
  }
  return inv;
}

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw ArithmeticError("integer coordinate exceeds 64 bits");
  return z.get_si();
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup::AbelianGroup(std::vector<std::int64_t> torsion, int rank) : torsion_(std::move(torsion)), rank_(rank) {
  if (rank < 0) throw InputError("negative free rank");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw InputError("invariant factors must be >= 2");
    if (i + 1 < torsion_.size() && torsion_[i + 1] % torsion_[i] != 0) {
      throw InputError("invariant factors must form a divisibility chain (write Z/6, not Z/2 + Z/3)");
    }
  }
}

AbelianGroup AbelianGroup::cyclic(std::int64_t n) {
  if (n == 0) return AbelianGroup({}, 1);
  if (n == 1) return AbelianGroup({}, 0);
  return AbelianGroup({n}, 0);
}

AbelianGroup AbelianGroup::free(int rank) { return AbelianGroup({}, rank); }

AbelianGroup AbelianGroup::parse(const std::string& text) {
  std::string s = text::strip(text);
  if (s == "0" || s == "1") return AbelianGroup();
  std::vector<std::int64_t> torsion;
  int rank = 0;
  for (const auto& part : text::split_top(s, '+')) {
    if (part == "Z") {
      ++rank;
    } else if (text::starts_with(part, "Z/")) {
      std::int64_t d = text::parse_int(part.substr(2), "cyclic order");
      if (d < 2) throw InputError("cyclic factor Z/" + std::to_string(d) + " must have order >= 2");
      if (rank) throw InputError("write torsion factors before free factors in '" + s + "'");
      torsion.push_back(d);
    } else if (text::starts_with(part, "Z^")) {
      std::int64_t r = text::parse_int(part.substr(2), "free rank");
      if (r < 0) throw InputError("negative free rank");
      rank += static_cast<int>(r);
    } else {
      throw InputError("bad group factor '" + part + "'");
    }
  }
  return AbelianGroup(std::move(torsion), rank);
}

std::int64_t AbelianGroup::modulus(std::size_t i) const { return i < torsion_.size() ? torsion_[i] : 0; }

std::int64_t AbelianGroup::order() const {
  if (rank_ > 0) throw NotEnumerable("infinite group " + format());
  std::int64_t n = 1;
  for (auto d : torsion_) n *= d;
  return n;
}

AbelianGroup::Elem AbelianGroup::generator(std::size_t i) const {
  Elem e = zero();
  e.at(i) = 1;
  return normalize(e);
}

AbelianGroup::Elem AbelianGroup::normalize(Elem x) const {
  if (x.size() != ngens()) throw InputError("element has wrong number of coordinates for " + format());
  for (std::size_t i = 0; i < torsion_.size(); ++i) x[i] = mod_floor(x[i], torsion_[i]);
  return x;
}

AbelianGroup::Elem AbelianGroup::add(const Elem& a, const Elem& b) const {
  Elem c(ngens());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return normalize(std::move(c));
}

AbelianGroup::Elem AbelianGroup::neg(const Elem& a) const {
  Elem c(ngens());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a[i];
  return normalize(std::move(c));
}

AbelianGroup::Elem AbelianGroup::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

AbelianGroup::Elem AbelianGroup::scale(std::int64_t k, const Elem& a) const {
  Elem c(ngens());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = i < torsion_.size() ? mod_floor(mod_floor(k, torsion_[i]) * a[i], torsion_[i]) : k * a[i];
  }
  return c;
}

bool AbelianGroup::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t AbelianGroup::element_order(const Elem& a) const {
  for (std::size_t i = torsion_.size(); i < a.size(); ++i) {
    if (a[i] != 0) return 0;
  }
  std::int64_t n = 1;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    std::int64_t o = torsion_[i] / std::gcd(torsion_[i], a[i]);
    n = std::lcm(n, o);
  }
  return n;
}

std::vector<AbelianGroup::Elem> AbelianGroup::elements() const {
  std::int64_t n = order();
  std::vector<Elem> out;
  out.reserve(static_cast<std::size_t>(n));
  Elem x = zero();
  for (std::int64_t c = 0; c < n; ++c) {
    out.push_back(x);
    for (std::size_t i = torsion_.size(); i-- > 0;) {
      if (++x[i] < torsion_[i]) break;
      x[i] = 0;
    }
  }
  return out;
}

std::string AbelianGroup::format() const {
  std::vector<std::string> parts;
  for (auto d : torsion_) parts.push_back("Z/" + std::to_string(d));
  if (rank_ > 0) parts.push_back("Z^" + std::to_string(rank_));
  if (parts.empty()) return "0";
  return text::join(parts, " + ", [](const std::string& s) { return s; });
}

std::string AbelianGroup::format(const Elem& x) const {
  if (x.empty()) return "0";
  if (x.size() == 1) return std::to_string(x[0]);
  return "(" + text::join(x, ",", [](std::int64_t v) { return std::to_string(v); }) + ")";
}

AbelianGroup::Elem AbelianGroup::parse_element(const std::string& raw) const {
  std::string s = text::strip(raw);
  if (s.size() >= 2 && ((s.front() == '(' && s.back() == ')') || (s.front() == '[' && s.back() == ']'))) {
    s = s.substr(1, s.size() - 2);
  }
  if (ngens() == 0) {
    if (s == "0" || s.empty()) return {};
    throw InputError("the trivial group has only the element 0");
  }
  Elem x;
  for (const auto& p : text::split_top(s, ',')) x.push_back(text::parse_int(p, "group element coordinate"));
  if (x.size() != ngens()) {
    throw InputError("element '" + raw + "' needs " + std::to_string(ngens()) + " coordinates for " + format());
  }
  return normalize(std::move(x));
}

// ---------------------------------------------------------------------------
// Presentations and subgroups

PresentedGroup group_from_presentation(const Presentation& P) {
  if (P.relations.cols() != P.ngens) throw InputError("relation matrix width differs from generator count");
  SmithForm S = smith_normal_form(P.relations);
  const std::size_t m = P.ngens;
  std::vector<mpz_class> d(m, 0);
  auto diag = S.diagonal();
  std::copy(diag.begin(), diag.end(), d.begin());
  std::vector<std::size_t> kept;
  std::vector<std::int64_t> torsion;
  int rank = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (d[i] == 1) continue;
    kept.push_back(i);
    if (d[i] == 0) {
      ++rank;
    } else {
      torsion.push_back(to_i64(d[i]));
    }
  }
  PresentedGroup out;
  out.group = AbelianGroup(torsion, rank);
  for (std::size_t j = 0; j < m; ++j) {
    AbelianGroup::Elem e;
    for (std::size_t c = 0; c < kept.size(); ++c) {
      mpz_class v = S.V(j, kept[c]);
      if (d[kept[c]] != 0) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), d[kept[c]].get_mpz_t());
      e.push_back(to_i64(v));
    }
    out.projection.push_back(std::move(e));
  }
  IntMatrix Vinv = unimodular_inverse(S.V);
  for (std::size_t idx : kept) out.lift.push_back(Vinv.row(idx));
  return out;
}

namespace {

// Rows: the elements of S, then d_i e_i for each torsion coordinate of G.
IntMatrix generator_matrix(const AbelianGroup& G, const std::vector<AbelianGroup::Elem>& S) {
  const std::size_t n = G.ngens();
  IntMatrix M(0, n);
  for (const auto& s : S) {
    if (s.size() != n) throw InputError("subset element has the wrong number of coordinates");
    std::vector<mpz_class> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = static_cast<long>(s[j]);
    M.append_row(r);
  }
  for (std::size_t i = 0; i < G.torsion().size(); ++i) {
    std::vector<mpz_class> r(n, 0);
    r[i] = static_cast<long>(G.torsion()[i]);
    M.append_row(r);
  }
  return M;
}

std::optional<std::vector<mpz_class>> solve_left(const SmithForm& S, std::size_t rows, std::size_t n,
                                                 const AbelianGroup::Elem& g) {
  std::vector<mpz_class> w(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) w[j] += mpz_class(static_cast<long>(g[k])) * S.V(k, j);
  }
  std::vector<mpz_class> z(rows, 0);
  const std::size_t r = S.rank();
  for (std::size_t i = 0; i < n; ++i) {
    if (i < r) {
      const mpz_class& d = S.D(i, i);
      if (!mpz_divisible_p(w[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      z[i] = w[i] / d;
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> a(rows, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (z[i] == 0) continue;
    for (std::size_t j = 0; j < rows; ++j) a[j] += z[i] * S.U(i, j);
  }
  return a;
}

}  // namespace

std::optional<std::vector<mpz_class>> express_in(const AbelianGroup& G, const std::vector<AbelianGroup::Elem>& S,
                                                 const AbelianGroup::Elem& g) {
  IntMatrix M = generator_matrix(G, S);
  SmithForm F = smith_normal_form(M);
  auto a = solve_left(F, M.rows(), G.ngens(), G.normalize(g));
  if (!a) return std::nullopt;
  a->resize(S.size());
  return a;
}

Subgroup subgroup_generated(const AbelianGroup& G, const std::vector<AbelianGroup::Elem>& S) {
  const std::size_t s = S.size();
  IntMatrix M = generator_matrix(G, S);
  SmithForm F = smith_normal_form(M);
  IntMatrix kernel(0, s);
  for (std::size_t i = F.rank(); i < M.rows(); ++i) {
    std::vector<mpz_class> row(s);
    for (std::size_t j = 0; j < s; ++j) row[j] = F.U(i, j);
    kernel.append_row(row);
  }
  Subgroup out;
  out.relation_lattice = hermite_normal_form(kernel);
  PresentedGroup P = group_from_presentation({s, out.relation_lattice});
  out.H = P.group;
  out.projection = P.projection;
  for (const auto& coeffs : P.lift) {
    AbelianGroup::Elem g = G.zero();
    for (std::size_t j = 0; j < s; ++j) {
      mpz_class c = coeffs[j];
      if (c == 0) continue;
      AbelianGroup::Elem term = S[j];
      for (auto& v : term) v = to_i64(c * static_cast<long>(v));
      g = G.add(g, G.normalize(term));
    }
    out.inclusion.push_back(std::move(g));
  }
  out.is_whole_group = true;
  for (std::size_t i = 0; i < G.ngens() && out.is_whole_group; ++i) {
    out.is_whole_group = solve_left(F, M.rows(), G.ngens(), G.generator(i)).has_value();
  }
  return out;
}

std::int64_t hom_count(const AbelianGroup& U, const AbelianGroup& A) {
  std::int64_t n = 1;
  for (auto d : U.torsion()) {
    for (auto e : A.torsion()) n *= std::gcd(d, e);
  }
  for (int i = 0; i < U.rank(); ++i) n *= A.order();
  return n;
}

std::vector<std::vector<std::size_t>> enumerate_characters(
    const AbelianGroup& U, std::size_t nelements, const std::function<bool(std::size_t, std::int64_t)>& pow_is_one) {
  constexpr double kCap = 1e7;
  std::vector<std::vector<std::size_t>> choices;
  double total = 1;
  for (std::size_t i = 0; i < U.ngens(); ++i) {
    std::int64_t d = U.modulus(i);
    std::vector<std::size_t> c;
    for (std::size_t x = 0; x < nelements; ++x) {
      if (d == 0 || pow_is_one(x, d)) c.push_back(x);
    }
    total *= static_cast<double>(c.size());
    choices.push_back(std::move(c));
  }
  if (total > kCap) throw CapExceeded("more than 1e7 characters");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(U.ngens());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == U.ngens()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t x : choices[i]) {
      cur[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace gw

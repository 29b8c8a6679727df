#ifndef GRADWB_POINT_ENGINE_HPP
#define GRADWB_POINT_ENGINE_HPP

// Membership tests and exhaustive search on point matrices, generic over the
// ring element representation: coordinate vectors (any TestRing) or integer
// codes into RingTables (small finite rings, the enumeration hot path).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "gradwb/comrings.hpp"
#include "gradwb/galg.hpp"

namespace gw::detail {

struct GeneralOps {
  using E = TestRing::Elem;
  const TestRing* R;

  E zero() const { return R->zero(); }
  E one() const { return R->one(); }
  E add(const E& a, const E& b) const { return R->add(a, b); }
  E sub(const E& a, const E& b) const { return R->sub(a, b); }
  E neg(const E& a) const { return R->neg(a); }
  E mul(const E& a, const E& b) const { return R->mul(a, b); }
  bool is_zero(const E& a) const { return R->is_zero(a); }
  bool eq(const E& a, const E& b) const { return a == b; }
  bool is_unit(const E& a) const { return R->is_unit(a); }
  E inv(const E& a) const { return R->inv(a); }
  E embed(const Scalar& c) const { return R->scalar(c); }
  E from_elem(const TestRing::Elem& x) const { return x; }
  TestRing::Elem to_elem(const E& x) const { return x; }
  std::int64_t size() const { return R->cardinality(); }
  E element(std::int64_t code) const { return R->element(code); }
};

struct CodeOps {
  using E = std::int32_t;
  const TestRing* R;
  const RingTables* T;

  E zero() const { return T->zero; }
  E one() const { return T->one; }
  E add(E a, E b) const { return T->op_add(a, b); }
  E sub(E a, E b) const { return T->op_add(a, T->neg[static_cast<std::size_t>(b)]); }
  E neg(E a) const { return T->neg[static_cast<std::size_t>(a)]; }
  E mul(E a, E b) const { return T->op_mul(a, b); }
  bool is_zero(E a) const { return a == T->zero; }
  bool eq(E a, E b) const { return a == b; }
  bool is_unit(E a) const { return T->inv[static_cast<std::size_t>(a)] >= 0; }
  E inv(E a) const {
    const E r = T->inv[static_cast<std::size_t>(a)];
    if (r < 0) throw ArithmeticError("inverse of a non-unit");
    return r;
  }
  E embed(const Scalar& c) const { return static_cast<E>(R->code_of(R->scalar(c))); }
  E from_elem(const TestRing::Elem& x) const { return static_cast<E>(R->code_of(x)); }
  TestRing::Elem to_elem(E x) const { return R->element(x); }
  std::int64_t size() const { return T->size; }
  E element(std::int64_t code) const { return static_cast<E>(code); }
};

enum class SearchSet { Aut, Stab };

template <class Ops>
class Engine {
 public:
  using E = typename Ops::E;
  using Mat = std::vector<E>;  // row-major n x n; column j is phi(b_j)
  struct Term {
    std::size_t k;
    E c;
  };

  Engine(const Grading& g, Ops ops) : ops_(std::move(ops)), n_(g.algebra().dim()), m_(g.support_size()) {
    const Algebra& A = g.algebra();
    st_.assign(n_, std::vector<std::vector<Term>>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
          const Scalar& c = A.product(i, j)[k];
          if (!A.field().is_zero(c)) st_[i][j].push_back({k, ops_.embed(c)});
        }
      }
    }
    for (std::size_t i = 0; i < n_; ++i) comp_of_.push_back(g.component_of(i));
    for (std::size_t s = 0; s < m_; ++s) comps_.push_back(g.component(s));
  }

  const Ops& ops() const { return ops_; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const E& at(const Mat& M, std::size_t i, std::size_t j) const { return M[i * n_ + j]; }

  // Determinant by expansion over column subsets; valid in any commutative ring.
  E det(const Mat& M) const { return det_n(M, n_); }

  /// Adjugate divided by det; false when det is not a unit.
  bool inverse(const Mat& M, Mat& out) const {
    const E d = det(M);
    if (!ops_.is_unit(d)) return false;
    const E dinv = ops_.inv(d);
    out.assign(n_ * n_, ops_.zero());
    if (n_ == 1) {
      out[0] = dinv;
      return true;
    }
    Mat minor((n_ - 1) * (n_ - 1), ops_.zero());
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::size_t t = 0;
        for (std::size_t r = 0; r < n_; ++r) {
          if (r == i) continue;
          for (std::size_t c = 0; c < n_; ++c) {
            if (c != j) minor[t++] = M[r * n_ + c];
          }
        }
        E cof = det_n(minor, n_ - 1);
        if ((i + j) % 2) cof = ops_.neg(cof);
        out[j * n_ + i] = ops_.mul(cof, dinv);
      }
    }
    return true;
  }

  /// phi(b_i b_j) = phi(b_i) phi(b_j) for the pair (i, j).
  bool pair_ok(const Mat& M, std::size_t i, std::size_t j, std::vector<E>& lhs, std::vector<E>& rhs) const {
    lhs.assign(n_, ops_.zero());
    rhs.assign(n_, ops_.zero());
    for (const Term& t : st_[i][j]) {
      for (std::size_t r = 0; r < n_; ++r) lhs[r] = ops_.add(lhs[r], ops_.mul(t.c, M[r * n_ + t.k]));
    }
    for (std::size_t a = 0; a < n_; ++a) {
      const E& x = M[a * n_ + i];
      if (ops_.is_zero(x)) continue;
      for (std::size_t b = 0; b < n_; ++b) {
        if (st_[a][b].empty()) continue;
        const E& y = M[b * n_ + j];
        if (ops_.is_zero(y)) continue;
        const E xy = ops_.mul(x, y);
        for (const Term& t : st_[a][b]) rhs[t.k] = ops_.add(rhs[t.k], ops_.mul(xy, t.c));
      }
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (!ops_.eq(lhs[r], rhs[r])) return false;
    }
    return true;
  }

  bool multiplicative(const Mat& M) const {
    std::vector<E> lhs, rhs;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (!pair_ok(M, i, j, lhs, rhs)) return false;
      }
    }
    return true;
  }

  bool is_aut(const Mat& M) const { return ops_.is_unit(det(M)) && multiplicative(M); }

  bool is_stab(const Mat& M) const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (comp_of_[i] != comp_of_[j] && !ops_.is_zero(M[i * n_ + j])) return false;
      }
    }
    return true;
  }

  bool diag(const Mat& M, std::vector<E>* scalars) const {
    if (!is_stab(M)) return false;
    std::vector<E> mu;
    for (std::size_t s = 0; s < m_; ++s) {
      const auto& C = comps_[s];
      const E lambda = M[C[0] * n_ + C[0]];
      if (!ops_.is_unit(lambda)) return false;
      for (std::size_t a : C) {
        for (std::size_t b : C) {
          if (!ops_.eq(M[a * n_ + b], a == b ? lambda : ops_.zero())) return false;
        }
      }
      mu.push_back(lambda);
    }
    if (scalars) *scalars = std::move(mu);
    return true;
  }

  struct BlockFailure {
    std::size_t block = 0, row = 0, col = 0;
    const char* reason = "";
  };

  /// Per idempotent block, the support permutation carried by phi.
  bool block_perm(const Mat& M, const std::vector<E>& idem, std::vector<std::vector<std::size_t>>* sigmas,
                  BlockFailure* fail) const {
    if (sigmas) sigmas->clear();
    for (std::size_t b = 0; b < idem.size(); ++b) {
      const E& e = idem[b];
      const bool whole = ops_.eq(e, ops_.one());
      std::vector<std::size_t> sigma(m_, m_);
      std::vector<bool> hit(m_, false);
      for (std::size_t s = 0; s < m_; ++s) {
        std::size_t target = m_;
        for (std::size_t j : comps_[s]) {
          bool nonzero_col = false;
          for (std::size_t i = 0; i < n_; ++i) {
            const E x = whole ? M[i * n_ + j] : ops_.mul(e, M[i * n_ + j]);
            if (ops_.is_zero(x)) continue;
            nonzero_col = true;
            if (target == m_) {
              target = comp_of_[i];
            } else if (comp_of_[i] != target) {
              if (fail) *fail = {b, i, j, "column meets two components"};
              return false;
            }
          }
          if (!nonzero_col) {
            if (fail) *fail = {b, 0, j, "column vanishes on the block"};
            return false;
          }
        }
        if (hit[target] || comps_[target].size() != comps_[s].size()) {
          if (fail) *fail = {b, comps_[target][0], comps_[s][0], "components are not permuted"};
          return false;
        }
        hit[target] = true;
        sigma[s] = target;
      }
      if (sigmas) sigmas->push_back(std::move(sigma));
    }
    return true;
  }

  // Elements of RG supported on the support, stored densely by support index.
  using Dense = std::vector<E>;

  /// psi phi = phi psi on A (x) RG.
  bool cent_generic(const Mat& M) const {
    Dense a(m_), b(m_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::fill(a.begin(), a.end(), ops_.zero());
        std::fill(b.begin(), b.end(), ops_.zero());
        const E& x = M[i * n_ + j];
        a[comp_of_[i]] = x;  // (psi phi)(b_j), coordinate i
        b[comp_of_[j]] = x;  // (phi psi)(b_j), coordinate i
        for (std::size_t t = 0; t < m_; ++t) {
          if (!ops_.eq(a[t], b[t])) return false;
        }
      }
    }
    return true;
  }

  /// phi^-1 psi phi diagonal on components over each idempotent block; fills shifts.
  /// Throws IdentityViolation if a diagonal conjugate has a non-monomial scalar.
  bool norm_generic(const Mat& M, const std::vector<E>& idem, std::vector<std::vector<std::size_t>>* shifts) const {
    Mat Minv;
    if (!inverse(M, Minv)) throw InputError("point is not invertible");
    if (shifts) shifts->clear();
    // N[i][j] = sum_k Minv[i][k] M[k][j] (x) deg(k)
    std::vector<Dense> N(n_ * n_, Dense(m_, ops_.zero()));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        Dense& d = N[i * n_ + j];
        for (std::size_t k = 0; k < n_; ++k) {
          d[comp_of_[k]] = ops_.add(d[comp_of_[k]], ops_.mul(Minv[i * n_ + k], M[k * n_ + j]));
        }
      }
    }
    for (const E& e : idem) {
      const bool whole = ops_.eq(e, ops_.one());
      auto part = [&](const E& x) { return whole ? x : ops_.mul(e, x); };
      std::vector<std::size_t> shift(m_, m_);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (i == j) continue;
          for (std::size_t t = 0; t < m_; ++t) {
            if (!ops_.is_zero(part(N[i * n_ + j][t]))) return false;
          }
        }
      }
      for (std::size_t s = 0; s < m_; ++s) {
        const Dense& d0 = N[comps_[s][0] * (n_ + 1)];
        for (std::size_t i : comps_[s]) {
          for (std::size_t t = 0; t < m_; ++t) {
            if (!ops_.eq(part(N[i * (n_ + 1)][t]), part(d0[t]))) return false;
          }
        }
        std::size_t nonzero = 0;
        for (std::size_t t = 0; t < m_; ++t) {
          const E x = part(d0[t]);
          if (ops_.is_zero(x)) continue;
          ++nonzero;
          shift[s] = t;
          if (!ops_.is_unit(ops_.add(x, ops_.sub(ops_.one(), e)))) {
            throw IdentityViolation("conjugated generic scalar has a non-unit coefficient");
          }
        }
        if (nonzero != 1) throw IdentityViolation("conjugated generic scalar is not a single group element");
      }
      if (shifts) shifts->push_back(std::move(shift));
    }
    return true;
  }

  // ---- exhaustive search --------------------------------------------------

  struct Step {
    std::size_t col = 0;
    bool forced = false;
    std::size_t fi = 0, fj = 0;  // forcing pair
    std::vector<std::pair<std::size_t, std::size_t>> checks;
  };

  /// Column order: free columns chosen to force as many others as possible.
  std::vector<Step> plan() const {
    std::vector<bool> done(n_, false);
    std::vector<std::vector<bool>> checked(n_, std::vector<bool>(n_, false));
    std::vector<Step> steps;
    auto forcing = [&](const std::vector<bool>& have, std::size_t& fi, std::size_t& fj, std::size_t& fk) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (!have[i]) continue;
        for (std::size_t j = 0; j < n_; ++j) {
          if (!have[j]) continue;
          std::size_t missing = 0, which = 0;
          for (const Term& t : st_[i][j]) {
            if (!have[t.k]) {
              ++missing;
              which = t.k;
            }
          }
          if (missing == 1) {
            fi = i;
            fj = j;
            fk = which;
            return true;
          }
        }
      }
      return false;
    };
    auto closure_gain = [&](std::vector<bool> have) {
      std::size_t gained = 0, a, b, c;
      while (forcing(have, a, b, c)) {
        have[c] = true;
        ++gained;
      }
      return gained;
    };
    auto add_checks = [&](Step& s) {
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (checked[i][j] || !done[i] || !done[j]) continue;
          bool all = true;
          for (const Term& t : st_[i][j]) all = all && done[t.k];
          if (!all) continue;
          checked[i][j] = true;
          s.checks.emplace_back(i, j);
        }
      }
    };
    for (;;) {
      std::size_t fi, fj, fk;
      while (forcing(done, fi, fj, fk)) {
        Step s;
        s.col = fk;
        s.forced = true;
        s.fi = fi;
        s.fj = fj;
        done[fk] = true;
        add_checks(s);
        steps.push_back(std::move(s));
      }
      std::size_t best = n_, best_gain = 0;
      for (std::size_t k = 0; k < n_; ++k) {
        if (done[k]) continue;
        auto have = done;
        have[k] = true;
        const std::size_t gain = closure_gain(have);
        if (best == n_ || gain > best_gain) {
          best = k;
          best_gain = gain;
        }
      }
      if (best == n_) break;
      Step s;
      s.col = best;
      done[best] = true;
      add_checks(s);
      steps.push_back(std::move(s));
    }
    return steps;
  }

  /// Visits every matrix in the search set that is an automorphism, in a fixed order.
  template <class Visit>
  void search(SearchSet set, Visit&& visit) const {
    const auto steps = plan();
    const std::int64_t q = ops_.size();
    Mat M(n_ * n_, ops_.zero());
    std::vector<E> lhs, rhs;
    auto allowed_row = [&](std::size_t r, std::size_t col) {
      return set == SearchSet::Aut || comp_of_[r] == comp_of_[col];
    };
    auto run_checks = [&](const Step& s) {
      for (const auto& [i, j] : s.checks) {
        if (!pair_ok(M, i, j, lhs, rhs)) return false;
      }
      return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
      if (depth == steps.size()) {
        if (ops_.is_unit(det(M))) visit(M);
        return;
      }
      const Step& s = steps[depth];
      const std::size_t col = s.col;
      if (s.forced) {
        // c phi(b_k) = phi(b_i) phi(b_j) - sum over the other terms of b_i b_j.
        std::vector<E> prod(n_, ops_.zero());
        for (std::size_t a = 0; a < n_; ++a) {
          for (std::size_t b = 0; b < n_; ++b) {
            if (st_[a][b].empty()) continue;
            const E xy = ops_.mul(M[a * n_ + s.fi], M[b * n_ + s.fj]);
            if (ops_.is_zero(xy)) continue;
            for (const Term& t : st_[a][b]) prod[t.k] = ops_.add(prod[t.k], ops_.mul(xy, t.c));
          }
        }
        E cinv = ops_.zero();
        for (const Term& t : st_[s.fi][s.fj]) {
          if (t.k == col) {
            cinv = ops_.inv(t.c);
            continue;
          }
          for (std::size_t r = 0; r < n_; ++r) prod[r] = ops_.sub(prod[r], ops_.mul(t.c, M[r * n_ + t.k]));
        }
        for (std::size_t r = 0; r < n_; ++r) {
          const E v = ops_.mul(cinv, prod[r]);
          if (!allowed_row(r, col) && !ops_.is_zero(v)) return;
          M[r * n_ + col] = v;
        }
        if (run_checks(s)) rec(depth + 1);
        return;
      }
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < n_; ++r) {
        M[r * n_ + col] = ops_.zero();
        if (allowed_row(r, col)) rows.push_back(r);
      }
      std::vector<std::int64_t> digit(rows.size(), 0);
      for (;;) {
        for (std::size_t t = 0; t < rows.size(); ++t) M[rows[t] * n_ + col] = ops_.element(digit[t]);
        if (run_checks(s)) rec(depth + 1);
        std::size_t t = rows.size();
        while (t > 0) {
          if (++digit[t - 1] < q) break;
          digit[t - 1] = 0;
          --t;
        }
        if (t == 0) break;
      }
      for (std::size_t r : rows) M[r * n_ + col] = ops_.zero();
    };
    rec(0);
  }

  /// One randomized pass through the plan: free columns from `rand()`, forced
  /// columns computed. True when the result is an automorphism.
  template <class Rand>
  bool random_point(Rand&& rand, Mat& M) const {
    M.assign(n_ * n_, ops_.zero());
    std::vector<E> lhs, rhs;
    for (const Step& s : plan()) {
      if (s.forced) {
        std::vector<E> prod(n_, ops_.zero());
        for (std::size_t a = 0; a < n_; ++a) {
          for (std::size_t b = 0; b < n_; ++b) {
            for (const Term& t : st_[a][b]) {
              prod[t.k] = ops_.add(prod[t.k], ops_.mul(ops_.mul(M[a * n_ + s.fi], M[b * n_ + s.fj]), t.c));
            }
          }
        }
        E cinv = ops_.zero();
        for (const Term& t : st_[s.fi][s.fj]) {
          if (t.k == s.col) {
            cinv = ops_.inv(t.c);
            continue;
          }
          for (std::size_t r = 0; r < n_; ++r) prod[r] = ops_.sub(prod[r], ops_.mul(t.c, M[r * n_ + t.k]));
        }
        for (std::size_t r = 0; r < n_; ++r) M[r * n_ + s.col] = ops_.mul(cinv, prod[r]);
      } else {
        for (std::size_t r = 0; r < n_; ++r) M[r * n_ + s.col] = rand();
      }
      for (const auto& [i, j] : s.checks) {
        if (!pair_ok(M, i, j, lhs, rhs)) return false;
      }
    }
    return ops_.is_unit(det(M));
  }

 private:
  E det_n(const Mat& M, std::size_t n) const {
    if (n == 1) return M[0];
    if (n == 2) return ops_.sub(ops_.mul(M[0], M[3]), ops_.mul(M[1], M[2]));
    if (n == 3) {
      E a = ops_.mul(M[0], ops_.sub(ops_.mul(M[4], M[8]), ops_.mul(M[5], M[7])));
      E b = ops_.mul(M[1], ops_.sub(ops_.mul(M[3], M[8]), ops_.mul(M[5], M[6])));
      E c = ops_.mul(M[2], ops_.sub(ops_.mul(M[3], M[7]), ops_.mul(M[4], M[6])));
      return ops_.add(ops_.sub(a, b), c);
    }
    // f[mask]: signed sum over injections of the first |mask| rows onto the columns in mask.
    std::vector<E> f(std::size_t{1} << n, ops_.zero());
    f[0] = ops_.one();
    for (std::size_t mask = 0; mask + 1 < f.size(); ++mask) {
      if (ops_.is_zero(f[mask])) continue;
      const std::size_t r = static_cast<std::size_t>(__builtin_popcountll(mask));
      for (std::size_t c = 0; c < n; ++c) {
        if (mask & (std::size_t{1} << c)) continue;
        const std::size_t above = static_cast<std::size_t>(__builtin_popcountll(mask >> (c + 1)));
        E term = ops_.mul(f[mask], M[r * n + c]);
        if (above % 2) term = ops_.neg(term);
        const std::size_t next = mask | (std::size_t{1} << c);
        f[next] = ops_.add(f[next], term);
      }
    }
    return f.back();
  }

  Ops ops_;
  std::size_t n_, m_;
  std::vector<std::vector<std::vector<Term>>> st_;
  std::vector<std::size_t> comp_of_;
  std::vector<std::vector<std::size_t>> comps_;
};

}  // namespace gw::detail

#endif  // GRADWB_POINT_ENGINE_HPP

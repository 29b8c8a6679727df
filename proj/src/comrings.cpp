#include "gradwb/comrings.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "gradwb/text.hpp"

namespace gw {

struct TestRing::Impl {
  explicit Impl(Field f) : F(std::move(f)) {}
  Field F;
  std::size_t n = 0;
  std::string name, recipe;
  std::vector<std::vector<Elem>> table;
  Elem one;
  std::vector<Elem> hints;

  std::once_flag nil_once, idem_once, tab_once;
  std::vector<Elem> nil;
  std::vector<Elem> idem;
  std::unique_ptr<RingTables> tabs;
};

namespace {

using Elem = TestRing::Elem;

Elem raw_mul(const Field& F, const std::vector<std::vector<Elem>>& table, const Elem& a, const Elem& b) {
  const std::size_t n = a.size();
  Elem out(n, F.zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (F.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (F.is_zero(b[j])) continue;
      Scalar c = F.mul(a[i], b[j]);
      const Elem& t = table[i][j];
      for (std::size_t k = 0; k < n; ++k) {
        if (!F.is_zero(t[k])) out[k] = F.add(out[k], F.mul(c, t[k]));
      }
    }
  }
  return out;
}

}  // namespace

TestRing TestRing::from_table(const Field& F, std::vector<std::vector<Elem>> table, std::string name,
                              std::vector<Elem> idempotent_hints) {
  const std::size_t n = table.size();
  if (n == 0) throw InputError("ring '" + name + "' needs dimension >= 1");
  for (const auto& row : table) {
    if (row.size() != n) throw InputError("ring '" + name + "': structure table is not square");
    for (const auto& v : row) {
      if (v.size() != n) throw InputError("ring '" + name + "': structure constant has wrong length");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (table[i][j] != table[j][i]) {
        throw InputError("ring '" + name + "' is not commutative at basis pair (" + std::to_string(j) + "," +
                         std::to_string(i) + ")");
      }
    }
  }
  // Unit: u with u * b_j = b_j for every j.
  linalg::Mat A;
  linalg::Vec rhs;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      linalg::Vec row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = table[i][j][k];
      A.push_back(std::move(row));
      rhs.push_back(j == k ? F.one() : F.zero());
    }
  }
  auto u = linalg::solve(F, A, rhs);
  if (!u) throw InputError("ring '" + name + "' has no unit element");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        Elem bi(n, F.zero()), bk(n, F.zero());
        bi[i] = F.one();
        bk[k] = F.one();
        Elem left = raw_mul(F, table, table[i][j], bk);
        Elem right = raw_mul(F, table, bi, table[j][k]);
        if (left != right) {
          throw InputError("ring '" + name + "' is not associative at basis triple (" + std::to_string(i) + "," +
                           std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
  auto impl = std::make_shared<Impl>(F);
  impl->n = n;
  impl->name = std::move(name);
  impl->table = std::move(table);
  impl->one = *u;
  impl->hints = std::move(idempotent_hints);
  return TestRing(impl);
}

TestRing TestRing::base_field(const Field& F) {
  TestRing R = from_table(F, {{{F.one()}}}, F.name());
  return R.with_recipe("field " + F.name());
}

TestRing TestRing::dual_numbers(const Field& F, int n) {
  if (n < 1) throw InputError("dual numbers need order >= 1");
  const auto N = static_cast<std::size_t>(n);
  std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N, Elem(N, F.zero())));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      if (i + j < N) t[i][j][i + j] = F.one();
    }
  }
  std::string name = F.name() + "[e]/(e^" + std::to_string(n) + ")";
  return from_table(F, std::move(t), name).with_recipe("dual " + F.name() + " " + std::to_string(n));
}

TestRing TestRing::truncated_poly(const Field& F, const poly::Poly& f0) {
  poly::Poly f = poly::trim(F, f0);
  int d = poly::degree(f);
  if (d < 1 || !F.is_one(f.back())) throw InputError("truncated polynomial ring needs a monic modulus of degree >= 1");
  const auto N = static_cast<std::size_t>(d);
  std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N, Elem(N, F.zero())));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      poly::Poly r = poly::rem(F, poly::monomial(F, static_cast<int>(i + j)), f);
      for (std::size_t k = 0; k < r.size(); ++k) t[i][j][k] = r[k];
    }
  }
  std::string lit = "[" + text::join(f, ",", [&](const Scalar& c) { return F.format(c); }) + "]";
  return from_table(F, std::move(t), F.name() + "[x]/" + poly::format(F, f))
      .with_recipe("trunc " + F.name() + " " + lit);
}

TestRing TestRing::product(const TestRing& R1, const TestRing& R2) {
  if (!(R1.field() == R2.field())) throw InputError("product of rings over different fields");
  const Field& F = R1.field();
  const std::size_t a = R1.dim(), b = R2.dim(), n = a + b;
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n, Elem(n, F.zero())));
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < a; ++j) std::copy(R1.table()[i][j].begin(), R1.table()[i][j].end(), t[i][j].begin());
  }
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      std::copy(R2.table()[i][j].begin(), R2.table()[i][j].end(), t[a + i][a + j].begin() + static_cast<long>(a));
    }
  }
  Elem e1(n, F.zero()), e2(n, F.zero());
  const Elem one1 = R1.one(), one2 = R2.one();
  std::copy(one1.begin(), one1.end(), e1.begin());
  std::copy(one2.begin(), one2.end(), e2.begin() + static_cast<long>(a));
  return from_table(F, std::move(t), "(" + R1.name() + ")x(" + R2.name() + ")", {e1, e2});
}

TestRing TestRing::group_algebra_finite(const Field& F, const AbelianGroup& G) {
  if (!G.is_finite()) throw InputError("group_algebra_finite needs a finite group");
  auto elems = G.elements();
  const std::size_t n = elems.size();
  std::map<AbelianGroup::Elem, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n, Elem(n, F.zero())));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j][index.at(G.add(elems[i], elems[j]))] = F.one();
  }
  return from_table(F, std::move(t), F.name() + "[" + G.format() + "]");
}

const Field& TestRing::field() const { return impl_->F; }
std::size_t TestRing::dim() const { return impl_->n; }
const std::string& TestRing::name() const { return impl_->name; }
const std::vector<std::vector<TestRing::Elem>>& TestRing::table() const { return impl_->table; }
const std::string& TestRing::recipe() const { return impl_->recipe; }

TestRing TestRing::with_recipe(std::string recipe) const {
  auto impl = std::make_shared<Impl>(impl_->F);
  impl->n = impl_->n;
  impl->name = impl_->name;
  impl->recipe = std::move(recipe);
  impl->table = impl_->table;
  impl->one = impl_->one;
  impl->hints = impl_->hints;
  return TestRing(impl);
}

TestRing::Elem TestRing::zero() const { return Elem(impl_->n, impl_->F.zero()); }
TestRing::Elem TestRing::one() const { return impl_->one; }

TestRing::Elem TestRing::basis(std::size_t i) const {
  Elem e = zero();
  e.at(i) = impl_->F.one();
  return e;
}

TestRing::Elem TestRing::scalar(const Scalar& c) const { return scale(c, impl_->one); }

TestRing::Elem TestRing::add(const Elem& a, const Elem& b) const {
  Elem c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = impl_->F.add(a[i], b[i]);
  return c;
}

TestRing::Elem TestRing::sub(const Elem& a, const Elem& b) const {
  Elem c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = impl_->F.sub(a[i], b[i]);
  return c;
}

TestRing::Elem TestRing::neg(const Elem& a) const {
  Elem c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = impl_->F.neg(a[i]);
  return c;
}

TestRing::Elem TestRing::mul(const Elem& a, const Elem& b) const { return raw_mul(impl_->F, impl_->table, a, b); }

TestRing::Elem TestRing::scale(const Scalar& c, const Elem& a) const {
  Elem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = impl_->F.mul(c, a[i]);
  return out;
}

TestRing::Elem TestRing::pow(const Elem& a, std::uint64_t e) const {
  Elem result = one(), base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

bool TestRing::is_zero(const Elem& a) const { return linalg::is_zero(impl_->F, a); }
bool TestRing::equal(const Elem& a, const Elem& b) const { return a == b; }

linalg::Mat TestRing::mult_matrix(const Elem& x) const {
  const std::size_t n = impl_->n;
  linalg::Mat M = linalg::zeros(impl_->F, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Elem c = mul(x, basis(j));
    for (std::size_t i = 0; i < n; ++i) M[i][j] = c[i];
  }
  return M;
}

bool TestRing::is_unit(const Elem& x) const {
  if (const RingTables* t = tables()) return t->inv[static_cast<std::size_t>(code_of(x))] >= 0;
  return !impl_->F.is_zero(linalg::det(impl_->F, mult_matrix(x)));
}

bool TestRing::is_nilpotent(const Elem& x) const { return is_zero(pow(x, impl_->n)); }

TestRing::Elem TestRing::inv(const Elem& x) const {
  if (const RingTables* t = tables()) {
    auto r = t->inv[static_cast<std::size_t>(code_of(x))];
    if (r < 0) throw ArithmeticError("element " + format(x) + " is not a unit of " + name());
    return element(r);
  }
  auto y = linalg::solve(impl_->F, mult_matrix(x), impl_->one);
  if (!y || !equal(mul(x, *y), impl_->one)) throw ArithmeticError("element " + format(x) + " is not a unit of " + name());
  return *y;
}

bool TestRing::is_idempotent(const Elem& x) const { return equal(mul(x, x), x); }

std::size_t TestRing::ideal_dim(const Elem& x) const { return linalg::rank(impl_->F, mult_matrix(x)); }

namespace {

std::vector<Elem> span_basis(const Field& F, const std::vector<Elem>& vs) {
  if (vs.empty()) return {};
  return linalg::row_basis(F, vs);
}

std::size_t span_dim(const Field& F, const std::vector<Elem>& vs) {
  if (vs.empty()) return 0;
  return linalg::rank(F, vs);
}

}  // namespace

const std::vector<TestRing::Elem>& TestRing::nilradical() const {
  std::call_once(impl_->nil_once, [this] {
    const Field& F = impl_->F;
    const std::size_t n = impl_->n;
    linalg::Mat K;
    if (F.characteristic() == 0) {
      // Radical of the trace form Tr(L_{xy}).
      linalg::Mat G = linalg::zeros(F, n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          linalg::Mat L = mult_matrix(impl_->table[i][j]);
          Scalar tr = F.zero();
          for (std::size_t k = 0; k < n; ++k) tr = F.add(tr, L[k][k]);
          G[i][j] = tr;
        }
      }
      K = linalg::kernel(F, G, n);
    } else {
      // Kernel of a power of the F-linear Frobenius x -> x^q, with q^m >= n.
      std::int64_t q = F.cardinality();
      linalg::Mat Phi = linalg::zeros(F, n, n);
      for (std::size_t j = 0; j < n; ++j) {
        Elem c = pow(basis(j), static_cast<std::uint64_t>(q));
        for (std::size_t i = 0; i < n; ++i) Phi[i][j] = c[i];
      }
      linalg::Mat P = Phi;
      std::int64_t reach = q;
      while (reach < static_cast<std::int64_t>(n)) {
        P = linalg::mul(F, P, Phi);
        reach *= q;
      }
      K = linalg::kernel(F, P, n);
    }
    std::vector<Elem> nil = span_basis(F, K);
    for (const auto& x : nil) {
      if (!is_nilpotent(x)) throw IdentityViolation("nilradical basis element is not nilpotent");
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Elem> ext = nil;
        ext.push_back(mul(x, basis(j)));
        if (span_dim(F, ext) != nil.size()) throw IdentityViolation("nilradical is not an ideal");
      }
    }
    impl_->nil = std::move(nil);
  });
  return impl_->nil;
}

namespace {

// Monic minimal polynomial of y inside the ring e R, whose unit is e.
poly::Poly min_poly(const TestRing& R, const Elem& e, const Elem& y) {
  const Field& F = R.field();
  std::vector<Elem> powers{e};
  for (;;) {
    Elem next = R.mul(powers.back(), y);
    linalg::Mat A = linalg::zeros(F, R.dim(), powers.size());
    for (std::size_t c = 0; c < powers.size(); ++c) {
      for (std::size_t r = 0; r < R.dim(); ++r) A[r][c] = powers[c][r];
    }
    if (auto sol = linalg::solve(F, A, next)) {
      poly::Poly p(powers.size() + 1, F.zero());
      for (std::size_t i = 0; i < powers.size(); ++i) p[i] = F.neg((*sol)[i]);
      p.back() = F.one();
      return p;
    }
    powers.push_back(std::move(next));
  }
}

Elem eval_in(const TestRing& R, const poly::Poly& p, const Elem& e, const Elem& y) {
  Elem acc = R.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = R.add(R.mul(acc, y), R.scale(p[i], e));
  return acc;
}

Elem lift_idempotent(const TestRing& R, Elem x) {
  const Scalar three = R.field().from_int(3), two = R.field().from_int(2);
  for (int it = 0; it < 128; ++it) {
    Elem x2 = R.mul(x, x);
    if (R.equal(x2, x)) return x;
    Elem x3 = R.mul(x2, x);
    x = R.sub(R.scale(three, x2), R.scale(two, x3));
  }
  throw IdentityViolation("idempotent lifting did not converge");
}

// Splits e into >= 2 orthogonal idempotents, or returns {} if e R is connected.
std::vector<Elem> try_split(const TestRing& R, const Elem& e, std::mt19937_64& rng) {
  const Field& F = R.field();
  std::vector<Elem> eN;
  for (const auto& x : R.nilradical()) eN.push_back(R.mul(e, x));
  const std::size_t d = R.ideal_dim(e) - span_dim(F, eN);
  if (d == 1) return {};
  const int kTries = 60;
  for (int t = 0; t < kTries + static_cast<int>(R.dim()); ++t) {
    Elem y = t < static_cast<int>(R.dim()) ? R.mul(e, R.basis(static_cast<std::size_t>(t))) : R.mul(e, R.random(rng));
    poly::Poly rad = poly::radical(F, min_poly(R, e, y));
    auto factors = poly::factor_squarefree(F, rad);
    if (factors.size() == 1) {
      if (poly::degree(rad) == static_cast<int>(d)) return {};
      continue;
    }
    std::vector<Elem> out;
    Elem total = R.zero();
    for (const auto& f : factors) {
      poly::Poly g = poly::quo(F, rad, f);
      poly::Poly s, u;
      poly::ext_gcd(F, g, f, s, u);
      poly::Poly eps = poly::rem(F, poly::mul(F, g, s), rad);
      Elem idem = lift_idempotent(R, eval_in(R, eps, e, y));
      if (R.is_zero(idem)) throw IdentityViolation("lifted idempotent vanished");
      total = R.add(total, idem);
      out.push_back(std::move(idem));
    }
    if (!R.equal(total, e)) throw IdentityViolation("lifted idempotents do not sum to their block");
    return out;
  }
  throw FactorizationIncomplete("could not decide whether a block of " + R.name() + " is connected");
}

}  // namespace

const std::vector<TestRing::Elem>& TestRing::idempotents() const {
  std::call_once(impl_->idem_once, [this] {
    std::mt19937_64 rng(0x1de3);
    std::vector<Elem> stack = impl_->hints.empty() ? std::vector<Elem>{impl_->one} : impl_->hints;
    Elem hint_sum = zero();
    for (const auto& h : stack) {
      if (!is_idempotent(h) || is_zero(h)) throw InputError("ring '" + name() + "': idempotent hint is not idempotent");
      hint_sum = add(hint_sum, h);
    }
    if (!equal(hint_sum, impl_->one)) throw InputError("ring '" + name() + "': idempotent hints do not sum to 1");
    std::vector<Elem> done;
    while (!stack.empty()) {
      Elem e = stack.back();
      stack.pop_back();
      auto parts = try_split(*this, e, rng);
      if (parts.empty()) {
        done.push_back(e);
      } else {
        for (auto& p : parts) stack.push_back(std::move(p));
      }
    }
    std::sort(done.begin(), done.end(), [](const Elem& a, const Elem& b) { return a > b; });
    Elem sum = zero();
    for (std::size_t i = 0; i < done.size(); ++i) {
      sum = add(sum, done[i]);
      for (std::size_t j = 0; j < i; ++j) {
        if (!is_zero(mul(done[i], done[j]))) throw IdentityViolation("idempotents are not orthogonal");
      }
    }
    if (!equal(sum, impl_->one)) throw IdentityViolation("idempotents do not sum to 1");
    impl_->idem = std::move(done);
  });
  return impl_->idem;
}

bool TestRing::is_finite() const { return impl_->F.is_finite(); }

std::int64_t TestRing::cardinality() const {
  std::int64_t q = impl_->F.cardinality();
  std::int64_t c = 1;
  for (std::size_t i = 0; i < impl_->n; ++i) {
    if (c > (std::int64_t{1} << 40) / q) throw CapExceeded("ring " + name() + " is too large to index");
    c *= q;
  }
  return c;
}

TestRing::Elem TestRing::element(std::int64_t code) const {
  const Field& F = impl_->F;
  std::int64_t q = F.cardinality();
  Elem e(impl_->n);
  for (std::size_t i = 0; i < impl_->n; ++i) {
    e[i] = F.element(code % q);
    code /= q;
  }
  return e;
}

std::int64_t TestRing::code_of(const Elem& x) const {
  const Field& F = impl_->F;
  std::int64_t q = F.cardinality();
  std::int64_t c = 0;
  for (std::size_t i = impl_->n; i-- > 0;) c = c * q + F.index_of(x[i]);
  return c;
}

const RingTables* TestRing::tables() const {
  if (!is_finite() || cardinality() > kTableLimit) return nullptr;
  std::call_once(impl_->tab_once, [this] {
    const Field& F = impl_->F;
    const std::int64_t N = cardinality();
    const std::int64_t q = F.cardinality();
    const std::size_t n = impl_->n;
    auto T = std::make_unique<RingTables>();
    T->size = static_cast<std::int32_t>(N);
    T->zero = 0;
    T->one = static_cast<std::int32_t>(code_of(impl_->one));
    const auto NN = static_cast<std::size_t>(N * N);
    T->add.resize(NN);
    T->mul.resize(NN);
    T->neg.resize(static_cast<std::size_t>(N));
    T->inv.assign(static_cast<std::size_t>(N), -1);
    std::vector<std::vector<std::int64_t>> digits(static_cast<std::size_t>(N), std::vector<std::int64_t>(n));
    for (std::int64_t c = 0; c < N; ++c) {
      std::int64_t v = c;
      for (std::size_t i = 0; i < n; ++i) {
        digits[c][i] = v % q;
        v /= q;
      }
    }
    auto encode = [&](const std::vector<std::int64_t>& d) {
      std::int64_t c = 0;
      for (std::size_t i = n; i-- > 0;) c = c * q + d[i];
      return static_cast<std::int32_t>(c);
    };
    std::vector<std::int64_t> fadd(static_cast<std::size_t>(q * q)), fmul(static_cast<std::size_t>(q * q));
    for (std::int64_t a = 0; a < q; ++a) {
      for (std::int64_t b = 0; b < q; ++b) {
        fadd[a * q + b] = F.index_of(F.add(F.element(a), F.element(b)));
        fmul[a * q + b] = F.index_of(F.mul(F.element(a), F.element(b)));
      }
    }
    std::vector<std::int64_t> d(n);
    for (std::int64_t a = 0; a < N; ++a) {
      for (std::int64_t b = 0; b < N; ++b) {
        for (std::size_t i = 0; i < n; ++i) d[i] = fadd[digits[a][i] * q + digits[b][i]];
        T->add[a * N + b] = encode(d);
      }
      for (std::size_t i = 0; i < n; ++i) d[i] = F.index_of(F.neg(F.element(digits[a][i])));
      T->neg[a] = encode(d);
    }
    // b_k * x for every basis index and element, then bilinear assembly.
    std::vector<std::vector<std::int32_t>> basis_mul(n, std::vector<std::int32_t>(static_cast<std::size_t>(N)));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::int64_t x = 0; x < N; ++x) basis_mul[k][x] = static_cast<std::int32_t>(code_of(mul(basis(k), element(x))));
    }
    std::vector<std::int32_t> smul(static_cast<std::size_t>(q * N));
    for (std::int64_t c = 0; c < q; ++c) {
      for (std::int64_t x = 0; x < N; ++x) {
        for (std::size_t i = 0; i < n; ++i) d[i] = fmul[c * q + digits[x][i]];
        smul[c * N + x] = encode(d);
      }
    }
    for (std::int64_t a = 0; a < N; ++a) {
      for (std::int64_t b = 0; b < N; ++b) {
        std::int32_t acc = 0;
        for (std::size_t k = 0; k < n; ++k) {
          std::int64_t c = digits[a][k];
          if (c == 0) continue;
          acc = T->add[acc * N + smul[c * N + basis_mul[k][b]]];
        }
        T->mul[a * N + b] = acc;
        if (acc == T->one) T->inv[a] = static_cast<std::int32_t>(b);
      }
    }
    impl_->tabs = std::move(T);
  });
  return impl_->tabs.get();
}

TestRing::Elem TestRing::random(std::mt19937_64& rng) const {
  Elem e(impl_->n);
  for (auto& c : e) c = impl_->F.random(rng);
  return e;
}

TestRing TestRing::change_basis(const linalg::Mat& P, std::string name) const {
  const Field& F = impl_->F;
  const std::size_t n = impl_->n;
  auto Pinv = linalg::inverse(F, P);
  if (!Pinv) throw InputError("change of basis matrix is singular");
  auto col = [&](std::size_t j) {
    Elem v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = P[i][j];
    return v;
  };
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = linalg::apply(F, *Pinv, mul(col(i), col(j)));
  }
  std::vector<Elem> hints;
  for (const auto& h : impl_->hints) hints.push_back(linalg::apply(F, *Pinv, h));
  return from_table(F, std::move(t), std::move(name), std::move(hints));
}

std::string TestRing::format(const Elem& x) const {
  if (impl_->n == 1) return impl_->F.format(x[0]);
  return "[" + text::join(x, ",", [&](const Scalar& c) { return impl_->F.format(c); }) + "]";
}

TestRing::Elem TestRing::parse(const std::string& raw) const {
  std::string s = text::strip(raw);
  if (impl_->n == 1) return {impl_->F.parse(s)};
  if (s.empty() || s.front() != '[') return scalar(impl_->F.parse(s));
  if (s.back() != ']') throw InputError("unterminated ring element '" + s + "'");
  auto parts = text::split_top(std::string_view(s).substr(1, s.size() - 2), ',');
  if (parts.size() != impl_->n) {
    throw InputError("ring element '" + s + "' needs " + std::to_string(impl_->n) + " coordinates for " + name());
  }
  Elem e;
  for (const auto& p : parts) e.push_back(impl_->F.parse(p));
  return e;
}

bool operator==(const TestRing& a, const TestRing& b) {
  return a.impl_ == b.impl_ || (a.field() == b.field() && a.table() == b.table());
}

// ---------------------------------------------------------------------------

std::int64_t unit_order(const TestRing& R, const TestRing::Elem& x) {
  if (!R.is_unit(x)) throw ArithmeticError("unit_order of a non-unit");
  if (const RingTables* t = R.tables()) {
    const auto c = static_cast<std::int32_t>(R.code_of(x));
    std::int32_t y = c;
    std::int64_t k = 1;
    while (y != t->one) {
      y = t->op_mul(y, c);
      ++k;
    }
    return k;
  }
  const std::int64_t bound = R.cardinality();
  TestRing::Elem y = x;
  for (std::int64_t k = 1; k <= bound; ++k) {
    if (R.equal(y, R.one())) return k;
    y = R.mul(y, x);
  }
  throw IdentityViolation("unit of a finite ring without finite order");
}

UnitGroupData enumerate_units(const TestRing& R, std::int64_t cap) {
  if (!R.is_finite()) throw NotEnumerable("units of " + R.name() + " are not enumerable");
  const std::int64_t N = R.cardinality();
  if (N > cap) throw CapExceeded("ring " + R.name() + " has " + std::to_string(N) + " elements, above the cap");
  UnitGroupData out;
  std::vector<std::int64_t> codes;
  for (std::int64_t c = 0; c < N; ++c) {
    TestRing::Elem x = R.element(c);
    if (R.is_unit(x)) {
      out.elements.push_back(std::move(x));
      codes.push_back(c);
    }
  }
  std::vector<std::int64_t> order(out.elements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = unit_order(R, out.elements[i]);
  std::map<std::int64_t, bool> in_span{{R.code_of(R.one()), true}};
  std::vector<std::int64_t> span{R.code_of(R.one())};
  while (span.size() < out.elements.size()) {
    std::size_t best = out.elements.size();
    for (std::size_t i = 0; i < out.elements.size(); ++i) {
      if (in_span.count(codes[i])) continue;
      if (best == out.elements.size() || order[i] > order[best]) best = i;
    }
    out.generators.push_back(out.elements[best]);
    out.orders.push_back(order[best]);
    // Extend the span by powers of the new generator.
    std::vector<std::int64_t> base = span;
    TestRing::Elem p = out.elements[best];
    for (std::int64_t k = 1; k < order[best]; ++k) {
      for (std::int64_t s : base) {
        std::int64_t c = R.code_of(R.mul(R.element(s), p));
        if (!in_span.count(c)) {
          in_span[c] = true;
          span.push_back(c);
        }
      }
      p = R.mul(p, out.elements[best]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

GroupAlgebraElement GroupAlgebra::one() const { return monomial(R_.one(), G_.zero()); }

GroupAlgebraElement GroupAlgebra::monomial(const TestRing::Elem& r, const AbelianGroup::Elem& g) const {
  if (R_.is_zero(r)) return {};
  return GroupAlgebraElement({{G_.normalize(g), r}});
}

GroupAlgebraElement GroupAlgebra::add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
  auto t = a.terms();
  for (const auto& [g, r] : b.terms()) {
    auto it = t.find(g);
    if (it == t.end()) {
      t.emplace(g, r);
    } else {
      it->second = R_.add(it->second, r);
      if (R_.is_zero(it->second)) t.erase(it);
    }
  }
  return GroupAlgebraElement(std::move(t));
}

GroupAlgebraElement GroupAlgebra::sub(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
  return add(a, scale(R_.neg(R_.one()), b));
}

GroupAlgebraElement GroupAlgebra::mul(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
  GroupAlgebraElement out;
  for (const auto& [g, r] : a.terms()) {
    for (const auto& [h, s] : b.terms()) out = add(out, monomial(R_.mul(r, s), G_.add(g, h)));
  }
  return out;
}

GroupAlgebraElement GroupAlgebra::scale(const TestRing::Elem& r, const GroupAlgebraElement& a) const {
  GroupAlgebraElement::Terms t;
  for (const auto& [g, s] : a.terms()) {
    TestRing::Elem c = R_.mul(r, s);
    if (!R_.is_zero(c)) t.emplace(g, std::move(c));
  }
  return GroupAlgebraElement(std::move(t));
}

bool GroupAlgebra::equal(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
  return a.terms() == b.terms();
}

TestRing::Elem GroupAlgebra::counit(const GroupAlgebraElement& a) const {
  TestRing::Elem s = R_.zero();
  for (const auto& [g, r] : a.terms()) s = R_.add(s, r);
  return s;
}

bool GroupAlgebra::is_unit_monomial(const GroupAlgebraElement& a) const {
  return a.size() == 1 && R_.is_unit(a.terms().begin()->second);
}

GroupAlgebraElement GroupAlgebra::inverse_monomial(const GroupAlgebraElement& a) const {
  if (!is_unit_monomial(a)) throw ArithmeticError("not a unit monomial");
  const auto& [g, r] = *a.terms().begin();
  return monomial(R_.inv(r), G_.neg(g));
}

std::string GroupAlgebra::format(const GroupAlgebraElement& a) const {
  if (a.is_zero()) return "0";
  return text::join(a.terms(), " + ",
                    [&](const auto& kv) { return R_.format(kv.second) + "*g" + G_.format(kv.first); });
}

}  // namespace gw

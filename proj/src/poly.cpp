#include "gradwb/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

namespace gw::poly {

Poly trim(const Field& F, Poly p) {
  while (!p.empty() && F.is_zero(p.back())) p.pop_back();
  return p;
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly constant(const Field& F, const Scalar& c) { return trim(F, Poly{c}); }

Poly monomial(const Field& F, int deg) {
  Poly p(static_cast<std::size_t>(deg + 1), F.zero());
  p.back() = F.one();
  return p;
}

Poly x_minus(const Field& F, const Scalar& a) { return trim(F, Poly{F.neg(a), F.one()}); }

Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  return trim(F, std::move(r));
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  return trim(F, std::move(r));
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (F.is_zero(b[j])) continue;
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
  }
  return trim(F, std::move(r));
}

Poly scale(const Field& F, const Poly& a, const Scalar& c) {
  Poly r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(F.mul(x, c));
  return trim(F, std::move(r));
}

void divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw DivisionByZero();
  r = a;
  int db = degree(b);
  if (degree(r) < db) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(degree(r) - db + 1), F.zero());
  Scalar lead_inv = F.inv(b.back());
  while (!r.empty() && degree(r) >= db) {
    int shift = degree(r) - db;
    Scalar c = F.mul(r.back(), lead_inv);
    q[shift] = c;
    for (int i = 0; i <= db; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
    r = trim(F, std::move(r));
  }
  q = trim(F, std::move(q));
}

Poly quo(const Field& F, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(F, a, b, q, r);
  return q;
}

Poly rem(const Field& F, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(F, a, b, q, r);
  return r;
}

Poly monic(const Field& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

Poly gcd(const Field& F, const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.empty()) {
    Poly r = rem(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(F, x);
}

Poly ext_gcd(const Field& F, const Poly& a, const Poly& b, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b;
  Poly s0 = constant(F, F.one()), s1;
  Poly t0, t1 = constant(F, F.one());
  while (!r1.empty()) {
    Poly q, r;
    divmod(F, r0, r1, q, r);
    Poly s2 = sub(F, s0, mul(F, q, s1));
    Poly t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = s0;
    t = t0;
    return r0;
  }
  Scalar c = F.inv(r0.back());
  s = scale(F, s0, c);
  t = scale(F, t0, c);
  return scale(F, r0, c);
}

Poly derivative(const Field& F, const Poly& a) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) {
    r.push_back(F.mul(F.from_int(static_cast<std::int64_t>(i)), a[i]));
  }
  return trim(F, std::move(r));
}

Poly powmod(const Field& F, const Poly& base, const mpz_class& e, const Poly& m) {
  Poly result = rem(F, constant(F, F.one()), m);
  Poly b = rem(F, base, m);
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = rem(F, mul(F, result, b), m);
    k >>= 1;
    if (k > 0) b = rem(F, mul(F, b, b), m);
  }
  return result;
}

Scalar eval(const Field& F, const Poly& p, const Scalar& x) {
  Scalar acc = F.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

bool equal(const Field& F, const Poly& a, const Poly& b) { return sub(F, a, b).empty(); }

namespace {

// For a polynomial with zero derivative in characteristic p over a finite
// field: the unique h with h^p = f.
Poly pth_root(const Field& F, const Poly& f) {
  const std::int64_t p = F.characteristic();
  const std::int64_t q = F.cardinality();
  // c^(1/p) = c^(q/p) in F_q.
  mpz_class e(static_cast<long>(q / p));
  Poly h;
  for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(p)) h.push_back(F.pow(f[i], e));
  return trim(F, std::move(h));
}

mpz_class ipow(std::int64_t b, std::int64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return r;
}

void equal_degree_split(const Field& F, const Poly& g, int d, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
  if (degree(g) == d) {
    out.push_back(monic(F, g));
    return;
  }
  const std::int64_t q = F.cardinality();
  const std::int64_t p = F.characteristic();
  for (;;) {
    Poly a;
    for (int i = 0; i < degree(g); ++i) a.push_back(F.random(rng));
    a = trim(F, a);
    if (degree(a) < 1) continue;
    Poly b;
    if (p != 2) {
      mpz_class e = (ipow(q, d) - 1) / 2;
      b = sub(F, powmod(F, a, e, g), constant(F, F.one()));
    } else {
      // Trace map a + a^2 + ... + a^(2^(k d - 1)), q = 2^k.
      std::int64_t k = 0;
      for (std::int64_t t = q; t > 1; t /= 2) ++k;
      Poly term = rem(F, a, g);
      b = term;
      for (std::int64_t i = 1; i < k * d; ++i) {
        term = rem(F, mul(F, term, term), g);
        b = add(F, b, term);
      }
    }
    Poly h = gcd(F, g, b);
    if (degree(h) > 0 && degree(h) < degree(g)) {
      equal_degree_split(F, h, d, rng, out);
      equal_degree_split(F, quo(F, g, h), d, rng, out);
      return;
    }
  }
}

std::vector<Poly> factor_finite(const Field& F, Poly f) {
  std::vector<Poly> out;
  f = monic(F, f);
  std::mt19937_64 rng(0x5eedULL + static_cast<unsigned long long>(degree(f)));
  const std::int64_t q = F.cardinality();
  Poly t = monomial(F, 1);
  Poly h = t;  // t^(q^i) mod f
  int i = 0;
  while (degree(f) >= 2 * (i + 1)) {
    ++i;
    h = powmod(F, h, mpz_class(static_cast<long>(q)), f);
    Poly g = gcd(F, f, sub(F, h, t));
    if (degree(g) > 0) {
      equal_degree_split(F, g, i, rng, out);
      f = quo(F, f, g);
      h = rem(F, h, f);
    }
  }
  if (degree(f) > 0) out.push_back(monic(F, f));
  return out;
}

// Dense integer polynomials, low degree first, no trailing zeros.
using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ztrim(r);
  return r;
}

// Coefficients reduced into (-m/2, m/2].
ZPoly zsym(ZPoly a, const mpz_class& m) {
  const mpz_class half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}

ZPoly zmod(ZPoly a, const mpz_class& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  ztrim(a);
  return a;
}

// Exact quotient a / b for monic b, or nullopt when b does not divide a over Z.
std::optional<ZPoly> zdiv_exact(ZPoly a, const ZPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < db) return std::nullopt;
  ZPoly q(a.size() - b.size() + 1, mpz_class(0));
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    const mpz_class c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(i - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  ztrim(a);
  if (!a.empty()) return std::nullopt;
  ztrim(q);
  return q;
}

Poly to_fp(const Field& Fp, const ZPoly& a) {
  Poly r;
  for (const auto& c : a) {
    mpz_class m = c % Fp.characteristic();
    if (m < 0) m += Fp.characteristic();
    r.push_back(Fp.from_int(m.get_si()));
  }
  return trim(Fp, r);
}

ZPoly from_fp(const Field& Fp, const Poly& a) {
  ZPoly r;
  for (const auto& c : a) r.emplace_back(static_cast<long>(Fp.index_of(c)));
  ztrim(r);
  return r;
}

// Lifts g = a b (mod p), a and b monic and coprime mod p, to g = a b (mod p^k).
void hensel_pair(const Field& Fp, const ZPoly& g, ZPoly& a, ZPoly& b, int k) {
  const long p = static_cast<long>(Fp.characteristic());
  Poly s, t;
  ext_gcd(Fp, to_fp(Fp, a), to_fp(Fp, b), s, t);  // s a + t b = 1 (mod p)
  const Poly abar = to_fp(Fp, a);
  mpz_class m = p;
  for (int j = 1; j < k; ++j) {
    const mpz_class next = m * p;
    ZPoly diff = g;
    ZPoly ab = zmul(a, b);
    diff.resize(std::max(diff.size(), ab.size()), mpz_class(0));
    for (std::size_t i = 0; i < ab.size(); ++i) diff[i] -= ab[i];
    diff = zmod(diff, next);
    for (auto& c : diff) c /= m;
    Poly e = to_fp(Fp, diff);
    Poly qa, A;
    divmod(Fp, mul(Fp, t, e), abar, qa, A);
    Poly B = add(Fp, mul(Fp, s, e), mul(Fp, qa, to_fp(Fp, b)));
    ZPoly Az = from_fp(Fp, A), Bz = from_fp(Fp, B);
    a.resize(std::max(a.size(), Az.size()), mpz_class(0));
    b.resize(std::max(b.size(), Bz.size()), mpz_class(0));
    for (std::size_t i = 0; i < Az.size(); ++i) a[i] += m * Az[i];
    for (std::size_t i = 0; i < Bz.size(); ++i) b[i] += m * Bz[i];
    a = zmod(a, next);
    b = zmod(b, next);
    m = next;
  }
}

// Lifts the monic mod-p factorization `fs` of monic g to mod p^k.
std::vector<ZPoly> hensel_multi(const Field& Fp, const ZPoly& g, const std::vector<Poly>& fs, int k,
                                const mpz_class& pk) {
  if (fs.size() == 1) return {zmod(g, pk)};
  const std::size_t half = fs.size() / 2;
  Poly left = constant(Fp, Fp.one()), right = constant(Fp, Fp.one());
  for (std::size_t i = 0; i < fs.size(); ++i) (i < half ? left : right) = mul(Fp, i < half ? left : right, fs[i]);
  ZPoly a = from_fp(Fp, left), b = from_fp(Fp, right);
  hensel_pair(Fp, g, a, b, k);
  std::vector<Poly> lf(fs.begin(), fs.begin() + static_cast<long>(half));
  std::vector<Poly> rf(fs.begin() + static_cast<long>(half), fs.end());
  auto out = hensel_multi(Fp, a, lf, k, pk);
  auto more = hensel_multi(Fp, b, rf, k, pk);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

// Irreducible factors over Z of a monic squarefree integer polynomial.
std::vector<ZPoly> zassenhaus(const ZPoly& g) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n <= 1) return {g};
  ZPoly dg;
  for (int i = 1; i <= n; ++i) dg.push_back(g[static_cast<std::size_t>(i)] * i);
  std::int64_t p = 3;
  for (;; p += 2) {
    if (!is_prime(p)) continue;
    Field Fp = Field::prime(p);
    if (degree(gcd(Fp, to_fp(Fp, g), to_fp(Fp, dg))) == 0 && degree(to_fp(Fp, g)) == n) break;
    if (p > 100000) throw FactorizationIncomplete("no good prime for integer polynomial factorization");
  }
  Field Fp = Field::prime(p);
  std::vector<Poly> fs = factor_finite(Fp, to_fp(Fp, g));
  if (fs.size() == 1) return {g};
  // Any factor's coefficients are bounded by 2^n |g|_2.
  mpz_class norm2 = 0;
  for (const auto& c : g) norm2 += c * c;
  mpz_class bound = sqrt(norm2) + 1;
  bound <<= static_cast<unsigned>(n);
  int k = 1;
  mpz_class pk = p;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  std::vector<ZPoly> lifted = hensel_multi(Fp, g, fs, k, pk);
  std::vector<ZPoly> out;
  ZPoly rest = g;
  std::size_t size = 1;
  while (2 * size <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      ZPoly cand{mpz_class(1)};
      for (std::size_t i : idx) cand = zsym(zmul(cand, lifted[i]), pk);
      if (auto q = zdiv_exact(rest, cand)) {
        out.push_back(cand);
        rest = *q;
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) lifted.erase(lifted.begin() + static_cast<long>(*it));
        found = true;
        break;
      }
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == lifted.size() - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (rest.size() > 1) out.push_back(rest);
  return out;
}

std::vector<Poly> factor_rational(const Field& F, Poly f) {
  f = monic(F, f);
  const int n = degree(f);
  // g(x) = D^n f(x / D) is monic with integer coefficients.
  mpz_class D = 1;
  for (const auto& c : f) D = lcm(D, c.rational().get_den());
  ZPoly g;
  mpz_class Dpow = 1;
  for (int i = n; i >= 0; --i) {
    mpq_class c = f[static_cast<std::size_t>(i)].rational() * Dpow;
    c.canonicalize();
    g.push_back(c.get_num());
    Dpow *= D;
  }
  std::reverse(g.begin(), g.end());
  std::vector<Poly> out;
  for (const auto& h : zassenhaus(g)) {
    // h(x) divides g, so h(D y) / D^deg h divides f.
    const int dh = static_cast<int>(h.size()) - 1;
    Poly r;
    mpz_class Dp = 1;
    for (int i = 0; i <= dh; ++i) {
      r.push_back(Scalar(mpq_class(h[static_cast<std::size_t>(i)] * Dp)));
      Dp *= D;
    }
    out.push_back(monic(F, r));
  }
  return out;
}

}  // namespace

Poly radical(const Field& F, const Poly& p) {
  Poly f = monic(F, p);
  if (degree(f) <= 0) return constant(F, F.one());
  Poly d = derivative(F, f);
  if (d.empty()) return radical(F, pth_root(F, f));
  Poly g = gcd(F, f, d);
  Poly w = quo(F, f, g);
  if (F.characteristic() == 0) return w;
  // Factors of g not in w have multiplicity divisible by p.
  Poly h = g;
  for (;;) {
    Poly c = gcd(F, h, w);
    if (degree(c) <= 0) break;
    h = quo(F, h, c);
  }
  if (degree(h) <= 0) return w;
  return mul(F, w, radical(F, h));
}

std::vector<Poly> factor_squarefree(const Field& F, const Poly& p) {
  Poly f = monic(F, p);
  if (degree(f) <= 0) return {};
  if (degree(f) == 1) return {f};
  std::vector<Poly> out;
  if (F.is_finite()) {
    out = factor_finite(F, f);
  } else if (F.kind() == FieldKind::Rationals) {
    out = factor_rational(F, f);
  } else {
    throw FactorizationIncomplete("polynomial factorization over " + F.name() +
                                  " is not supported: " + format(F, f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible_finite(const Field& F, const Poly& p) {
  if (degree(p) < 1) return false;
  if (degree(p) == 1) return true;
  Poly d = derivative(F, p);
  if (d.empty() || degree(gcd(F, p, d)) > 0) return false;
  return factor_finite(F, p).size() == 1;
}

Poly find_irreducible(const Field& F, int deg) {
  const std::int64_t q = F.cardinality();
  mpz_class count = ipow(q, deg);
  for (mpz_class k = 0; k < count; ++k) {
    Poly f(static_cast<std::size_t>(deg + 1));
    mpz_class c = k;
    for (int i = 0; i < deg; ++i) {
      mpz_class digit = c % q;
      f[i] = F.element(digit.get_si());
      c /= q;
    }
    f[deg] = F.one();
    if (is_irreducible_finite(F, f)) return f;
  }
  throw IdentityViolation("no irreducible polynomial found");
}

Poly cyclotomic(const Field& F, int n) {
  Poly f = sub(F, monomial(F, n), constant(F, F.one()));
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) f = quo(F, f, cyclotomic(F, d));
  }
  return f;
}

std::string format(const Field& F, const Poly& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += F.format(p[i]);
  }
  return s + "]";
}

}  // namespace gw::poly

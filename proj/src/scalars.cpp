#include "gradwb/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "gradwb/poly.hpp"

namespace gw {

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  switch (a.rep_.index()) {
    case 0:
      return a.code() == b.code();
    case 1:
      return a.rational() == b.rational();
    default:
      return a.coeffs() == b.coeffs();
  }
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.rep_.index() != b.rep_.index()) return a.rep_.index() <=> b.rep_.index();
  switch (a.rep_.index()) {
    case 0:
      return a.code() <=> b.code();
    case 1: {
      int c = cmp(a.rational(), b.rational());
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    default: {
      const auto& x = a.coeffs();
      const auto& y = b.coeffs();
      return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }
  }
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

namespace {

constexpr std::int64_t kTableLimit = 1024;

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = a;
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
    std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
  }
  if (g != 1) throw ArithmeticError("not invertible modulo " + std::to_string(m));
  return mod_floor(x, m);
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      while (n % k == 0) n /= k;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Split "a,[b,c],d" at top-level commas.
std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

mpq_class parse_rational(std::string_view text) {
  std::string s = strip(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && t[0] == '-') t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-') {
    throw InputError("bad rational literal '" + std::string(text) + "'");
  }
  mpz_class n{num}, d{den};
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  mpq_class q{n, d};
  q.canonicalize();
  return q;
}

}  // namespace

struct Field::Impl {
  FieldKind kind = FieldKind::Rationals;
  std::int64_t p = 0;  // characteristic
  std::int64_t q = 0;  // cardinality, 0 when infinite
  int d = 1;
  std::optional<Field> base;
  std::vector<Scalar> modulus;
  std::int64_t base_q = 0;
  std::vector<std::int32_t> add_t, mul_t, neg_t, inv_t;

  bool tabled() const { return !mul_t.empty(); }

  // Finite extension arithmetic on codes, bypassing tables.
  std::vector<std::int64_t> digits(std::int64_t code) const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      out[i] = code % base_q;
      code /= base_q;
    }
    return out;
  }
  std::int64_t encode(const std::vector<std::int64_t>& dig) const {
    std::int64_t code = 0;
    for (int i = d - 1; i >= 0; --i) code = code * base_q + dig[i];
    return code;
  }
  std::int64_t raw_add(std::int64_t a, std::int64_t b) const {
    auto x = digits(a), y = digits(b);
    for (int i = 0; i < d; ++i) x[i] = base->add(Scalar(x[i]), Scalar(y[i])).code();
    return encode(x);
  }
  std::int64_t raw_neg(std::int64_t a) const {
    auto x = digits(a);
    for (int i = 0; i < d; ++i) x[i] = base->neg(Scalar(x[i])).code();
    return encode(x);
  }
  std::int64_t raw_mul(std::int64_t a, std::int64_t b) const {
    auto x = digits(a), y = digits(b);
    const Field& B = *base;
    std::vector<Scalar> prod(static_cast<std::size_t>(2 * d - 1), B.zero());
    for (int i = 0; i < d; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (y[j] == 0) continue;
        prod[i + j] = B.add(prod[i + j], B.mul(Scalar(x[i]), Scalar(y[j])));
      }
    }
    for (int k = 2 * d - 2; k >= d; --k) {
      if (B.is_zero(prod[k])) continue;
      Scalar c = prod[k];
      for (int i = 0; i < d; ++i) {
        prod[k - d + i] = B.sub(prod[k - d + i], B.mul(c, modulus[i]));
      }
      prod[k] = B.zero();
    }
    std::vector<std::int64_t> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out[i] = prod[i].code();
    return encode(out);
  }
  std::int64_t raw_inv(std::int64_t a) const {
    const Field& B = *base;
    auto x = digits(a);
    poly::Poly pa;
    for (auto c : x) pa.push_back(Scalar(c));
    pa = poly::trim(B, pa);
    poly::Poly s, t;
    poly::Poly g = poly::ext_gcd(B, pa, modulus, s, t);
    if (poly::degree(g) != 0) {
      throw ReducibleModulus("extension modulus is reducible: nonzero element without inverse");
    }
    std::vector<std::int64_t> out(static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].code();
    return encode(out);
  }
};

Field Field::rationals() {
  static const Field q = [] {
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::Rationals;
    return Field(impl);
  }();
  return q;
}

Field Field::prime(std::int64_t p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (p > (std::int64_t{1} << 31)) throw InputError("prime too large for this tool");
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::Prime;
  impl->p = p;
  impl->q = p;
  return Field(impl);
}

Field Field::extension(const Field& base, std::vector<Scalar> modulus) {
  modulus = poly::trim(base, std::move(modulus));
  int deg = poly::degree(modulus);
  if (deg < 2) throw InputError("extension modulus must have degree >= 2");
  if (!base.is_one(modulus.back())) throw InputError("extension modulus must be monic");
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::Extension;
  impl->p = base.characteristic();
  impl->d = deg;
  impl->base = base;
  impl->modulus = std::move(modulus);
  if (base.is_finite()) {
    impl->base_q = base.cardinality();
    std::int64_t q = 1;
    for (int i = 0; i < deg; ++i) {
      if (q > (std::int64_t{1} << 40) / impl->base_q) throw InputError("finite field too large");
      q *= impl->base_q;
    }
    impl->q = q;
    if (q <= kTableLimit) {
      const auto n = static_cast<std::size_t>(q);
      impl->add_t.resize(n * n);
      impl->mul_t.resize(n * n);
      impl->neg_t.resize(n);
      impl->inv_t.assign(n, -1);
      for (std::int64_t a = 0; a < q; ++a) {
        impl->neg_t[a] = static_cast<std::int32_t>(impl->raw_neg(a));
        for (std::int64_t b = a; b < q; ++b) {
          auto s = static_cast<std::int32_t>(impl->raw_add(a, b));
          auto m = static_cast<std::int32_t>(impl->raw_mul(a, b));
          impl->add_t[a * n + b] = impl->add_t[b * n + a] = s;
          impl->mul_t[a * n + b] = impl->mul_t[b * n + a] = m;
          if (m == 1) {
            impl->inv_t[a] = static_cast<std::int32_t>(b);
            impl->inv_t[b] = static_cast<std::int32_t>(a);
          }
        }
      }
    }
  }
  return Field(impl);
}

FieldKind Field::kind() const { return impl_->kind; }
std::int64_t Field::characteristic() const { return impl_->p; }
bool Field::is_finite() const { return impl_->q != 0; }

std::int64_t Field::cardinality() const {
  if (!is_finite()) throw NotEnumerable(name() + " is infinite");
  return impl_->q;
}

int Field::degree() const { return impl_->d; }

const Field& Field::base() const {
  if (!impl_->base) throw InputError(name() + " is not an extension");
  return *impl_->base;
}

const std::vector<Scalar>& Field::modulus() const { return impl_->modulus; }

std::string Field::name() const {
  switch (impl_->kind) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::Prime:
      return "F" + std::to_string(impl_->p);
    default: {
      std::string s = "ext(" + impl_->base->name() + ",[";
      for (std::size_t i = 0; i < impl_->modulus.size(); ++i) {
        if (i) s += ",";
        s += impl_->base->format(impl_->modulus[i]);
      }
      return s + "])";
    }
  }
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t n) const {
  const Impl& f = *impl_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Scalar(mpq_class(n));
    case FieldKind::Prime:
      return Scalar(mod_floor(n, f.p));
    default: {
      Scalar c = f.base->from_int(n);
      if (is_finite()) return c;  // digit 0 carries the constant
      Scalar::Coeffs v(static_cast<std::size_t>(f.d), f.base->zero());
      v[0] = c;
      return Scalar(std::move(v));
    }
  }
}

Scalar Field::from_rational(const mpq_class& q) const {
  const Impl& f = *impl_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Scalar(q);
    case FieldKind::Prime: {
      mpz_class num = q.get_num() % f.p;
      mpz_class den = q.get_den() % f.p;
      if (den == 0) {
        throw InputError("rational " + q.get_str() + " has no image in F" + std::to_string(f.p));
      }
      std::int64_t n = mod_floor(num.get_si(), f.p);
      std::int64_t dn = den.get_si();
      return Scalar(static_cast<std::int64_t>((static_cast<__int128>(n) * inv_mod(dn, f.p)) % f.p));
    }
    default: {
      Scalar c = f.base->from_rational(q);
      if (is_finite()) return c;
      Scalar::Coeffs v(static_cast<std::size_t>(f.d), f.base->zero());
      v[0] = c;
      return Scalar(std::move(v));
    }
  }
}

Scalar Field::generator() const {
  const Impl& f = *impl_;
  if (f.kind != FieldKind::Extension) throw InputError(name() + " has no extension generator");
  if (is_finite()) return Scalar(f.base_q);
  Scalar::Coeffs v(static_cast<std::size_t>(f.d), f.base->zero());
  v[1] = f.base->one();
  return Scalar(std::move(v));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  const Impl& f = *impl_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Scalar(mpq_class(a.rational() + b.rational()));
    case FieldKind::Prime: {
      std::int64_t s = a.code() + b.code();
      return Scalar(s >= f.p ? s - f.p : s);
    }
    default:
      if (f.q != 0) {
        if (f.tabled()) return Scalar(std::int64_t{f.add_t[a.code() * f.q + b.code()]});
        return Scalar(f.raw_add(a.code(), b.code()));
      }
      Scalar::Coeffs v(static_cast<std::size_t>(f.d));
      for (int i = 0; i < f.d; ++i) v[i] = f.base->add(a.coeffs()[i], b.coeffs()[i]);
      return Scalar(std::move(v));
  }
}

Scalar Field::neg(const Scalar& a) const {
  const Impl& f = *impl_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Scalar(mpq_class(-a.rational()));
    case FieldKind::Prime:
      return Scalar(a.code() == 0 ? 0 : f.p - a.code());
    default:
      if (f.q != 0) {
        if (f.tabled()) return Scalar(std::int64_t{f.neg_t[a.code()]});
        return Scalar(f.raw_neg(a.code()));
      }
      Scalar::Coeffs v(static_cast<std::size_t>(f.d));
      for (int i = 0; i < f.d; ++i) v[i] = f.base->neg(a.coeffs()[i]);
      return Scalar(std::move(v));
  }
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  const Impl& f = *impl_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Scalar(mpq_class(a.rational() * b.rational()));
    case FieldKind::Prime:
      return Scalar(static_cast<std::int64_t>((static_cast<__int128>(a.code()) * b.code()) % f.p));
    default: {
      if (f.q != 0) {
        if (f.tabled()) return Scalar(std::int64_t{f.mul_t[a.code() * f.q + b.code()]});
        return Scalar(f.raw_mul(a.code(), b.code()));
      }
      const Field& B = *f.base;
      poly::Poly x(a.coeffs().begin(), a.coeffs().end());
      poly::Poly y(b.coeffs().begin(), b.coeffs().end());
      poly::Poly r = poly::rem(B, poly::mul(B, poly::trim(B, x), poly::trim(B, y)), f.modulus);
      Scalar::Coeffs v(static_cast<std::size_t>(f.d), B.zero());
      std::copy(r.begin(), r.end(), v.begin());
      return Scalar(std::move(v));
    }
  }
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw DivisionByZero();
  const Impl& f = *impl_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Scalar(mpq_class(1 / a.rational()));
    case FieldKind::Prime:
      return Scalar(inv_mod(a.code(), f.p));
    default: {
      if (f.q != 0) {
        if (f.tabled()) {
          auto r = f.inv_t[a.code()];
          if (r < 0) {
            throw ReducibleModulus("extension modulus is reducible: nonzero element without inverse");
          }
          return Scalar(std::int64_t{r});
        }
        return Scalar(f.raw_inv(a.code()));
      }
      const Field& B = *f.base;
      poly::Poly x = poly::trim(B, poly::Poly(a.coeffs().begin(), a.coeffs().end()));
      poly::Poly s, t;
      poly::Poly g = poly::ext_gcd(B, x, f.modulus, s, t);
      if (poly::degree(g) != 0) {
        throw ReducibleModulus("extension modulus is reducible: nonzero element without inverse");
      }
      Scalar::Coeffs v(static_cast<std::size_t>(f.d), B.zero());
      std::copy(s.begin(), s.end(), v.begin());
      return Scalar(std::move(v));
    }
  }
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar Field::pow(const Scalar& a, const mpz_class& e) const {
  if (e < 0) return pow(inv(a), mpz_class(-e));
  Scalar result = one();
  Scalar base = a;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

bool Field::is_zero(const Scalar& a) const {
  switch (impl_->kind) {
    case FieldKind::Rationals:
      return sgn(a.rational()) == 0;
    case FieldKind::Prime:
      return a.code() == 0;
    default:
      if (is_finite()) return a.code() == 0;
      return std::all_of(a.coeffs().begin(), a.coeffs().end(),
                         [&](const Scalar& c) { return impl_->base->is_zero(c); });
  }
}

bool Field::is_one(const Scalar& a) const { return a == one(); }

std::int64_t Field::unit_order(const Scalar& x) const {
  if (!is_finite()) throw InputError("unit_order needs a finite field");
  if (is_zero(x)) throw DivisionByZero();
  std::int64_t n = cardinality() - 1;
  for (std::int64_t r : prime_factors(n)) {
    while (n % r == 0 && is_one(pow(x, mpz_class(static_cast<long>(n / r))))) n /= r;
  }
  return n;
}

RootResult Field::dth_root(const Scalar& c, std::int64_t d) const {
  if (d < 1) throw InputError("dth_root needs d >= 1");
  if (is_zero(c)) throw ArithmeticError("dth_root of zero");
  if (d == 1) return {RootStatus::Witness, c};
  const Impl& f = *impl_;
  if (f.kind == FieldKind::Rationals) {
    const mpq_class& v = c.rational();
    bool negative = sgn(v) < 0;
    if (negative && d % 2 == 0) return {RootStatus::NoSolution, std::nullopt};
    mpz_class num = abs(v.get_num()), den = v.get_den(), rn, rd;
    bool exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(d)) != 0;
    bool exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(d)) != 0;
    if (!exact_n || !exact_d) return {RootStatus::NoSolution, std::nullopt};
    mpq_class r(rn, rd);
    r.canonicalize();
    if (negative) r = -r;
    return {RootStatus::Witness, Scalar(r)};
  }
  if (is_finite()) {
    std::int64_t q1 = cardinality() - 1;
    std::int64_t g = std::gcd(d, q1);
    if (!is_one(pow(c, mpz_class(static_cast<long>(q1 / g))))) {
      return {RootStatus::NoSolution, std::nullopt};
    }
    if (q1 == 1) return {RootStatus::Witness, c};
    if (g == 1) {
      std::int64_t e = inv_mod(mod_floor(d, q1), q1);
      return {RootStatus::Witness, pow(c, mpz_class(static_cast<long>(e)))};
    }
    mpz_class dz(static_cast<long>(d));
    for (std::int64_t i = 1; i <= q1; ++i) {
      Scalar x = element(i);
      if (pow(x, dz) == c) return {RootStatus::Witness, x};
    }
    throw IdentityViolation("dth_root: power criterion passed but no root found");
  }
  // Extension of an infinite field: only a root from the prime field can be certified.
  const Field* bottom = this;
  Scalar v = c;
  while (bottom->kind() == FieldKind::Extension) {
    const auto& co = v.coeffs();
    for (std::size_t i = 1; i < co.size(); ++i) {
      if (!bottom->base().is_zero(co[i])) return {RootStatus::Unknown, std::nullopt};
    }
    Scalar constant = co[0];
    v = std::move(constant);
    bottom = &bottom->base();
  }
  RootResult r = bottom->dth_root(v, d);
  if (r.status == RootStatus::Witness) return {RootStatus::Witness, coerce(*bottom, *r.root)};
  return {RootStatus::Unknown, std::nullopt};
}

bool Field::contains(const Field& sub) const {
  if (*this == sub) return true;
  return impl_->kind == FieldKind::Extension && impl_->base->contains(sub);
}

Scalar Field::coerce(const Field& sub, const Scalar& x) const {
  if (*this == sub) return x;
  if (impl_->kind == FieldKind::Extension && impl_->base->contains(sub)) {
    Scalar c = impl_->base->coerce(sub, x);
    if (is_finite()) return c;
    Scalar::Coeffs v(static_cast<std::size_t>(impl_->d), impl_->base->zero());
    v[0] = c;
    return Scalar(std::move(v));
  }
  if (sub.kind() == FieldKind::Rationals) return from_rational(x.rational());
  if (sub.kind() == FieldKind::Prime && sub.characteristic() == characteristic()) {
    return from_int(x.code());
  }
  throw InputError("cannot map elements of " + sub.name() + " into " + name());
}

Scalar Field::element(std::int64_t index) const {
  if (!is_finite() || index < 0 || index >= impl_->q) throw InputError("element index out of range");
  return Scalar(index);
}

std::int64_t Field::index_of(const Scalar& x) const {
  if (!is_finite()) throw NotEnumerable(name() + " is infinite");
  return x.code();
}

std::vector<Scalar> Field::elements() const {
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(cardinality()));
  for (std::int64_t i = 0; i < impl_->q; ++i) out.emplace_back(i);
  return out;
}

Scalar Field::random(std::mt19937_64& rng) const {
  const Impl& f = *impl_;
  if (is_finite()) return Scalar(std::uniform_int_distribution<std::int64_t>(0, f.q - 1)(rng));
  if (f.kind == FieldKind::Rationals) {
    long num = std::uniform_int_distribution<long>(-9, 9)(rng);
    long den = std::uniform_int_distribution<long>(1, 5)(rng);
    mpq_class r(num, den);
    r.canonicalize();
    return Scalar(r);
  }
  Scalar::Coeffs v;
  for (int i = 0; i < f.d; ++i) v.push_back(f.base->random(rng));
  return Scalar(std::move(v));
}

std::string Field::format(const Scalar& x) const {
  const Impl& f = *impl_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return x.rational().get_str();
    case FieldKind::Prime:
      return std::to_string(x.code());
    default: {
      std::string s = "[";
      if (is_finite()) {
        auto dig = f.digits(x.code());
        for (int i = 0; i < f.d; ++i) {
          if (i) s += ",";
          s += f.base->format(Scalar(dig[i]));
        }
      } else {
        for (int i = 0; i < f.d; ++i) {
          if (i) s += ",";
          s += f.base->format(x.coeffs()[i]);
        }
      }
      return s + "]";
    }
  }
}

Scalar Field::parse(std::string_view text) const {
  std::string s = strip(text);
  const Impl& f = *impl_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Scalar(parse_rational(s));
    case FieldKind::Prime:
      return from_rational(parse_rational(s));
    default: {
      if (s.empty() || s.front() != '[') {
        Scalar c = f.base->parse(s);
        return coerce(*f.base, c);
      }
      if (s.back() != ']') throw InputError("unterminated extension literal '" + s + "'");
      auto parts = split_top_level(std::string_view(s).substr(1, s.size() - 2));
      if (static_cast<int>(parts.size()) > f.d) {
        throw InputError("extension literal '" + s + "' has more than " + std::to_string(f.d) +
                         " coefficients");
      }
      std::vector<Scalar> co(static_cast<std::size_t>(f.d), f.base->zero());
      for (std::size_t i = 0; i < parts.size(); ++i) co[i] = f.base->parse(parts[i]);
      if (is_finite()) {
        std::vector<std::int64_t> dig(static_cast<std::size_t>(f.d));
        for (int i = 0; i < f.d; ++i) dig[i] = co[i].code();
        return Scalar(f.encode(dig));
      }
      return Scalar(std::move(co));
    }
  }
}

bool operator==(const Field& a, const Field& b) {
  if (a.impl_ == b.impl_) return true;
  const auto& x = *a.impl_;
  const auto& y = *b.impl_;
  if (x.kind != y.kind || x.p != y.p || x.d != y.d) return false;
  if (x.kind != FieldKind::Extension) return true;
  return *x.base == *y.base && x.modulus == y.modulus;
}

}  // namespace gw

#include "ffseq/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ffseq {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (!a.field() || !b.field()) throw FieldError("polynomial without a field");
  if (a.field() != b.field() && !a.F().same_as(b.F()))
    throw FieldError("polynomials over different fields");
}

}  // namespace

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::x(FieldPtr field) {
  Elem one = field->one();
  return Poly(std::move(field), {Elem{0}, one});
}

Poly Poly::monomial(FieldPtr field, Elem c, unsigned k) {
  std::vector<Elem> v(k + 1, Elem{0});
  v[k] = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::monic_from_code(FieldPtr field, unsigned deg, std::uint64_t code) {
  const std::uint64_t q = field->size();
  std::vector<Elem> v(deg + 1);
  for (unsigned i = 0; i < deg; ++i) {
    v[i] = Elem{static_cast<std::uint32_t>(code % q)};
    code /= q;
  }
  v[deg] = field->one();
  return Poly(std::move(field), std::move(v));
}

Elem Poly::eval(Elem a) const {
  const GaloisField& K = F();
  Elem acc = K.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = K.add(K.mul(acc, a), c_[i]);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(F().inv(lead()));
}

Poly Poly::scaled(Elem k) const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F().mul(c_[i], k);
  return Poly(field_, std::move(v));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(field_);
  std::vector<Elem> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = F().scale(c_[i], static_cast<Digit>(i % F().p()));
  return Poly(field_, std::move(v));
}

Poly Poly::compose_scale(Elem k) const {
  std::vector<Elem> v(c_.size());
  Elem kp = F().one();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    v[i] = F().mul(c_[i], kp);
    kp = F().mul(kp, k);
  }
  return Poly(field_, std::move(v));
}

Poly Poly::operator-() const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F().neg(c_[i]);
  return Poly(field_, std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& K = a.F();
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = K.add(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& K = a.F();
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = K.sub(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  const auto& K = a.F();
  std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, Elem{0});
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].code == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = K.add(v[i + j], K.mul(a.c_[i], b.c_[j]));
  }
  return Poly(a.field_, std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  const auto& K = a.F();
  if (a.degree() < b.degree()) return {Poly(a.field_), a};
  std::vector<Elem> r = a.c_;
  std::vector<Elem> q(a.c_.size() - b.c_.size() + 1, Elem{0});
  const Elem inv_lead = K.inv(b.lead());
  const std::size_t db = b.c_.size() - 1;
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i].code == 0) continue;
    const Elem f = K.mul(r[i], inv_lead);
    q[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = K.sub(r[i - db + j], K.mul(f, b.c_[j]));
  }
  r.resize(db);
  return {Poly(a.field_, std::move(q)), Poly(a.field_, std::move(r))};
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.c_.size(); i-- > 0;)
    if (auto c = a.c_[i].code <=> b.c_[i].code; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string Poly::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? " " : "") << c_[i].code;
  if (c_.empty()) os << "0";
  return os.str();
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
  const FieldPtr& K = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(K, K->one()), s1(K);
  Poly t0(K), t1 = Poly::constant(K, K->one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem k = K->inv(r0.lead());
  return {r0.scaled(k), s0.scaled(k), t0.scaled(k)};
}

Poly invmod(const Poly& a, const Poly& m) {
  auto eg = extended_gcd(a % m, m);
  if (!eg.g.is_one()) throw FieldError("polynomial not invertible modulo m");
  return eg.s % m;
}

Poly powmod(Poly base, std::uint64_t k, const Poly& m) {
  Poly r = Poly::constant(m.field(), m.F().one()) % m;
  base = base % m;
  while (k) {
    if (k & 1) r = (r * base) % m;
    k >>= 1;
    if (k) base = (base * base) % m;
  }
  return r;
}

Poly pow(const Poly& base, unsigned k) {
  Poly r = Poly::constant(base.field(), base.F().one());
  for (unsigned i = 0; i < k; ++i) r = r * base;
  return r;
}

Poly frobenius_power_x(const Poly& m, unsigned k) {
  Poly h = Poly::x(m.field()) % m;
  for (unsigned i = 0; i < k; ++i) h = powmod(h, m.F().size(), m);
  return h;
}

int multiplicity(Poly f, const Poly& h) {
  if (f.is_zero()) throw FieldError("multiplicity in the zero polynomial");
  int k = 0;
  while (true) {
    auto [q, r] = divmod(f, h);
    if (!r.is_zero()) return k;
    f = std::move(q);
    ++k;
  }
}

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Poly x = Poly::x(f.field());
  const Poly fm = f.monic();
  if (!(frobenius_power_x(fm, n) == x % fm)) return false;
  for (std::uint64_t l : prime_factors(n)) {
    const Poly h = frobenius_power_x(fm, n / static_cast<unsigned>(l));
    if (!gcd(h - x, fm).is_one()) return false;
  }
  return true;
}

bool is_irreducible_trial(const Poly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  const std::uint64_t q = f.F().size();
  for (int k = 1; 2 * k <= n; ++k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      const Poly g = Poly::monic_from_code(f.field(), k, code);
      if ((f % g).is_zero()) return false;
    }
  }
  return true;
}

namespace {

Poly pth_root_poly(const Poly& f) {
  const GaloisField& K = f.F();
  const unsigned p = K.p();
  std::vector<Elem> v;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) v.push_back(K.pth_root(f.coeffs()[i]));
  return Poly(f.field(), std::move(v));
}

void squarefree(const Poly& f, int mult, std::vector<Factor>& out) {
  const FieldPtr& K = f.field();
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (!fac.is_one()) out.push_back({fac.monic(), i * mult});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    c = c.monic();
    if (c.degree() > 0) squarefree(pth_root_poly(c), mult * static_cast<int>(K->p()), out);
  }
}

Poly random_poly(const FieldPtr& K, int deg_below, std::mt19937_64& rng) {
  std::vector<Elem> v(deg_below);
  for (auto& c : v) c = Elem{static_cast<std::uint32_t>(rng() % K->size())};
  return Poly(K, std::move(v));
}

// Splits a squarefree product of irreducibles of common degree k.
void equal_degree(const Poly& f, int k, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == k) {
    out.push_back(f.monic());
    return;
  }
  const FieldPtr& K = f.field();
  const GaloisField& F = *K;
  while (true) {
    Poly r = random_poly(K, f.degree(), rng);
    if (r.degree() < 1) continue;
    Poly t(K);
    if (F.p() == 2) {
      // Absolute trace F_{2^{ek}} -> F_2 applied to r.
      Poly acc = r % f;
      t = acc;
      for (unsigned i = 1; i < F.e() * static_cast<unsigned>(k); ++i) {
        acc = (acc * acc) % f;
        t = t + acc;
      }
    } else {
      // r^{(q^k-1)/2} = (prod_{i<k} r^{q^i})^{(q-1)/2}.
      Poly acc = r % f;
      Poly nrm = acc;
      for (int i = 1; i < k; ++i) {
        acc = powmod(acc, F.size(), f);
        nrm = (nrm * acc) % f;
      }
      t = powmod(nrm, (F.size() - 1) / 2, f) - Poly::constant(K, F.one());
    }
    Poly g = gcd(f, t);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, k, rng, out);
      equal_degree(f / g, k, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> factor(const Poly& f) {
  if (f.degree() < 1) return {};
  std::vector<Factor> sqf;
  squarefree(f.monic(), 1, sqf);
  std::vector<Factor> out;
  std::mt19937_64 rng(0x5eed);
  for (const auto& [g0, mult] : sqf) {
    Poly g = g0;
    const Poly x = Poly::x(g.field());
    Poly h = x % g;
    for (int i = 1; g.degree() >= 2 * i; ++i) {
      h = powmod(h, g.F().size(), g);
      Poly d = gcd(g, h - x);
      if (!d.is_one()) {
        std::vector<Poly> parts;
        equal_degree(d, i, rng, parts);
        for (auto& pp : parts) out.push_back({pp, mult});
        g = g / d;
        h = h % g;
      }
    }
    if (g.degree() > 0) out.push_back({g.monic(), mult});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  // Merge equal factors coming from different squarefree layers.
  std::vector<Factor> merged;
  for (auto& fct : out) {
    if (!merged.empty() && merged.back().poly == fct.poly)
      merged.back().multiplicity += fct.multiplicity;
    else
      merged.push_back(fct);
  }
  return merged;
}

std::vector<Elem> roots(const Poly& f) {
  if (f.degree() < 1) return {};
  const FieldPtr& K = f.field();
  const Poly fm = f.monic();
  const Poly x = Poly::x(K);
  const Poly h = powmod(x, K->size(), fm);
  Poly d = gcd(fm, h - x);
  std::vector<Elem> out;
  if (d.degree() < 1) return out;
  std::vector<Poly> parts;
  std::mt19937_64 rng(0x5eed);
  equal_degree(d, 1, rng, parts);
  for (const auto& lin : parts) out.push_back(K->neg(lin.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ffseq

#include "ffseq/galois.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "ffseq/poly.hpp"

namespace ffseq {

namespace {

constexpr unsigned kMaxDegree = 32;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (k) {
    if (k & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    k >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int moebius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > cap / base) throw FieldError("size cap exceeded: " + std::to_string(base) + "^" +
                                         std::to_string(exp) + " > " + std::to_string(cap));
    r *= base;
  }
  if (r > cap) throw FieldError("size cap exceeded");
  return r;
}

std::uint64_t count_irreducibles(std::uint64_t q, unsigned d) {
  if (d == 0) throw FieldError("count_irreducibles: degree must be positive");
  __int128 sum = 0;
  for (std::uint64_t b : divisors(d)) {
    __int128 qb = 1;
    for (std::uint64_t i = 0; i < b; ++i) qb *= q;
    sum += moebius(d / b) * qb;
  }
  return static_cast<std::uint64_t>(sum / d);
}

// ---------------------------------------------------------------------------

GaloisField::GaloisField(std::uint32_t p, unsigned e, std::vector<Digit> modulus,
                         const FieldOptions& opts)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
  size_ = 1;
  for (unsigned i = 0; i < e_; ++i) {
    place_.push_back(size_);
    size_ *= p_;
  }
  basis_trace_.resize(e_);
  Elem u_pow = one();
  const Elem u = generator();
  for (unsigned i = 0; i < e_; ++i) {
    basis_trace_[i] = trace_by_conjugates(u_pow);
    u_pow = mul(u_pow, u);
  }
  find_primitive();
  if (opts.log_tables) build_tables();
}

FieldPtr GaloisField::build(std::uint32_t p, unsigned e, const FieldOptions& opts) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw FieldError("extension degree must be positive");
  if (e > kMaxDegree) throw FieldError("extension degree too large");
  if (opts.size_cap > (std::uint64_t{1} << 32)) throw FieldError("size cap above 2^32");
  checked_pow(p, e, opts.size_cap);
  if (e > 1 && p > (1u << 16)) throw FieldError("characteristic too large for an extension");

  if (e == 1) return std::make_shared<const GaloisField>(p, 1, std::vector<Digit>{0, 1}, opts);

  auto prime = std::make_shared<const GaloisField>(p, 1, std::vector<Digit>{0, 1}, FieldOptions{});
  const std::uint64_t count = checked_pow(p, e, opts.size_cap);
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f = Poly::monic_from_code(prime, e, code);
    if (f.coeff(0).code == 0) continue;
    if (!is_irreducible(f)) continue;
    std::vector<Digit> mod(e + 1);
    for (unsigned i = 0; i <= e; ++i) mod[i] = f.coeff(i).code;
    return std::make_shared<const GaloisField>(p, e, std::move(mod), opts);
  }
  throw FieldError("no irreducible polynomial found");  // unreachable
}

Elem GaloisField::from_int(std::int64_t k) const {
  std::int64_t r = k % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem GaloisField::from_coeffs(std::span<const Digit> coeffs) const {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < coeffs.size() && i < e_; ++i) code += (coeffs[i] % p_) * place_[i];
  return Elem{static_cast<std::uint32_t>(code)};
}

std::vector<Digit> GaloisField::coeffs(Elem a) const {
  std::vector<Digit> out(e_);
  decode(a, out.data());
  return out;
}

Elem GaloisField::generator() const {
  if (e_ == 1) return Elem{0};
  return Elem{static_cast<std::uint32_t>(p_)};
}

Elem GaloisField::element(std::uint64_t code) const {
  if (code >= size_) throw FieldError("element code out of range");
  return Elem{static_cast<std::uint32_t>(code)};
}

void GaloisField::decode(Elem a, Digit* out) const {
  std::uint32_t v = a.code;
  for (unsigned i = 0; i < e_; ++i) {
    out[i] = v % p_;
    v /= p_;
  }
}

Elem GaloisField::encode(const Digit* c) const {
  std::uint64_t code = 0;
  for (unsigned i = e_; i-- > 0;) code = code * p_ + c[i];
  return Elem{static_cast<std::uint32_t>(code)};
}

Elem GaloisField::add(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.code ^ b.code};
  if (e_ == 1) {
    std::uint64_t s = std::uint64_t{a.code} + b.code;
    return Elem{static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
  }
  std::array<Digit, kMaxDegree> x{}, y{};
  decode(a, x.data());
  decode(b, y.data());
  for (unsigned i = 0; i < e_; ++i) x[i] = (x[i] + y[i]) % p_;
  return encode(x.data());
}

Elem GaloisField::neg(Elem a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return Elem{a.code == 0 ? 0 : p_ - a.code};
  std::array<Digit, kMaxDegree> x{};
  decode(a, x.data());
  for (unsigned i = 0; i < e_; ++i) x[i] = (p_ - x[i]) % p_;
  return encode(x.data());
}

Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem GaloisField::scale(Elem a, Digit k) const { return mul(a, from_int(k)); }

Elem GaloisField::mul(Elem a, Elem b) const {
  if (a.code == 0 || b.code == 0) return Elem{0};
  if (!log_table_.empty()) {
    std::uint64_t s = std::uint64_t{log_table_[a.code]} + log_table_[b.code];
    if (s >= size_ - 1) s -= size_ - 1;
    return Elem{exp_table_[s]};
  }
  return mul_poly(a, b);
}

Elem GaloisField::mul_poly(Elem a, Elem b) const {
  if (e_ == 1) return Elem{static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
  if (p_ == 2) {
    std::uint64_t prod = 0;
    std::uint64_t x = a.code;
    for (std::uint32_t y = b.code; y; y >>= 1, x <<= 1)
      if (y & 1) prod ^= x;
    std::uint64_t mod = 0;
    for (unsigned i = 0; i <= e_; ++i)
      if (modulus_[i]) mod |= std::uint64_t{1} << i;
    for (int i = 2 * static_cast<int>(e_) - 2; i >= static_cast<int>(e_); --i)
      if (prod >> i & 1) prod ^= mod << (i - e_);
    return Elem{static_cast<std::uint32_t>(prod)};
  }
  std::array<Digit, kMaxDegree> x{}, y{};
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  decode(a, x.data());
  decode(b, y.data());
  for (unsigned i = 0; i < e_; ++i) {
    if (!x[i]) continue;
    for (unsigned j = 0; j < e_; ++j) prod[i + j] += std::uint64_t{x[i]} * y[j];
  }
  for (unsigned i = 0; i + 1 < 2 * e_; ++i) prod[i] %= p_;
  for (int i = 2 * static_cast<int>(e_) - 2; i >= static_cast<int>(e_); --i) {
    const std::uint64_t c = prod[i] % p_;
    if (!c) continue;
    prod[i] = 0;
    for (unsigned j = 0; j < e_; ++j)
      prod[i - e_ + j] = (prod[i - e_ + j] + c * (p_ - modulus_[j])) % p_;
  }
  std::array<Digit, kMaxDegree> out{};
  for (unsigned i = 0; i < e_; ++i) out[i] = static_cast<Digit>(prod[i] % p_);
  return encode(out.data());
}

Elem GaloisField::pow(Elem a, std::uint64_t k) const {
  Elem r = one();
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Elem GaloisField::inv(Elem a) const {
  if (a.code == 0) throw FieldError("inverse of zero");
  if (e_ == 1) return Elem{static_cast<std::uint32_t>(powmod_u64(a.code, p_ - 2, p_))};
  return pow(a, size_ - 2);
}

Elem GaloisField::pth_root(Elem a) const {
  Elem r = a;
  for (unsigned i = 1; i < e_; ++i) r = frobenius(r);
  return r;
}

Digit GaloisField::trace_by_conjugates(Elem x) const {
  Elem acc = zero();
  Elem c = x;
  for (unsigned i = 0; i < e_; ++i) {
    acc = add(acc, c);
    c = frobenius(c);
  }
  return acc.code;  // lies in F_p, so only c_0 can be nonzero
}

Digit GaloisField::trace(Elem x) const {
  std::array<Digit, kMaxDegree> c{};
  decode(x, c.data());
  std::uint64_t t = 0;
  for (unsigned i = 0; i < e_; ++i) t += std::uint64_t{c[i]} * basis_trace_[i];
  return static_cast<Digit>(t % p_);
}

std::uint64_t GaloisField::order(Elem a) const {
  if (a.code == 0) throw FieldError("order of zero");
  std::uint64_t n = size_ - 1;
  for (std::uint64_t l : prime_factors(size_ - 1)) {
    while (n % l == 0 && pow(a, n / l) == one()) n /= l;
  }
  return n;
}

bool GaloisField::is_primitive(Elem a) const {
  if (a.code == 0) return false;
  for (std::uint64_t l : prime_factors(size_ - 1))
    if (pow(a, (size_ - 1) / l) == one()) return false;
  return true;
}

void GaloisField::find_primitive() {
  for (std::uint64_t code = 1; code < size_; ++code) {
    if (is_primitive(Elem{static_cast<std::uint32_t>(code)})) {
      primitive_ = Elem{static_cast<std::uint32_t>(code)};
      return;
    }
  }
  throw FieldError("no primitive element");  // unreachable for a field
}

void GaloisField::build_tables() {
  exp_table_.assign(size_ - 1, 0);
  log_table_.assign(size_, 0);
  Elem x = one();
  for (std::uint64_t i = 0; i + 1 < size_; ++i) {
    exp_table_[i] = x.code;
    log_table_[x.code] = static_cast<std::uint32_t>(i);
    x = mul_poly(x, primitive_);
  }
}

std::string GaloisField::describe() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (e_ > 1) os << "^" << e_;
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

Digit inv_mod_p(Digit a, Digit p) { return static_cast<Digit>(powmod_u64(a, p - 2, p)); }

// Gauss-Jordan inverse of a square matrix over F_p.
std::vector<std::vector<Digit>> invert_mod_p(std::vector<std::vector<Digit>> m, Digit p) {
  const std::size_t n = m.size();
  std::vector<std::vector<Digit>> inv(n, std::vector<Digit>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw FieldError("singular basis matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const std::uint64_t s = inv_mod_p(m[col][col], p);
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = static_cast<Digit>(m[col][j] * s % p);
      inv[col][j] = static_cast<Digit>(inv[col][j] * s % p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const std::uint64_t f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] = static_cast<Digit>((m[r][j] + (p - f) * m[col][j]) % p);
        inv[r][j] = static_cast<Digit>((inv[r][j] + (p - f) * inv[col][j]) % p);
      }
    }
  }
  return inv;
}

}  // namespace

ExtensionPtr Extension::build(FieldPtr base, unsigned d, const FieldOptions& opts) {
  if (d == 0) throw FieldError("extension degree must be positive");
  auto ext = std::shared_ptr<Extension>(new Extension());
  ext->base_ = base;
  ext->degree_ = d;
  const unsigned e = base->e();
  const Digit p = base->p();
  if (d == 1) {
    ext->ext_ = base;
    ext->root_image_ = base->generator();
    return ext;
  }
  FieldOptions ext_opts = opts;
  checked_pow(p, e * d, opts.size_cap);
  ext->ext_ = GaloisField::build(p, e * d, ext_opts);
  const GaloisField& K = *ext->ext_;

  // Root of the base modulus inside K: search 0 and the powers of a
  // generator of the copy of F_q^* in K.
  auto eval_modulus = [&](Elem a) {
    Elem acc = K.zero();
    const auto& m = base->modulus();
    for (std::size_t i = m.size(); i-- > 0;) acc = K.add(K.mul(acc, a), K.from_int(m[i]));
    return acc;
  };
  const std::uint64_t q = base->size();
  const Elem beta = K.pow(K.primitive(), (K.size() - 1) / (q - 1));
  bool found = false;
  if (eval_modulus(K.zero()) == K.zero()) {
    ext->root_image_ = K.zero();
    found = true;
  }
  Elem cand = K.one();
  for (std::uint64_t k = 0; !found && k + 1 < q; ++k, cand = K.mul(cand, beta)) {
    if (eval_modulus(cand) == K.zero()) {
      ext->root_image_ = cand;
      found = true;
    }
  }
  if (!found) throw FieldError("base modulus has no root in extension");

  ext->power_images_.resize(e);
  Elem up = K.one();
  for (unsigned k = 0; k < e; ++k) {
    ext->power_images_[k] = up;
    up = K.mul(up, ext->root_image_);
  }

  // Columns: g^j * embed(u^k), index j*e + k.
  const unsigned n = e * d;
  std::vector<std::vector<Digit>> m(n, std::vector<Digit>(n, 0));
  Elem gj = K.one();
  for (unsigned j = 0; j < d; ++j) {
    for (unsigned k = 0; k < e; ++k) {
      const auto c = K.coeffs(K.mul(gj, ext->power_images_[k]));
      for (unsigned r = 0; r < n; ++r) m[r][j * e + k] = c[r];
    }
    gj = K.mul(gj, K.primitive());
  }
  ext->inverse_ = invert_mod_p(std::move(m), p);
  return ext;
}

Elem Extension::embed(Elem a) const {
  if (degree_ == 1) return a;
  const GaloisField& K = *ext_;
  const auto c = base_->coeffs(a);
  Elem acc = K.zero();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k]) acc = K.add(acc, K.scale(power_images_[k], c[k]));
  return acc;
}

std::vector<Elem> Extension::coords(Elem a) const {
  if (degree_ == 1) return {a};
  const Digit p = base_->p();
  const unsigned e = base_->e();
  const auto c = ext_->coeffs(a);
  const std::size_t n = c.size();
  std::vector<Digit> sol(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s += std::uint64_t{inverse_[r][j]} * c[j] % p;
    sol[r] = static_cast<Digit>(s % p);
  }
  std::vector<Elem> out(degree_);
  for (unsigned j = 0; j < degree_; ++j)
    out[j] = base_->from_coeffs(std::span<const Digit>(sol.data() + j * e, e));
  return out;
}

bool Extension::in_base(Elem a) const {
  const auto c = coords(a);
  return std::all_of(c.begin() + 1, c.end(), [](Elem x) { return x.code == 0; });
}

Elem Extension::restrict(Elem a) const {
  const auto c = coords(a);
  for (std::size_t j = 1; j < c.size(); ++j)
    if (c[j].code != 0) throw FieldError("element does not lie in the base field");
  return c[0];
}

}  // namespace ffseq

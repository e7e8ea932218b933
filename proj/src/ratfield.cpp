#include "ffseq/ratfield.hpp"

#include <algorithm>
#include <numeric>

namespace ffseq::rational {

RatPlace RatPlace::finite(Poly f) {
  if (f.degree() < 1 || !(f.lead() == f.F().one())) throw FieldError("place polynomial must be monic");
  if (!is_irreducible(f)) throw FieldError("place polynomial must be irreducible");
  return RatPlace(std::move(f), false);
}

std::strong_ordering operator<=>(const RatPlace& a, const RatPlace& b) {
  if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.infinite_) return std::strong_ordering::equal;
  return a.poly_ <=> b.poly_;
}

std::string RatPlace::to_string() const { return infinite_ ? "inf" : "(" + poly_.to_string() + ")"; }

// ---------------------------------------------------------------------------

RatFunction::RatFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.F().one())) {}

RatFunction::RatFunction(Poly num, Poly den) {
  if (den.is_zero()) throw FieldError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly(num.field());
    den_ = Poly::constant(den.field(), den.F().one());
    return;
  }
  Poly g = gcd(num, den);
  num = num / g;
  den = den / g;
  const Elem k = den.F().inv(den.lead());
  num_ = num.scaled(k);
  den_ = den.scaled(k);
}

RatFunction RatFunction::constant(const FieldPtr& field, Elem c) { return RatFunction(Poly::constant(field, c)); }

std::optional<Elem> RatFunction::eval(Elem a) const {
  const Elem d = den_.eval(a);
  if (d.code == 0) return std::nullopt;
  return num_.F().div(num_.eval(a), d);
}

std::optional<Elem> RatFunction::eval_infinity() const {
  if (num_.degree() > den_.degree()) return std::nullopt;
  if (num_.degree() < den_.degree()) return num_.F().zero();
  return num_.F().div(num_.lead(), den_.lead());
}

RatFunction RatFunction::compose_scale(Elem k) const { return RatFunction(num_.compose_scale(k), den_.compose_scale(k)); }

RatFunction RatFunction::pow(unsigned k) const { return RatFunction(ffseq::pow(num_, k), ffseq::pow(den_, k)); }

RatFunction operator+(const RatFunction& a, const RatFunction& b) {
  if (a.den_ == b.den_) return RatFunction(a.num_ + b.num_, a.den_);
  return RatFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunction operator-(const RatFunction& a, const RatFunction& b) {
  if (a.den_ == b.den_) return RatFunction(a.num_ - b.num_, a.den_);
  return RatFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunction operator*(const RatFunction& a, const RatFunction& b) {
  return RatFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunction operator/(const RatFunction& a, const RatFunction& b) {
  if (b.is_zero()) throw FieldError("division by the zero function");
  return RatFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunction::to_string() const { return "num=" + num_.to_string() + ";den=" + den_.to_string(); }

int degree(const Divisor& D) {
  int s = 0;
  for (const auto& [P, c] : D) s += c * static_cast<int>(P.degree());
  return s;
}

// ---------------------------------------------------------------------------

RationalFunctionField::RationalFunctionField(FieldPtr field, std::uint64_t size_cap)
    : field_(std::move(field)), size_cap_(size_cap) {}

std::vector<RatPlace> RationalFunctionField::places_of_degree(unsigned d) const {
  if (d == 0) throw FieldError("place degree must be positive");
  const std::uint64_t count = checked_pow(F().size(), d, size_cap_);
  std::vector<RatPlace> out;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f = Poly::monic_from_code(field_, d, code);
    if (is_irreducible(f)) out.push_back(RatPlace::finite_unchecked(std::move(f)));
  }
  return out;
}

std::vector<RatPlace> RationalFunctionField::rational_places() const {
  auto out = places_of_degree(1);
  out.push_back(RatPlace::infinity(field_));
  return out;
}

RatPlace RationalFunctionField::phi_apply(std::int64_t k, const RatPlace& P) const {
  if (P.is_infinity()) return P;
  const std::int64_t n = static_cast<std::int64_t>(orbit_length());
  const std::uint64_t kk = static_cast<std::uint64_t>(((k % n) + n) % n);
  return RatPlace::finite_unchecked(P.poly().compose_scale(F().pow(epsilon(), kk)).monic());
}

RatFunction RationalFunctionField::phi_apply(std::int64_t k, const RatFunction& z) const {
  const std::int64_t n = static_cast<std::int64_t>(orbit_length());
  const std::uint64_t kk = static_cast<std::uint64_t>(((k % n) + n) % n);
  return z.compose_scale(F().pow(epsilon(), kk));
}

RatPlace RationalFunctionField::orbit_representative(const RatPlace& P) const {
  if (P.is_infinity()) return P;
  RatPlace best = P;
  const Poly& f = P.poly();
  const Elem eps = epsilon();
  Elem s = F().one();
  for (std::uint64_t k = 1; k < orbit_length(); ++k) {
    s = F().mul(s, eps);
    Poly g = f.compose_scale(s).monic();
    if (g < best.poly()) best = RatPlace::finite_unchecked(std::move(g));
  }
  return best;
}

std::vector<std::vector<RatPlace>> RationalFunctionField::orbit_decomposition(unsigned d) const {
  if (d < 2) throw FieldError("orbit decomposition needs d >= 2");
  const std::uint64_t n = orbit_length();
  if (std::gcd<std::uint64_t>(d, n) != 1) throw FieldError("gcd(d, q-1) != 1");
  const auto places = places_of_degree(d);
  std::vector<char> seen(places.size(), 0);
  std::vector<std::vector<RatPlace>> orbits;
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (seen[i]) continue;
    std::vector<RatPlace> orbit;
    RatPlace cur = places[i];
    do {
      auto it = std::lower_bound(places.begin(), places.end(), cur);
      if (it == places.end() || !(*it == cur)) throw FieldError("phi image is not a place of degree d");
      const std::size_t j = static_cast<std::size_t>(it - places.begin());
      if (seen[j]) throw FieldError("phi orbit revisits a place");
      seen[j] = 1;
      orbit.push_back(cur);
      cur = phi_apply(1, cur);
    } while (!(cur == places[i]));
    if (orbit.size() != n) throw FieldError("orbit size differs from q-1");
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

RatPlace RationalFunctionField::random_place(unsigned d, Rng& rng) const {
  const std::uint64_t q = F().size();
  while (true) {
    std::vector<Elem> c(d + 1);
    for (unsigned i = 0; i < d; ++i) c[i] = Elem{static_cast<std::uint32_t>(uniform_below(rng, q))};
    c[d] = F().one();
    Poly f(field_, std::move(c));
    if (is_irreducible(f)) return RatPlace::finite_unchecked(std::move(f));
  }
}

std::vector<RatFunction> RationalFunctionField::riemann_roch_basis(const RatPlace& Q) const {
  if (Q.is_infinity()) throw FieldError("Riemann-Roch basis at the infinite place is not supported");
  std::vector<RatFunction> out;
  out.push_back(RatFunction::constant(field_, F().one()));
  for (unsigned i = 0; i < Q.degree(); ++i) out.emplace_back(Poly::monomial(field_, F().one(), i), Q.poly());
  return out;
}

int RationalFunctionField::valuation(const RatFunction& z, const RatPlace& P) const {
  if (z.is_zero()) throw ZeroFunctionError();
  if (P.is_infinity()) return z.den().degree() - z.num().degree();
  return multiplicity(z.num(), P.poly()) - multiplicity(z.den(), P.poly());
}

Divisor RationalFunctionField::pole_divisor(const RatFunction& z) const {
  if (z.is_zero()) throw ZeroFunctionError();
  Divisor D;
  for (const auto& fct : factor(z.den())) D[RatPlace::finite_unchecked(fct.poly)] = fct.multiplicity;
  if (z.num().degree() > z.den().degree()) D[RatPlace::infinity(field_)] = z.num().degree() - z.den().degree();
  return D;
}

Divisor RationalFunctionField::zero_divisor(const RatFunction& z) const {
  if (z.is_zero()) throw ZeroFunctionError();
  Divisor D;
  for (const auto& fct : factor(z.num())) D[RatPlace::finite_unchecked(fct.poly)] = fct.multiplicity;
  if (z.num().degree() < z.den().degree()) D[RatPlace::infinity(field_)] = z.den().degree() - z.num().degree();
  return D;
}

Divisor RationalFunctionField::principal_divisor(const RatFunction& z) const {
  Divisor D = zero_divisor(z);
  for (const auto& [P, c] : pole_divisor(z)) D[P] -= c;
  return D;
}

std::optional<Elem> RationalFunctionField::evaluate(const RatFunction& z, const RatPlace& P) const {
  if (P.is_infinity()) return z.eval_infinity();
  if (P.degree() != 1) throw FieldError("evaluation at a place of degree > 1");
  return z.eval(F().neg(P.poly().coeff(0)));
}

ReductionResult RationalFunctionField::reduce_pole_order(const RatFunction& z, const RatPlace& Q) const {
  if (z.is_zero()) return {0, z, RatFunction(Poly(field_))};
  const unsigned p = F().p();
  RatFunction cur = z;
  RatFunction cert{Poly(field_)};
  while (true) {
    const int v = valuation(cur, Q);
    if (v >= 0) return {0, cur, cert};
    const int m = -v;
    if (m % static_cast<int>(p) != 0) return {m, cur, cert};
    RatFunction w;
    if (Q.is_infinity()) {
      const Elem c = F().div(cur.num().lead(), cur.den().lead());
      w = RatFunction(Poly::monomial(field_, F().pth_root(c), static_cast<unsigned>(m) / p));
    } else {
      const Poly& f = Q.poly();
      // Leading coefficient of cur in the f-adic expansion, in F_q[x]/(f).
      const Poly rest = cur.den() / ffseq::pow(f, static_cast<unsigned>(m));
      const Poly c = (cur.num() * invmod(rest, f)) % f;
      Poly r = c;
      const unsigned steps = F().e() * Q.degree() - 1;
      for (unsigned i = 0; i < steps; ++i) r = powmod(r, p, f);
      w = RatFunction(r, ffseq::pow(f, static_cast<unsigned>(m) / p));
    }
    cur = cur - (w.pow(p) - w);
    cert = cert + w;
    if (cur.is_zero()) return {0, cur, cert};
  }
}

NondegeneracyResult RationalFunctionField::is_nondegenerate(const RatFunction& z) const {
  NondegeneracyResult res;
  if (z.is_zero() || z.is_constant()) return res;
  const Divisor poles = pole_divisor(z);
  const int p = static_cast<int>(F().p());
  for (const auto& [P, c] : poles) {
    if (c % p != 0) {
      res.nondegenerate = true;
      res.witness = P;
      res.reduced_order = c;
      res.by_coprime_pole = true;
      return res;
    }
  }
  RatFunction cur = z;
  for (const auto& [P, c] : poles) {
    auto red = reduce_pole_order(cur, P);
    if (red.order > 0) {
      res.nondegenerate = true;
      res.witness = P;
      res.reduced_order = red.order;
      return res;
    }
    cur = red.reduced;
  }
  // No poles left: cur is a constant and z = cur + (H^p - H).
  return res;
}

}  // namespace ffseq::rational

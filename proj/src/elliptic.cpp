#include "ffseq/elliptic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ffseq/linalg.hpp"

namespace ffseq::elliptic {

namespace {

using Series = std::vector<Elem>;

Series series_mul(const GaloisField& K, const Series& a, const Series& b, std::size_t n) {
  Series out(n, K.zero());
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].code == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] = K.add(out[i + j], K.mul(a[i], b[j]));
  }
  return out;
}

Series series_axpy(const GaloisField& K, Series acc, Elem c, const Series& s) {
  for (std::size_t i = 0; i < acc.size() && i < s.size(); ++i) acc[i] = K.add(acc[i], K.mul(c, s[i]));
  return acc;
}

/// F(x(t), y(t)) truncated to n terms.
Series equation_series(const CurveModel& C, const Series& x, const Series& y, std::size_t n) {
  const GaloisField& K = C.K();
  const Weierstrass& a = C.coeffs();
  const Series xx = series_mul(K, x, x, n);
  const Series xxx = series_mul(K, xx, x, n);
  const Series xy = series_mul(K, x, y, n);
  Series out = series_mul(K, y, y, n);
  out = series_axpy(K, out, a.a1, xy);
  out = series_axpy(K, out, a.a3, y);
  out = series_axpy(K, out, K.neg(K.one()), xxx);
  out = series_axpy(K, out, K.neg(a.a2), xx);
  out = series_axpy(K, out, K.neg(a.a4), x);
  out[0] = K.sub(out[0], a.a6);
  return out;
}

/// g(x(t)) for a polynomial over F_q with coefficients embedded by ext.
Series poly_series(const Extension& ext, const Poly& g, const Series& x, std::size_t n) {
  const GaloisField& K = *ext.ext();
  Series acc(n, K.zero());
  for (int i = g.degree(); i >= 0; --i) {
    acc = series_mul(K, acc, x, n);
    acc[0] = K.add(acc[0], ext.embed(g.coeff(static_cast<std::size_t>(i))));
  }
  return acc;
}

int series_order(const Series& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].code != 0) return static_cast<int>(i);
  return -1;
}

std::uint64_t point_key(const EcPoint& P) {
  return P.infinity ? UINT64_MAX : (std::uint64_t{P.x.code} << 32) | P.y.code;
}

int deg_or(const Poly& f, int fallback) { return f.is_zero() ? fallback : f.degree(); }

}  // namespace

std::string EcPoint::to_string() const {
  if (infinity) return "O";
  return "(" + std::to_string(x.code) + "," + std::to_string(y.code) + ")";
}

std::string EcPlace::to_string() const {
  return "deg" + std::to_string(degree) + ":" + rep().to_string();
}

int degree(const EcDivisor& D) {
  int s = 0;
  for (const auto& [P, c] : D) s += c * static_cast<int>(P.degree);
  return s;
}

// ---------------------------------------------------------------------------

Elem CurveModel::discriminant() const {
  const GaloisField& K = *K_;
  auto m = [&](Elem x, Elem y) { return K.mul(x, y); };
  auto n = [&](std::int64_t k) { return K.from_int(k); };
  const Elem b2 = K.add(m(a_.a1, a_.a1), m(n(4), a_.a2));
  const Elem b4 = K.add(m(n(2), a_.a4), m(a_.a1, a_.a3));
  const Elem b6 = K.add(m(a_.a3, a_.a3), m(n(4), a_.a6));
  Elem b8 = m(m(a_.a1, a_.a1), a_.a6);
  b8 = K.add(b8, m(n(4), m(a_.a2, a_.a6)));
  b8 = K.sub(b8, m(a_.a1, m(a_.a3, a_.a4)));
  b8 = K.add(b8, m(a_.a2, m(a_.a3, a_.a3)));
  b8 = K.sub(b8, m(a_.a4, a_.a4));
  Elem d = K.neg(m(m(b2, b2), b8));
  d = K.sub(d, m(n(8), m(b4, m(b4, b4))));
  d = K.sub(d, m(n(27), m(b6, b6)));
  d = K.add(d, m(n(9), m(b2, m(b4, b6))));
  return d;
}

Elem CurveModel::equation(Elem x, Elem y) const {
  const GaloisField& K = *K_;
  Elem lhs = K.mul(y, K.add(y, K.add(K.mul(a_.a1, x), a_.a3)));
  Elem rhs = K.add(K.mul(K.add(K.mul(K.add(x, a_.a2), x), a_.a4), x), a_.a6);
  return K.sub(lhs, rhs);
}

bool CurveModel::on_curve(const EcPoint& P) const {
  return P.infinity || equation(P.x, P.y).code == 0;
}

Elem CurveModel::partial_x(const EcPoint& P) const {
  const GaloisField& K = *K_;
  Elem r = K.mul(a_.a1, P.y);
  r = K.sub(r, K.mul(K.from_int(3), K.mul(P.x, P.x)));
  r = K.sub(r, K.mul(K.from_int(2), K.mul(a_.a2, P.x)));
  return K.sub(r, a_.a4);
}

Elem CurveModel::partial_y(const EcPoint& P) const {
  const GaloisField& K = *K_;
  return K.add(K.add(K.mul(K.from_int(2), P.y), K.mul(a_.a1, P.x)), a_.a3);
}

EcPoint CurveModel::neg(const EcPoint& P) const {
  if (P.infinity) return P;
  const GaloisField& K = *K_;
  return EcPoint::affine(P.x, K.sub(K.neg(P.y), K.add(K.mul(a_.a1, P.x), a_.a3)));
}

EcPoint CurveModel::add(const EcPoint& P, const EcPoint& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const GaloisField& K = *K_;
  Elem lambda, nu;
  if (P.x == Q.x) {
    const Elem s = K.add(K.add(P.y, Q.y), K.add(K.mul(a_.a1, Q.x), a_.a3));
    if (s.code == 0) return EcPoint::O();
    const Elem den = partial_y(P);
    Elem num = K.add(K.mul(K.from_int(3), K.mul(P.x, P.x)), K.mul(K.from_int(2), K.mul(a_.a2, P.x)));
    num = K.sub(K.add(num, a_.a4), K.mul(a_.a1, P.y));
    lambda = K.div(num, den);
    Elem nnum = K.neg(K.mul(P.x, K.mul(P.x, P.x)));
    nnum = K.add(nnum, K.mul(a_.a4, P.x));
    nnum = K.add(nnum, K.mul(K.from_int(2), a_.a6));
    nnum = K.sub(nnum, K.mul(a_.a3, P.y));
    nu = K.div(nnum, den);
  } else {
    const Elem dx = K.sub(Q.x, P.x);
    lambda = K.div(K.sub(Q.y, P.y), dx);
    nu = K.div(K.sub(K.mul(P.y, Q.x), K.mul(Q.y, P.x)), dx);
  }
  Elem x3 = K.add(K.mul(lambda, lambda), K.mul(a_.a1, lambda));
  x3 = K.sub(K.sub(K.sub(x3, a_.a2), P.x), Q.x);
  Elem y3 = K.neg(K.mul(K.add(lambda, a_.a1), x3));
  y3 = K.sub(K.sub(y3, nu), a_.a3);
  return EcPoint::affine(x3, y3);
}

EcPoint CurveModel::mul(std::int64_t k, const EcPoint& P) const {
  EcPoint base = k < 0 ? neg(P) : P;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  EcPoint acc = EcPoint::O();
  while (n) {
    if (n & 1) acc = add(acc, base);
    base = add(base, base);
    n >>= 1;
  }
  return acc;
}

std::uint64_t CurveModel::order(const EcPoint& P, std::uint64_t group_order) const {
  std::uint64_t m = group_order;
  for (std::uint64_t l : prime_factors(group_order)) {
    while (m % l == 0 && mul(static_cast<std::int64_t>(m / l), P).infinity) m /= l;
  }
  return m;
}

unsigned CurveModel::y_count(Elem x) const {
  const GaloisField& K = *K_;
  const Elem b = K.add(K.mul(a_.a1, x), a_.a3);
  const Elem c = K.add(K.mul(K.add(K.mul(K.add(x, a_.a2), x), a_.a4), x), a_.a6);
  if (K.p() == 2) {
    if (b.code == 0) return 1;
    return K.trace(K.div(c, K.mul(b, b))) == 0 ? 2 : 0;
  }
  const Elem disc = K.add(K.mul(b, b), K.mul(K.from_int(4), c));
  if (disc.code == 0) return 1;
  return K.pow(disc, (K.size() - 1) / 2) == K.one() ? 2 : 0;
}

std::vector<Elem> CurveModel::y_roots(Elem x) const {
  if (y_count(x) == 0) return {};
  const GaloisField& K = *K_;
  const Elem b = K.add(K.mul(a_.a1, x), a_.a3);
  const Elem c = K.add(K.mul(K.add(K.mul(K.add(x, a_.a2), x), a_.a4), x), a_.a6);
  if (K.p() == 2 && b.code == 0) return {K.pth_root(c)};
  return roots(Poly(K_, {K.neg(c), b, K.one()}));
}

std::uint64_t CurveModel::count_points() const {
  std::uint64_t n = 1;
  for (std::uint64_t code = 0; code < K_->size(); ++code) n += y_count(K_->element(code));
  return n;
}

std::vector<EcPoint> CurveModel::points() const {
  std::vector<EcPoint> out{EcPoint::O()};
  for (std::uint64_t code = 0; code < K_->size(); ++code) {
    const Elem x = K_->element(code);
    for (Elem y : y_roots(x)) out.push_back(EcPoint::affine(x, y));
  }
  return out;
}

// ---------------------------------------------------------------------------

ECFunction::ECFunction(Poly u, Poly v, Poly w) {
  if (w.is_zero()) throw FieldError("elliptic function with zero denominator");
  const FieldPtr K = w.field();
  if (u.is_zero() && v.is_zero()) {
    u_ = Poly(K);
    v_ = Poly(K);
    w_ = Poly::constant(K, K->one());
    return;
  }
  const Poly g = gcd(gcd(u, v), w);
  if (g.degree() > 0) {
    u = u / g;
    v = v / g;
    w = w / g;
  }
  const Elem k = K->inv(w.lead());
  u_ = u.scaled(k);
  v_ = v.scaled(k);
  w_ = w.scaled(k);
}

ECFunction ECFunction::constant(const FieldPtr& field, Elem c) {
  return ECFunction(Poly::constant(field, c), Poly(field), Poly::constant(field, field->one()));
}

ECFunction operator+(const ECFunction& a, const ECFunction& b) {
  if (a.w_ == b.w_) return ECFunction(a.u_ + b.u_, a.v_ + b.v_, a.w_);
  return ECFunction(a.u_ * b.w_ + b.u_ * a.w_, a.v_ * b.w_ + b.v_ * a.w_, a.w_ * b.w_);
}

ECFunction operator-(const ECFunction& a, const ECFunction& b) {
  if (a.w_ == b.w_) return ECFunction(a.u_ - b.u_, a.v_ - b.v_, a.w_);
  return ECFunction(a.u_ * b.w_ - b.u_ * a.w_, a.v_ * b.w_ - b.v_ * a.w_, a.w_ * b.w_);
}

ECFunction ECFunction::scaled(Elem c) const { return ECFunction(u_.scaled(c), v_.scaled(c), w_); }

std::string ECFunction::to_string() const {
  return "u=" + u_.to_string() + ";v=" + v_.to_string() + ";w=" + w_.to_string();
}

ECFunction RiemannRochSpace::combine(const std::vector<Elem>& c) const {
  if (c.size() != numerators.size()) throw FieldError("coefficient count differs from the dimension");
  const FieldPtr& K = denominator.field();
  Poly u(K), v(K);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].code == 0) continue;
    u = u + numerators[i].first.scaled(c[i]);
    v = v + numerators[i].second.scaled(c[i]);
  }
  return ECFunction(std::move(u), std::move(v), denominator);
}

// ---------------------------------------------------------------------------

EllipticCurve::EllipticCurve(FieldPtr field, Weierstrass a, std::uint64_t size_cap)
    : field_(field), model_(std::move(field), a), size_cap_(size_cap) {
  if (model_.discriminant().code == 0) throw FieldError("singular Weierstrass equation");
  order_ = model_.count_points();
}

std::int64_t EllipticCurve::frobenius_trace() const {
  return static_cast<std::int64_t>(F().size()) + 1 - static_cast<std::int64_t>(order_);
}

void EllipticCurve::set_generator(const EcPoint& P) {
  if (!model_.on_curve(P)) throw FieldError("generator is not on the curve");
  if (model_.order(P, order_) != order_) throw FieldError("generator does not have order N");
  generator_ = P;
}

std::optional<EcPoint> EllipticCurve::find_generator() const {
  for (const EcPoint& P : model_.points())
    if (model_.order(P, order_) == order_) return P;
  return std::nullopt;
}

std::string EllipticCurve::describe() const {
  const Weierstrass& a = coeffs();
  std::ostringstream os;
  os << "y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over " << F().describe() << " with a1=" << a.a1.code
     << " a2=" << a.a2.code << " a3=" << a.a3.code << " a4=" << a.a4.code << " a6=" << a.a6.code << ", N=" << order_;
  if (generator_) os << ", P=" << generator_->to_string();
  return os.str();
}

ExtensionPtr EllipticCurve::extension(unsigned d) const {
  std::lock_guard lock(cache_->mu);
  auto& slot = cache_->ext[d];
  if (!slot) {
    checked_pow(F().size(), d, size_cap_);
    slot = extend_field(field_, d, FieldOptions{size_cap_, false});
  }
  return slot;
}

CurveModel EllipticCurve::model_over(unsigned d) const {
  if (d == 1) return model_;
  const auto ext = extension(d);
  const Weierstrass& a = coeffs();
  return CurveModel(ext->ext(),
                    {ext->embed(a.a1), ext->embed(a.a2), ext->embed(a.a3), ext->embed(a.a4), ext->embed(a.a6)});
}

EcPoint EllipticCurve::embed_point(const EcPoint& P, unsigned d) const {
  if (P.infinity || d == 1) return P;
  const auto ext = extension(d);
  return EcPoint::affine(ext->embed(P.x), ext->embed(P.y));
}

EcPoint EllipticCurve::frobenius(const EcPoint& P, unsigned d) const {
  if (P.infinity) return P;
  const GaloisField& K = *extension(d)->ext();
  return EcPoint::affine(K.pow(P.x, F().size()), K.pow(P.y, F().size()));
}

EcPlace EllipticCurve::infinity_place() const { return EcPlace{1, {EcPoint::O()}}; }

EcPlace EllipticCurve::rational_place(const EcPoint& P) const {
  if (!model_.on_curve(P)) throw FieldError("point is not on the curve");
  return EcPlace{1, {P}};
}

EcPlace EllipticCurve::place_of(const EcPoint& P, unsigned d) const {
  if (P.infinity) {
    if (d != 1) throw FieldError("O is a place of degree one");
    return infinity_place();
  }
  EcPlace Q{d, {}};
  EcPoint cur = P;
  do {
    Q.conjugates.push_back(cur);
    if (Q.conjugates.size() > d) break;
    cur = frobenius(cur, d);
  } while (!(cur == P));
  if (Q.conjugates.size() != d) throw FieldError("Frobenius orbit size differs from the place degree");
  std::sort(Q.conjugates.begin(), Q.conjugates.end());
  return Q;
}

EcPlace EllipticCurve::negate(const EcPlace& Q) const {
  const CurveModel C = model_over(Q.degree);
  EcPlace out{Q.degree, {}};
  for (const auto& R : Q.conjugates) out.conjugates.push_back(C.neg(R));
  std::sort(out.conjugates.begin(), out.conjugates.end());
  return out;
}

EcPlace EllipticCurve::translate(const EcPlace& Q, const EcPoint& P) const {
  const CurveModel C = model_over(Q.degree);
  const EcPoint Pd = embed_point(P, Q.degree);
  EcPlace out{Q.degree, {}};
  for (const auto& R : Q.conjugates) out.conjugates.push_back(C.add(Pd, R));
  std::sort(out.conjugates.begin(), out.conjugates.end());
  return out;
}

std::vector<EcPlace> EllipticCurve::places_of_degree(unsigned d) const {
  if (d == 0) throw FieldError("place degree must be positive");
  const CurveModel C = model_over(d);
  const GaloisField& K = C.K();
  std::vector<EcPlace> out;
  if (d == 1) out.push_back(infinity_place());
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t code = 0; code < K.size(); ++code) {
    const Elem x = K.element(code);
    for (Elem y : C.y_roots(x)) {
      const EcPoint P = EcPoint::affine(x, y);
      if (seen.count(point_key(P))) continue;
      std::vector<EcPoint> orbit;
      EcPoint cur = P;
      do {
        orbit.push_back(cur);
        seen.insert(point_key(cur));
        cur = d == 1 ? cur : frobenius(cur, d);
      } while (!(cur == P));
      if (orbit.size() != d) continue;
      std::sort(orbit.begin(), orbit.end());
      out.push_back(EcPlace{d, std::move(orbit)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t EllipticCurve::count_points_zeta(unsigned d) const {
  if (d == 0) throw FieldError("degree must be positive");
  const __int128 q = F().size();
  const __int128 a = frobenius_trace();
  __int128 s_prev = 2, s = a, qb = q;
  for (unsigned b = 2; b <= d; ++b) {
    const __int128 next = a * s - q * s_prev;
    s_prev = s;
    s = next;
    qb *= q;
  }
  return static_cast<std::uint64_t>(qb + 1 - s);
}

std::uint64_t EllipticCurve::count_places_zeta(unsigned d) const {
  __int128 total = 0;
  for (std::uint64_t b : divisors(d))
    total += static_cast<__int128>(moebius(d / b)) * count_points_zeta(static_cast<unsigned>(b));
  return static_cast<std::uint64_t>(total / d);
}

std::vector<std::vector<EcPlace>> EllipticCurve::translation_orbits(unsigned d, const EcPoint& P) const {
  if (std::gcd<std::uint64_t>(d, order_) != 1) throw FieldError("gcd(d, N) != 1");
  if (model_.order(P, order_) != order_) throw FieldError("translation point is not a generator");
  const auto places = places_of_degree(d);
  std::map<EcPoint, std::size_t> index;
  for (std::size_t i = 0; i < places.size(); ++i) index[places[i].rep()] = i;
  std::vector<char> seen(places.size(), 0);
  std::vector<std::vector<EcPlace>> orbits;
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (seen[i]) continue;
    std::vector<EcPlace> orbit;
    EcPlace cur = places[i];
    do {
      auto it = index.find(cur.rep());
      if (it == index.end()) throw FieldError("translate is not a place of degree d");
      if (seen[it->second]) throw FieldError("translation orbit revisits a place");
      seen[it->second] = 1;
      orbit.push_back(cur);
      cur = translate(cur, P);
    } while (!(cur == places[i]));
    if (orbit.size() != order_) throw FieldError("translation orbit size differs from N");
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

LocalExpansion EllipticCurve::local_expansion(const EcPlace& Q, unsigned prec) const {
  if (Q.is_infinity()) throw FieldError("no affine expansion at O");
  const CurveModel C = model_over(Q.degree);
  const GaloisField& K = C.K();
  const EcPoint& R = Q.rep();
  const std::size_t n = std::max(prec, 2u);
  LocalExpansion L{Series(n, K.zero()), Series(n, K.zero())};
  L.x[0] = R.x;
  L.y[0] = R.y;
  const Elem fy = C.partial_y(R);
  // At points with dF/dy = 0, y - y0 is the parameter and x is solved for.
  const bool ramified = fy.code == 0;
  const Elem pivot = ramified ? C.partial_x(R) : fy;
  Series& param = ramified ? L.y : L.x;
  Series& solved = ramified ? L.x : L.y;
  param[1] = K.one();
  for (std::size_t k = 1; k < n; ++k) {
    const Series res = equation_series(C, L.x, L.y, k + 1);
    solved[k] = K.neg(K.div(res[k], pivot));
  }
  L.x.resize(prec);
  L.y.resize(prec);
  return L;
}

int EllipticCurve::valuation(const ECFunction& z, const EcPlace& Q) const {
  if (z.is_zero()) throw FieldError("valuation of the zero function is +infinity");
  const int du = deg_or(z.u(), -1), dv = deg_or(z.v(), -1), dw = z.w().degree();
  if (Q.is_infinity()) {
    int num = INT32_MAX;
    if (du >= 0) num = std::min(num, -2 * du);
    if (dv >= 0) num = std::min(num, -2 * dv - 3);
    return num + 2 * dw;
  }
  const unsigned prec = static_cast<unsigned>(std::max({2 * du, 2 * dv + 3, 2 * dw, 0})) + 1;
  const LocalExpansion L = local_expansion(Q, prec);
  const auto ext = extension(Q.degree);
  const GaloisField& E = *ext->ext();
  const Series g = series_axpy(E, poly_series(*ext, z.u(), L.x, prec), E.one(),
                               series_mul(E, poly_series(*ext, z.v(), L.x, prec), L.y, prec));
  const int og = series_order(g);
  const int ow = series_order(poly_series(*ext, z.w(), L.x, prec));
  if (og < 0 || ow < 0) throw FieldError("local expansion precision exhausted");
  return og - ow;
}

Poly EllipticCurve::x_polynomial(const EcPlace& Q) const {
  if (Q.is_infinity()) throw FieldError("O has no x-coordinate");
  const auto ext = extension(Q.degree);
  const FieldPtr& K = ext->ext();
  std::set<Elem> xs;
  for (const auto& R : Q.conjugates) xs.insert(R.x);
  Poly m = Poly::constant(K, K->one());
  for (Elem x : xs) m = m * Poly(K, {K->neg(x), K->one()});
  std::vector<Elem> c;
  for (Elem a : m.coeffs()) c.push_back(ext->restrict(a));
  return Poly(field_, std::move(c));
}

std::vector<EcPlace> EllipticCurve::places_above(const Poly& h) const {
  const unsigned k = static_cast<unsigned>(h.degree());
  if (k == 0) throw FieldError("places above a constant");
  for (unsigned d : {k, 2 * k}) {
    const auto ext = extension(d);
    const Poly hd = h.mapped(ext->ext(), [&](Elem a) { return ext->embed(a); });
    const Elem x0 = roots(hd).front();
    const auto ys = model_over(d).y_roots(x0);
    if (ys.empty()) continue;
    std::vector<EcPlace> out;
    for (Elem y : ys) {
      EcPlace Q = place_of(EcPoint::affine(x0, y), d);
      if (std::find(out.begin(), out.end(), Q) == out.end()) out.push_back(std::move(Q));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  throw FieldError("no point above an irreducible x-polynomial");
}

EcDivisor EllipticCurve::principal_divisor(const ECFunction& z) const {
  if (z.is_zero()) throw FieldError("divisor of the zero function");
  const FieldPtr& K = field_;
  const Weierstrass& a = coeffs();
  const Poly X = Poly::x(K);
  const Poly lin = X.scaled(a.a1) + Poly::constant(K, a.a3);
  const Poly cubic = Poly(K, {a.a6, a.a4, a.a2, K->one()});
  const Poly norm = z.u() * z.u() - z.u() * z.v() * lin - z.v() * z.v() * cubic;
  std::set<Poly> candidates;
  for (const Poly* f : {&norm, &z.w()})
    if (f->degree() > 0)
      for (const auto& fct : factor(*f)) candidates.insert(fct.poly);
  EcDivisor D;
  for (const Poly& h : candidates)
    for (const EcPlace& Q : places_above(h))
      if (int v = valuation(z, Q); v != 0) D[Q] = v;
  if (int v = valuation(z, infinity_place()); v != 0) D[infinity_place()] = v;
  return D;
}

EcDivisor EllipticCurve::pole_divisor(const ECFunction& z) const {
  if (z.is_zero()) throw FieldError("divisor of the zero function");
  // Poles lie above the zeros of w or at O.
  EcDivisor D;
  if (z.w().degree() > 0)
    for (const auto& fct : factor(z.w()))
      for (const EcPlace& Q : places_above(fct.poly))
        if (int v = valuation(z, Q); v < 0) D[Q] = -v;
  if (int v = valuation(z, infinity_place()); v < 0) D[infinity_place()] = -v;
  return D;
}

RiemannRochSpace EllipticCurve::riemann_roch(const EcDivisor& G) const {
  int a_O = 0;
  const FieldPtr& K = field_;
  Poly h = Poly::constant(K, K->one());
  for (const auto& [Q, c] : G) {
    if (c < 0) throw FieldError("Riemann-Roch divisor must be effective");
    if (Q.is_infinity()) a_O = c;
    else h = h * ffseq::pow(x_polynomial(Q), static_cast<unsigned>(c));
  }
  if (degree(G) < 1) throw FieldError("Riemann-Roch divisor must have positive degree");
  // L(G) = {g / h : g in L(mO), div(g) >= div(h) - G}.
  const int m = 2 * h.degree() + a_O;
  std::vector<std::pair<unsigned, unsigned>> monos;  // (i, j): x^i y^j
  for (int i = 0; 2 * i <= m; ++i) monos.emplace_back(i, 0);
  for (int i = 0; 2 * i + 3 <= m; ++i) monos.emplace_back(i, 1);
  std::set<EcPlace> support;
  for (const auto& [Q, c] : G) {
    if (Q.is_infinity() || c == 0) continue;
    for (const EcPlace& R : places_above(x_polynomial(Q))) support.insert(R);
  }
  Matrix rows;
  for (const EcPlace& R : support) {
    const ECFunction hr(h, Poly(K), Poly::constant(K, K->one()));
    const auto it = G.find(R);
    const int need = valuation(hr, R) - (it == G.end() ? 0 : it->second);
    if (need <= 0) continue;
    const auto ext = extension(R.degree);
    const GaloisField& E = *ext->ext();
    const LocalExpansion L = local_expansion(R, static_cast<unsigned>(need));
    std::vector<Series> xpow{Series(need, E.zero())};
    xpow[0][0] = E.one();
    std::vector<Series> cols;
    for (const auto& [i, j] : monos) {
      while (xpow.size() <= i) xpow.push_back(series_mul(E, xpow.back(), L.x, need));
      cols.push_back(j ? series_mul(E, xpow[i], L.y, need) : xpow[i]);
    }
    for (int k = 0; k < need; ++k) {
      std::vector<std::vector<Elem>> coords;
      for (const auto& s : cols) coords.push_back(ext->coords(s[k]));
      for (unsigned c = 0; c < R.degree; ++c) {
        std::vector<Elem> row;
        for (const auto& cc : coords) row.push_back(cc[c]);
        rows.push_back(std::move(row));
      }
    }
  }
  RiemannRochSpace space;
  space.denominator = h;
  for (const auto& vec : kernel_basis(*K, rows, monos.size())) {
    Poly u(K), v(K);
    for (std::size_t s = 0; s < monos.size(); ++s) {
      if (vec[s].code == 0) continue;
      Poly term = Poly::monomial(K, vec[s], monos[s].first);
      if (monos[s].second) v = v + term;
      else u = u + term;
    }
    space.basis.emplace_back(u, v, h);
    space.numerators.emplace_back(std::move(u), std::move(v));
  }
  return space;
}

std::optional<Elem> EllipticCurve::evaluate(const ECFunction& z, const EcPoint& P) const {
  if (z.is_zero()) return F().zero();
  if (P.infinity) {
    const int v = valuation(z, infinity_place());
    if (v < 0) return std::nullopt;
    if (v > 0) return F().zero();
    return F().div(z.u().lead(), z.w().lead());
  }
  const Elem w0 = z.w().eval(P.x);
  if (w0.code != 0) return F().div(F().add(z.u().eval(P.x), F().mul(z.v().eval(P.x), P.y)), w0);
  const EcPlace Q = rational_place(P);
  const int v = valuation(z, Q);
  if (v < 0) return std::nullopt;
  if (v > 0) return F().zero();
  const unsigned prec = static_cast<unsigned>(2 * z.w().degree()) + 1;
  const LocalExpansion L = local_expansion(Q, prec);
  const auto ext = extension(1);
  const Series g = series_axpy(F(), poly_series(*ext, z.u(), L.x, prec), F().one(),
                               series_mul(F(), poly_series(*ext, z.v(), L.x, prec), L.y, prec));
  const Series w = poly_series(*ext, z.w(), L.x, prec);
  const int ow = series_order(w);
  return F().div(g[static_cast<std::size_t>(ow)], w[static_cast<std::size_t>(ow)]);
}

// ---------------------------------------------------------------------------

bool admissible_trace(std::uint32_t p, unsigned n, std::int64_t t) {
  const std::int64_t q = static_cast<std::int64_t>(checked_pow(p, n, UINT32_MAX));
  const std::int64_t pp = p;
  if (t != 0 && t * t <= 4 * q && t % pp != 0) return true;
  if (t == 0 && (n % 2 == 1 || q % 4 != 3)) return true;
  if (n % 2 == 0 && p % 3 != 1) {
    const auto s = static_cast<std::int64_t>(checked_pow(p, n / 2, UINT32_MAX));
    if (t == s || t == -s) return true;
  }
  if (n % 2 == 1 && (p == 2 || p == 3)) {
    const auto s = static_cast<std::int64_t>(checked_pow(p, (n + 1) / 2, UINT32_MAX));
    if (t == s || t == -s) return true;
  }
  return false;
}

EllipticCurve search_cyclic_curve(const FieldPtr& field, std::int64_t t, std::uint64_t size_cap) {
  const GaloisField& K = *field;
  if (!admissible_trace(K.p(), K.e(), t)) throw FieldError("trace t satisfies none of the existence conditions");
  const std::uint64_t q = K.size();
  const std::uint64_t N = static_cast<std::uint64_t>(static_cast<std::int64_t>(q) + 1 + t);
  const bool short_form = K.p() >= 5;
  const std::uint64_t free_coeffs = short_form ? 2 : 5;
  const std::uint64_t total = checked_pow(q, static_cast<unsigned>(free_coeffs), UINT64_MAX / 2);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Elem> c(free_coeffs);
    std::uint64_t rest = code;
    for (std::size_t i = free_coeffs; i-- > 0;) {
      c[i] = K.element(rest % q);
      rest /= q;
    }
    Weierstrass a = short_form ? Weierstrass{K.zero(), K.zero(), K.zero(), c[0], c[1]}
                               : Weierstrass{c[0], c[1], c[2], c[3], c[4]};
    const CurveModel C(field, a);
    if (C.discriminant().code == 0 || C.count_points() != N) continue;
    EllipticCurve E(field, a, size_cap);
    if (auto P = E.find_generator()) {
      E.set_generator(*P);
      return E;
    }
  }
  throw FieldError("no cyclic curve with q + 1 + t points was found");
}

}  // namespace ffseq::elliptic

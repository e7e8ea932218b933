#pragma once

// Elliptic curves in long Weierstrass form
//   y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
// over F_q: group law, point counts, places of degree d as Frobenius orbits,
// translation orbits, local expansions, valuations and Riemann-Roch spaces.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ffseq/galois.hpp"
#include "ffseq/poly.hpp"
#include "ffseq/random.hpp"

namespace ffseq::elliptic {

struct Weierstrass {
  Elem a1{}, a2{}, a3{}, a4{}, a6{};
  friend bool operator==(const Weierstrass&, const Weierstrass&) = default;
};

/// An affine point or the point at infinity O; O sorts first.
struct EcPoint {
  bool infinity = true;
  Elem x{}, y{};

  static EcPoint O() { return {}; }
  static EcPoint affine(Elem x, Elem y) { return {false, x, y}; }
  bool is_infinity() const { return infinity; }

  friend bool operator==(const EcPoint& a, const EcPoint& b) {
    return a.infinity == b.infinity && (a.infinity || (a.x == b.x && a.y == b.y));
  }
  friend std::strong_ordering operator<=>(const EcPoint& a, const EcPoint& b) {
    if (a.infinity || b.infinity) return b.infinity <=> a.infinity;
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
  std::string to_string() const;
};

/// The curve equation over one concrete field K (F_q or an extension).
class CurveModel {
 public:
  CurveModel(FieldPtr K, Weierstrass a) : K_(std::move(K)), a_(a) {}

  const FieldPtr& field() const { return K_; }
  const GaloisField& K() const { return *K_; }
  const Weierstrass& coeffs() const { return a_; }

  Elem discriminant() const;
  bool on_curve(const EcPoint& P) const;
  /// F(x, y) = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6.
  Elem equation(Elem x, Elem y) const;
  /// dF/dx and dF/dy at an affine point.
  Elem partial_x(const EcPoint& P) const;
  Elem partial_y(const EcPoint& P) const;

  EcPoint neg(const EcPoint& P) const;
  EcPoint add(const EcPoint& P, const EcPoint& Q) const;
  EcPoint mul(std::int64_t k, const EcPoint& P) const;
  std::uint64_t order(const EcPoint& P, std::uint64_t group_order) const;

  /// Solutions y of the equation at abscissa x, ascending.
  std::vector<Elem> y_roots(Elem x) const;
  /// Number of solutions y at x, without solving.
  unsigned y_count(Elem x) const;
  /// #E(K), including O.
  std::uint64_t count_points() const;
  /// All points of E(K), O first then ascending.
  std::vector<EcPoint> points() const;

 private:
  FieldPtr K_;
  Weierstrass a_;
};

/// A closed point: the Frobenius orbit of a point over F_{q^degree}.
struct EcPlace {
  unsigned degree = 1;
  /// Sorted; conjugates[0] is the representative.
  std::vector<EcPoint> conjugates;

  const EcPoint& rep() const { return conjugates.front(); }
  bool is_infinity() const { return degree == 1 && conjugates.front().is_infinity(); }
  friend bool operator==(const EcPlace& a, const EcPlace& b) {
    return a.degree == b.degree && a.rep() == b.rep();
  }
  friend std::strong_ordering operator<=>(const EcPlace& a, const EcPlace& b) {
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    return a.rep() <=> b.rep();
  }
  std::string to_string() const;
};

using EcDivisor = std::map<EcPlace, int>;
int degree(const EcDivisor& D);

/// (u + v y) / w with w monic and gcd(u, v, w) = 1; zero is 0/1.
class ECFunction {
 public:
  ECFunction() = default;
  ECFunction(Poly u, Poly v, Poly w);
  static ECFunction constant(const FieldPtr& field, Elem c);

  const Poly& u() const { return u_; }
  const Poly& v() const { return v_; }
  const Poly& w() const { return w_; }
  const FieldPtr& field() const { return w_.field(); }
  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  bool is_constant() const { return v_.is_zero() && u_.degree() <= 0 && w_.degree() == 0; }

  friend ECFunction operator+(const ECFunction& a, const ECFunction& b);
  friend ECFunction operator-(const ECFunction& a, const ECFunction& b);
  ECFunction scaled(Elem c) const;
  friend bool operator==(const ECFunction& a, const ECFunction& b) = default;

  /// "u=<codes>;v=<codes>;w=<codes>".
  std::string to_string() const;

 private:
  Poly u_, v_, w_;
};

/// A basis of L(G), all elements sharing the denominator h.
struct RiemannRochSpace {
  Poly denominator;
  std::vector<std::pair<Poly, Poly>> numerators;  // (u_i, v_i)
  std::vector<ECFunction> basis;

  std::size_t dimension() const { return basis.size(); }
  /// sum c_i f_i, computed on the shared denominator.
  ECFunction combine(const std::vector<Elem>& c) const;
};

/// Truncated power series of x and y in a local parameter t at a point.
struct LocalExpansion {
  std::vector<Elem> x, y;
};

class EllipticCurve {
 public:
  /// Throws FieldError on a singular curve.
  EllipticCurve(FieldPtr field, Weierstrass a, std::uint64_t size_cap = kDefaultSizeCap);

  const FieldPtr& field() const { return field_; }
  const GaloisField& F() const { return *field_; }
  const Weierstrass& coeffs() const { return model_.coeffs(); }
  const CurveModel& model() const { return model_; }
  std::uint64_t size_cap() const { return size_cap_; }

  std::uint64_t group_order() const { return order_; }
  /// a = q + 1 - N.
  std::int64_t frobenius_trace() const;
  const std::optional<EcPoint>& generator() const { return generator_; }
  /// Stores P after checking it has order N.
  void set_generator(const EcPoint& P);
  /// Least rational point of order N, if the group is cyclic.
  std::optional<EcPoint> find_generator() const;
  std::string describe() const;

  ExtensionPtr extension(unsigned d) const;
  /// The curve with coefficients embedded in F_{q^d}; d = 1 is the base model.
  CurveModel model_over(unsigned d) const;
  EcPoint embed_point(const EcPoint& P, unsigned d) const;
  EcPoint frobenius(const EcPoint& P, unsigned d) const;

  EcPlace infinity_place() const;
  EcPlace rational_place(const EcPoint& P) const;
  /// Place through P over F_{q^d}; throws unless its Frobenius orbit has size d.
  EcPlace place_of(const EcPoint& P, unsigned d) const;
  EcPlace negate(const EcPlace& Q) const;
  /// sigma_P(Q) = P + Q for a rational point P.
  EcPlace translate(const EcPlace& Q, const EcPoint& P) const;

  std::vector<EcPlace> places_of_degree(unsigned d) const;
  /// B_d from the zeta function.
  std::uint64_t count_places_zeta(unsigned d) const;
  /// N_d = #E(F_{q^d}) from the zeta function.
  std::uint64_t count_points_zeta(unsigned d) const;
  /// Orbits of size N under Q -> P + Q, each starting at its least place, sorted.
  std::vector<std::vector<EcPlace>> translation_orbits(unsigned d, const EcPoint& P) const;

  /// Series of x, y at the representative of Q over F_{q^deg Q}, to prec terms.
  LocalExpansion local_expansion(const EcPlace& Q, unsigned prec) const;
  int valuation(const ECFunction& z, const EcPlace& Q) const;
  /// Places over the irreducible h(x); one or two places.
  std::vector<EcPlace> places_above(const Poly& h) const;
  /// Product of the distinct minimal polynomials of the x-coordinates.
  Poly x_polynomial(const EcPlace& Q) const;
  EcDivisor principal_divisor(const ECFunction& z) const;
  EcDivisor pole_divisor(const ECFunction& z) const;

  RiemannRochSpace riemann_roch(const EcDivisor& G) const;
  std::vector<ECFunction> riemann_roch_basis(const EcDivisor& G) const {
    return riemann_roch(G).basis;
  }

  /// Value at a rational place; nullopt at a pole.
  std::optional<Elem> evaluate(const ECFunction& z, const EcPoint& P) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<unsigned, ExtensionPtr> ext;
  };

  FieldPtr field_;
  CurveModel model_;
  std::uint64_t size_cap_;
  std::uint64_t order_ = 0;
  std::optional<EcPoint> generator_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// The trace conditions under which a cyclic curve with q + 1 + t points exists.
bool admissible_trace(std::uint32_t p, unsigned n, std::int64_t t);

/// First nonsingular curve in lexicographic coefficient order with
/// q + 1 + t points and a cyclic group. Short form for p >= 5.
EllipticCurve search_cyclic_curve(const FieldPtr& field, std::int64_t t,
                                  std::uint64_t size_cap = kDefaultSizeCap);

}  // namespace ffseq::elliptic

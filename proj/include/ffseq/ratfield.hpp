#pragma once

// The rational function field F_q(x): places, the automorphism x -> eps*x,
// Riemann-Roch spaces of single places, valuations and Artin-Schreier
// reduction of pole orders.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffseq/galois.hpp"
#include "ffseq/poly.hpp"
#include "ffseq/random.hpp"

namespace ffseq::rational {

/// A place of F_q(x): a monic irreducible polynomial, or the infinite place.
class RatPlace {
 public:
  static RatPlace infinity(FieldPtr field) { return RatPlace(Poly(std::move(field)), true); }
  /// Throws unless f is monic and irreducible.
  static RatPlace finite(Poly f);
  /// Skips the irreducibility check; for polynomials already known irreducible.
  static RatPlace finite_unchecked(Poly f) { return RatPlace(std::move(f), false); }

  bool is_infinity() const { return infinite_; }
  const Poly& poly() const { return poly_; }
  unsigned degree() const { return infinite_ ? 1u : static_cast<unsigned>(poly_.degree()); }
  std::string to_string() const;

  friend bool operator==(const RatPlace& a, const RatPlace& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.poly_ == b.poly_);
  }
  /// Finite places by (degree, coefficients), the infinite place last.
  friend std::strong_ordering operator<=>(const RatPlace& a, const RatPlace& b);

 private:
  RatPlace(Poly f, bool inf) : poly_(std::move(f)), infinite_(inf) {}
  Poly poly_;
  bool infinite_ = false;
};

/// num/den with gcd(num, den) = 1, den monic; zero is 0/1.
class RatFunction {
 public:
  RatFunction() = default;
  explicit RatFunction(Poly num);
  RatFunction(Poly num, Poly den);
  static RatFunction constant(const FieldPtr& field, Elem c);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  /// Value at x = a; nullopt at a pole.
  std::optional<Elem> eval(Elem a) const;
  /// Value at the infinite place; nullopt at a pole.
  std::optional<Elem> eval_infinity() const;
  /// z(k x).
  RatFunction compose_scale(Elem k) const;
  RatFunction pow(unsigned k) const;

  friend RatFunction operator+(const RatFunction& a, const RatFunction& b);
  friend RatFunction operator-(const RatFunction& a, const RatFunction& b);
  friend RatFunction operator*(const RatFunction& a, const RatFunction& b);
  friend RatFunction operator/(const RatFunction& a, const RatFunction& b);
  friend bool operator==(const RatFunction& a, const RatFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// "num=<codes>;den=<codes>" with little-endian coefficient codes.
  std::string to_string() const;

 private:
  Poly num_, den_;
};

using Divisor = std::map<RatPlace, int>;
int degree(const Divisor& D);

struct ReductionResult {
  /// m*_Q(z): 0 when the reduced function is regular at Q.
  int order = 0;
  /// z - (H^p - H) for the certificate H below.
  RatFunction reduced;
  RatFunction certificate;
};

struct NondegeneracyResult {
  bool nondegenerate = false;
  /// A place where the reduced pole order is positive (and hence coprime to p).
  std::optional<RatPlace> witness;
  int reduced_order = 0;
  /// True when a pole of order coprime to p was found without reduction.
  bool by_coprime_pole = false;
};

class ZeroFunctionError : public FieldError {
 public:
  ZeroFunctionError() : FieldError("valuation of the zero function is +infinity") {}
};

class RationalFunctionField {
 public:
  explicit RationalFunctionField(FieldPtr field, std::uint64_t size_cap = kDefaultSizeCap);

  const FieldPtr& field() const { return field_; }
  const GaloisField& F() const { return *field_; }
  /// The fixed primitive element eps of x -> eps x.
  Elem epsilon() const { return field_->primitive(); }
  /// Orbit length q - 1 of the rational places under x -> eps x.
  std::uint64_t orbit_length() const { return field_->size() - 1; }

  std::vector<RatPlace> places_of_degree(unsigned d) const;
  /// The q finite places of degree one followed by the infinite place.
  std::vector<RatPlace> rational_places() const;
  /// phi^k(P): the monic normalisation of f(eps^k x).
  RatPlace phi_apply(std::int64_t k, const RatPlace& P) const;
  RatFunction phi_apply(std::int64_t k, const RatFunction& z) const;
  /// Least place of the phi-orbit of P.
  RatPlace orbit_representative(const RatPlace& P) const;
  /// Orbits of size q - 1, each starting at its least member, sorted.
  std::vector<std::vector<RatPlace>> orbit_decomposition(unsigned d) const;
  /// Uniform random monic irreducible of degree d.
  RatPlace random_place(unsigned d, Rng& rng) const;

  /// {1, 1/f, x/f, ..., x^{d-1}/f}.
  std::vector<RatFunction> riemann_roch_basis(const RatPlace& Q) const;

  int valuation(const RatFunction& z, const RatPlace& P) const;
  Divisor pole_divisor(const RatFunction& z) const;
  Divisor zero_divisor(const RatFunction& z) const;
  Divisor principal_divisor(const RatFunction& z) const;
  /// Value at a degree-one place; nullopt at a pole.
  std::optional<Elem> evaluate(const RatFunction& z, const RatPlace& P) const;

  ReductionResult reduce_pole_order(const RatFunction& z, const RatPlace& Q) const;
  int reduced_pole_order(const RatFunction& z, const RatPlace& Q) const {
    return reduce_pole_order(z, Q).order;
  }
  NondegeneracyResult is_nondegenerate(const RatFunction& z) const;

 private:
  FieldPtr field_;
  std::uint64_t size_cap_;
};

}  // namespace ffseq::rational

#pragma once

// Univariate polynomials over a GaloisField, plus irreducibility testing and
// factorisation (squarefree, distinct-degree, Cantor-Zassenhaus).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffseq/galois.hpp"

namespace ffseq {

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c);
  static Poly x(FieldPtr field);
  static Poly monomial(FieldPtr field, Elem c, unsigned k);
  /// Monic polynomial x^deg + sum lower[i] x^i where lower is given by a
  /// base-q integer code (digit i is the code of coefficient i).
  static Poly monic_from_code(FieldPtr field, unsigned deg, std::uint64_t code);

  const FieldPtr& field() const { return field_; }
  const GaloisField& F() const { return *field_; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == F().one(); }
  bool is_constant() const { return c_.size() <= 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }
  Elem lead() const { return c_.empty() ? Elem{0} : c_.back(); }
  const std::vector<Elem>& coeffs() const { return c_; }

  Elem eval(Elem a) const;
  Poly monic() const;
  Poly derivative() const;
  Poly scaled(Elem k) const;
  /// f(k x).
  Poly compose_scale(Elem k) const;
  /// Coefficients mapped through a field embedding into another field.
  template <class Map>
  Poly mapped(FieldPtr target, Map&& map) const {
    std::vector<Elem> out;
    out.reserve(c_.size());
    for (Elem a : c_) out.push_back(map(a));
    return Poly(std::move(target), std::move(out));
  }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  /// Degree first, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

  /// Codes of the coefficients, little-endian, space separated.
  std::string to_string() const;

 private:
  void trim();

  FieldPtr field_;
  std::vector<Elem> c_;
};

Poly gcd(Poly a, Poly b);
/// Returns (g, s, t) with s a + t b = g, g monic.
struct ExtendedGcd {
  Poly g, s, t;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);
/// Inverse of a modulo m; throws if not invertible.
Poly invmod(const Poly& a, const Poly& m);
Poly powmod(Poly base, std::uint64_t k, const Poly& m);
Poly pow(const Poly& base, unsigned k);
/// x^{q^k} mod m, computed by k successive q-th powers.
Poly frobenius_power_x(const Poly& m, unsigned k);

/// Multiplicity of the irreducible h in f (f nonzero).
int multiplicity(Poly f, const Poly& h);

bool is_irreducible(const Poly& f);
/// Irreducibility by trial division by every monic polynomial of degree
/// <= deg/2; slow, used as an independent oracle.
bool is_irreducible_trial(const Poly& f);

struct Factor {
  Poly poly;
  int multiplicity;
};
/// Monic irreducible factorisation, sorted ascending by (degree, coefficients).
std::vector<Factor> factor(const Poly& f);
/// Distinct roots in the coefficient field, ascending by code.
std::vector<Elem> roots(const Poly& f);

}  // namespace ffseq

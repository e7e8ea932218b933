#pragma once

// Trace sequences s_j = Tr(z(P_j)) along an orbit of rational places, and the
// two sequence families built from the rational function field and from a
// cyclic elliptic curve.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffseq/elliptic.hpp"
#include "ffseq/ratfield.hpp"

namespace ffseq::seqgen {

enum class Construction { Rational, Elliptic };
std::string to_string(Construction c);

using Digits = std::vector<std::uint32_t>;

/// The rational places P_0, ..., P_{n-1} with P_{j+1} = sigma(P_j).
class OrbitSpec {
 public:
  /// n = q - 1; P_j is the zero of eps^j x - 1.
  static OrbitSpec rational(std::shared_ptr<const rational::RationalFunctionField> R);
  /// n = N; P_j = [j]P with P_0 = O. Throws unless the curve has a generator.
  static OrbitSpec elliptic(std::shared_ptr<const elliptic::EllipticCurve> E);

  Construction kind() const { return kind_; }
  const FieldPtr& field() const { return field_; }
  std::size_t length() const { return length_; }
  /// Only for q = 2, where the rational orbit has a single place.
  bool trivial() const { return length_ == 1; }
  const rational::RationalFunctionField& ratfield() const { return *R_; }
  const elliptic::EllipticCurve& curve() const { return *E_; }
  std::shared_ptr<const rational::RationalFunctionField> ratfield_ptr() const { return R_; }
  std::shared_ptr<const elliptic::EllipticCurve> curve_ptr() const { return E_; }

  /// Rational: eps^j, the point where the explicit family formula evaluates.
  const std::vector<Elem>& evaluation_points() const { return eval_points_; }
  /// Rational: the place P_j, the zero of eps^j x - 1.
  rational::RatPlace rational_place(std::size_t j) const;
  /// Elliptic: [j]P.
  const std::vector<elliptic::EcPoint>& points() const { return points_; }

  /// The same orbit started at P_l.
  OrbitSpec rotated(std::size_t l) const;
  std::string id() const;

 private:
  Construction kind_ = Construction::Rational;
  FieldPtr field_;
  std::size_t length_ = 0;
  std::size_t offset_ = 0;
  std::shared_ptr<const rational::RationalFunctionField> R_;
  std::shared_ptr<const elliptic::EllipticCurve> E_;
  std::vector<Elem> eval_points_;
  std::vector<elliptic::EcPoint> points_;
};

struct Provenance {
  std::uint32_t p = 0;
  unsigned e = 0;
  Construction kind = Construction::Rational;
  std::string orbit;
  std::string z;
  std::string pole;
  /// -v_Q(z).
  int pole_order = 0;
  /// m*_Q(z).
  int reduced_order = 0;
  unsigned pole_degree = 0;
  bool unique_pole = false;
};

struct Sequence {
  Digits digits;
  Provenance prov;
};

class SequenceError : public FieldError {
 public:
  using FieldError::FieldError;
};

/// s_j = Tr(z(eps^j)). Throws if z is zero or has a pole on the orbit.
Sequence generate_sequence(const rational::RatFunction& z, const OrbitSpec& orbit);
/// s_j = Tr(z([j]P)). Pole orders divisible by p are rejected.
Sequence generate_sequence(const elliptic::ECFunction& z, const OrbitSpec& orbit);

/// Smallest k >= 1 with s_{j+k mod n} = s_j; divides n.
std::size_t least_period(const Digits& s);

enum class FamilyMode { Exhaustive, Sample };

struct FamilySpec {
  Construction kind = Construction::Rational;
  unsigned d = 2;
  /// Elliptic pole-order cap: z ranges over L(k Q_i).
  unsigned k = 1;
  FamilyMode mode = FamilyMode::Sample;
  std::uint64_t count = 100;
  std::uint64_t seed = 0;
};

struct FamilyMember {
  Sequence seq;
  /// Index of the orbit representative carrying the pole.
  std::size_t rep = 0;
  std::optional<rational::RatFunction> rz;
  std::optional<elliptic::ECFunction> ez;
};

struct Family {
  FamilySpec spec;
  OrbitSpec orbit;
  /// r = I_q(d)/(q-1) or B_d/N.
  std::uint64_t orbit_count = 0;
  /// Representatives in the order members refer to them.
  std::vector<std::string> representatives;
  std::vector<rational::RatPlace> rational_reps;
  std::vector<elliptic::EcPlace> elliptic_reps;
  std::vector<FamilyMember> members;
};

/// Rational family over F_q(x); requires d >= 2 and gcd(d, q-1) = 1.
Family build_rational_family(std::shared_ptr<const rational::RationalFunctionField> R, const FamilySpec& spec);
/// Elliptic family over a cyclic curve; requires gcd(d, N) = 1.
Family build_elliptic_family(std::shared_ptr<const elliptic::EllipticCurve> E, const FamilySpec& spec);

}  // namespace ffseq::seqgen

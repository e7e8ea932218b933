#pragma once

// Dense arithmetic in F_{p^e}.
//
// Elements are coefficient tuples over F_p in the power basis of a root u of
// the field modulus.  A tuple (c_0, ..., c_{e-1}) is packed into one integer
// code  c_0 + c_1 p + ... + c_{e-1} p^{e-1}, so every element of the field is
// a code in [0, p^e) and iterating codes enumerates the field.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffseq {

using Digit = std::uint32_t;

inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 24;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of some GaloisField, identified by its packed code.
struct Elem {
  std::uint32_t code = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldOptions {
  std::uint64_t size_cap = kDefaultSizeCap;
  /// Discrete log / antilog tables for multiplication.  Off by default.
  bool log_tables = false;
};

class GaloisField;
using FieldPtr = std::shared_ptr<const GaloisField>;

/// F_{p^e} with a deterministic representation: the modulus is the least
/// monic irreducible of degree e (by packed code of its lower coefficients)
/// and the primitive element is the least element of order p^e - 1.
class GaloisField {
 public:
  static FieldPtr build(std::uint32_t p, unsigned e, const FieldOptions& opts = {});

  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint64_t size() const { return size_; }
  bool is_prime_field() const { return e_ == 1; }

  /// Monic modulus, little-endian, length e + 1.
  const std::vector<Digit>& modulus() const { return modulus_; }
  Elem primitive() const { return primitive_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// Image of the integer k under Z -> F_p -> F_{p^e}.
  Elem from_int(std::int64_t k) const;
  Elem from_coeffs(std::span<const Digit> coeffs) const;
  std::vector<Digit> coeffs(Elem a) const;
  /// The root u of the modulus (the element with coefficient tuple (0,1,0..)).
  Elem generator() const;
  Elem element(std::uint64_t code) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  /// x -> x^p.
  Elem frobenius(Elem a) const { return pow(a, p_); }
  /// Unique p-th root, x -> x^{p^{e-1}}.
  Elem pth_root(Elem a) const;
  /// Scalar multiple by an F_p residue.
  Elem scale(Elem a, Digit k) const;

  /// Absolute trace to F_p: x + x^p + ... + x^{p^{e-1}}.
  Digit trace(Elem x) const;
  /// Trace computed from the Frobenius conjugates one by one; test oracle.
  Digit trace_by_conjugates(Elem x) const;

  std::uint64_t order(Elem a) const;
  bool is_primitive(Elem a) const;

  bool same_as(const GaloisField& other) const {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
  }
  std::string describe() const;

  GaloisField(std::uint32_t p, unsigned e, std::vector<Digit> modulus, const FieldOptions& opts);

 private:
  void decode(Elem a, Digit* out) const;
  Elem encode(const Digit* c) const;
  Elem mul_poly(Elem a, Elem b) const;
  void find_primitive();
  void build_tables();

  std::uint32_t p_;
  unsigned e_;
  std::uint64_t size_;
  std::vector<Digit> modulus_;
  std::vector<std::uint64_t> place_;  // p^i
  Elem primitive_{};
  std::vector<Digit> basis_trace_;    // Tr(u^i)
  std::vector<std::uint32_t> exp_table_;
  std::vector<std::uint32_t> log_table_;
};

bool is_prime(std::uint64_t n);
/// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// Moebius function.
int moebius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
/// Integer power with overflow check against the given cap; throws FieldError.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t cap);

/// I_q(d) = (1/d) sum_{b | d} mu(d/b) q^b.
std::uint64_t count_irreducibles(std::uint64_t q, unsigned d);

/// F_{q^d} realised as the absolute field F_{p^{ed}}, together with an
/// embedding of F_q and F_q-coordinates relative to the basis
/// 1, g, g^2, ..., g^{d-1} where g is the primitive element of the extension.
class Extension {
 public:
  static std::shared_ptr<const Extension> build(FieldPtr base, unsigned d,
                                                const FieldOptions& opts = {});

  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  unsigned degree() const { return degree_; }

  Elem embed(Elem a) const;
  /// Image of the base generator u.
  Elem generator_image() const { return root_image_; }
  /// F_q-coordinates (length d) of an extension element.
  std::vector<Elem> coords(Elem a) const;
  /// Inverse of embed for elements lying in F_q; throws otherwise.
  Elem restrict(Elem a) const;
  bool in_base(Elem a) const;
  /// Relative Frobenius x -> x^q.
  Elem frobenius(Elem a) const { return ext_->pow(a, base_->size()); }

 private:
  Extension() = default;

  FieldPtr base_;
  FieldPtr ext_;
  unsigned degree_ = 1;
  Elem root_image_{};
  std::vector<Elem> power_images_;           // embed(u^k), k < e
  std::vector<std::vector<Digit>> inverse_;  // F_p matrix, size ed x ed
};

using ExtensionPtr = std::shared_ptr<const Extension>;

inline ExtensionPtr extend_field(FieldPtr base, unsigned d, const FieldOptions& opts = {}) {
  return Extension::build(std::move(base), d, opts);
}

}  // namespace ffseq

#pragma once

// Closed-form bounds for trace sequences from function fields, exact
// arithmetic in Q(sqrt q) for comparing them, and the verification report that
// sets measured figures against the bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "ffseq/seqgen.hpp"

namespace ffseq::bounds {

struct BoundInputs {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  /// q = p^h.
  unsigned h = 1;
  int g = 0;
  /// Orbit length.
  std::uint64_t n = 0;
  /// Pole degree.
  unsigned d = 0;
  /// Reduced pole order m*_Q(z).
  int mstar = 0;
  /// Pattern arity.
  unsigned r = 1;
  /// Nonlinearity degree.
  unsigned m = 1;
  /// Frobenius trace of the elliptic curve.
  std::int64_t t = 0;
};

struct PoleTerm {
  int reduced_order = 0;
  unsigned degree = 0;
};

/// (2g - 2 + sum (m*_u + 1) deg u) sqrt q. Throws on an empty pole list.
double weil_bound(int g, std::uint64_t q, const std::vector<PoleTerm>& poles);
/// All poles of degree one: (2g - 2 + #Supp + deg (f)_inf) sqrt q.
double weil_bound_degree_one(int g, std::uint64_t q, std::size_t support, int pole_degree);
/// Elliptic case: (#Supp + deg (f)_inf) sqrt q.
double weil_bound_elliptic(std::uint64_t q, std::size_t support, int pole_degree);
/// Elliptic, unique pole with v_Q(f) = -1: 2 deg (f)_inf sqrt q.
double weil_bound_unique_simple(std::uint64_t q, int pole_degree);

/// (2g - 2 + 2(m* + 1)d) sqrt q; the period is exactly n when n exceeds it.
double period_threshold(const BoundInputs& in);
bool period_guaranteed(const BoundInputs& in);

/// (n - m* d)/(m* d + 1), for q = p.
double lc_bound_prime(const BoundInputs& in);
/// (n - (2g - 2) sqrt q)/((m* + 1) d sqrt q) - 1.
double lc_bound_general(const BoundInputs& in);
/// The bound that applies: lc_bound_prime when h = 1, else lc_bound_general.
double lc_bound(const BoundInputs& in);
/// (q - 1 - 2(d - 1) sqrt q)/(2 d sqrt q).
double lc_bound_rational(std::uint64_t q, unsigned d);
/// (q + 1 + t - (m* + 1) d sqrt q)/((m* + 1) d sqrt q).
double lc_bound_elliptic(std::uint64_t q, std::int64_t t, int mstar, unsigned d);

/// Right side of |2L - n| <= ... as printed; treated as unverified.
double corollary_deviation(const BoundInputs& in);
/// Right side of |2L_t - t| <= (t - (-2 + (t + 2)d) sqrt q)/(d sqrt q) as printed; unverified.
double perfect_rational_rhs(std::uint64_t q, unsigned d, std::uint64_t t);
/// Right side of |2L_s - s| <= (s - (s + 2) d sqrt q)/(d sqrt q) as printed; unverified.
double perfect_elliptic_rhs(std::uint64_t q, unsigned d, std::uint64_t s);

enum class CorrelationCase {
  /// 0 < tau < n.
  Shifted,
  /// tau = 0, Q1 != Q2.
  InPhaseDistinctPoles,
  /// tau = 0, Q1 = Q2, z1 - z2 non-degenerate.
  InPhaseSamePole,
  /// tau = 0, Q1 = Q2 and z1 - z2 degenerate (in particular z1 = z2).
  Excluded,
};
std::string to_string(CorrelationCase c);

struct CorrelationSide {
  int mstar = 0;
  unsigned d = 0;
};

struct CorrelationBound {
  CorrelationCase kind = CorrelationCase::Shifted;
  /// Absent for the excluded case.
  std::optional<double> value;
};

CorrelationBound correlation_bound(int g, std::uint64_t q, std::uint64_t n, std::uint64_t tau,
                                   const CorrelationSide& z1, const CorrelationSide& z2, bool same_pole,
                                   bool degenerate_difference);

/// (2g - 2) sqrt q + d r sqrt q (m* + 1)(1 - 1/p), the deviation bound for
/// |N(z, t) - n/p^r|.
double pattern_bound(const BoundInputs& in);
/// (n - p^{h-1} m* d)/(1 + m p^{h-1} m* d).
double nlc_bound(const BoundInputs& in);

/// a + b sqrt q with rational a, b; b = 0 whenever q is a perfect square.
class Surd {
 public:
  using Rat = boost::rational<std::int64_t>;
  Surd(std::uint64_t q, Rat a = 0, Rat b = 0);
  static Surd root(std::uint64_t q) { return Surd(q, 0, 1); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  std::uint64_t q() const { return q_; }
  double value() const;
  int sign() const;
  Surd abs() const { return sign() < 0 ? -*this : *this; }
  std::string to_string() const;

  Surd operator-() const { return Surd(q_, -a_, -b_); }
  friend Surd operator+(const Surd& x, const Surd& y);
  friend Surd operator-(const Surd& x, const Surd& y);
  friend Surd operator*(const Surd& x, const Surd& y);
  friend Surd operator/(const Surd& x, const Surd& y);
  friend bool operator==(const Surd& x, const Surd& y) { return x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  std::uint64_t q_;
  Rat a_, b_;
};

struct RemarkLine {
  std::string name;
  Surd computed;
  Surd printed;
  bool matches = false;
  /// Sign of the computed difference.
  int sign = 0;
};

struct ComparisonRemarks {
  Surd L1, L1p, C1, C1p, L2, L2p, C2, C2p;
  std::vector<RemarkLine> lines;
  bool all_match() const;
};

/// L1 = (q-1-2(d-1)sqrt q)/(2d sqrt q), L1' = (q-3-2(d-1)sqrt q)/(2d sqrt q),
/// C1 = 2(2d-1)sqrt q, C1' = 2(2d-1)sqrt q + 6, L2 = (q+1+t-2d sqrt q)/(2d sqrt q),
/// L2' = (q+1+2t-2(d+1)sqrt q)/(2d sqrt q), C2 = 4d sqrt q, C2' = 2(2d+1)sqrt q + |t|.
ComparisonRemarks comparison_remarks(std::uint64_t q, unsigned d, std::int64_t t);

// ---------------------------------------------------------------------------

inline constexpr double kTolerance = 1e-6;
inline constexpr const char* kReportSchema = "ffprng-report/1";

enum class Relation { AtMost, AtLeast, Equal };
std::string to_string(Relation r);

struct Check {
  std::string id;
  std::string kind;
  double measured = 0;
  /// Absent when no bound applies (excluded cases).
  std::optional<double> bound;
  Relation relation = Relation::AtMost;
  bool pass = true;
  /// Any of: vacuous, suspect-formula, excluded-by-theorem, not-guaranteed,
  /// hypothesis-not-met, cap-exceeded, informational.
  std::vector<std::string> flags;

  /// False for flags that mark the check as recorded only.
  bool asserted() const;
  /// pass recomputed from measured, bound and relation.
  bool recompute() const;
};

struct Aggregate {
  std::string kind;
  std::size_t count = 0;
  std::size_t asserted = 0;
  std::size_t failed = 0;
  /// Smallest bound-side margin over asserted checks.
  std::optional<double> min_slack;
  /// measured/bound ratios of asserted upper-bound checks in tenths; the last bin collects >= 1.
  std::vector<std::size_t> tightness;
};

struct VerifyOptions {
  bool provenance = true;
  bool period = true;
  bool lc = true;
  bool suspect = true;
  std::size_t pairs = 100;
  /// Pattern arities; empty disables the pattern checks.
  std::vector<unsigned> pattern_r;
  std::size_t pattern_sequences = 20;
  std::size_t pattern_tuples = 50;
  /// Nonlinearity degree; 0 disables the NL_m checks.
  unsigned nl_m = 0;
  std::size_t nl_sequences = 10;
  std::uint64_t nl_cap = 5000;
  std::uint64_t seed = 0;
};

struct VerificationReport {
  nlohmann::ordered_json params;
  std::optional<std::string> curve;
  std::vector<Check> checks;
  std::vector<Aggregate> aggregates;

  /// True iff every asserted check passes.
  bool passed() const;
  nlohmann::ordered_json to_json() const;
  static VerificationReport from_json(const nlohmann::ordered_json& j);
};

/// The bound inputs implied by one member's provenance.
BoundInputs inputs_for(const seqgen::Family& fam, const seqgen::Sequence& s);

VerificationReport verify_family(const seqgen::Family& fam, const VerifyOptions& opts);

}  // namespace ffseq::bounds

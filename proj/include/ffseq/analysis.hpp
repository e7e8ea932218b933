#pragma once

// Figures of merit for p-ary sequences: linear complexity and its profile,
// periodic correlation, pattern counts, m-th order nonlinear complexity, and
// additive character sums over the rational places of a function field.

#include <complex>
#include <cstdint>
#include <vector>

#include "ffseq/elliptic.hpp"
#include "ffseq/ratfield.hpp"
#include "ffseq/seqgen.hpp"

namespace ffseq::analysis {

using seqgen::Digits;

enum class LcMode {
  /// Shortest recurrence of the infinite periodic extension.
  Periodic,
  /// Shortest recurrence producing exactly the given window.
  Finite,
};

/// Berlekamp-Massey over F_p. LC of the zero sequence is 0.
std::size_t linear_complexity(const Digits& s, std::uint32_t p, LcMode mode = LcMode::Periodic);

/// LC_n for n = 1..N, one BM pass.
std::vector<std::size_t> lc_prefixes(const Digits& s, std::uint32_t p);
/// LC_n for n = 1..N-1.
std::vector<std::size_t> lc_profile(const Digits& s, std::uint32_t p);
/// |LC_n - n| <= d for every prefix length n = 1..N.
bool d_perfect(const Digits& s, std::uint32_t p, std::size_t d);

/// sum_a counts[a] * omega_p^a.
std::complex<double> character_sum(const std::vector<std::uint64_t>& counts);

struct CorrelationValue {
  std::size_t tau = 0;
  /// counts[a] = #{i : s1[i+tau] - s2[i] = a mod p}.
  std::vector<std::uint64_t> counts;
  std::complex<double> value;
  double magnitude = 0;
};

/// Throws on length mismatch.
CorrelationValue periodic_correlation(const Digits& s1, const Digits& s2, std::size_t tau, std::uint32_t p);
/// All shifts 0..T-1.
std::vector<CorrelationValue> correlation_spectrum(const Digits& s1, const Digits& s2, std::uint32_t p);

struct PatternQuery {
  std::vector<std::uint32_t> values;
  /// Strictly increasing, each below the period.
  std::vector<std::size_t> positions;
};

/// #{i0 in [0, n) : s[i0 + t_j mod n] = z_j for all j}.
std::uint64_t pattern_count(const Digits& s, const PatternQuery& query);
/// Counts of every value tuple at fixed positions; tuple (z_1..z_r) sits at z_1 + z_2 p + ...
std::vector<std::uint64_t> pattern_distribution(const Digits& s, const std::vector<std::size_t>& positions,
                                                std::uint32_t p);

class CapExceeded : public FieldError {
 public:
  using FieldError::FieldError;
};

inline constexpr std::uint64_t kDefaultMonomialCap = 5000;

/// Least L >= 1 such that s_{i+L} = Phi(s_i..s_{i+L-1}) for 0 <= i <= N-1-L with
/// deg Phi <= m over F_p; 0 for the zero sequence. Throws CapExceeded when the
/// number of monomials passes the cap before a feasible L is found.
std::size_t nonlinear_complexity(const Digits& s, std::uint32_t p, unsigned m,
                                 std::uint64_t cap = kDefaultMonomialCap);

struct ExpSum {
  std::vector<std::uint64_t> counts;
  std::complex<double> value;
  double magnitude = 0;
  /// |A|, the number of rational places summed over.
  std::size_t places = 0;
};

/// Sum of omega^{Tr f(P)} over the degree-one places of F_q(x) that are not poles.
ExpSum exp_sum(const rational::RationalFunctionField& R, const rational::RatFunction& f);
/// Same over E(F_q), O included unless it is a pole.
ExpSum exp_sum(const elliptic::EllipticCurve& E, const elliptic::ECFunction& f);

}  // namespace ffseq::analysis

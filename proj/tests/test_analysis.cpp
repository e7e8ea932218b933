#include "ffseq/analysis.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "ffseq/bounds.hpp"
#include "ffseq/linalg.hpp"

namespace ffseq::analysis {
namespace {

using rational::RatFunction;
using rational::RationalFunctionField;

Digits random_digits(Rng& rng, std::size_t n, std::uint32_t p) {
  Digits s(n);
  for (auto& v : s) v = static_cast<std::uint32_t>(uniform_below(rng, p));
  return s;
}

// Least L admitting s_j = sum c_i s_{j-i} on L <= j < n, via linear solvability.
std::size_t lc_by_linear_system(const Digits& s, std::uint32_t p) {
  const auto K = GaloisField::build(p, 1);
  bool zero = true;
  for (auto v : s) zero = zero && v == 0;
  if (zero) return 0;
  for (std::size_t L = 1; L < s.size(); ++L) {
    Matrix A;
    std::vector<Elem> b;
    for (std::size_t j = L; j < s.size(); ++j) {
      std::vector<Elem> row;
      for (std::size_t i = 1; i <= L; ++i) row.push_back(Elem{s[j - i]});
      A.push_back(row);
      b.push_back(Elem{s[j]});
    }
    if (is_consistent(*K, A, b, L)) return L;
  }
  return s.size();
}

// Exhaustive search over all connection coefficients, binary only.
std::size_t lc_exhaustive_binary(const Digits& s) {
  bool zero = true;
  for (auto v : s) zero = zero && v == 0;
  if (zero) return 0;
  for (std::size_t L = 1; L < s.size(); ++L)
    for (std::uint32_t c = 0; c < (1u << L); ++c) {
      bool ok = true;
      for (std::size_t j = L; j < s.size() && ok; ++j) {
        std::uint32_t v = 0;
        for (std::size_t i = 1; i <= L; ++i) v ^= ((c >> (i - 1)) & 1u) & s[j - i];
        ok = v == s[j];
      }
      if (ok) return L;
    }
  return s.size();
}

// Periodic LC = n - deg gcd(x^n - 1, S(x)).
std::size_t lc_periodic_gcd(const Digits& s, std::uint32_t p) {
  const auto K = GaloisField::build(p, 1);
  std::vector<Elem> c;
  for (auto v : s) c.push_back(Elem{v});
  const Poly S(K, c);
  if (S.is_zero()) return 0;
  const Poly xn1 = Poly::monomial(K, K->one(), static_cast<unsigned>(s.size())) - Poly::constant(K, K->one());
  return s.size() - static_cast<std::size_t>(gcd(xn1, S).degree());
}

TEST(LinearComplexity, Examples) {
  EXPECT_EQ(linear_complexity(Digits(10, 0), 2), 0u);
  Digits impulse(9, 0);
  impulse.back() = 1;
  EXPECT_EQ(linear_complexity(impulse, 2, LcMode::Finite), 9u);
  EXPECT_EQ(linear_complexity(impulse, 2, LcMode::Periodic), 9u);
  // m-sequence of x^3 + x + 1: LC 3.
  EXPECT_EQ(linear_complexity({1, 0, 0, 1, 0, 1, 1}, 2), 3u);
  EXPECT_EQ(linear_complexity({1, 1, 1, 1}, 3), 1u);
}

TEST(LinearComplexity, AllBinaryUpToTwelve) {
  for (std::size_t n = 1; n <= 12; ++n)
    for (std::uint32_t code = 0; code < (1u << n); ++code) {
      Digits s(n);
      for (std::size_t j = 0; j < n; ++j) s[j] = (code >> j) & 1u;
      const std::size_t L = linear_complexity(s, 2, LcMode::Finite);
      ASSERT_EQ(L, lc_by_linear_system(s, 2)) << n << ":" << code;
      if (n <= 8) {
        ASSERT_EQ(L, lc_exhaustive_binary(s));
      }
    }
}

TEST(LinearComplexity, RandomTernary) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Digits s = random_digits(rng, 1 + uniform_below(rng, 16), 3);
    EXPECT_EQ(linear_complexity(s, 3, LcMode::Finite), lc_by_linear_system(s, 3));
  }
}

TEST(LinearComplexity, PeriodicMatchesGcdFormula) {
  Rng rng(8);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int i = 0; i < 100; ++i) {
      const Digits s = random_digits(rng, 1 + uniform_below(rng, 40), p);
      const std::size_t L = linear_complexity(s, p);
      EXPECT_EQ(L, lc_periodic_gcd(s, p));
      EXPECT_LE(L, s.size());
    }
  }
}

TEST(Profile, StepRuleAndConsistency) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t p = i % 2 ? 2 : 5;
    const Digits s = random_digits(rng, 2 + uniform_below(rng, 30), p);
    const auto prof = lc_profile(s, p);
    ASSERT_EQ(prof.size(), s.size() - 1);
    for (std::size_t n = 1; n < prof.size(); ++n) {
      EXPECT_LE(prof[n - 1], prof[n]);
      if (prof[n] != prof[n - 1]) {
        EXPECT_EQ(prof[n], n + 1 - prof[n - 1]);
      }
    }
    const Digits head(s.begin(), s.end() - 1);
    EXPECT_EQ(prof.back(), linear_complexity(head, p, LcMode::Finite));
  }
  for (auto v : lc_profile(Digits(8, 0), 2)) EXPECT_EQ(v, 0u);
}

TEST(Perfect, Examples) {
  EXPECT_FALSE(d_perfect(Digits(6, 0), 2, 3));
  EXPECT_TRUE(d_perfect(Digits(3, 0), 2, 3));
  Digits impulse(6, 0);
  impulse.back() = 1;
  // LC_n = 0 for n < 6, so |LC_5 - 5| = 5.
  EXPECT_FALSE(d_perfect(impulse, 2, 4));
  EXPECT_TRUE(d_perfect(impulse, 2, 5));
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Digits s = random_digits(rng, 12, 2);
    if (d_perfect(s, 2, 1)) {
      EXPECT_TRUE(d_perfect(s, 2, 2));
    }
  }
}

TEST(Correlation, MatchesNaiveLoop) {
  Rng rng(6);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    for (int i = 0; i < 20; ++i) {
      const std::size_t T = 1 + uniform_below(rng, 64);
      const Digits a = random_digits(rng, T, p), b = random_digits(rng, T, p);
      for (std::size_t tau = 0; tau < T; ++tau) {
        const auto cv = periodic_correlation(a, b, tau, p);
        std::vector<std::uint64_t> counts(p, 0);
        std::complex<double> direct = 0;
        for (std::size_t k = 0; k < T; ++k) {
          const int diff = static_cast<int>(a[(k + tau) % T]) - static_cast<int>(b[k]);
          ++counts[static_cast<std::size_t>((diff % static_cast<int>(p) + static_cast<int>(p)) % static_cast<int>(p))];
          direct += std::polar(1.0, 2 * std::numbers::pi * diff / p);
        }
        ASSERT_EQ(cv.counts, counts);
        EXPECT_NEAR(std::abs(cv.value - direct), 0.0, 1e-9);
        EXPECT_NEAR(cv.magnitude, std::abs(direct), 1e-9);
      }
    }
  }
}

TEST(Correlation, AutocorrelationSymmetry) {
  Rng rng(7);
  const Digits s = random_digits(rng, 31, 3);
  const auto spec = correlation_spectrum(s, s, 3);
  EXPECT_EQ(spec[0].counts[0], 31u);
  EXPECT_NEAR(spec[0].value.real(), 31.0, 1e-12);
  for (std::size_t t = 1; t < 31; ++t) EXPECT_NEAR(std::abs(spec[t].value - std::conj(spec[31 - t].value)), 0.0, 1e-9);
  const auto binary = periodic_correlation(random_digits(rng, 9, 2), random_digits(rng, 9, 2), 2, 2);
  EXPECT_EQ(binary.value.imag(), 0.0);
  EXPECT_EQ(binary.value.real(), static_cast<double>(binary.counts[0]) - static_cast<double>(binary.counts[1]));
  EXPECT_THROW(periodic_correlation(Digits(3, 0), Digits(4, 0), 0, 2), FieldError);
}

TEST(Patterns, CountsAndPartition) {
  EXPECT_EQ(pattern_count(Digits(10, 0), {{0}, {3}}), 10u);
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const std::uint32_t p = i % 2 ? 2 : 3;
    const std::size_t n = 5 + uniform_below(rng, 124);
    const Digits s = random_digits(rng, n, p);
    const unsigned r = 1 + static_cast<unsigned>(uniform_below(rng, 3));
    std::set<std::size_t> ps;
    while (ps.size() < r) ps.insert(uniform_below(rng, n));
    const std::vector<std::size_t> pos(ps.begin(), ps.end());
    const auto dist = pattern_distribution(s, pos, p);
    std::uint64_t total = 0;
    for (std::size_t code = 0; code < dist.size(); ++code) {
      total += dist[code];
      PatternQuery q{{}, pos};
      std::size_t c = code;
      for (unsigned j = 0; j < r; ++j, c /= p) q.values.push_back(static_cast<std::uint32_t>(c % p));
      // Naive scan.
      std::uint64_t naive = 0;
      for (std::size_t i0 = 0; i0 < n; ++i0) {
        bool hit = true;
        for (unsigned j = 0; j < r; ++j) hit = hit && s[(i0 + pos[j]) % n] == q.values[j];
        naive += hit;
      }
      EXPECT_EQ(dist[code], naive);
      EXPECT_EQ(pattern_count(s, q), naive);
    }
    EXPECT_EQ(total, n);
  }
  EXPECT_THROW(pattern_count(Digits(4, 0), {{0, 0}, {2, 1}}), FieldError);
}

// Exhaustive Phi search for p = 2, degree <= 2, L <= 3; 0 when no such L.
std::size_t nl_exhaustive_binary(const Digits& s) {
  bool zero = true;
  for (auto v : s) zero = zero && v == 0;
  if (zero) return 0;
  for (std::size_t L = 1; L <= 3 && L < s.size(); ++L) {
    std::vector<std::vector<std::size_t>> mons{{}};
    for (std::size_t a = 0; a < L; ++a) mons.push_back({a});
    for (std::size_t a = 0; a < L; ++a)
      for (std::size_t b = a + 1; b < L; ++b) mons.push_back({a, b});
    for (std::uint32_t coef = 0; coef < (1u << mons.size()); ++coef) {
      bool ok = true;
      for (std::size_t i = 0; i + L < s.size() && ok; ++i) {
        std::uint32_t v = 0;
        for (std::size_t k = 0; k < mons.size(); ++k) {
          if (!((coef >> k) & 1u)) continue;
          std::uint32_t term = 1;
          for (auto idx : mons[k]) term &= s[i + idx];
          v ^= term;
        }
        ok = v == s[i + L];
      }
      if (ok) return L;
    }
  }
  return 0;
}

TEST(Nonlinear, Examples) {
  EXPECT_EQ(nonlinear_complexity(Digits(7, 0), 2, 2), 0u);
  EXPECT_EQ(nonlinear_complexity(Digits(7, 1), 2, 2), 1u);
  EXPECT_EQ(nonlinear_complexity(Digits(7, 4), 5, 1), 1u);
  Digits impulse(8, 0);
  impulse.back() = 1;
  EXPECT_EQ(nonlinear_complexity(impulse, 2, 2), 7u);
  // A single nonzero symbol: no equations at L = 1.
  EXPECT_EQ(nonlinear_complexity(Digits{1}, 2, 2), 1u);
  EXPECT_EQ(nonlinear_complexity(Digits{0, 1}, 2, 2), 1u);
  EXPECT_THROW(nonlinear_complexity(Digits(5, 1), 2, 0), FieldError);
}

TEST(Nonlinear, MatchesExhaustivePhiSearch) {
  Rng rng(10);
  for (std::size_t n = 2; n <= 10; ++n)
    for (int i = 0; i < 60; ++i) {
      const Digits s = random_digits(rng, n, 2);
      const std::size_t solver = nonlinear_complexity(s, 2, 2);
      const std::size_t naive = nl_exhaustive_binary(s);
      if (naive) {
        EXPECT_EQ(solver, naive);
      } else if (solver != 0) {
        EXPECT_GT(solver, 3u);
      }
    }
}

TEST(Nonlinear, MonotoneInDegreeAndLinearCase) {
  Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    const std::uint32_t p = i % 3 ? 2 : 3;
    const Digits s = random_digits(rng, 6 + uniform_below(rng, 20), p);
    const std::size_t n1 = nonlinear_complexity(s, p, 1), n2 = nonlinear_complexity(s, p, 2),
                      n3 = nonlinear_complexity(s, p, 3);
    EXPECT_GE(n1, n2);
    EXPECT_GE(n2, n3);
  }
}

TEST(Nonlinear, CapIsEnforced) {
  Rng rng(1);
  const Digits s = random_digits(rng, 200, 2);
  EXPECT_THROW(nonlinear_complexity(s, 2, 3, 50), CapExceeded);
}

TEST(ExpSum, IdentityAndConstant) {
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 4}, {3, 3}}) {
    RationalFunctionField R(GaloisField::build(p, e));
    const auto sx = exp_sum(R, RatFunction(Poly::x(R.field())));
    EXPECT_EQ(sx.places, R.F().size());
    EXPECT_NEAR(sx.magnitude, 0.0, 1e-9);
    const double bound = bounds::weil_bound(0, R.F().size(), {{1, 1}});
    EXPECT_EQ(bound, 0.0);
    const auto sc = exp_sum(R, RatFunction::constant(R.field(), R.F().one()));
    EXPECT_EQ(sc.places, R.F().size() + 1);
    EXPECT_NEAR(sc.magnitude, static_cast<double>(sc.places), 1e-9);
  }
}

TEST(ExpSum, RandomNondegenerateWithinWeil) {
  RationalFunctionField R(GaloisField::build(2, 3));
  const GaloisField& F = R.F();
  Rng rng(13);
  int tested = 0;
  while (tested < 150) {
    const unsigned dq = 1 + static_cast<unsigned>(uniform_below(rng, 3));
    const auto Q = R.random_place(dq, rng);
    const unsigned m = 1 + 2 * static_cast<unsigned>(uniform_below(rng, 2));  // odd
    std::vector<Elem> a(dq * m);
    for (auto& c : a) c = F.element(uniform_below(rng, F.size()));
    const RatFunction f(Poly(R.field(), a), ffseq::pow(Q.poly(), m));
    if (f.is_zero() || R.valuation(f, Q) != -static_cast<int>(m)) continue;
    const auto s = exp_sum(R, f);
    EXPECT_LE(s.magnitude, static_cast<double>(s.places) + 1e-9);
    EXPECT_LE(s.magnitude, bounds::weil_bound(0, F.size(), {{static_cast<int>(m), dq}}) + 1e-6) << f.to_string();
    ++tested;
  }
}

TEST(ExpSum, EllipticMatchesPointwiseSum) {
  auto E = elliptic::search_cyclic_curve(GaloisField::build(5, 1), 3);
  const GaloisField& F = E.F();
  const auto places = E.places_of_degree(2);
  for (std::size_t k = 0; k < places.size(); k += 3) {
    const auto basis = E.riemann_roch_basis({{places[k], 1}});
    for (const auto& f : basis) {
      if (f.is_constant()) continue;
      const auto s = exp_sum(E, f);
      std::complex<double> direct = 0;
      std::size_t count = 0;
      for (const auto& P : E.model().points()) {
        const auto v = E.evaluate(f, P);
        if (!v) continue;
        direct += std::polar(1.0, 2 * std::numbers::pi * F.trace_by_conjugates(*v) / 5.0);
        ++count;
      }
      EXPECT_EQ(s.places, count);
      EXPECT_NEAR(std::abs(s.value - direct), 0.0, 1e-9);
      EXPECT_LE(s.magnitude, bounds::weil_bound_unique_simple(5, 2) + 1e-6);
    }
  }
}

}  // namespace
}  // namespace ffseq::analysis

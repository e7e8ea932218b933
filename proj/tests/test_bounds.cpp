#include "ffseq/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ffseq/analysis.hpp"

namespace ffseq::bounds {
namespace {

BoundInputs make(std::uint64_t q, std::uint32_t p, unsigned h, int g, std::uint64_t n, unsigned d, int mstar) {
  BoundInputs in;
  in.q = q;
  in.p = p;
  in.h = h;
  in.g = g;
  in.n = n;
  in.d = d;
  in.mstar = mstar;
  return in;
}

TEST(Weil, Examples) {
  EXPECT_EQ(weil_bound(0, 16, {{1, 1}}), 0.0);
  for (unsigned d : {1u, 2u, 3u}) {
    EXPECT_NEAR(weil_bound(1, 64, {{1, d}}), 2.0 * d * 8, 1e-12);
    EXPECT_NEAR(weil_bound_unique_simple(64, static_cast<int>(d)), weil_bound(1, 64, {{1, d}}), 1e-12);
    EXPECT_NEAR(weil_bound(0, 9, {{1, d}, {1, d}}), (4.0 * d - 2) * 3, 1e-12);
  }
  // Degree-one poles: sum (m + 1) = #Supp + deg (f)_inf.
  EXPECT_NEAR(weil_bound_degree_one(0, 25, 2, 5), weil_bound(0, 25, {{2, 1}, {3, 1}}), 1e-12);
  EXPECT_NEAR(weil_bound_elliptic(25, 2, 5), weil_bound(1, 25, {{2, 1}, {3, 1}}), 1e-12);
  EXPECT_THROW(weil_bound(0, 4, {}), FieldError);
}

TEST(Period, Thresholds) {
  const auto r = make(128, 2, 7, 0, 127, 2, 1);
  EXPECT_NEAR(period_threshold(r), 6 * std::sqrt(128.0), 1e-12);
  EXPECT_TRUE(period_guaranteed(r));
  const auto e = make(64, 2, 6, 1, 65, 2, 1);
  EXPECT_NEAR(period_threshold(e), 64.0, 1e-12);
  EXPECT_TRUE(period_guaranteed(e));
  const auto small = make(5, 5, 1, 1, 9, 2, 1);
  EXPECT_NEAR(period_threshold(small), 8 * std::sqrt(5.0), 1e-12);
  EXPECT_FALSE(period_guaranteed(small));
}

TEST(LinearBounds, Examples) {
  EXPECT_NEAR(lc_bound_prime(make(127, 127, 1, 0, 126, 5, 1)), 121.0 / 6, 1e-12);
  EXPECT_EQ(lc_bound_prime(make(101, 101, 1, 1, 10, 5, 2)), 0.0);
  EXPECT_NEAR(lc_bound_general(make(128, 2, 7, 0, 127, 2, 1)), (127 + 2 * std::sqrt(128.0)) / (4 * std::sqrt(128.0)) - 1, 1e-12);
  EXPECT_NEAR(lc_bound_general(make(128, 2, 7, 0, 127, 2, 1)), 2.306, 1e-3);
  EXPECT_NEAR(lc_bound_general(make(64, 2, 6, 1, 65, 2, 1)), 33.0 / 32, 1e-12);
  EXPECT_NEAR(lc_bound_general(make(64, 2, 6, 1, 32, 2, 1)), 0.0, 1e-12);
  for (std::uint64_t n : {10u, 50u, 500u}) EXPECT_LT(lc_bound_prime(make(101, 101, 1, 1, n, 2, 1)), static_cast<double>(n));
}

TEST(LinearBounds, SpecialisationsAgree) {
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 7}, {3, 4}, {5, 3}, {2, 10}}) {
    const std::uint64_t q = checked_pow(p, e, UINT64_MAX);
    for (unsigned d = 2; d <= 5; ++d) {
      EXPECT_NEAR(lc_bound_general(make(q, p, e, 0, q - 1, d, 1)), lc_bound_rational(q, d), 1e-9);
      for (std::int64_t t : {-3, 0, 5}) {
        const auto in = make(q, p, e, 1, static_cast<std::uint64_t>(static_cast<std::int64_t>(q) + 1 + t), d, 1);
        EXPECT_NEAR(lc_bound_general(in), lc_bound_elliptic(q, t, 1, d), 1e-9);
      }
    }
  }
}

TEST(LinearBounds, Monotonicity) {
  for (std::uint64_t n = 10; n < 300; n += 7) {
    EXPECT_LT(lc_bound_general(make(64, 2, 6, 1, n, 2, 1)), lc_bound_general(make(64, 2, 6, 1, n + 1, 2, 1)));
    // Decreasing in d while the bound is positive.
    const double a = lc_bound_general(make(64, 2, 6, 1, n, 2, 1)), b = lc_bound_general(make(64, 2, 6, 1, n, 3, 1));
    if (a > -1) {
      EXPECT_GE(a, b);
    }
  }
}

TEST(Correlation, CaseSplit) {
  const CorrelationSide one{1, 2};
  const double q = 128;
  auto shifted = correlation_bound(0, 128, 127, 5, one, one, true, true);
  EXPECT_EQ(shifted.kind, CorrelationCase::Shifted);
  EXPECT_NEAR(*shifted.value, 6 * std::sqrt(q), 1e-12);
  auto distinct = correlation_bound(0, 128, 127, 0, one, one, false, false);
  EXPECT_EQ(distinct.kind, CorrelationCase::InPhaseDistinctPoles);
  EXPECT_NEAR(*distinct.value, 6 * std::sqrt(q), 1e-12);
  auto same = correlation_bound(0, 128, 127, 0, one, one, true, false);
  EXPECT_EQ(same.kind, CorrelationCase::InPhaseSamePole);
  EXPECT_NEAR(*same.value, (-2 + 2 * 2) * std::sqrt(q), 1e-12);
  auto excl = correlation_bound(0, 128, 127, 0, one, one, true, true);
  EXPECT_EQ(excl.kind, CorrelationCase::Excluded);
  EXPECT_FALSE(excl.value.has_value());
  EXPECT_NEAR(*correlation_bound(1, 64, 65, 3, one, one, false, false).value, 64.0, 1e-12);
  // Every (tau, pole, degeneracy) combination lands in exactly one case.
  for (std::uint64_t tau : {0u, 1u, 126u, 127u})
    for (bool sp : {false, true})
      for (bool dg : {false, true}) {
        const auto b = correlation_bound(0, 128, 127, tau, one, one, sp, dg);
        EXPECT_EQ(b.value.has_value(), b.kind != CorrelationCase::Excluded);
        if (tau % 127) {
          EXPECT_EQ(b.kind, CorrelationCase::Shifted);
        }
      }
}

TEST(Pattern, Examples) {
  auto in = make(64, 2, 6, 1, 65, 2, 1);
  in.r = 1;
  EXPECT_NEAR(pattern_bound(in), 16.0, 1e-12);
  in.r = 3;
  EXPECT_NEAR(pattern_bound(in), 48.0, 1e-12);
  auto r0 = make(128, 2, 7, 0, 127, 2, 1);
  r0.r = 1;
  // The genus-zero term is negative and kept as printed.
  EXPECT_NEAR(pattern_bound(r0), 0.0, 1e-12);
}

TEST(Nonlinear, Examples) {
  auto in = make(101, 101, 1, 1, 103, 2, 1);
  in.m = 2;
  EXPECT_NEAR(nlc_bound(in), 20.2, 1e-12);
  auto big = make(128, 2, 7, 0, 127, 2, 1);
  big.m = 2;
  EXPECT_LT(nlc_bound(big), 0.0);
  in.m = 1000000;
  EXPECT_GT(nlc_bound(in), 0.0);
  EXPECT_LT(nlc_bound(in), 1e-4);
}

TEST(Surd, ArithmeticAgainstDoubles) {
  Rng rng(3);
  for (std::uint64_t q : {2u, 5u, 8u, 27u, 128u, 64u, 9u}) {
    for (int i = 0; i < 50; ++i) {
      auto r = [&] { return Surd::Rat(static_cast<std::int64_t>(uniform_below(rng, 41)) - 20, 1 + static_cast<std::int64_t>(uniform_below(rng, 9))); };
      const Surd x(q, r(), r()), y(q, r(), r());
      EXPECT_NEAR((x + y).value(), x.value() + y.value(), 1e-9);
      EXPECT_NEAR((x * y).value(), x.value() * y.value(), 1e-9);
      if (y.sign() != 0) {
        EXPECT_NEAR((x / y).value(), x.value() / y.value(), 1e-7 * (1 + std::abs(x.value() / y.value())));
        EXPECT_EQ((x / y) * y, x);
      }
      const double v = x.value();
      EXPECT_EQ(x.sign(), v > 1e-12 ? 1 : (v < -1e-12 ? -1 : 0));
    }
  }
  // Perfect squares collapse to rationals.
  EXPECT_EQ(Surd::root(64), Surd(64, 8));
  EXPECT_EQ(Surd(2, 3, -2).sign(), 1);   // 3 - 2 sqrt 2 > 0
  EXPECT_EQ(Surd(2, -3, 2).sign(), -1);
}

TEST(Remarks, ReproducedExactly) {
  for (std::uint64_t q : {8u, 27u, 64u, 101u, 128u, 625u})
    for (unsigned d = 2; d <= 4; ++d)
      for (std::int64_t t : {-5, -1, 0, 1, 3}) {
        const auto r = comparison_remarks(q, d, t);
        ASSERT_EQ(r.lines.size(), 4u);
        EXPECT_TRUE(r.all_match());
        const double s = std::sqrt(static_cast<double>(q));
        EXPECT_NEAR(r.lines[0].computed.value(), 2 / (2 * d * s), 1e-12);
        EXPECT_EQ(r.lines[0].sign, 1);
        EXPECT_EQ(r.lines[1].computed, Surd(q, -6));
        EXPECT_EQ(r.lines[3].sign, -1);
        EXPECT_NEAR(r.lines[3].computed.value(), -2 * s - std::abs(static_cast<double>(t)), 1e-9);
        // L1 against the closed form in doubles.
        EXPECT_NEAR(r.L1.value(), lc_bound_rational(q, d), 1e-9);
        EXPECT_NEAR(r.L2.value(), lc_bound_elliptic(q, t, 1, d), 1e-9);
      }
  // L2 = L2' exactly when t = 2 sqrt q.
  EXPECT_EQ(comparison_remarks(64, 2, 16).lines[2].sign, 0);
}

TEST(Suspect, FormulasAsPrinted) {
  const auto in = make(128, 2, 7, 0, 127, 2, 1);
  const double s = std::sqrt(128.0);
  EXPECT_NEAR(corollary_deviation(in), (254 - (-4 + 129 * 4) * s) / (4 * s), 1e-9);
  EXPECT_LT(corollary_deviation(in), 0.0);
  EXPECT_NEAR(perfect_rational_rhs(128, 2, 10), (10 - (-2 + 24) * s) / (2 * s), 1e-9);
  EXPECT_NEAR(perfect_elliptic_rhs(64, 2, 10), (10 - 12 * 2 * 8.0) / 16, 1e-9);
}

std::shared_ptr<const rational::RationalFunctionField> rf(unsigned p, unsigned e) {
  return std::make_shared<const rational::RationalFunctionField>(GaloisField::build(p, e));
}

TEST(Verify, RationalFamilyAndRoundTrip) {
  const auto fam = seqgen::build_rational_family(rf(2, 6), {seqgen::Construction::Rational, 2, 1, seqgen::FamilyMode::Sample, 30, 4});
  VerifyOptions opts;
  opts.pairs = 20;
  opts.nl_m = 2;
  opts.nl_sequences = 3;
  const auto rep = verify_family(fam, opts);
  EXPECT_TRUE(rep.passed());
  for (const auto& c : rep.checks) EXPECT_EQ(c.pass, c.recompute()) << c.id;
  const auto j = rep.to_json();
  EXPECT_EQ(j["schema"], kReportSchema);
  const auto back = VerificationReport::from_json(nlohmann::ordered_json::parse(j.dump()));
  ASSERT_EQ(back.checks.size(), rep.checks.size());
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    EXPECT_EQ(back.checks[i].id, rep.checks[i].id);
    EXPECT_EQ(back.checks[i].measured, rep.checks[i].measured);
    EXPECT_EQ(back.checks[i].bound, rep.checks[i].bound);
    EXPECT_EQ(back.checks[i].flags, rep.checks[i].flags);
    EXPECT_EQ(back.checks[i].pass, back.checks[i].recompute());
  }
  EXPECT_EQ(back.to_json().dump(), j.dump());
  // NL_2 bound is vacuous for q = 64.
  for (const auto& c : rep.checks)
    if (c.kind == "nonlinear") {
      EXPECT_NE(std::find(c.flags.begin(), c.flags.end(), "vacuous"), c.flags.end());
    }
}

TEST(Verify, IdenticalPairIsExcluded) {
  auto fam = seqgen::build_rational_family(rf(2, 5), {seqgen::Construction::Rational, 2, 1, seqgen::FamilyMode::Sample, 1, 9});
  VerifyOptions opts;
  opts.pairs = 1;
  const auto rep = verify_family(fam, opts);
  bool seen = false;
  for (const auto& c : rep.checks)
    if (c.kind == "correlation-in-phase") {
      seen = true;
      EXPECT_FALSE(c.bound.has_value());
      EXPECT_FALSE(c.asserted());
      EXPECT_NEAR(c.measured, 31.0, 1e-9);
    }
  EXPECT_TRUE(seen);
}

TEST(Verify, CorruptedDigitFails) {
  auto fam = seqgen::build_rational_family(rf(2, 6), {seqgen::Construction::Rational, 2, 1, seqgen::FamilyMode::Sample, 5, 4});
  fam.members[2].seq.digits[10] ^= 1u;
  VerifyOptions opts;
  opts.pairs = 0;
  const auto rep = verify_family(fam, opts);
  EXPECT_FALSE(rep.passed());
  for (const auto& c : rep.checks)
    if (c.id == "s2/provenance") {
      EXPECT_EQ(c.measured, 1.0);
      EXPECT_FALSE(c.pass);
    }
}

TEST(Verify, EllipticFamilyWithPatterns) {
  auto E = std::make_shared<const elliptic::EllipticCurve>(elliptic::search_cyclic_curve(GaloisField::build(5, 1), 3));
  const auto fam = seqgen::build_elliptic_family(E, {seqgen::Construction::Elliptic, 2, 1, seqgen::FamilyMode::Exhaustive, 0, 0});
  VerifyOptions opts;
  opts.pairs = 30;
  opts.pattern_r = {1, 2};
  opts.pattern_sequences = 5;
  const auto rep = verify_family(fam, opts);
  ASSERT_TRUE(rep.curve.has_value());
  EXPECT_EQ(rep.params["t"], 3);
  EXPECT_TRUE(rep.passed());
  // q = 5 is below the period threshold, so period checks are recorded only.
  for (const auto& c : rep.checks)
    if (c.kind == "period") {
      EXPECT_FALSE(c.asserted());
    }
}

}  // namespace
}  // namespace ffseq::bounds

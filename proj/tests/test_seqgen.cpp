#include "ffseq/seqgen.hpp"

#include <gtest/gtest.h>

#include <set>

namespace ffseq::seqgen {
namespace {

using elliptic::ECFunction;
using elliptic::EcPoint;
using elliptic::EllipticCurve;
using elliptic::Weierstrass;
using rational::RatFunction;
using rational::RationalFunctionField;

std::shared_ptr<const RationalFunctionField> ratfield(unsigned p, unsigned e) {
  return std::make_shared<const RationalFunctionField>(GaloisField::build(p, e));
}

std::shared_ptr<const EllipticCurve> f5_curve() {
  return std::make_shared<const EllipticCurve>(elliptic::search_cyclic_curve(GaloisField::build(5, 1), 3));
}

// Trace as a sum of conjugates, independent of the packed trace table.
Digits naive_rational_digits(const RatFunction& z, const GaloisField& F) {
  Digits out;
  Elem a = F.one();
  for (std::uint64_t j = 0; j + 1 < F.size(); ++j) {
    out.push_back(F.trace_by_conjugates(F.div(z.num().eval(a), z.den().eval(a))));
    a = F.mul(a, F.primitive());
  }
  return out;
}

TEST(Orbit, RationalF4Places) {
  auto R = ratfield(2, 2);
  const auto o = OrbitSpec::rational(R);
  ASSERT_EQ(o.length(), 3u);
  const GaloisField& F = R->F();
  for (std::size_t j = 0; j < 3; ++j) {
    // P_j is the zero of eps^j x - 1.
    const Elem root = roots(o.rational_place(j).poly()).front();
    EXPECT_EQ(F.sub(F.mul(F.pow(F.primitive(), j), root), F.one()), F.zero());
    EXPECT_EQ(R->phi_apply(1, o.rational_place(j)), o.rational_place((j + 1) % 3));
  }
  EXPECT_FALSE(o.trivial());
  EXPECT_TRUE(OrbitSpec::rational(ratfield(2, 1)).trivial());
}

TEST(Orbit, EllipticWalkFromO) {
  auto E = f5_curve();
  const auto o = OrbitSpec::elliptic(E);
  ASSERT_EQ(o.length(), 9u);
  EXPECT_TRUE(o.points().front().is_infinity());
  std::set<EcPoint> seen(o.points().begin(), o.points().end());
  EXPECT_EQ(seen.size(), 9u);
  // Scalar-multiple oracle.
  for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(o.points()[j], E->model().mul(static_cast<std::int64_t>(j), *E->generator()));
  EXPECT_TRUE(E->model().add(o.points().back(), *E->generator()).is_infinity());
}

TEST(Orbit, RejectsCurveWithoutGenerator) {
  auto E = std::make_shared<const EllipticCurve>(GaloisField::build(5, 1), Weierstrass{Elem{0}, Elem{0}, Elem{0}, Elem{1}, Elem{1}});
  EXPECT_THROW(OrbitSpec::elliptic(E), SequenceError);
}

TEST(Generate, ConstantGivesTraceOfOne) {
  auto R = ratfield(2, 3);
  const auto o = OrbitSpec::rational(R);
  const auto s = generate_sequence(RatFunction::constant(R->field(), R->F().one()), o);
  ASSERT_EQ(s.digits.size(), 7u);
  for (auto v : s.digits) EXPECT_EQ(v, 1u);  // Tr(1) = 3 mod 2
  EXPECT_FALSE(s.prov.unique_pole);
  auto R3 = ratfield(3, 2);
  const auto s3 = generate_sequence(RatFunction::constant(R3->field(), R3->F().one()), OrbitSpec::rational(R3));
  for (auto v : s3.digits) EXPECT_EQ(v, 2u);
}

TEST(Generate, RejectsPoleOnOrbitAndZero) {
  auto R = ratfield(7, 1);
  const auto o = OrbitSpec::rational(R);
  const Poly xm1(R->field(), {R->F().neg(R->F().one()), R->F().one()});
  EXPECT_THROW(generate_sequence(RatFunction(Poly::constant(R->field(), R->F().one()), xm1), o), SequenceError);
  EXPECT_THROW(generate_sequence(RatFunction(Poly(R->field())), o), SequenceError);
}

TEST(Generate, RationalMatchesNaiveTrace) {
  for (auto [p, e, d] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{2, 3, 3}, {3, 2, 3}, {5, 1, 3}, {2, 4, 2}}) {
    auto R = ratfield(p, e);
    const auto o = OrbitSpec::rational(R);
    const auto fam = build_rational_family(R, {Construction::Rational, d, 1, FamilyMode::Sample, 30, 11});
    for (const auto& m : fam.members) {
      EXPECT_EQ(m.seq.digits, naive_rational_digits(*m.rz, R->F()));
      EXPECT_TRUE(m.seq.prov.unique_pole);
      EXPECT_EQ(m.seq.prov.pole_order, 1);
      EXPECT_EQ(m.seq.prov.reduced_order, 1);
      EXPECT_EQ(m.seq.prov.pole_degree, d);
      for (auto v : m.seq.digits) EXPECT_LT(v, p);
    }
  }
}

TEST(Generate, EllipticMatchesDirectFormula) {
  auto E = f5_curve();
  const auto o = OrbitSpec::elliptic(E);
  const auto fam = build_elliptic_family(E, {Construction::Elliptic, 2, 1, FamilyMode::Exhaustive, 0, 0});
  const GaloisField& F = E->F();
  for (const auto& m : fam.members) {
    const ECFunction& z = *m.ez;
    for (std::size_t j = 0; j < o.length(); ++j) {
      const EcPoint& P = o.points()[j];
      if (P.is_infinity()) continue;
      const Elem w = z.w().eval(P.x);
      ASSERT_NE(w.code, 0u);
      const Elem val = F.div(F.add(z.u().eval(P.x), F.mul(z.v().eval(P.x), P.y)), w);
      EXPECT_EQ(m.seq.digits[j], F.trace_by_conjugates(val));
    }
  }
}

TEST(Generate, RotationIsCyclicShift) {
  auto R = ratfield(3, 2);
  const auto o = OrbitSpec::rational(R);
  const auto fam = build_rational_family(R, {Construction::Rational, 3, 1, FamilyMode::Sample, 5, 3});
  for (std::size_t l : {1u, 4u, 7u}) {
    const auto rot = o.rotated(l);
    EXPECT_NE(rot.id(), o.id());
    for (const auto& m : fam.members) {
      const auto s = generate_sequence(*m.rz, rot).digits;
      for (std::size_t j = 0; j < s.size(); ++j) EXPECT_EQ(s[j], m.seq.digits[(j + l) % s.size()]);
    }
  }
  auto E = f5_curve();
  const auto eo = OrbitSpec::elliptic(E);
  const auto efam = build_elliptic_family(E, {Construction::Elliptic, 2, 1, FamilyMode::Sample, 4, 1});
  for (const auto& m : efam.members) {
    const auto s = generate_sequence(*m.ez, eo.rotated(2)).digits;
    for (std::size_t j = 0; j < s.size(); ++j) EXPECT_EQ(s[j], m.seq.digits[(j + 2) % s.size()]);
  }
}

TEST(Period, Examples) {
  EXPECT_EQ(least_period({0, 0, 0, 0}), 1u);
  EXPECT_EQ(least_period({0, 1, 0, 1}), 2u);
  EXPECT_EQ(least_period({0, 1, 1, 0, 1, 1}), 3u);
  EXPECT_EQ(least_period({0, 0, 1}), 3u);
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    Digits s(1 + uniform_below(rng, 24));
    const std::size_t k = 1 + uniform_below(rng, s.size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = j < k ? static_cast<std::uint32_t>(uniform_below(rng, 2)) : s[j - k];
    const std::size_t per = least_period(s);
    EXPECT_EQ(s.size() % per, 0u);
    // Naive oracle: the smallest shift under which the cyclic word is invariant.
    std::size_t naive = s.size();
    for (std::size_t t = 1; t < s.size() && naive == s.size(); ++t) {
      bool ok = true;
      for (std::size_t j = 0; j < s.size(); ++j) ok = ok && s[j] == s[(j + t) % s.size()];
      if (ok) naive = t;
    }
    EXPECT_EQ(per, naive);
  }
}

TEST(Family, RationalExhaustiveCount) {
  auto R = ratfield(5, 1);
  const auto fam = build_rational_family(R, {Construction::Rational, 3, 1, FamilyMode::Exhaustive, 0, 0});
  // I_5(3) = 40 places in orbits of 4; each L(Q) minus constants has 5^4 - 5 elements.
  EXPECT_EQ(fam.orbit_count, 10u);
  EXPECT_EQ(fam.rational_reps.size(), 10u);
  EXPECT_EQ(fam.members.size(), 10u * (625 - 5));
  std::set<std::string> zs;
  for (const auto& m : fam.members) zs.insert(m.seq.prov.z);
  EXPECT_EQ(zs.size(), fam.members.size());
}

TEST(Family, RationalPreconditions) {
  EXPECT_THROW(build_rational_family(ratfield(2, 2), {Construction::Rational, 3, 1, FamilyMode::Sample, 1, 0}), SequenceError);
  EXPECT_THROW(build_rational_family(ratfield(2, 3), {Construction::Rational, 1, 1, FamilyMode::Sample, 1, 0}), SequenceError);
}

TEST(Family, EllipticF5Exhaustive) {
  auto E = f5_curve();
  const auto fam = build_elliptic_family(E, {Construction::Elliptic, 2, 1, FamilyMode::Exhaustive, 0, 0});
  EXPECT_EQ(fam.orbit_count, 1u);
  ASSERT_EQ(fam.elliptic_reps.size(), 1u);
  EXPECT_EQ(fam.members.size(), 20u);
  for (const auto& m : fam.members) {
    EXPECT_EQ(E->valuation(*m.ez, fam.elliptic_reps[0]), -1);
    EXPECT_TRUE(m.seq.prov.unique_pole);
    EXPECT_EQ(m.seq.prov.pole_degree, 2u);
    EXPECT_EQ(9 % least_period(m.seq.digits), 0u);
  }
  EXPECT_THROW(build_elliptic_family(E, {Construction::Elliptic, 3, 1, FamilyMode::Sample, 1, 0}), FieldError);
}

TEST(Family, SampleIsDeterministic) {
  auto R = ratfield(2, 7);
  const FamilySpec spec{Construction::Rational, 2, 1, FamilyMode::Sample, 25, 7};
  const auto a = build_rational_family(R, spec), b = build_rational_family(R, spec);
  ASSERT_EQ(a.members.size(), 25u);
  for (std::size_t i = 0; i < 25; ++i) {
    EXPECT_EQ(a.members[i].seq.digits, b.members[i].seq.digits);
    EXPECT_EQ(a.members[i].seq.prov.z, b.members[i].seq.prov.z);
  }
  auto c = build_rational_family(R, {Construction::Rational, 2, 1, FamilyMode::Sample, 25, 8});
  bool differs = false;
  for (std::size_t i = 0; i < 25; ++i) differs = differs || c.members[i].seq.digits != a.members[i].seq.digits;
  EXPECT_TRUE(differs);
}

TEST(Family, FrozenRegressionVector) {
  // q = 8, d = 3, seed 1: first member frozen from a reference run.
  auto R = ratfield(2, 3);
  const auto fam = build_rational_family(R, {Construction::Rational, 3, 1, FamilyMode::Sample, 3, 1});
  const auto again = build_rational_family(R, {Construction::Rational, 3, 1, FamilyMode::Sample, 3, 1});
  EXPECT_EQ(fam.members[0].seq.digits, again.members[0].seq.digits);
  EXPECT_EQ(fam.members[0].seq.digits, (Digits{1, 0, 1, 0, 1, 1, 0}));
}

TEST(Family, GuaranteedRegimeHasFullPeriod) {
  // q = 64, d = 2: (-2 + 8) * 8 = 48 < 63.
  auto R = ratfield(2, 6);
  const auto fam = build_rational_family(R, {Construction::Rational, 2, 1, FamilyMode::Sample, 40, 2});
  for (const auto& m : fam.members) EXPECT_EQ(least_period(m.seq.digits), 63u);
  // Large prime field, degree 5.
  auto R127 = ratfield(127, 1);
  const auto big = build_rational_family(R127, {Construction::Rational, 5, 1, FamilyMode::Sample, 3, 5});
  EXPECT_EQ(big.orbit_count, count_irreducibles(127, 5) / 126);
  for (const auto& m : big.members) EXPECT_EQ(m.seq.prov.pole_degree, 5u);
}

}  // namespace
}  // namespace ffseq::seqgen

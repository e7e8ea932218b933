#include "ffseq/seqgen.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ffseq::seqgen {

using elliptic::ECFunction;
using elliptic::EcPlace;
using elliptic::EcPoint;
using rational::RatFunction;
using rational::RatPlace;

namespace {

// Exhaustive families beyond this many members are refused.
constexpr std::uint64_t kMaxExhaustive = 5'000'000;
// Rejection sampling gives up after this many draws per requested member.
constexpr int kMaxDraws = 1000;

Provenance base_provenance(const OrbitSpec& orbit) {
  Provenance pv;
  pv.p = orbit.field()->p();
  pv.e = orbit.field()->e();
  pv.kind = orbit.kind();
  pv.orbit = orbit.id();
  return pv;
}

}  // namespace

std::string to_string(Construction c) { return c == Construction::Rational ? "rational" : "elliptic"; }

OrbitSpec OrbitSpec::rational(std::shared_ptr<const rational::RationalFunctionField> R) {
  OrbitSpec o;
  o.kind_ = Construction::Rational;
  o.field_ = R->field();
  o.R_ = std::move(R);
  const GaloisField& F = *o.field_;
  o.length_ = F.size() - 1;
  std::set<std::uint32_t> seen;
  Elem a = F.one();
  for (std::size_t j = 0; j < o.length_; ++j) {
    o.eval_points_.push_back(a);
    seen.insert(a.code);
    a = F.mul(a, o.R_->epsilon());
  }
  if (seen.size() != o.length_ || !(a == F.one())) throw SequenceError("eps does not generate an orbit of length q-1");
  return o;
}

OrbitSpec OrbitSpec::elliptic(std::shared_ptr<const elliptic::EllipticCurve> E) {
  if (!E->generator()) throw SequenceError("curve group is not cyclic: no generator");
  OrbitSpec o;
  o.kind_ = Construction::Elliptic;
  o.field_ = E->field();
  o.E_ = std::move(E);
  o.length_ = o.E_->group_order();
  const EcPoint P = *o.E_->generator();
  std::set<EcPoint> seen;
  EcPoint cur = EcPoint::O();
  for (std::size_t j = 0; j < o.length_; ++j) {
    o.points_.push_back(cur);
    seen.insert(cur);
    cur = o.E_->model().add(cur, P);
  }
  if (seen.size() != o.length_ || !cur.is_infinity()) throw SequenceError("orbit points are not pairwise distinct");
  return o;
}

RatPlace OrbitSpec::rational_place(std::size_t j) const {
  if (kind_ != Construction::Rational) throw SequenceError("not a rational orbit");
  // Zero of eps^j x - 1 is eps^{-j}.
  const GaloisField& F = *field_;
  const Elem root = F.inv(eval_points_[j % length_]);
  return RatPlace::finite_unchecked(Poly(field_, {F.neg(root), F.one()}));
}

OrbitSpec OrbitSpec::rotated(std::size_t l) const {
  OrbitSpec o = *this;
  l %= length_;
  o.offset_ = (offset_ + l) % length_;
  std::rotate(o.eval_points_.begin(), o.eval_points_.begin() + static_cast<std::ptrdiff_t>(std::min(l, o.eval_points_.size())),
              o.eval_points_.end());
  std::rotate(o.points_.begin(), o.points_.begin() + static_cast<std::ptrdiff_t>(std::min(l, o.points_.size())),
              o.points_.end());
  return o;
}

std::string OrbitSpec::id() const {
  std::string s;
  if (kind_ == Construction::Rational) {
    s = "rational:eps=" + std::to_string(R_->epsilon().code);
  } else {
    s = "elliptic:P=" + E_->generator()->to_string();
  }
  if (offset_) s += ";start=" + std::to_string(offset_);
  return s;
}

Sequence generate_sequence(const RatFunction& z, const OrbitSpec& orbit) {
  if (orbit.kind() != Construction::Rational) throw SequenceError("rational function on a non-rational orbit");
  if (z.is_zero()) throw SequenceError("z = 0");
  const GaloisField& F = *orbit.field();
  Sequence s;
  s.digits.reserve(orbit.length());
  for (const Elem a : orbit.evaluation_points()) {
    const auto v = z.eval(a);
    if (!v) throw SequenceError("z has a pole on the orbit");
    s.digits.push_back(F.trace(*v));
  }
  s.prov = base_provenance(orbit);
  s.prov.z = z.to_string();
  const auto& R = orbit.ratfield();
  const auto poles = R.pole_divisor(z);
  s.prov.pole_degree = static_cast<unsigned>(rational::degree(poles));
  if (poles.size() == 1) {
    const auto& [Q, m] = *poles.begin();
    s.prov.unique_pole = true;
    s.prov.pole = Q.to_string();
    s.prov.pole_order = m;
    s.prov.reduced_order = R.reduced_pole_order(z, Q);
  }
  return s;
}

Sequence generate_sequence(const ECFunction& z, const OrbitSpec& orbit) {
  if (orbit.kind() != Construction::Elliptic) throw SequenceError("curve function on a non-elliptic orbit");
  if (z.is_zero()) throw SequenceError("z = 0");
  const auto& E = orbit.curve();
  const GaloisField& F = *orbit.field();
  Sequence s;
  s.digits.reserve(orbit.length());
  for (const EcPoint& P : orbit.points()) {
    const auto v = E.evaluate(z, P);
    if (!v) throw SequenceError("z has a pole on the orbit");
    s.digits.push_back(F.trace(*v));
  }
  s.prov = base_provenance(orbit);
  s.prov.z = z.to_string();
  const auto poles = E.pole_divisor(z);
  s.prov.pole_degree = static_cast<unsigned>(elliptic::degree(poles));
  if (poles.size() == 1) {
    const auto& [Q, m] = *poles.begin();
    s.prov.unique_pole = true;
    s.prov.pole = Q.to_string();
    s.prov.pole_order = m;
    // m* is only certified when the pole order is coprime to p; -1 marks unknown.
    s.prov.reduced_order = std::gcd<std::uint64_t>(static_cast<std::uint64_t>(m), F.p()) == 1 ? m : -1;
  }
  return s;
}

std::size_t least_period(const Digits& s) {
  const std::size_t n = s.size();
  if (n == 0) return 1;
  for (std::size_t k = 1; k < n; ++k) {
    if (n % k) continue;
    bool ok = true;
    for (std::size_t j = 0; j + k < n && ok; ++j) ok = s[j] == s[j + k];
    if (ok) return k;
  }
  return n;
}

// ---------------------------------------------------------------------------

namespace {

// z = c_0 + (sum_{i<d} c_{i+1} x^i) / f, digits of code in base q, c_0 least significant.
RatFunction rational_member(const GaloisField& F, const FieldPtr& field, const RatPlace& Q, std::uint64_t code) {
  const std::uint64_t q = F.size();
  const Elem c0 = F.element(static_cast<std::uint32_t>(code % q));
  code /= q;
  std::vector<Elem> a(static_cast<std::size_t>(Q.degree()));
  for (auto& c : a) {
    c = F.element(static_cast<std::uint32_t>(code % q));
    code /= q;
  }
  return RatFunction::constant(field, c0) + RatFunction(Poly(field, std::move(a)), Q.poly());
}

std::vector<Elem> digits_of(const GaloisField& F, std::uint64_t code, std::size_t len) {
  std::vector<Elem> c(len);
  for (auto& x : c) {
    x = F.element(static_cast<std::uint32_t>(code % F.size()));
    code /= F.size();
  }
  return c;
}

}  // namespace

Family build_rational_family(std::shared_ptr<const rational::RationalFunctionField> R, const FamilySpec& spec) {
  if (spec.kind != Construction::Rational) throw SequenceError("family spec is not rational");
  if (spec.d < 2) throw SequenceError("rational family requires d >= 2");
  const std::uint64_t q = R->field()->size();
  if (std::gcd<std::uint64_t>(spec.d, q - 1) != 1) throw SequenceError("gcd(d, q-1) != 1");
  const FieldPtr& field = R->field();
  const GaloisField& F = *field;
  Family fam{spec, OrbitSpec::rational(R), count_irreducibles(q, spec.d) / (q - 1), {}, {}, {}, {}};
  const std::uint64_t per_rep = checked_pow(q, spec.d + 1, UINT64_MAX) - q;

  auto emit = [&](std::size_t rep, std::uint64_t code) {
    const RatFunction z = rational_member(F, field, fam.rational_reps[rep], code);
    FamilyMember m{generate_sequence(z, fam.orbit), rep, z, std::nullopt};
    fam.members.push_back(std::move(m));
  };

  if (spec.mode == FamilyMode::Exhaustive) {
    if (fam.orbit_count > kMaxExhaustive / per_rep) throw SequenceError("exhaustive family too large");
    for (auto& orbit : R->orbit_decomposition(spec.d)) fam.rational_reps.push_back(orbit.front());
    for (std::size_t i = 0; i < fam.rational_reps.size(); ++i)
      for (std::uint64_t code = q; code < per_rep + q; ++code) emit(i, code);
  } else {
    Rng rng(spec.seed);
    std::map<RatPlace, std::size_t> index;
    for (std::uint64_t i = 0; i < spec.count; ++i) {
      const RatPlace Q = R->orbit_representative(R->random_place(spec.d, rng));
      auto [it, fresh] = index.try_emplace(Q, fam.rational_reps.size());
      if (fresh) fam.rational_reps.push_back(Q);
      // Codes below q are the constants.
      emit(it->second, q + uniform_below(rng, per_rep));
    }
  }
  for (const auto& Q : fam.rational_reps) fam.representatives.push_back(Q.to_string());
  return fam;
}

Family build_elliptic_family(std::shared_ptr<const elliptic::EllipticCurve> E, const FamilySpec& spec) {
  if (spec.kind != Construction::Elliptic) throw SequenceError("family spec is not elliptic");
  if (spec.k < 1) throw SequenceError("pole-order cap k must be positive");
  const auto& curve = *E;
  const std::uint64_t N = curve.group_order();
  if (std::gcd<std::uint64_t>(spec.d, N) != 1) throw SequenceError("gcd(d, N) != 1");
  OrbitSpec orbit = OrbitSpec::elliptic(E);
  const GaloisField& F = curve.F();
  const std::uint32_t p = F.p();
  Family fam{spec, orbit, curve.count_places_zeta(spec.d) / N, {}, {}, {}, {}};
  for (auto& o : curve.translation_orbits(spec.d, *curve.generator())) fam.elliptic_reps.push_back(o.front());
  for (const auto& Q : fam.elliptic_reps) fam.representatives.push_back(Q.to_string());

  std::map<std::size_t, elliptic::RiemannRochSpace> spaces;
  auto space = [&](std::size_t rep) -> const elliptic::RiemannRochSpace& {
    auto it = spaces.find(rep);
    if (it == spaces.end()) {
      elliptic::EcDivisor G{{fam.elliptic_reps[rep], static_cast<int>(spec.k)}};
      it = spaces.emplace(rep, curve.riemann_roch(G)).first;
    }
    return it->second;
  };
  // Keeps z only when Q is its unique pole with order coprime to p.
  auto try_emit = [&](std::size_t rep, const ECFunction& z) {
    if (z.is_zero() || z.is_constant()) return false;
    Sequence s = generate_sequence(z, fam.orbit);
    if (!s.prov.unique_pole || s.prov.pole != fam.representatives[rep]) return false;
    if (std::gcd<std::uint64_t>(static_cast<std::uint64_t>(s.prov.pole_order), p) != 1) return false;
    fam.members.push_back(FamilyMember{std::move(s), rep, std::nullopt, z});
    return true;
  };

  if (spec.mode == FamilyMode::Exhaustive) {
    for (std::size_t i = 0; i < fam.elliptic_reps.size(); ++i) {
      const auto& L = space(i);
      const std::uint64_t total = checked_pow(F.size(), static_cast<unsigned>(L.dimension()), kMaxExhaustive);
      if (total * fam.elliptic_reps.size() > kMaxExhaustive) throw SequenceError("exhaustive family too large");
      for (std::uint64_t code = 0; code < total; ++code) try_emit(i, L.combine(digits_of(F, code, L.dimension())));
    }
  } else {
    Rng rng(spec.seed);
    for (std::uint64_t i = 0; i < spec.count; ++i) {
      int draws = 0;
      for (;;) {
        if (++draws > kMaxDraws) throw SequenceError("no admissible function found in L(kQ)");
        const std::size_t rep = uniform_below(rng, fam.elliptic_reps.size());
        const auto& L = space(rep);
        std::vector<Elem> c(L.dimension());
        for (auto& x : c) x = F.element(static_cast<std::uint32_t>(uniform_below(rng, F.size())));
        if (try_emit(rep, L.combine(c))) break;
      }
    }
  }
  return fam;
}

}  // namespace ffseq::seqgen

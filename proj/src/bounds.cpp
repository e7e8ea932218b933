#include "ffseq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ffseq/analysis.hpp"

namespace ffseq::bounds {

namespace {

double rt(std::uint64_t q) { return std::sqrt(static_cast<double>(q)); }

std::int64_t isqrt_exact(std::uint64_t q) {
  auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(q))));
  while (s * s > static_cast<std::int64_t>(q)) --s;
  while ((s + 1) * (s + 1) <= static_cast<std::int64_t>(q)) ++s;
  return s * s == static_cast<std::int64_t>(q) ? s : -1;
}

// Sign via the numerator; mixed int/rational comparisons recurse in some Boost releases.
int sgn(const Surd::Rat& r) { return r.numerator() > 0 ? 1 : (r.numerator() < 0 ? -1 : 0); }

}  // namespace

double weil_bound(int g, std::uint64_t q, const std::vector<PoleTerm>& poles) {
  if (poles.empty()) throw FieldError("Weil bound needs at least one pole");
  double s = 2.0 * g - 2;
  for (const auto& u : poles) s += (u.reduced_order + 1.0) * u.degree;
  return s * rt(q);
}

double weil_bound_degree_one(int g, std::uint64_t q, std::size_t support, int pole_degree) {
  return (2.0 * g - 2 + static_cast<double>(support) + pole_degree) * rt(q);
}

double weil_bound_elliptic(std::uint64_t q, std::size_t support, int pole_degree) {
  return (static_cast<double>(support) + pole_degree) * rt(q);
}

double weil_bound_unique_simple(std::uint64_t q, int pole_degree) { return 2.0 * pole_degree * rt(q); }

double period_threshold(const BoundInputs& in) {
  return (2.0 * in.g - 2 + 2.0 * (in.mstar + 1) * in.d) * rt(in.q);
}

bool period_guaranteed(const BoundInputs& in) { return static_cast<double>(in.n) > period_threshold(in); }

double lc_bound_prime(const BoundInputs& in) {
  const double md = static_cast<double>(in.mstar) * in.d;
  return (static_cast<double>(in.n) - md) / (md + 1);
}

double lc_bound_general(const BoundInputs& in) {
  return (static_cast<double>(in.n) - (2.0 * in.g - 2) * rt(in.q)) / ((in.mstar + 1.0) * in.d * rt(in.q)) - 1;
}

double lc_bound(const BoundInputs& in) { return in.h == 1 ? lc_bound_prime(in) : lc_bound_general(in); }

double lc_bound_rational(std::uint64_t q, unsigned d) {
  return (static_cast<double>(q) - 1 - 2.0 * (d - 1.0) * rt(q)) / (2.0 * d * rt(q));
}

double lc_bound_elliptic(std::uint64_t q, std::int64_t t, int mstar, unsigned d) {
  const double den = (mstar + 1.0) * d * rt(q);
  return (static_cast<double>(q) + 1 + static_cast<double>(t) - den) / den;
}

double corollary_deviation(const BoundInputs& in) {
  const double k = (in.mstar + 1.0) * in.d;
  const double n = static_cast<double>(in.n);
  return (2 * n - (2 * (2.0 * in.g - 2) + (n + 2) * k) * rt(in.q)) / (k * rt(in.q));
}

double perfect_rational_rhs(std::uint64_t q, unsigned d, std::uint64_t t) {
  const double tt = static_cast<double>(t);
  return (tt - (-2 + (tt + 2) * d) * rt(q)) / (d * rt(q));
}

double perfect_elliptic_rhs(std::uint64_t q, unsigned d, std::uint64_t s) {
  const double ss = static_cast<double>(s);
  return (ss - (ss + 2) * d * rt(q)) / (d * rt(q));
}

std::string to_string(CorrelationCase c) {
  switch (c) {
    case CorrelationCase::Shifted: return "shifted";
    case CorrelationCase::InPhaseDistinctPoles: return "in-phase-distinct-poles";
    case CorrelationCase::InPhaseSamePole: return "in-phase-same-pole";
    case CorrelationCase::Excluded: return "excluded-by-theorem";
  }
  return "?";
}

CorrelationBound correlation_bound(int g, std::uint64_t q, std::uint64_t n, std::uint64_t tau,
                                   const CorrelationSide& z1, const CorrelationSide& z2, bool same_pole,
                                   bool degenerate_difference) {
  const double both = (2.0 * g - 2 + (z1.mstar + 1.0) * z1.d + (z2.mstar + 1.0) * z2.d) * rt(q);
  if (tau % n != 0) return {CorrelationCase::Shifted, both};
  if (!same_pole) return {CorrelationCase::InPhaseDistinctPoles, both};
  if (degenerate_difference) return {CorrelationCase::Excluded, std::nullopt};
  return {CorrelationCase::InPhaseSamePole, (2.0 * g - 2 + (z1.mstar + 1.0) * z1.d) * rt(q)};
}

double pattern_bound(const BoundInputs& in) {
  return (2.0 * in.g - 2) * rt(in.q) + in.d * static_cast<double>(in.r) * rt(in.q) * (in.mstar + 1.0) * (1 - 1.0 / in.p);
}

double nlc_bound(const BoundInputs& in) {
  const double k = static_cast<double>(checked_pow(in.p, in.h - 1, UINT64_MAX)) * in.mstar * in.d;
  return (static_cast<double>(in.n) - k) / (1 + in.m * k);
}

// ---------------------------------------------------------------------------

Surd::Surd(std::uint64_t q, Rat a, Rat b) : q_(q), a_(a), b_(b) {
  if (const auto s = isqrt_exact(q); s >= 0) {
    a_ += b_ * s;
    b_ = 0;
  }
}

double Surd::value() const {
  return boost::rational_cast<double>(a_) + boost::rational_cast<double>(b_) * rt(q_);
}

int Surd::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b sqrt q have opposite signs; the larger square wins.
  const Rat a2 = a_ * a_, b2q = b_ * b_ * static_cast<std::int64_t>(q_);
  if (a2 == b2q) return 0;
  return a2 > b2q ? sa : sb;
}

std::string Surd::to_string() const {
  std::ostringstream os;
  os << a_.numerator();
  if (a_.denominator() != 1) os << "/" << a_.denominator();
  if (b_.numerator() != 0) {
    os << (b_.numerator() > 0 ? " + " : " - ") << boost::abs(b_).numerator();
    if (b_.denominator() != 1) os << "/" << b_.denominator();
    os << "*sqrt(" << q_ << ")";
  }
  return os.str();
}

Surd operator+(const Surd& x, const Surd& y) { return Surd(x.q_, x.a_ + y.a_, x.b_ + y.b_); }
Surd operator-(const Surd& x, const Surd& y) { return Surd(x.q_, x.a_ - y.a_, x.b_ - y.b_); }

Surd operator*(const Surd& x, const Surd& y) {
  const auto q = static_cast<std::int64_t>(x.q_);
  return Surd(x.q_, x.a_ * y.a_ + x.b_ * y.b_ * q, x.a_ * y.b_ + x.b_ * y.a_);
}

Surd operator/(const Surd& x, const Surd& y) {
  const auto q = static_cast<std::int64_t>(x.q_);
  const Surd::Rat norm = y.a_ * y.a_ - y.b_ * y.b_ * q;
  if (norm.numerator() == 0) throw FieldError("division by zero in Q(sqrt q)");
  const Surd num = x * Surd(x.q_, y.a_, -y.b_);
  return Surd(x.q_, num.a_ / norm, num.b_ / norm);
}

bool ComparisonRemarks::all_match() const {
  return std::all_of(lines.begin(), lines.end(), [](const RemarkLine& l) { return l.matches; });
}

ComparisonRemarks comparison_remarks(std::uint64_t q, unsigned d, std::int64_t t) {
  using Rat = Surd::Rat;
  const Surd s = Surd::root(q);
  auto c = [q](std::int64_t v) { return Surd(q, Rat(v)); };
  const auto Q = static_cast<std::int64_t>(q);
  const auto D = static_cast<std::int64_t>(d);
  const Surd den = c(2 * D) * s;
  ComparisonRemarks r{
      (c(Q - 1) - c(2 * (D - 1)) * s) / den,
      (c(Q - 3) - c(2 * (D - 1)) * s) / den,
      c(2 * (2 * D - 1)) * s,
      c(2 * (2 * D - 1)) * s + c(6),
      (c(Q + 1 + t) - c(2 * D) * s) / den,
      (c(Q + 1 + 2 * t) - c(2 * (D + 1)) * s) / den,
      c(4 * D) * s,
      c(2 * (2 * D + 1)) * s + c(std::abs(t)),
      {}};
  auto line = [&](std::string name, const Surd& computed, const Surd& printed) {
    r.lines.push_back({std::move(name), computed, printed, computed == printed, computed.sign()});
  };
  line("L1-L1'", r.L1 - r.L1p, c(2) / den);
  line("C1-C1'", r.C1 - r.C1p, c(-6));
  line("L2-L2'", r.L2 - r.L2p, (c(-t) + c(2) * s) / den);
  line("C2-C2'", r.C2 - r.C2p, -(c(2) * s) - c(std::abs(t)));
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(Relation r) {
  switch (r) {
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
    case Relation::Equal: return "==";
  }
  return "?";
}

namespace {

const std::set<std::string> kRecordOnly{"suspect-formula", "excluded-by-theorem", "not-guaranteed",
                                        "hypothesis-not-met", "cap-exceeded", "informational"};

Relation relation_from(const std::string& s) {
  if (s == "<=") return Relation::AtMost;
  if (s == ">=") return Relation::AtLeast;
  if (s == "==") return Relation::Equal;
  throw FieldError("unknown relation: " + s);
}

std::optional<double> slack(const Check& c) {
  if (!c.bound) return std::nullopt;
  switch (c.relation) {
    case Relation::AtMost: return *c.bound - c.measured;
    case Relation::AtLeast: return c.measured - *c.bound;
    case Relation::Equal: return 0.0 - std::abs(c.measured - *c.bound);
  }
  return std::nullopt;
}

Check make_check(std::string id, std::string kind, double measured, std::optional<double> bound, Relation rel,
                 std::vector<std::string> flags = {}) {
  Check c{std::move(id), std::move(kind), measured, bound, rel, true, std::move(flags)};
  c.pass = c.recompute();
  return c;
}

std::vector<Aggregate> aggregate(const std::vector<Check>& checks) {
  std::vector<Aggregate> out;
  std::map<std::string, std::size_t> index;
  for (const auto& c : checks) {
    auto [it, fresh] = index.try_emplace(c.kind, out.size());
    if (fresh) out.push_back(Aggregate{c.kind, 0, 0, 0, std::nullopt, std::vector<std::size_t>(11, 0)});
    Aggregate& a = out[it->second];
    ++a.count;
    if (!c.asserted()) continue;
    ++a.asserted;
    a.failed += !c.pass;
    if (const auto s = slack(c)) a.min_slack = a.min_slack ? std::min(*a.min_slack, *s) : *s;
    if (c.relation == Relation::AtMost && c.bound && *c.bound > 0) {
      const double ratio = std::max(0.0, c.measured / *c.bound);
      ++a.tightness[std::min<std::size_t>(10, static_cast<std::size_t>(ratio * 10))];
    }
  }
  return out;
}

struct Member {
  const seqgen::FamilyMember& m;
  BoundInputs in;
  bool hypothesis;
};

// Nonzero function minus another, judged for the in-phase correlation case.
bool degenerate_difference(const seqgen::Family& fam, const seqgen::FamilyMember& a, const seqgen::FamilyMember& b) {
  if (fam.orbit.kind() == seqgen::Construction::Rational) {
    const auto diff = *a.rz - *b.rz;
    if (diff.is_zero() || diff.is_constant()) return true;
    return !fam.orbit.ratfield().is_nondegenerate(diff).nondegenerate;
  }
  const auto diff = *a.ez - *b.ez;
  if (diff.is_zero() || diff.is_constant()) return true;
  const int v = fam.orbit.curve().valuation(diff, fam.elliptic_reps[a.rep]);
  // Only a coprime pole order certifies non-degeneracy here.
  return v >= 0 || std::gcd<std::uint64_t>(static_cast<std::uint64_t>(-v), fam.orbit.field()->p()) != 1;
}

std::vector<std::size_t> sample_positions(Rng& rng, std::size_t n, unsigned r) {
  std::set<std::size_t> pos;
  while (pos.size() < r) pos.insert(uniform_below(rng, n));
  return {pos.begin(), pos.end()};
}

}  // namespace

bool Check::asserted() const {
  return std::none_of(flags.begin(), flags.end(), [](const std::string& f) { return kRecordOnly.count(f) > 0; });
}

bool Check::recompute() const {
  if (!bound) return true;
  switch (relation) {
    case Relation::AtMost: return measured <= *bound + kTolerance;
    case Relation::AtLeast: return measured >= *bound - kTolerance;
    case Relation::Equal: return std::abs(measured - *bound) <= kTolerance;
  }
  return false;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.asserted() || c.pass; });
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["params"] = params;
  if (curve) j["curve"] = *curve;
  auto& per = j["per_check"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["kind"] = c.kind;
    e["measured"] = c.measured;
    e["bound"] = c.bound ? nlohmann::ordered_json(*c.bound) : nlohmann::ordered_json(nullptr);
    e["relation"] = to_string(c.relation);
    e["pass"] = c.pass;
    e["flags"] = c.flags;
    per.push_back(std::move(e));
  }
  auto& agg = j["aggregates"] = nlohmann::ordered_json::array();
  for (const auto& a : aggregates) {
    nlohmann::ordered_json e;
    e["kind"] = a.kind;
    e["count"] = a.count;
    e["asserted"] = a.asserted;
    e["failed"] = a.failed;
    e["min_slack"] = a.min_slack ? nlohmann::ordered_json(*a.min_slack) : nlohmann::ordered_json(nullptr);
    e["tightness"] = a.tightness;
    agg.push_back(std::move(e));
  }
  j["all_pass"] = passed();
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::ordered_json& j) {
  if (j.at("schema").get<std::string>() != kReportSchema) throw FieldError("unknown report schema");
  VerificationReport r;
  r.params = j.at("params");
  if (j.contains("curve")) r.curve = j.at("curve").get<std::string>();
  for (const auto& e : j.at("per_check")) {
    Check c;
    c.id = e.at("id").get<std::string>();
    c.kind = e.at("kind").get<std::string>();
    c.measured = e.at("measured").get<double>();
    if (!e.at("bound").is_null()) c.bound = e.at("bound").get<double>();
    c.relation = relation_from(e.at("relation").get<std::string>());
    c.pass = e.at("pass").get<bool>();
    c.flags = e.at("flags").get<std::vector<std::string>>();
    r.checks.push_back(std::move(c));
  }
  for (const auto& e : j.at("aggregates")) {
    Aggregate a;
    a.kind = e.at("kind").get<std::string>();
    a.count = e.at("count").get<std::size_t>();
    a.asserted = e.at("asserted").get<std::size_t>();
    a.failed = e.at("failed").get<std::size_t>();
    if (!e.at("min_slack").is_null()) a.min_slack = e.at("min_slack").get<double>();
    a.tightness = e.at("tightness").get<std::vector<std::size_t>>();
    r.aggregates.push_back(std::move(a));
  }
  return r;
}

BoundInputs inputs_for(const seqgen::Family& fam, const seqgen::Sequence& s) {
  const GaloisField& F = *fam.orbit.field();
  BoundInputs in;
  in.q = F.size();
  in.p = F.p();
  in.h = F.e();
  in.n = fam.orbit.length();
  in.d = fam.spec.d;
  in.mstar = s.prov.reduced_order;
  if (fam.orbit.kind() == seqgen::Construction::Elliptic) {
    in.g = 1;
    // N = q + 1 + t.
    in.t = -fam.orbit.curve().frobenius_trace();
  }
  return in;
}

VerificationReport verify_family(const seqgen::Family& fam, const VerifyOptions& opts) {
  using seqgen::Construction;
  VerificationReport rep;
  const auto& orbit = fam.orbit;
  const GaloisField& F = *orbit.field();
  const std::uint32_t p = F.p();
  const std::uint64_t n = orbit.length();
  const bool elliptic = orbit.kind() == Construction::Elliptic;

  auto& P = rep.params;
  P["construction"] = seqgen::to_string(orbit.kind());
  P["p"] = p;
  P["e"] = F.e();
  P["q"] = F.size();
  P["d"] = fam.spec.d;
  if (elliptic) {
    P["k"] = fam.spec.k;
    P["t"] = -orbit.curve().frobenius_trace();
  }
  P["genus"] = elliptic ? 1 : 0;
  P["n"] = n;
  P["mode"] = fam.spec.mode == seqgen::FamilyMode::Exhaustive ? "exhaustive" : "sample";
  P["count"] = fam.spec.count;
  P["seed"] = fam.spec.seed;
  P["orbit"] = orbit.id();
  P["orbit_count"] = fam.orbit_count;
  P["representatives_used"] = fam.representatives.size();
  P["members"] = fam.members.size();
  P["checks"] = {{"provenance", opts.provenance}, {"period", opts.period}, {"lc", opts.lc},
                 {"suspect", opts.suspect},       {"pairs", opts.pairs},   {"pattern_r", opts.pattern_r},
                 {"pattern_sequences", opts.pattern_sequences}, {"pattern_tuples", opts.pattern_tuples},
                 {"nl_m", opts.nl_m}, {"nl_sequences", opts.nl_sequences}, {"verify_seed", opts.seed}};
  if (elliptic) rep.curve = orbit.curve().describe();

  std::vector<Member> members;
  members.reserve(fam.members.size());
  for (const auto& m : fam.members) {
    const BoundInputs in = inputs_for(fam, m.seq);
    members.push_back({m, in, m.seq.prov.unique_pole && in.mstar >= 1});
  }
  auto hyp = [](bool ok, std::vector<std::string> flags = {}) {
    if (!ok) flags.push_back("hypothesis-not-met");
    return flags;
  };

  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& [m, in, ok] = members[i];
    const auto& digits = m.seq.digits;
    const std::string id = "s" + std::to_string(i);
    if (opts.provenance) {
      double mismatches = static_cast<double>(n);
      try {
        const auto again = m.rz ? seqgen::generate_sequence(*m.rz, orbit) : seqgen::generate_sequence(*m.ez, orbit);
        mismatches = 0;
        for (std::size_t j = 0; j < n; ++j) mismatches += j >= digits.size() || again.digits[j] != digits[j];
      } catch (const FieldError&) {
      }
      rep.checks.push_back(make_check(id + "/provenance", "provenance", mismatches, 0.0, Relation::AtMost));
    }
    if (opts.period) {
      const double per = static_cast<double>(seqgen::least_period(digits));
      if (ok && period_guaranteed(in)) {
        rep.checks.push_back(make_check(id + "/period", "period", per, static_cast<double>(n), Relation::Equal));
      } else {
        rep.checks.push_back(make_check(id + "/period", "period", per, static_cast<double>(n), Relation::AtMost,
                                        hyp(ok, {"not-guaranteed"})));
      }
    }
    if (opts.lc || opts.suspect) {
      const double L = static_cast<double>(analysis::linear_complexity(digits, p));
      if (opts.lc) {
        const double b = lc_bound(in);
        rep.checks.push_back(
            make_check(id + "/lc", "lc", L, b, Relation::AtLeast, hyp(ok, b <= 0 ? std::vector<std::string>{"vacuous"} : std::vector<std::string>{})));
      }
      if (opts.suspect) {
        rep.checks.push_back(make_check(id + "/corollary", "corollary", std::abs(2 * L - static_cast<double>(n)),
                                        corollary_deviation(in), Relation::AtMost, {"suspect-formula"}));
        const auto prefix = analysis::lc_prefixes(digits, p);
        double worst = -INFINITY, dev = 0;
        for (std::size_t t = 1; t <= prefix.size(); ++t) {
          const double Lt = static_cast<double>(prefix[t - 1]), tt = static_cast<double>(t);
          const double rhs = elliptic ? perfect_elliptic_rhs(in.q, in.d, t) : perfect_rational_rhs(in.q, in.d, t);
          worst = std::max(worst, std::abs(2 * Lt - tt) - rhs);
          dev = std::max(dev, std::abs(Lt - tt));
        }
        rep.checks.push_back(make_check(id + "/perfectness", "perfectness", worst, 0.0, Relation::AtMost, {"suspect-formula"}));
        rep.checks.push_back(make_check(id + "/lc-deviation", "lc-deviation", dev, std::nullopt, Relation::AtMost, {"informational"}));
      }
    }
  }

  Rng rng(opts.seed);
  for (std::size_t k = 0; k < opts.pairs && !members.empty(); ++k) {
    const std::size_t i = uniform_below(rng, members.size()), j = uniform_below(rng, members.size());
    const auto& a = members[i];
    const auto& b = members[j];
    const std::string id = "pair" + std::to_string(k) + "(s" + std::to_string(i) + ",s" + std::to_string(j) + ")";
    const auto spectrum = analysis::correlation_spectrum(a.m.seq.digits, b.m.seq.digits, p);
    const bool ok = a.hypothesis && b.hypothesis;
    const CorrelationSide za{a.in.mstar, a.in.d}, zb{b.in.mstar, b.in.d};
    const int g = elliptic ? 1 : 0;
    if (n > 1) {
      double worst = 0;
      for (std::size_t tau = 1; tau < n; ++tau) worst = std::max(worst, spectrum[tau].magnitude);
      const auto cb = correlation_bound(g, F.size(), n, 1, za, zb, false, false);
      rep.checks.push_back(make_check(id + "/shifted", "correlation-shifted", worst, cb.value, Relation::AtMost, hyp(ok)));
    }
    const bool same_pole = a.m.rep == b.m.rep;
    const bool degenerate = same_pole && degenerate_difference(fam, a.m, b.m);
    const auto cb = correlation_bound(g, F.size(), n, 0, za, zb, same_pole, degenerate);
    std::vector<std::string> flags = hyp(ok);
    if (cb.kind == CorrelationCase::Excluded) flags.push_back("excluded-by-theorem");
    rep.checks.push_back(make_check(id + "/" + to_string(cb.kind), "correlation-in-phase", spectrum[0].magnitude, cb.value,
                                    Relation::AtMost, flags));
  }

  if (!opts.pattern_r.empty()) {
    Rng prng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = 0; i < std::min(opts.pattern_sequences, members.size()); ++i) {
      const auto& mem = members[i];
      for (unsigned r : opts.pattern_r) {
        if (r < 1 || r > n) continue;
        BoundInputs in = mem.in;
        in.r = r;
        const double expect = static_cast<double>(n) / std::pow(static_cast<double>(p), r);
        double worst = 0;
        for (std::size_t k = 0; k < opts.pattern_tuples; ++k) {
          const auto pos = sample_positions(prng, n, r);
          for (auto cnt : analysis::pattern_distribution(mem.m.seq.digits, pos, p))
            worst = std::max(worst, std::abs(static_cast<double>(cnt) - expect));
        }
        rep.checks.push_back(make_check("s" + std::to_string(i) + "/pattern-r" + std::to_string(r), "pattern", worst,
                                        pattern_bound(in), Relation::AtMost, hyp(mem.hypothesis)));
      }
    }
  }

  if (opts.nl_m > 0) {
    for (std::size_t i = 0; i < std::min(opts.nl_sequences, members.size()); ++i) {
      const auto& mem = members[i];
      BoundInputs in = mem.in;
      in.m = opts.nl_m;
      const double b = nlc_bound(in);
      std::vector<std::string> flags = hyp(mem.hypothesis);
      if (b <= 0) flags.push_back("vacuous");
      double measured = -1;
      try {
        measured = static_cast<double>(analysis::nonlinear_complexity(mem.m.seq.digits, p, opts.nl_m, opts.nl_cap));
      } catch (const analysis::CapExceeded&) {
        flags.push_back("cap-exceeded");
      }
      rep.checks.push_back(make_check("s" + std::to_string(i) + "/nl" + std::to_string(opts.nl_m), "nonlinear",
                                      measured, b, Relation::AtLeast, flags));
    }
  }

  rep.aggregates = aggregate(rep.checks);
  return rep;
}

}  // namespace ffseq::bounds

#include "ffseq/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ffseq/analysis.hpp"
#include "ffseq/bounds.hpp"
#include "ffseq/seqgen.hpp"

namespace ffseq::cli {

using nlohmann::ordered_json;
using seqgen::Construction;
using seqgen::Family;
using seqgen::FamilyMode;
using seqgen::FamilySpec;

nlohmann::ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["construction"] = construction;
  j["p"] = p;
  j["e"] = e;
  j["d"] = d;
  j["t"] = t;
  j["k"] = k;
  j["mode"] = mode;
  j["count"] = count;
  j["seed"] = seed;
  j["m"] = m;
  j["r"] = r;
  j["pairs"] = pairs;
  j["pattern_sequences"] = pattern_sequences;
  j["pattern_tuples"] = pattern_tuples;
  j["nl_sequences"] = nl_sequences;
  j["cap"] = cap;
  j["out"] = out;
  j["format"] = format;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::ordered_json& j) {
  RunConfig c;
  j.at("command").get_to(c.command);
  j.at("construction").get_to(c.construction);
  j.at("p").get_to(c.p);
  j.at("e").get_to(c.e);
  j.at("d").get_to(c.d);
  j.at("t").get_to(c.t);
  j.at("k").get_to(c.k);
  j.at("mode").get_to(c.mode);
  j.at("count").get_to(c.count);
  j.at("seed").get_to(c.seed);
  j.at("m").get_to(c.m);
  j.at("r").get_to(c.r);
  j.at("pairs").get_to(c.pairs);
  j.at("pattern_sequences").get_to(c.pattern_sequences);
  j.at("pattern_tuples").get_to(c.pattern_tuples);
  j.at("nl_sequences").get_to(c.nl_sequences);
  j.at("cap").get_to(c.cap);
  j.at("out").get_to(c.out);
  j.at("format").get_to(c.format);
  return c;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

class UsageError : public FieldError {
 public:
  using FieldError::FieldError;
};

std::string format_of(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
  return f;
}

// Writes through the --out file when one is named, else to the stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (cfg.out.empty()) {
    body(out);
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open --out file: " + cfg.out);
  body(f);
}

std::shared_ptr<const elliptic::EllipticCurve> curve_for(const RunConfig& cfg, const FieldPtr& F) {
  if (!elliptic::admissible_trace(cfg.p, cfg.e, cfg.t))
    throw UsageError("no cyclic curve with q+1+t points: t = " + std::to_string(cfg.t) + " is not admissible");
  return std::make_shared<const elliptic::EllipticCurve>(elliptic::search_cyclic_curve(F, cfg.t));
}

Family build_family(const RunConfig& cfg) {
  const FieldPtr F = GaloisField::build(cfg.p, cfg.e);
  FamilySpec spec;
  spec.d = cfg.d;
  spec.k = cfg.k;
  spec.mode = cfg.mode == "exhaustive" ? FamilyMode::Exhaustive : FamilyMode::Sample;
  spec.count = cfg.count;
  spec.seed = cfg.seed;
  if (cfg.construction == "rational") {
    spec.kind = Construction::Rational;
    return seqgen::build_rational_family(std::make_shared<const rational::RationalFunctionField>(F), spec);
  }
  spec.kind = Construction::Elliptic;
  return seqgen::build_elliptic_family(curve_for(cfg, F), spec);
}

std::string header_line(const RunConfig& cfg, const Family* fam) {
  std::ostringstream h;
  h << "# ffprng " << cfg.command << " construction=" << cfg.construction << " p=" << cfg.p << " e=" << cfg.e
    << " d=" << cfg.d;
  if (cfg.construction == "elliptic") h << " t=" << cfg.t;
  h << " k=" << cfg.k << " mode=" << cfg.mode << " count=" << cfg.count << " seed=" << cfg.seed;
  if (fam) h << " n=" << fam->orbit.length() << " orbit=" << fam->orbit.id() << " members=" << fam->members.size();
  return h.str();
}

const char* const kProvenanceColumns[] = {"construction", "p",             "e",           "orbit",
                                          "rep",          "representative", "z",          "pole",
                                          "pole_order",   "reduced_order",  "pole_degree", "unique_pole"};

std::vector<std::string> provenance_fields(const Family& fam, const seqgen::FamilyMember& m) {
  const auto& pv = m.seq.prov;
  return {seqgen::to_string(pv.kind),
          std::to_string(pv.p),
          std::to_string(pv.e),
          pv.orbit,
          std::to_string(m.rep),
          fam.representatives.at(m.rep),
          pv.z,
          pv.pole,
          std::to_string(pv.pole_order),
          std::to_string(pv.reduced_order),
          std::to_string(pv.pole_degree),
          pv.unique_pole ? "1" : "0"};
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << '\n';
}

}  // namespace

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  const std::string format = format_of(cfg, "csv");
  const Family fam = build_family(cfg);
  const std::size_t n = fam.orbit.length();
  emit(cfg, out, [&](std::ostream& os) {
    if (format == "json") {
      ordered_json j;
      j["schema"] = kSequenceSchema;
      j["params"] = cfg.to_json();
      if (fam.orbit.kind() == Construction::Elliptic) j["curve"] = fam.orbit.curve().describe();
      j["n"] = n;
      j["orbit"] = fam.orbit.id();
      auto& seqs = j["sequences"] = ordered_json::array();
      for (const auto& m : fam.members) {
        ordered_json s;
        const auto fields = provenance_fields(fam, m);
        for (std::size_t i = 0; i < fields.size(); ++i) s[kProvenanceColumns[i]] = fields[i];
        s["digits"] = m.seq.digits;
        seqs.push_back(std::move(s));
      }
      os << j.dump(2) << '\n';
      return;
    }
    os << header_line(cfg, &fam) << '\n';
    if (fam.orbit.kind() == Construction::Elliptic) os << "# curve: " << fam.orbit.curve().describe() << '\n';
    std::vector<std::string> head(std::begin(kProvenanceColumns), std::end(kProvenanceColumns));
    for (std::size_t j = 0; j < n; ++j) head.push_back("s" + std::to_string(j));
    write_row(os, head);
    for (const auto& m : fam.members) {
      auto row = provenance_fields(fam, m);
      for (auto v : m.seq.digits) row.push_back(std::to_string(v));
      write_row(os, row);
    }
  });
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::string format = format_of(cfg, "json");
  const Family fam = build_family(cfg);
  bounds::VerifyOptions opts;
  opts.pairs = cfg.pairs;
  opts.pattern_r = cfg.r;
  opts.pattern_sequences = cfg.pattern_sequences;
  opts.pattern_tuples = cfg.pattern_tuples;
  opts.nl_m = cfg.m;
  opts.nl_sequences = cfg.nl_sequences;
  opts.nl_cap = cfg.cap;
  opts.seed = cfg.seed;
  const auto rep = bounds::verify_family(fam, opts);
  emit(cfg, out, [&](std::ostream& os) {
    if (format == "json") {
      os << rep.to_json().dump(2) << '\n';
      return;
    }
    os << header_line(cfg, &fam) << '\n';
    if (rep.curve) os << "# curve: " << *rep.curve << '\n';
    write_row(os, {"id", "kind", "measured", "bound", "relation", "pass", "asserted", "flags"});
    for (const auto& c : rep.checks) {
      std::string flags;
      for (const auto& f : c.flags) flags += (flags.empty() ? "" : ";") + f;
      write_row(os, {c.id, c.kind, format_double(c.measured), c.bound ? format_double(*c.bound) : "",
                     bounds::to_string(c.relation), c.pass ? "1" : "0", c.asserted() ? "1" : "0", flags});
    }
  });
  return rep.passed() ? kExitPass : kExitFail;
}

namespace {

struct ExpSumRow {
  std::string f;
  std::string pole;
  int order = 0;
  unsigned degree = 0;
  analysis::ExpSum sum;
  double bound = 0;

  // 0/0 counts as tight.
  double ratio() const {
    if (bound > bounds::kTolerance) return sum.magnitude / bound;
    return sum.magnitude <= bounds::kTolerance ? 1.0 : std::numeric_limits<double>::infinity();
  }
  bool violates() const { return sum.magnitude > bound + bounds::kTolerance; }
};

std::vector<unsigned> coprime_orders(std::uint32_t p, unsigned k) {
  std::vector<unsigned> out;
  for (unsigned m = 1; m <= std::max(k, 1u); ++m)
    if (m % p != 0) out.push_back(m);
  return out;
}

std::vector<ExpSumRow> rational_expsums(const RunConfig& cfg, const FieldPtr& F) {
  const rational::RationalFunctionField R(F);
  const GaloisField& K = R.F();
  std::vector<ExpSumRow> rows;
  // f = x: simple pole at infinity, bound and sum both zero.
  const rational::RatFunction fx(Poly::x(F));
  rows.push_back({fx.to_string(), "inf", 1, 1, analysis::exp_sum(R, fx), bounds::weil_bound(0, K.size(), {{1, 1}})});
  Rng rng(cfg.seed);
  const auto orders = coprime_orders(cfg.p, cfg.k);
  while (rows.size() < cfg.count + 1) {
    const unsigned dq = 1 + static_cast<unsigned>(uniform_below(rng, std::max(cfg.d, 1u)));
    const auto Q = R.random_place(dq, rng);
    const unsigned m = orders[uniform_below(rng, orders.size())];
    std::vector<Elem> a(dq * m);
    for (auto& c : a) c = K.element(uniform_below(rng, K.size()));
    const rational::RatFunction f(Poly(F, a), ffseq::pow(Q.poly(), m));
    if (f.is_zero() || R.valuation(f, Q) != -static_cast<int>(m)) continue;
    rows.push_back({f.to_string(), Q.to_string(), static_cast<int>(m), dq, analysis::exp_sum(R, f),
                    bounds::weil_bound(0, K.size(), {{static_cast<int>(m), dq}})});
  }
  return rows;
}

std::vector<ExpSumRow> elliptic_expsums(const RunConfig& cfg, const FieldPtr& F) {
  const auto E = curve_for(cfg, F);
  const GaloisField& K = E->F();
  std::vector<ExpSumRow> rows;
  std::map<unsigned, std::vector<elliptic::EcPlace>> places;
  Rng rng(cfg.seed);
  const auto orders = coprime_orders(cfg.p, cfg.k);
  std::size_t draws = 0;
  while (rows.size() < cfg.count) {
    if (++draws > 100 * (cfg.count + 10)) throw FieldError("no admissible function found");
    unsigned dq = 1 + static_cast<unsigned>(uniform_below(rng, std::max(cfg.d, 1u)));
    auto& pl = places[dq];
    if (pl.empty()) pl = E->places_of_degree(dq);
    if (pl.empty()) continue;
    const auto& Q = pl[uniform_below(rng, pl.size())];
    const unsigned m = orders[uniform_below(rng, orders.size())];
    const auto space = E->riemann_roch({{Q, static_cast<int>(m)}});
    std::vector<Elem> c(space.dimension());
    for (auto& x : c) x = K.element(uniform_below(rng, K.size()));
    const auto f = space.combine(c);
    if (f.is_zero() || f.is_constant() || E->valuation(f, Q) != -static_cast<int>(m)) continue;
    rows.push_back({f.to_string(), Q.to_string(), static_cast<int>(m), dq, analysis::exp_sum(*E, f),
                    bounds::weil_bound(1, K.size(), {{static_cast<int>(m), dq}})});
  }
  return rows;
}

}  // namespace

int cmd_expsum(const RunConfig& cfg, std::ostream& out) {
  const std::string format = format_of(cfg, "csv");
  const FieldPtr F = GaloisField::build(cfg.p, cfg.e);
  const auto rows = cfg.construction == "rational" ? rational_expsums(cfg, F) : elliptic_expsums(cfg, F);
  std::size_t violations = 0;
  double worst = 0;
  for (const auto& r : rows) {
    violations += r.violates();
    worst = std::max(worst, r.ratio());
  }
  emit(cfg, out, [&](std::ostream& os) {
    if (format == "json") {
      ordered_json j;
      j["schema"] = "ffprng-expsum/1";
      j["params"] = cfg.to_json();
      auto& arr = j["samples"] = ordered_json::array();
      for (const auto& r : rows)
        arr.push_back({{"f", r.f}, {"pole", r.pole}, {"pole_order", r.order}, {"pole_degree", r.degree},
                       {"places", r.sum.places}, {"abs_sum", r.sum.magnitude}, {"bound", r.bound},
                       {"ratio", r.ratio()}});
      j["max_ratio"] = worst;
      j["violations"] = violations;
      os << j.dump(2) << '\n';
      return;
    }
    os << header_line(cfg, nullptr) << '\n';
    write_row(os, {"f", "pole", "pole_order", "pole_degree", "places", "abs_sum", "bound", "ratio"});
    for (const auto& r : rows)
      write_row(os, {r.f, r.pole, std::to_string(r.order), std::to_string(r.degree), std::to_string(r.sum.places),
                     format_double(r.sum.magnitude), format_double(r.bound), format_double(r.ratio())});
  });
  return violations == 0 ? kExitPass : kExitFail;
}

namespace {

void add_family_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("construction", cfg.construction, "rational or elliptic")
      ->check(CLI::IsMember({"rational", "elliptic"}));
  sub.add_option("--p", cfg.p, "characteristic")->required();
  sub.add_option("--e", cfg.e, "extension degree, q = p^e")->check(CLI::Range(1u, 64u));
  sub.add_option("--d", cfg.d, "pole degree")->check(CLI::Range(1u, 64u));
  sub.add_option("--t", cfg.t, "curve trace, #E = q + 1 + t");
  sub.add_option("--k", cfg.k, "pole-order cap")->check(CLI::Range(1u, 64u));
  sub.add_option("--seed", cfg.seed, "random seed");
  sub.add_option("--count", cfg.count, "number of samples");
  sub.add_option("--out", cfg.out, "output file (default stdout)");
  sub.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Trace sequences from function fields: generation, measurement and bound verification"};
  app.require_subcommand(1);
  auto* gen = app.add_subcommand("generate", "write a sequence family as CSV or JSON");
  auto* ver = app.add_subcommand("verify", "measure a family and check it against the bounds");
  auto* exs = app.add_subcommand("expsum", "exponential sums against the Weil bound");
  for (auto* sub : {gen, ver}) {
    add_family_options(*sub, cfg);
    sub->get_option("construction")->required();
    sub->add_option("--mode", cfg.mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
  }
  add_family_options(*exs, cfg);
  ver->add_option("--m", cfg.m, "nonlinear complexity degree (0 disables)");
  ver->add_option("--r", cfg.r, "pattern arities, e.g. --r 1 2")->check(CLI::Range(1u, 8u));
  ver->add_option("--pairs", cfg.pairs, "sampled correlation pairs");
  ver->add_option("--pattern-sequences", cfg.pattern_sequences, "sequences for pattern checks");
  ver->add_option("--pattern-tuples", cfg.pattern_tuples, "position tuples per sequence");
  ver->add_option("--nl-sequences", cfg.nl_sequences, "sequences for NL_m checks");
  ver->add_option("--cap", cfg.cap, "monomial cap for NL_m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (cfg.command == "generate") return cmd_generate(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    return cmd_expsum(cfg, out);
  } catch (const FieldError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ffseq::cli

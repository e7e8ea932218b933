#include "ffseq/analysis.hpp"

#include <numbers>

#include "ffseq/linalg.hpp"

namespace ffseq::analysis {

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  for (a %= p; e; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return r;
}

// Massey's algorithm; out[n] is the LC of the first n+1 terms.
std::vector<std::size_t> berlekamp_massey(const Digits& s, std::uint64_t p) {
  std::vector<std::uint64_t> C{1}, B{1};
  std::size_t L = 0, shift = 1;
  std::uint64_t b = 1;
  std::vector<std::size_t> out;
  out.reserve(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) {
    std::uint64_t d = s[n] % p;
    for (std::size_t i = 1; i <= L; ++i) d = (d + C[i] * s[n - i]) % p;
    if (d == 0) {
      ++shift;
    } else {
      const std::uint64_t coef = d * inv_mod(b, p) % p;
      std::vector<std::uint64_t> T = C;
      if (C.size() < B.size() + shift) C.resize(B.size() + shift, 0);
      for (std::size_t i = 0; i < B.size(); ++i) C[i + shift] = (C[i + shift] + p - coef * B[i] % p) % p;
      if (2 * L <= n) {
        L = n + 1 - L;
        B = std::move(T);
        b = d;
        shift = 1;
      } else {
        ++shift;
      }
    }
    out.push_back(L);
  }
  return out;
}

std::complex<double> omega_power(std::uint64_t a, std::uint32_t p) {
  const double th = 2 * std::numbers::pi * static_cast<double>(a) / p;
  return {std::cos(th), std::sin(th)};
}

// Number of exponent vectors in L variables, entries <= p-1, total <= m.
std::uint64_t monomial_count(std::size_t L, unsigned m, std::uint32_t p, std::uint64_t cap) {
  std::vector<std::uint64_t> ways(m + 1, 0);
  ways[0] = 1;
  const unsigned emax = std::min<unsigned>(m, p - 1);
  for (std::size_t v = 0; v < L; ++v) {
    std::vector<std::uint64_t> next(m + 1, 0);
    for (unsigned t = 0; t <= m; ++t)
      for (unsigned e = 0; e <= emax && e <= t; ++e) next[t] = std::min(cap + 1, next[t] + ways[t - e]);
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = std::min(cap + 1, total + w);
  return total;
}

void monomials(std::size_t L, unsigned m, unsigned emax, std::vector<unsigned>& cur,
               std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == L) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= std::min(m, emax); ++e) {
    cur.push_back(e);
    monomials(L, m - e, emax, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::size_t linear_complexity(const Digits& s, std::uint32_t p, LcMode mode) {
  if (s.empty()) return 0;
  if (mode == LcMode::Finite) return berlekamp_massey(s, p).back();
  // Two periods pin down any recurrence of length <= n.
  Digits twice(s);
  twice.insert(twice.end(), s.begin(), s.end());
  return berlekamp_massey(twice, p).back();
}

std::vector<std::size_t> lc_prefixes(const Digits& s, std::uint32_t p) { return berlekamp_massey(s, p); }

std::vector<std::size_t> lc_profile(const Digits& s, std::uint32_t p) {
  auto v = berlekamp_massey(s, p);
  if (!v.empty()) v.pop_back();
  return v;
}

bool d_perfect(const Digits& s, std::uint32_t p, std::size_t d) {
  const auto v = berlekamp_massey(s, p);
  for (std::size_t n = 1; n <= v.size(); ++n) {
    const std::size_t dev = v[n - 1] > n ? v[n - 1] - n : n - v[n - 1];
    if (dev > d) return false;
  }
  return true;
}

std::complex<double> character_sum(const std::vector<std::uint64_t>& counts) {
  const auto p = static_cast<std::uint32_t>(counts.size());
  if (p == 2) return {static_cast<double>(counts[0]) - static_cast<double>(counts[1]), 0.0};
  std::complex<double> c = 0;
  for (std::uint32_t a = 0; a < p; ++a) c += static_cast<double>(counts[a]) * omega_power(a, p);
  return c;
}

CorrelationValue periodic_correlation(const Digits& s1, const Digits& s2, std::size_t tau, std::uint32_t p) {
  if (s1.size() != s2.size()) throw FieldError("correlation of sequences with different periods");
  const std::size_t T = s1.size();
  CorrelationValue cv;
  cv.tau = tau;
  cv.counts.assign(p, 0);
  for (std::size_t i = 0; i < T; ++i) ++cv.counts[(s1[(i + tau) % T] + p - s2[i]) % p];
  cv.value = character_sum(cv.counts);
  cv.magnitude = std::abs(cv.value);
  return cv;
}

std::vector<CorrelationValue> correlation_spectrum(const Digits& s1, const Digits& s2, std::uint32_t p) {
  std::vector<CorrelationValue> out;
  out.reserve(s1.size());
  for (std::size_t tau = 0; tau < s1.size(); ++tau) out.push_back(periodic_correlation(s1, s2, tau, p));
  return out;
}

std::uint64_t pattern_count(const Digits& s, const PatternQuery& query) {
  const std::size_t n = s.size();
  if (query.values.size() != query.positions.size()) throw FieldError("pattern values and positions differ in length");
  for (std::size_t j = 0; j < query.positions.size(); ++j)
    if (query.positions[j] >= n || (j && query.positions[j] <= query.positions[j - 1]))
      throw FieldError("pattern positions must be strictly increasing and below the period");
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < query.positions.size() && hit; ++j) hit = s[(i + query.positions[j]) % n] == query.values[j];
    count += hit;
  }
  return count;
}

std::vector<std::uint64_t> pattern_distribution(const Digits& s, const std::vector<std::size_t>& positions,
                                                std::uint32_t p) {
  const std::size_t n = s.size();
  std::uint64_t cells = 1;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (positions[j] >= n || (j && positions[j] <= positions[j - 1]))
      throw FieldError("pattern positions must be strictly increasing and below the period");
    cells = checked_pow(p, static_cast<unsigned>(j + 1), std::uint64_t{1} << 26);
  }
  std::vector<std::uint64_t> out(cells, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t code = 0, scale = 1;
    for (std::size_t pos : positions) {
      code += scale * s[(i + pos) % n];
      scale *= p;
    }
    ++out[code];
  }
  return out;
}

std::size_t nonlinear_complexity(const Digits& s, std::uint32_t p, unsigned m, std::uint64_t cap) {
  if (m < 1) throw FieldError("nonlinear complexity needs m >= 1");
  const std::size_t N = s.size();
  bool zero = true;
  for (auto v : s) zero = zero && v == 0;
  if (zero) return 0;
  const auto K = GaloisField::build(p, 1);
  const unsigned emax = p - 1;
  for (std::size_t L = 1;; ++L) {
    // At most one equation remains, which a constant Phi satisfies.
    if (L + 1 >= N) return L;
    if (monomial_count(L, m, p, cap) > cap) throw CapExceeded("monomial count exceeds cap at L = " + std::to_string(L));
    std::vector<std::vector<unsigned>> mons;
    std::vector<unsigned> cur;
    monomials(L, m, emax, cur, mons);
    Matrix A;
    std::vector<Elem> b;
    for (std::size_t i = 0; i + L < N; ++i) {
      std::vector<Elem> row;
      row.reserve(mons.size());
      for (const auto& ex : mons) {
        Elem v = K->one();
        for (std::size_t k = 0; k < L; ++k)
          if (ex[k]) v = K->mul(v, K->pow(K->element(s[i + k]), ex[k]));
        row.push_back(v);
      }
      A.push_back(std::move(row));
      b.push_back(K->element(s[i + L]));
    }
    if (is_consistent(*K, std::move(A), b, mons.size())) return L;
  }
}

ExpSum exp_sum(const rational::RationalFunctionField& R, const rational::RatFunction& f) {
  if (f.is_zero()) throw FieldError("exponential sum of the zero function");
  const GaloisField& F = R.F();
  ExpSum out;
  out.counts.assign(F.p(), 0);
  auto add = [&](std::optional<Elem> v) {
    if (!v) return;
    ++out.counts[F.trace(*v)];
    ++out.places;
  };
  for (std::uint64_t c = 0; c < F.size(); ++c) add(f.eval(F.element(static_cast<std::uint32_t>(c))));
  add(f.eval_infinity());
  out.value = character_sum(out.counts);
  out.magnitude = std::abs(out.value);
  return out;
}

ExpSum exp_sum(const elliptic::EllipticCurve& E, const elliptic::ECFunction& f) {
  if (f.is_zero()) throw FieldError("exponential sum of the zero function");
  const GaloisField& F = E.F();
  ExpSum out;
  out.counts.assign(F.p(), 0);
  for (const auto& P : E.model().points()) {
    const auto v = E.evaluate(f, P);
    if (!v) continue;
    ++out.counts[F.trace(*v)];
    ++out.places;
  }
  out.value = character_sum(out.counts);
  out.magnitude = std::abs(out.value);
  return out;
}

}  // namespace ffseq::analysis

#include "tracelab/arithmeticity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace tracelab {

FieldDesc trace_field(const TraceSet& traces) {
  if (traces.entries.empty()) throw PreconditionError("trace_field needs a nonempty trace set");
  FieldDesc f;
  for (const auto& e : traces.entries)
    if (!e.exact.is_rational()) f = common_field(f, e.exact.field());
  return f;
}

// ---------------------------------------------------------------------------
// Integrality

namespace {

RingOfIntegers ring_for(const FieldDesc& f) {
  return f.is_rational() ? RingOfIntegers::integers() : ring_of_integers(f);
}

} // namespace

IntegralityViolation certify_non_integral(const QuadElem& t, unsigned word_length) {
  IntegralityViolation v;
  v.trace = t;
  v.word_length = word_length;
  RingOfIntegers ring = ring_for(t.field());
  QuadElem cur = t;
  for (int n = 0; n <= 3; ++n) {
    v.doubling_denominators.push_back(ring.integral_denominator(cur));
    cur = cur * cur - QuadElem(2);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < v.doubling_denominators.size(); ++i)
    if (v.doubling_denominators[i] < v.doubling_denominators[i - 1]) monotone = false;
  v.certified = monotone && v.doubling_denominators.back() > v.doubling_denominators.front();
  return v;
}

IntegralityResult integrality_check(const TraceSet& traces) {
  IntegralityResult out;
  for (const auto& e : traces.entries) {
    if (is_algebraic_integer(e.exact)) continue;
    out.integral = false;
    out.violations.push_back(certify_non_integral(e.exact, e.word_length));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugate growth

std::string to_string(ConjugateFlag f) {
  switch (f) {
  case ConjugateFlag::bounded_so_far:
    return "bounded_so_far";
  case ConjugateFlag::unbounded_trend:
    return "unbounded_trend";
  case ConjugateFlag::not_applicable:
    return "not_applicable";
  }
  return "unknown";
}

ConjugateGrowth conjugate_boundedness(const TraceSet& traces) {
  ConjugateGrowth out;
  FieldDesc f = traces.entries.empty() ? FieldDesc() : trace_field(traces);
  if (!f.is_real_quadratic()) {
    out.flag = ConjugateFlag::not_applicable;
    return out;
  }
  std::map<unsigned, std::pair<double, QuadElem>> shells;
  for (const auto& e : traces.entries) {
    double m = std::abs(embed(e.exact, true));
    auto it = shells.find(e.word_length);
    if (it == shells.end() || m > it->second.first) shells[e.word_length] = {m, e.exact};
  }
  std::vector<std::pair<unsigned, std::pair<double, QuadElem>>> seq(shells.begin(), shells.end());
  for (const auto& [shell, val] : seq) out.shell_max.emplace_back(shell, val.first);
  out.flag = ConjugateFlag::bounded_so_far;
  for (std::size_t i = 0; i + kTrendWindow < seq.size(); ++i) {
    bool ok = seq[i].second.first > 0;
    for (std::size_t j = i; ok && j < i + kTrendWindow; ++j) {
      ok = seq[j + 1].first == seq[j].first + 1 && seq[j + 1].second.first > seq[j].second.first;
    }
    if (!ok) continue;
    double ratio = std::pow(seq[i + kTrendWindow].second.first / seq[i].second.first, 1.0 / kTrendWindow);
    if (ratio >= kTrendRatio) {
      out.flag = ConjugateFlag::unbounded_trend;
      out.witness = seq[i + kTrendWindow].second.second;
      out.window_start = seq[i].first;
      out.window_ratio = ratio;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gamma^(2)

TraceSet gamma2_traces(const Ball& ball, bool reduced) {
  struct Square {
    Mat2 m;
    unsigned len;
  };
  std::vector<Square> squares;
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<std::pair<QuadElem, unsigned>> raw;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const Mat2& a = ball.elements[i].rep();
    Mat2 sq = a * a;
    QuadElem t = a.trace();
    if (sq.trace() != t * t - QuadElem(2)) throw Error("tr(A^2) != tr(A)^2 - 2 for " + a.to_string());
    ProjMat psq(sq);
    if (psq.is_identity()) {
      if (!reduced) raw.emplace_back(QuadElem(2), ball.word_length[i]);
      continue;
    }
    auto [it, inserted] = seen.emplace(psq.key(), squares.size());
    if (inserted) {
      squares.push_back({psq.rep(), ball.word_length[i]});
    } else if (ball.word_length[i] < squares[it->second].len) {
      squares[it->second].len = ball.word_length[i];
    }
  }
  std::stable_sort(squares.begin(), squares.end(), [](const Square& x, const Square& y) { return x.len < y.len; });
  for (const auto& s : squares) raw.emplace_back(s.m.trace(), s.len);

  const QuadElem two(2);
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const Mat2& x = squares[i].m;
    for (std::size_t j = i; j < squares.size(); ++j) {
      unsigned len = squares[i].len + squares[j].len;
      if (len > ball.radius) break; // sorted by length
      const Mat2& y = squares[j].m;
      QuadElem t = x.a() * y.a() + x.b() * y.c() + x.c() * y.b() + x.d() * y.d();
      if (reduced && (t == two || t == -two) && (x * y).is_identity() ) continue;
      if (reduced && (t == two || t == -two) && (-(x * y)).is_identity()) continue;
      raw.emplace_back(t, len);
    }
  }
  TraceSet out = make_trace_set(raw, ball.field, reduced, ball.radius);
  return out;
}

// ---------------------------------------------------------------------------
// Verdict

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::consistent_with_derived_from_quaternion_algebra:
    return "consistent_with_derived_from_quaternion_algebra";
  case Verdict::non_arithmetic_witness:
    return "non_arithmetic_witness";
  case Verdict::inconclusive:
    return "inconclusive";
  }
  return "unknown";
}

ArithmeticityReport takeuchi_verdict(const TraceSet& traces) {
  ArithmeticityReport r;
  r.radius = traces.radius;
  r.trace_source = "trace_set";
  r.trace_count = traces.size();
  r.elementary = std::all_of(traces.entries.begin(), traces.entries.end(),
                             [](const TraceEntry& e) { return e.exact == QuadElem(2); });
  if (traces.entries.empty()) {
    r.verdict = Verdict::inconclusive;
    r.witness_reason = "empty trace set";
    return r;
  }
  r.trace_field = trace_field(traces);
  IntegralityResult integ = integrality_check(traces);
  r.integral = integ.integral;
  r.violations = integ.violations;
  r.conjugate_growth = conjugate_boundedness(traces);

  if (r.elementary) {
    r.verdict = Verdict::inconclusive;
    r.witness_reason = "elementary group: every trace is 2";
    return r;
  }
  for (const auto& v : r.violations) {
    if (v.certified) {
      r.verdict = Verdict::non_arithmetic_witness;
      r.witness = v.trace;
      r.witness_reason = "non-integral trace with growing doubling denominators";
      return r;
    }
  }
  if (r.conjugate_growth.flag == ConjugateFlag::unbounded_trend) {
    r.verdict = Verdict::non_arithmetic_witness;
    r.witness = r.conjugate_growth.witness;
    r.witness_reason = "sustained growth of Galois-conjugate traces";
    return r;
  }
  if (r.integral) {
    r.verdict = Verdict::consistent_with_derived_from_quaternion_algebra;
    return r;
  }
  r.verdict = Verdict::inconclusive;
  r.witness_reason = "non-integral traces without a doubling certificate";
  return r;
}

ArithmeticityReport takeuchi_verdict(const Ball& ball, const std::string& group_name) {
  ArithmeticityReport r = takeuchi_verdict(gamma2_traces(ball, true));
  r.group = group_name;
  r.trace_source = "gamma2_ball";
  return r;
}

// ---------------------------------------------------------------------------
// Corollary

Poly2 Poly2::constant(std::int64_t c) {
  Poly2 p;
  p.terms_[{0, 0}] = c;
  p.normalize();
  return p;
}

Poly2 Poly2::var_a() {
  Poly2 p;
  p.terms_[{1, 0}] = 1;
  return p;
}

Poly2 Poly2::var_b() {
  Poly2 p;
  p.terms_[{0, 1}] = 1;
  return p;
}

void Poly2::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) it = it->second == 0 ? terms_.erase(it) : std::next(it);
}

Poly2 operator+(const Poly2& x, const Poly2& y) {
  Poly2 out = x;
  for (const auto& [e, c] : y.terms_) out.terms_[e] += c;
  out.normalize();
  return out;
}

Poly2 operator-(const Poly2& x, const Poly2& y) {
  Poly2 out = x;
  for (const auto& [e, c] : y.terms_) out.terms_[e] -= c;
  out.normalize();
  return out;
}

Poly2 operator*(const Poly2& x, const Poly2& y) {
  Poly2 out;
  for (const auto& [ex, cx] : x.terms_)
    for (const auto& [ey, cy] : y.terms_) out.terms_[{ex.first + ey.first, ex.second + ey.second}] += cx * cy;
  out.normalize();
  return out;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    std::string mono;
    if (e.first > 0) mono += e.first == 1 ? "a" : "a^" + std::to_string(e.first);
    if (e.second > 0) mono += std::string(mono.empty() ? "" : "*") + (e.second == 1 ? "b" : "b^" + std::to_string(e.second));
    std::int64_t mag = c < 0 ? -c : c;
    std::string term = mono.empty() ? std::to_string(mag) : (mag == 1 ? mono : std::to_string(mag) + "*" + mono);
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? "-" : "+") + term;
  }
  return out;
}

CorollaryIdentities corollary_identities() {
  CorollaryIdentities out;
  Poly2 a = Poly2::var_a(), b = Poly2::var_b(), two = Poly2::constant(2);
  Poly2 lhs = (a + b) * (a + b) - two + (a - b) * (a - b) - two - two * (a * a - two) - two * (b * b - two);
  out.four_lhs = lhs.to_string();
  out.four_identity = lhs == Poly2::constant(4);
  Poly2 four = Poly2::constant(4);
  out.two_identity = four * four - two - Poly2::constant(3) * four == two;
  return out;
}

SubtractionReport subtraction_closure_check(const TraceSet& traces, const Rational& window) {
  SubtractionReport out;
  out.window = window;
  out.identities = corollary_identities();
  out.has_two = traces.contains(QuadElem(2));
  out.has_four = traces.contains(QuadElem(4));

  struct Item {
    QuadElem x;
    std::complex<double> z;
  };
  std::vector<Item> folded;
  std::unordered_set<QuadElem> members;
  for (const auto& e : traces.entries) {
    for (const QuadElem& x : {e.exact, -e.exact}) {
      if (members.insert(x).second) folded.push_back({x, embed(x)});
    }
  }
  std::sort(folded.begin(), folded.end(), [](const Item& p, const Item& q) { return p.z.real() < q.z.real(); });
  const double w = window.to_double();
  const QuadElem wq{window};
  for (const auto& e : traces.entries) {
    const auto za = e.embedded;
    double tol = 1e-9 * std::max({1.0, std::abs(za), w});
    auto lo = std::lower_bound(folded.begin(), folded.end(), za.real() - w - tol,
                               [](const Item& p, double v) { return p.z.real() < v; });
    for (auto it = lo; it != folded.end() && it->z.real() <= za.real() + w + tol; ++it) {
      if (std::abs(za - it->z) > w + tol) continue;
      QuadElem diff = e.exact - it->x;
      if (compare_modulus(diff, wq) > 0) continue;
      ++out.pairs_checked;
      if (members.count(diff) == 0) {
        out.closed = false;
        ++out.violation_count;
        if (out.violations.size() < 20) out.violations.push_back({e.exact, it->x, diff});
      }
    }
  }
  return out;
}

} // namespace tracelab

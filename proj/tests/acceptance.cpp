// Acceptance runner: prints one PASS/FAIL line per criterion, preceded by its sub-checks.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "tracelab/arithmeticity.hpp"
#include "tracelab/trace_analytics.hpp"

using namespace tracelab;

namespace {

class Criterion {
public:
  Criterion(int id, std::string title, double limit_s) : id_(id), title_(std::move(title)), limit_(limit_s) {}

  void check(bool ok, const std::string& what) {
    std::cout << "  [" << (ok ? "ok" : "FAILED") << "] " << what << '\n';
    ok_ = ok_ && ok;
  }

  bool finish(double seconds) {
    if (limit_ > 0) check(seconds < limit_, "runtime " + fixed(seconds, 2) + " s < " + fixed(limit_, 0) + " s");
    std::cout << (ok_ ? "PASS" : "FAIL") << " criterion " << id_ << ": " << title_ << std::endl;
    return ok_;
  }

  static std::string fixed(double x, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << x;
    return os.str();
  }

  static std::string sci(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
  }

private:
  int id_;
  std::string title_;
  double limit_;
  bool ok_ = true;
};

QuadElem rand_quad(std::mt19937_64& rng, const FieldDesc& f, int num = 9, int den = 6) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  if (f.is_rational()) return QuadElem(Rational(n(rng), d(rng)));
  return QuadElem(Rational(n(rng), d(rng)), Rational(n(rng), d(rng)), f);
}

Mat2 rand_sl2(std::mt19937_64& rng, const FieldDesc& f) {
  Mat2 acc = Mat2::identity(f);
  for (int i = 0; i < 2; ++i) {
    acc = acc * Mat2::translation(rand_quad(rng, f, 4, 3)) *
          Mat2::make(QuadElem(1), QuadElem(0), rand_quad(rng, f, 4, 3), QuadElem(1));
  }
  return acc;
}

// Membership in Z[omega] from the coordinates x = r + s sqrt(d) alone.
bool in_lattice(const QuadElem& x) {
  Rational r = x.rational_part(), s = x.irrational_part();
  if (x.field().is_rational() || s.is_zero()) {
    if (x.field().is_rational() || ((x.field().d() % 4) + 4) % 4 != 1) return r.is_integer() && s.is_zero();
  }
  std::int64_t d = x.field().d();
  if (((d % 4) + 4) % 4 == 1) {
    Rational r2 = r * Rational(2), s2 = s * Rational(2);
    if (!r2.is_integer() || !s2.is_integer()) return false;
    return (r2.numerator() - s2.numerator()) % 2 == 0;
  }
  return r.is_integer() && s.is_integer();
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Criterion c(1, "exact-algebra suite, 1000 randomized checks per identity", 10);
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  const std::int64_t ds[] = {-1, -2, -3, -7, -11, 2, 3, 5, 13, -5};
  int f_norm = 0, f_trace = 0, f_int = 0, f_det = 0, f_sq = 0, f_rec = 0;
  for (int i = 0; i < 1000; ++i) {
    FieldDesc f(ds[i % 10]);
    QuadElem x = rand_quad(rng, f), y = rand_quad(rng, f);
    f_norm += field_norm(x * y) != field_norm(x) * field_norm(y);
    f_trace += field_trace(x + y) != field_trace(x) + field_trace(y);
    QuadElem z = rand_quad(rng, f, 20, 2);
    f_int += is_algebraic_integer(z) != in_lattice(z);
    Mat2 a = rand_sl2(rng, f), b = rand_sl2(rng, f);
    f_det += (a * b).det() != QuadElem(1);
    f_sq += (a * a).trace() != a.trace() * a.trace() - QuadElem(2);
    // tr(B^n) = tr(B) tr(B^(n-1)) - tr(B^(n-2)) for n = 2..8
    Mat2 prev = Mat2::identity(f), cur = a;
    bool rec_ok = true;
    for (int n = 2; n <= 8; ++n) {
      Mat2 next = cur * a;
      rec_ok = rec_ok && next.trace() == a.trace() * cur.trace() - prev.trace();
      prev = cur;
      cur = next;
    }
    f_rec += !rec_ok;
  }
  c.check(f_norm == 0, "norm multiplicativity: " + std::to_string(f_norm) + " failures / 1000");
  c.check(f_trace == 0, "trace additivity: " + std::to_string(f_trace) + " failures / 1000");
  c.check(f_int == 0, "integrality <=> lattice membership: " + std::to_string(f_int) + " failures / 1000");
  c.check(f_det == 0, "det-1 preservation: " + std::to_string(f_det) + " failures / 1000");
  c.check(f_sq == 0, "tr(A^2) = tr(A)^2 - 2: " + std::to_string(f_sq) + " failures / 1000");
  c.check(f_rec == 0, "power-trace recursion, n <= 8: " + std::to_string(f_rec) + " failures / 1000");
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

bool criterion2() {
  Criterion c(2, "A_n gadget on 50 random matrices over Q and Q(sqrt(-1))", 5);
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(77);
  int closed_fail = 0, power_fail = 0, shift_fail = 0, checked = 0;
  for (FieldDesc f : {FieldDesc(), FieldDesc(-1)}) {
    for (int i = 0; i < 50; ++i) {
      Mat2 a = rand_sl2(rng, f);
      QuadElem one(1), ea = a.a(), ec = a.c();
      std::array<QuadElem, 4> closed{one + ea * ec + ec * ec, one - ea * ec - ea * ea, ec * ec, one - ea * ec};
      Mat2 a1 = an_iteration(a, 1);
      closed_fail += !(a1.a() == closed[0] && a1.b() == closed[1] && a1.c() == closed[2] && a1.d() == closed[3]);
      QuadElem cp = ec;
      for (unsigned n = 1; n <= 5; ++n) {
        cp = cp * cp;
        Mat2 an = an_iteration(a, n);
        power_fail += !(an.c() == cp && an.trace() == QuadElem(2) + cp);
        for (int k = -5; k <= 5; ++k)
          shift_fail += parabolic_shift_trace(an, QuadElem(k)) != QuadElem(2) + QuadElem(k + 1) * cp;
        ++checked;
      }
    }
  }
  c.check(closed_fail == 0, "A_1 equals (1+ac+c^2, 1-ac-a^2; c^2, 1-ac): " + std::to_string(closed_fail) + " failures / 100");
  c.check(power_fail == 0, "lower-left c^(2^n) and trace 2+c^(2^n), n <= 5: " + std::to_string(power_fail) +
                               " failures / " + std::to_string(checked));
  c.check(shift_fail == 0, "shift trace 2+(k+1)c^(2^n), k in [-5,5]: " + std::to_string(shift_fail) + " failures / " +
                               std::to_string(checked * 11));
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

bool criterion3() {
  Criterion c(3, "counting checks for D_N, R_N and totient sums", 60);
  auto t0 = std::chrono::steady_clock::now();
  for (std::int64_t N : {10, 100, 1000}) {
    std::size_t n = dn_set(N).size();
    double bound = double(N) * std::log(double(N)) - double(N);
    c.check(double(n) >= bound, "#D_" + std::to_string(N) + " = " + std::to_string(n) + " >= N ln N - N = " +
                                    Criterion::fixed(bound, 2));
  }
  TwoToOneReport r = rn_two_to_one_check(400);
  c.check(r.passed(), "two-to-one check on R_400 (covers every N <= 400): max fiber " + std::to_string(r.max_fiber) +
                          ", " + std::to_string(r.swap_fibers) + " swap fibers, " +
                          std::to_string(r.counterexamples.size()) + " counterexamples");

  // #R_N for every N <= 400 from one enumeration: a tuple enters R_N once N >= r1 r3.
  auto r400 = rn_set(400);
  std::vector<std::uint64_t> entering(401, 0);
  for (const auto& t : r400) ++entering[t[0] * t[2]];
  std::uint64_t running = 0;
  int mismatches = 0;
  std::map<std::int64_t, double> density;
  for (std::int64_t N = 1; N <= 400; ++N) {
    running += entering[N];
    mismatches += running != rn_size_formula(N);
    density[N] = double(running) / double(N * N);
  }
  c.check(mismatches == 0, "#R_N equals the totient double sum for all N <= 400: " + std::to_string(mismatches) +
                               " mismatches");
  bool increasing = density[50] < density[100] && density[100] < density[200] && density[200] < density[400];
  c.check(increasing, "#R_N/N^2 at N = 50,100,200,400: " + Criterion::sci(density[50]) + ", " +
                          Criterion::sci(density[100]) + ", " + Criterion::sci(density[200]) + ", " +
                          Criterion::sci(density[400]));
  TotientReport t10 = totient_sum_check(10);
  c.check(t10.sum == 32, "sum of phi(n), n <= 10 = " + std::to_string(t10.sum));
  TotientReport t4 = totient_sum_check(10000);
  c.check(t4.ratio >= 0.9 && t4.ratio <= 1.1, "N = 10^4 ratio to 3N^2/pi^2 = " + Criterion::fixed(t4.ratio, 6));
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

bool criterion4() {
  Criterion c(4, "Delta_c witnesses and clustering of truncated Delta_c", 60);
  auto t0 = std::chrono::steady_clock::now();
  RingOfIntegers zz = RingOfIntegers::integers();
  RingOfIntegers zi = ring_of_integers(FieldDesc(-1));
  std::vector<std::pair<QuadElem, const RingOfIntegers*>> cases{
      {QuadElem(Rational(3, 2)), &zz},
      {QuadElem(Rational(5, 3)), &zz},
      {parse_quad("1/2+1/2*sqrt(-1)"), &zi},
      {QuadElem(3).in_field(FieldDesc(-1)) / parse_quad("1+sqrt(-1)"), &zi}};
  const mpf_class half("0.5", 128);
  for (const auto& [cv, ring] : cases)
    for (unsigned n = 2; n <= 4; ++n) {
      DeltaCWitness w = delta_c_cluster_witness(cv, *ring, n);
      std::set<std::string> keys;
      bool members = true, near = true, diam = true;
      mpf_class worst(0, 128);
      for (unsigned j = 0; j <= n; ++j) {
        keys.insert(w.z[j].to_string());
        members = members && delta_c_exponent(w.z[j], cv, *ring, w.k[j]).has_value();
        mpf_class dist(modulus_squared(w.z[j] - w.z[0]).to_mpq(), 128);
        dist = sqrt(dist);
        if (dist > worst) worst = dist;
        near = near && dist <= half;
        for (unsigned i = 0; i <= n; ++i) diam = diam && modulus_squared(w.z[i] - w.z[j]) <= Rational(1);
      }
      bool distinct = keys.size() == n + 1;
      mp_exp_t e;
      std::string digits = worst.get_str(e, 10, 30);
      c.check(w.ok() && distinct && members && near && diam,
              "c = " + cv.to_string() + ", n = " + std::to_string(n) + ": " + std::to_string(keys.size()) +
                  " distinct members, max |z_j - z_0| = 0." + digits + "e" + std::to_string(e));
    }
  auto d32 = delta_c_set(QuadElem(Rational(3, 2)), zz, 10000, 4);
  auto d2 = delta_c_set(QuadElem(2), zz, 10000, 4);
  ClusterGrid g32 = cluster_counts(d32), g2 = cluster_counts(d2);
  c.check(g32.max_count >= 5, "truncated Delta_{3/2} (n <= 4, |k| <= 10^4): max_count " +
                                  std::to_string(g32.max_count) + " (target >= 5)");
  c.check(g2.max_count <= 2, "truncated Delta_2 at the same bounds: max_count " + std::to_string(g2.max_count) +
                                 " (target <= 2)");
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

struct BallResult {
  Ball ball;
  bool fallback = false;
};

BallResult ball_with_fallback(const GroupSpec& spec, unsigned radius) {
  try {
    return {enumerate_ball(spec, radius), false};
  } catch (const BudgetExceeded& e) {
    return {e.partial(), true};
  }
}

// Traces of the ball of radius L, read off a larger ball via least word lengths.
std::vector<QuadElem> traces_up_to(const TraceSet& t, unsigned L) {
  std::vector<QuadElem> out;
  for (const auto& e : t.entries)
    if (e.word_length <= L) out.push_back(e.exact);
  return out;
}

bool criterion5() {
  Criterion c(5, "catalog verdicts at radius 10", 600);
  auto t0 = std::chrono::steady_clock::now();
  auto radius_note = [](const BallResult& b) {
    return "L = " + std::to_string(b.ball.radius) + (b.fallback ? " (budget fallback)" : "");
  };

  BallResult z = ball_with_fallback(catalog("psl2z"), 10);
  ArithmeticityReport zr = takeuchi_verdict(z.ball, "psl2z");
  c.check(z.ball.radius >= 6 && zr.integral && zr.trace_field.is_rational() &&
              zr.verdict == Verdict::consistent_with_derived_from_quaternion_algebra,
          "psl2z " + radius_note(z) + ": integral " + (zr.integral ? "yes" : "no") + ", trace field " +
              zr.trace_field.to_string() + ", " + to_string(zr.verdict));

  for (const char* name : {"bianchi(-1)", "bianchi(-3)"}) {
    BallResult b = ball_with_fallback(catalog(name), 10);
    ArithmeticityReport br = takeuchi_verdict(b.ball, name);
    c.check(b.ball.radius >= 6 && br.integral && br.trace_field.is_imaginary() &&
                br.verdict == Verdict::consistent_with_derived_from_quaternion_algebra,
            std::string(name) + " " + radius_note(b) + ": integral " + (br.integral ? "yes" : "no") +
                ", trace field " + br.trace_field.to_string() + " (not real), " + to_string(br.verdict));
    TraceSet t = trace_set(b.ball);
    std::vector<std::size_t> counts;
    std::string shells;
    for (unsigned L : {6u, 8u, 10u}) {
      if (L > b.ball.radius) continue;
      counts.push_back(cluster_counts(traces_up_to(t, L)).max_count);
      shells += " L=" + std::to_string(L) + ":" + std::to_string(counts.back());
    }
    bool flat = counts.size() >= 1;
    for (std::size_t i = 1; i < counts.size(); ++i) flat = flat && counts[i] <= counts[0];
    c.check(flat, std::string(name) + " cluster max_count across shells:" + shells);
  }

  BallResult h10 = ball_with_fallback(catalog("hecke(5)"), 10);
  ArithmeticityReport hr = takeuchi_verdict(h10.ball, "hecke(5)");
  c.check(hr.verdict == Verdict::non_arithmetic_witness && hr.conjugate_growth.flag == ConjugateFlag::unbounded_trend,
          "hecke(5) " + radius_note(h10) + ": " + to_string(hr.verdict) + " via " +
              to_string(hr.conjugate_growth.flag) +
              (hr.witness ? ", witness " + hr.witness->to_string() : std::string()));

  BallResult h12 = ball_with_fallback(catalog("hecke(5)"), 12);
  TraceSet ht = trace_set(h12.ball);
  std::vector<double> gaps;
  std::string gap_text;
  for (unsigned L : {4u, 8u, 12u}) {
    if (L > h12.ball.radius) continue;
    gaps.push_back(gap(traces_up_to(ht, L)).value);
    gap_text += " L=" + std::to_string(L) + ":" + Criterion::fixed(gaps.back(), 6);
  }
  bool decreasing = gaps.size() == 3 && gaps[0] > gaps[1] && gaps[1] > gaps[2];
  c.check(decreasing && gaps.back() < 0.1, "hecke(5) gap strictly decreasing, < 0.1 at L = 12:" + gap_text);
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

bool criterion6() {
  Criterion c(6, "Kronecker gap collapse for theta1 = sqrt 2, theta2 = 1", 1);
  auto t0 = std::chrono::steady_clock::now();
  const double r2 = std::sqrt(2.0);
  KroneckerReport r = kronecker_gap_demo({r2, 0}, {1, 0}, {0, 0}, 100);
  bool monotone = true;
  for (std::size_t i = 1; i < r.envelope.size(); ++i) monotone = monotone && r.envelope[i] <= r.envelope[i - 1];
  c.check(monotone, "envelope non-increasing over K' = 1..100");
  c.check(r.min_value < 0.01, "min at K = 100: " + Criterion::sci(r.min_value) + " < 0.01");
  // Convergents of [1; 2, 2, 2, ...] with numerator and denominator <= 100.
  std::int64_t p0 = 1, q0 = 0, p1 = 1, q1 = 1;
  double best = std::abs(r2 - 1.0);
  while (true) {
    std::int64_t p2 = 2 * p1 + p0, q2 = 2 * q1 + q0;
    if (std::max(p2, q2) > 100) break;
    best = std::min(best, std::abs(double(q2) * r2 - double(p2)));
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
  }
  c.check(std::abs(r.min_value - best) < 1e-12, "matches convergent " + std::to_string(p1) + "/" + std::to_string(q1) +
                                                    " value " + Criterion::sci(best) + " within 1e-12");
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

bool criterion7() {
  Criterion c(7, "subtraction-closure corollary", 5);
  auto t0 = std::chrono::steady_clock::now();
  CorollaryIdentities id = corollary_identities();
  Poly2 a = Poly2::var_a(), b = Poly2::var_b(), two = Poly2::constant(2);
  Poly2 lhs = (a + b) * (a + b) - two + (a - b) * (a - b) - two - two * (a * a - two) - two * (b * b - two);
  c.check(id.four_identity && lhs == Poly2::constant(4),
          "(a+b)^2-2+(a-b)^2-2-2(a^2-2)-2(b^2-2) expands to " + lhs.to_string());
  c.check(id.two_identity && 4 * 4 - 2 - 3 * 4 == 2, "4^2-2-3*4 = 2");
  SubtractionReport r = subtraction_closure_check(trace_set(enumerate_ball(catalog("psl2z"), 8)), Rational(5));
  c.check(r.closed, "psl2z L = 8 closed within W = 5: " + std::to_string(r.pairs_checked) + " pairs, " +
                        std::to_string(r.violation_count) + " violations");
  c.check(r.has_two && r.has_four, std::string("contains 2: ") + (r.has_two ? "yes" : "no") + ", contains 4: " +
                                       (r.has_four ? "yes" : "no"));
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  r.status = pclose(p);
  return r;
}

bool criterion8(const std::string& cli) {
  Criterion c(8, "CLI determinism", 0);
  if (cli.empty()) {
    c.check(false, "no CLI path given (--cli)");
    return c.finish(0);
  }
  std::vector<std::string> commands{
      "enumerate --group psl2z -L 6",
      "enumerate --group 'bianchi(-1)' -L 5",
      "traces --group 'hecke(5)' -L 6",
      "traces --group 'hecke(5)' -L 6 --format csv",
      "traces --group psl2z -L 4 --full --format data",
      "cluster --group 'bianchi(-3)' -L 6",
      "cluster --group 'bianchi(-3)' -L 6 --format csv",
      "gap --group 'hecke(5)' -L 8",
      "growth --group psl2z -L 8 --n-max 20",
      "arith-check --group 'hecke(5)' -L 8",
      "delta-c --c 3/2 --ring Z --witness 4",
      "delta-c --c '1/2+1/2*sqrt(-1)' --ring -1 --k-bound 3 --n-bound 2",
      "counting --N 100",
      "kronecker --theta1 'sqrt(2)' --theta2 1 --K 100",
      "corollary --group psl2z -L 8 -W 5",
  };
  for (const auto& name : catalog_names()) commands.push_back("arith-check --group '" + name + "' -L 4");
  for (const auto& args : commands) {
    RunResult first = run("'" + cli + "' " + args), second = run("'" + cli + "' " + args);
    bool ok = first.status == 0 && second.status == 0 && !first.out.empty() && first.out == second.out;
    c.check(ok, args + ": " + std::to_string(first.out.size()) + " bytes" +
                    (first.status != 0 ? ", exit status " + std::to_string(first.status) : std::string()));
  }
  return c.finish(0);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string cli;
  app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  app.add_option("--cli", cli, "path to the tracelab executable");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::function<bool()>> all{criterion1, criterion2, criterion3, criterion4,
                                         criterion5, criterion6, criterion7, [&] { return criterion8(cli); }};
  bool ok = true;
  for (int i = 1; i <= 8; ++i) {
    if (only != 0 && i != only) continue;
    try {
      ok = all[i - 1]() && ok;
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << i << ": unexpected error: " << e.what() << std::endl;
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

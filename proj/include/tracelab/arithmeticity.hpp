#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracelab/group_enum.hpp"

namespace tracelab {

/// Q when every trace is rational, else the common quadratic field.
FieldDesc trace_field(const TraceSet& traces);

struct IntegralityViolation {
  QuadElem trace;
  unsigned word_length = 0;
  /// Least integral denominators of t, t^2 - 2, (t^2 - 2)^2 - 2, ... (n = 0..3).
  std::vector<mpz_class> doubling_denominators;
  /// Denominators never shrink and strictly grow overall.
  bool certified = false;
};

/// Doubling certificate for a single trace.
IntegralityViolation certify_non_integral(const QuadElem& t, unsigned word_length = 0);

struct IntegralityResult {
  bool integral = true;
  std::vector<IntegralityViolation> violations;
};

IntegralityResult integrality_check(const TraceSet& traces);

enum class ConjugateFlag { bounded_so_far, unbounded_trend, not_applicable };
std::string to_string(ConjugateFlag f);

struct ConjugateGrowth {
  /// (shell, max |conjugate embedding| over traces first seen in that shell)
  std::vector<std::pair<unsigned, double>> shell_max;
  ConjugateFlag flag = ConjugateFlag::not_applicable;
  std::optional<QuadElem> witness;
  /// First shell of the window that triggered the trend, and its per-shell geometric mean ratio.
  unsigned window_start = 0;
  double window_ratio = 0;
};

inline constexpr double kTrendRatio = 1.5;
inline constexpr unsigned kTrendWindow = 4;

/// Shells are the word lengths recorded in the trace set. The trend fires when some run of
/// kTrendWindow consecutive shell transitions is strictly increasing with geometric mean
/// ratio >= kTrendRatio.
ConjugateGrowth conjugate_boundedness(const TraceSet& traces);

/// Traces of squares A^2 (shell l(A)) and of products A^2 B^2 with l(A) + l(B) <= radius
/// (shell l(A) + l(B)). Checks tr(A^2) = tr(A)^2 - 2 for every element.
TraceSet gamma2_traces(const Ball& ball, bool reduced = true);

enum class Verdict { consistent_with_derived_from_quaternion_algebra, non_arithmetic_witness, inconclusive };
std::string to_string(Verdict v);

struct ArithmeticityReport {
  std::string group;
  unsigned radius = 0;
  std::string trace_source = "gamma2_ball";
  std::size_t trace_count = 0;
  FieldDesc trace_field;
  bool integral = true;
  std::vector<IntegralityViolation> violations;
  ConjugateGrowth conjugate_growth;
  bool elementary = false;
  Verdict verdict = Verdict::inconclusive;
  std::optional<QuadElem> witness;
  std::string witness_reason;
};

ArithmeticityReport takeuchi_verdict(const TraceSet& traces);
/// Verdict on the Gamma^(2) approximation of the ball.
ArithmeticityReport takeuchi_verdict(const Ball& ball, const std::string& group_name = "");

/// Integer polynomial in two variables, used for the corollary identities.
class Poly2 {
public:
  Poly2() = default;
  static Poly2 constant(std::int64_t c);
  static Poly2 var_a();
  static Poly2 var_b();

  friend Poly2 operator+(const Poly2& x, const Poly2& y);
  friend Poly2 operator-(const Poly2& x, const Poly2& y);
  friend Poly2 operator*(const Poly2& x, const Poly2& y);
  friend bool operator==(const Poly2& x, const Poly2& y) { return x.terms_ == y.terms_; }
  std::string to_string() const;

private:
  void normalize();
  std::map<std::pair<unsigned, unsigned>, std::int64_t> terms_;
};

struct CorollaryIdentities {
  bool four_identity = false; // (a+b)^2-2 + (a-b)^2-2 - 2(a^2-2) - 2(b^2-2) == 4
  bool two_identity = false;  // 4^2 - 2 - 3*4 == 2
  std::string four_lhs;
};

CorollaryIdentities corollary_identities();

struct SubtractionViolation {
  QuadElem a, b, difference;
};

struct SubtractionReport {
  Rational window;
  std::size_t pairs_checked = 0;
  bool closed = true;
  std::size_t violation_count = 0;
  std::vector<SubtractionViolation> violations; // first few
  bool has_two = false;
  bool has_four = false;
  CorollaryIdentities identities;
};

/// With F = T u (-T): for a in T, b in F, |a - b| <= W, requires a - b in F.
SubtractionReport subtraction_closure_check(const TraceSet& traces, const Rational& window);

} // namespace tracelab

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "tracelab/rational.hpp"

namespace tracelab {

/// Either Q or a quadratic field Q(sqrt(d)) with d squarefree, d != 0, 1.
class FieldDesc {
public:
  /// The rational field.
  FieldDesc() = default;
  static FieldDesc rationals() { return FieldDesc(); }
  /// Throws PreconditionError unless d is squarefree and not 0 or 1.
  explicit FieldDesc(std::int64_t d);

  bool is_rational() const { return d_ == 1; }
  bool is_imaginary() const { return d_ < 0; }
  bool is_real_quadratic() const { return d_ > 1; }
  /// The generator d; 1 for Q.
  std::int64_t d() const { return d_; }
  std::string to_string() const;

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;

private:
  std::int64_t d_ = 1;
};

bool is_squarefree(std::int64_t n);

/// The field containing both operands; throws FieldMismatch for two different quadratic fields.
FieldDesc common_field(const FieldDesc& x, const FieldDesc& y);

/// Exact element a + b*sqrt(d) of a quadratic field (b = 0 over Q).
class QuadElem {
public:
  QuadElem() = default;
  QuadElem(Rational a); // NOLINT(google-explicit-constructor)
  QuadElem(std::int64_t a) : QuadElem(Rational(a)) {} // NOLINT(google-explicit-constructor)
  QuadElem(Rational a, Rational b, FieldDesc field);

  /// sqrt(d) itself.
  static QuadElem sqrt_of(std::int64_t d);

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  const FieldDesc& field() const { return field_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// Same value viewed in a (possibly larger) field; throws FieldMismatch if impossible.
  QuadElem in_field(const FieldDesc& f) const;

  QuadElem conjugate() const { return QuadElem(a_, -b_, field_, Unchecked{}); }
  QuadElem operator-() const { return QuadElem(-a_, -b_, field_, Unchecked{}); }
  QuadElem inverse() const;
  QuadElem pow(unsigned e) const;

  friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
  QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
  QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
  QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }

  /// Value equality; a rational value equals itself in any field.
  friend bool operator==(const QuadElem& x, const QuadElem& y);

  std::string to_string() const;
  std::size_t hash() const;

private:
  struct Unchecked {};
  QuadElem(Rational a, Rational b, FieldDesc field, Unchecked)
      : a_(std::move(a)), b_(std::move(b)), field_(field) {}

  Rational a_;
  Rational b_;
  FieldDesc field_;
};

std::ostream& operator<<(std::ostream& os, const QuadElem& x);

/// Parses the text format "p/q", "p/q+r/s*sqrt(d)", "sqrt(d)", "-3*sqrt(-1)", ...
/// The result lives in `hint` when the text carries no sqrt term.
QuadElem parse_quad(std::string_view text, FieldDesc hint = {});

// Norm, trace and integrality.

Rational field_norm(const QuadElem& x);
Rational field_trace(const QuadElem& x);
bool is_algebraic_integer(const QuadElem& x);

/// Exact sign of the real part of the complex embedding.
int real_sign(const QuadElem& x);
/// Exact sign of the imaginary part of the complex embedding (0 unless d < 0).
int imag_sign(const QuadElem& x);
/// Exact comparison of |x| and |y| under the identity embedding.
std::strong_ordering compare_modulus(const QuadElem& x, const QuadElem& y);
/// Exact |x|^2 when the field is Q or imaginary quadratic.
Rational modulus_squared(const QuadElem& x);
/// Largest integer m with m <= Re(x), exactly.
mpz_class floor_real(const QuadElem& x);
/// Largest integer n with n <= Im(x), exactly.
mpz_class floor_imag(const QuadElem& x);

/// Galois embeddings a + b*sqrt(d) (or a - b*sqrt(d)) into C.
std::complex<double> embed(const QuadElem& x, bool conjugate = false);
/// |embed(x)| at `bits` of working precision.
mpf_class modulus_mpf(const QuadElem& x, unsigned bits = 256);

/// Z (over Q) or the maximal order Z[omega] of a quadratic field.
class RingOfIntegers {
public:
  /// The rational integers.
  static RingOfIntegers integers() { return RingOfIntegers(); }

  const FieldDesc& field() const { return field_; }
  bool is_rational() const { return field_.is_rational(); }
  /// omega = sqrt(d) or (1+sqrt(d))/2; 1 for Z.
  const QuadElem& omega() const { return omega_; }

  /// Coordinates (X, Y) with x = X + Y*omega; Y = 0 over Z. Throws if x is outside the field.
  std::pair<Rational, Rational> coordinates(const QuadElem& x) const;
  QuadElem from_coordinates(const Rational& x, const Rational& y) const;
  /// Lattice membership x in Z + Z*omega.
  bool contains(const QuadElem& x) const;
  bool is_unit(const QuadElem& x) const;
  /// Least positive integer D with D*x in the ring.
  mpz_class integral_denominator(const QuadElem& x) const;
  /// Whether Euclidean division by nearest lattice point is available (Z and d = -1,-2,-3,-7,-11).
  bool is_euclidean() const;
  /// |d| for imaginary quadratic rings, 0 for Z.
  std::int64_t discriminant_radical() const;

  friend bool operator==(const RingOfIntegers& x, const RingOfIntegers& y) { return x.field_ == y.field_; }

private:
  friend RingOfIntegers ring_of_integers(const FieldDesc& field);
  RingOfIntegers() : omega_(1) {}

  FieldDesc field_;
  QuadElem omega_;
};

/// Throws PreconditionError for Q; use RingOfIntegers::integers() there.
RingOfIntegers ring_of_integers(const FieldDesc& field);

/// Parses "Z" or a field generator such as "-1", "-3", "5".
RingOfIntegers parse_ring(std::string_view text);

/// Least M >= 1 with M*1 and M*omega in Z + Z*alpha.
mpz_class m1_constant(const RingOfIntegers& ring, const QuadElem& alpha);

/// Nearest lattice point of the ring to x, ties toward smaller real part then smaller
/// imaginary part. Requires a Euclidean ring.
QuadElem nearest_integer(const QuadElem& x, const RingOfIntegers& ring);

struct ExtendedGcd {
  QuadElem gcd;
  QuadElem u;
  QuadElem v; // u*r + v*s = gcd
};

/// Euclidean algorithm in a Euclidean ring.
ExtendedGcd extended_gcd(const QuadElem& r, const QuadElem& s, const RingOfIntegers& ring);

struct BezoutResult {
  bool coprime = false;
  QuadElem u;
  QuadElem v; // u*r + v*s == 1 when coprime
  QuadElem common_divisor; // a gcd of r and s when not coprime
};

/// Decides (r, s) = 1 and returns Bezout coefficients. The coefficient u is reduced to a
/// least-norm residue modulo s so the output is deterministic.
BezoutResult bezout(const QuadElem& r, const QuadElem& s, const RingOfIntegers& ring);

/// sqrt(1 + D^2) + 1 where D = |d| (D = 0 over Z).
double m2_constant(const RingOfIntegers& ring);

/// Returns (u, v) with u*r + v*s == 1, |v| <= M2*|r| and (v, s1) = 1.
/// Requires (r, s) = 1, s in (s1), and (s1) primary.
std::pair<QuadElem, QuadElem> bezout_bounded(const QuadElem& r, const QuadElem& s,
                                             const QuadElem& s1, const RingOfIntegers& ring);

/// x / y exactly in the ring, or nullopt when y does not divide x.
std::optional<QuadElem> exact_quotient(const QuadElem& x, const QuadElem& y, const RingOfIntegers& ring);

/// A prime element dividing x (x a non-unit, nonzero ring element). Euclidean rings only.
QuadElem prime_factor(const QuadElem& x, const RingOfIntegers& ring);

} // namespace tracelab

template <>
struct std::hash<tracelab::QuadElem> {
  std::size_t operator()(const tracelab::QuadElem& x) const { return x.hash(); }
};

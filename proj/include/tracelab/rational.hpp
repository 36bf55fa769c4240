#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tracelab {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator both stay below 2^61 in magnitude are stored
/// inline; anything larger lives in a shared, immutable GMP rational. The
/// representation is canonical: a value is stored inline iff it fits, so
/// two equal values always have the same form.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n); // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpz_class& n);
  Rational(const mpz_class& n, const mpz_class& d);
  explicit Rational(const mpq_class& q);

  /// Parses "p" or "p/q" with an optional leading sign.
  static Rational parse(std::string_view text);

  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const;
  int sign() const;

  /// Greatest integer <= *this.
  mpz_class floor() const;
  mpz_class ceil() const;

  double to_double() const;
  std::string to_string() const;

  Rational operator-() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;
  Rational pow(unsigned e) const;

  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y);
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

  std::size_t hash() const;

private:
  static Rational from_mpq(mpq_class q);
  static Rational from_i128(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

mpz_class lcm(const mpz_class& a, const mpz_class& b);

} // namespace tracelab

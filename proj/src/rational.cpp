#include "tracelab/rational.hpp"

#include <functional>
#include <ostream>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// Inline values stay below 2^61 so cross products and their sums fit in 128 bits.
// Must agree with mpz_fits_small below or the representation stops being canonical.
constexpr std::int64_t kSmallLimit = std::int64_t{1} << 61;

bool fits_small(i128 v) { return v > -kSmallLimit && v < kSmallLimit; }

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 mag = neg ? u128(-(v + 1)) + 1 : u128(v);
  mpz_class out;
  std::uint64_t limbs[2] = {std::uint64_t(mag), std::uint64_t(mag >> 64)};
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  if (neg) out = -out;
  return out;
}

bool mpz_fits_small(const mpz_class& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 61;
}

} // namespace

Rational::Rational(std::int64_t n) {
  if (!fits_small(n)) {
    *this = from_mpq(mpq_class(mpz_class(static_cast<long>(n))));
    return;
  }
  num_ = n;
  den_ = 1;
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DivisionByZero();
  *this = from_i128(n, d);
}

Rational::Rational(const mpz_class& n) : Rational(mpq_class(n)) {}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw DivisionByZero();
  mpq_class q(n, d);
  q.canonicalize();
  *this = from_mpq(std::move(q));
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  *this = from_mpq(std::move(c));
}

Rational Rational::from_mpq(mpq_class q) {
  Rational r;
  if (mpz_fits_small(q.get_num()) && mpz_fits_small(q.get_den())) {
    r.num_ = q.get_num().get_si();
    r.den_ = q.get_den().get_si();
  } else {
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
  }
  return r;
}

Rational Rational::from_i128(i128 n, i128 d) {
  if (d == 0) throw DivisionByZero();
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 mag = n < 0 ? u128(-n) : u128(n);
  u128 g = gcd_u128(mag, u128(d));
  if (g > 1) {
    n /= i128(g);
    d /= i128(g);
  }
  if (fits_small(n) && fits_small(d)) {
    Rational r;
    r.num_ = std::int64_t(n);
    r.den_ = std::int64_t(d);
    return r;
  }
  mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
  Rational r;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw ParseError("empty integer in rational '" + std::string(text) + "'");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw ParseError("bad integer in rational '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw ParseError("bad integer in rational '" + std::string(text) + "'");
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  mpz_class n = parse_int(text.substr(0, slash));
  mpz_class d = parse_int(text.substr(slash + 1));
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpz_class Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return mpz_class(static_cast<long>(q));
  }
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return out;
}

mpz_class Rational::ceil() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return mpz_class(static_cast<long>(q));
  }
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return out;
}

double Rational::to_double() const {
  if (!big_) return double(num_) / double(den_);
  // mpq_get_d truncates; going through mpf keeps relative accuracy for huge values.
  mpf_class f(*big_, 128);
  return f.get_d();
}

std::string Rational::to_string() const {
  if (!big_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  return big_->get_str(10);
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return from_mpq(-*big_);
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (!big_) return from_i128(den_, num_);
  mpq_class q = 1 / *big_;
  return from_mpq(std::move(q));
}

Rational Rational::pow(unsigned e) const {
  Rational result(1);
  Rational base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Rational operator+(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) {
    if (x.den_ == y.den_) return Rational::from_i128(i128(x.num_) + y.num_, x.den_);
    return Rational::from_i128(i128(x.num_) * y.den_ + i128(y.num_) * x.den_,
                               i128(x.den_) * y.den_);
  }
  return Rational::from_mpq(x.to_mpq() + y.to_mpq());
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) {
    if (x.num_ == 0 || y.num_ == 0) return Rational();
    std::int64_t g1 = gcd_i64(x.num_, y.den_);
    std::int64_t g2 = gcd_i64(y.num_, x.den_);
    i128 n = i128(x.num_ / g1) * (y.num_ / g2);
    i128 d = i128(x.den_ / g2) * (y.den_ / g1);
    if (fits_small(n) && fits_small(d)) {
      Rational r;
      r.num_ = std::int64_t(n);
      r.den_ = std::int64_t(d);
      return r;
    }
    return Rational::from_i128(n, d);
  }
  return Rational::from_mpq(x.to_mpq() * y.to_mpq());
}

Rational operator/(const Rational& x, const Rational& y) { return x * y.inverse(); }

bool operator==(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) return x.num_ == y.num_ && x.den_ == y.den_;
  if (x.big_ && y.big_) return *x.big_ == *y.big_;
  return false; // canonical representation: a small and a big value never coincide
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) {
    i128 l = i128(x.num_) * y.den_;
    i128 r = i128(y.num_) * x.den_;
    return l <=> r;
  }
  int c = cmp(x.to_mpq(), y.to_mpq());
  return c <=> 0;
}

std::size_t Rational::hash() const {
  if (!big_) {
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  return std::hash<std::string>{}(big_->get_str(16));
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

} // namespace tracelab

#include "tracelab/number_field.hpp"

#include <array>
#include <cmath>
#include <ostream>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

int sign_of(int s) { return (s > 0) - (s < 0); }

// Exact sign of a + b*sqrt(D) for a positive integer D.
int sign_with_root(const Rational& a, const Rational& b, std::int64_t root) {
  int sa = a.sign();
  int sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = a * a;
  Rational rhs = b * b * Rational(root);
  return lhs > rhs ? sa : sb;
}

// Approximate floor of a + b*sqrt(D) (D > 0), refined exactly afterwards.
mpz_class floor_with_root(const Rational& a, const Rational& b, std::int64_t root) {
  mpf_class approx(a.to_mpq(), 256);
  mpf_class r(root, 256);
  r = sqrt(r);
  approx += mpf_class(b.to_mpq(), 256) * r;
  mpf_class fl(0, 256);
  mpf_floor(fl.get_mpf_t(), approx.get_mpf_t());
  mpz_class m(fl);
  while (sign_with_root(a - Rational(m), b, root) < 0) m -= 1;
  while (sign_with_root(a - Rational(mpz_class(m + 1)), b, root) >= 0) m += 1;
  return m;
}

std::int64_t mod4(std::int64_t d) { return ((d % 4) + 4) % 4; }

} // namespace

bool is_squarefree(std::int64_t n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

FieldDesc::FieldDesc(std::int64_t d) : d_(d) {
  if (d == 0 || d == 1)
    throw PreconditionError("field generator d must not be 0 or 1 (got " + std::to_string(d) + ")");
  if (!is_squarefree(d))
    throw PreconditionError("field generator d must be squarefree (got " + std::to_string(d) + ")");
}

std::string FieldDesc::to_string() const {
  return is_rational() ? std::string("Q") : "Q(sqrt(" + std::to_string(d_) + "))";
}

FieldDesc common_field(const FieldDesc& x, const FieldDesc& y) {
  if (x == y) return x;
  if (x.is_rational()) return y;
  if (y.is_rational()) return x;
  throw FieldMismatch("cannot combine elements of " + x.to_string() + " and " + y.to_string());
}

// ---------------------------------------------------------------------------
// QuadElem

QuadElem::QuadElem(Rational a) : a_(std::move(a)) {}

QuadElem::QuadElem(Rational a, Rational b, FieldDesc field)
    : a_(std::move(a)), b_(std::move(b)), field_(field) {
  if (field_.is_rational() && !b_.is_zero())
    throw PreconditionError("an element of Q cannot carry a sqrt term");
}

QuadElem QuadElem::sqrt_of(std::int64_t d) { return QuadElem(0, 1, FieldDesc(d)); }

QuadElem QuadElem::in_field(const FieldDesc& f) const {
  if (f == field_) return *this;
  if (b_.is_zero()) return QuadElem(a_, b_, f, Unchecked{});
  throw FieldMismatch("element of " + field_.to_string() + " is not in " + f.to_string());
}

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  FieldDesc f = common_field(x.field_, y.field_);
  if (y.b_.is_zero()) return QuadElem(x.a_ + y.a_, x.b_, f, QuadElem::Unchecked{});
  return QuadElem(x.a_ + y.a_, x.b_ + y.b_, f, QuadElem::Unchecked{});
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  FieldDesc f = common_field(x.field_, y.field_);
  return QuadElem(x.a_ - y.a_, x.b_ - y.b_, f, QuadElem::Unchecked{});
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  FieldDesc f = common_field(x.field_, y.field_);
  if (x.b_.is_zero() && y.b_.is_zero())
    return QuadElem(x.a_ * y.a_, Rational(), f, QuadElem::Unchecked{});
  if (y.b_.is_zero()) return QuadElem(x.a_ * y.a_, x.b_ * y.a_, f, QuadElem::Unchecked{});
  if (x.b_.is_zero()) return QuadElem(x.a_ * y.a_, x.a_ * y.b_, f, QuadElem::Unchecked{});
  Rational a = x.a_ * y.a_ + x.b_ * y.b_ * Rational(f.d());
  Rational b = x.a_ * y.b_ + x.b_ * y.a_;
  return QuadElem(std::move(a), std::move(b), f, QuadElem::Unchecked{});
}

QuadElem QuadElem::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (b_.is_zero()) return QuadElem(a_.inverse(), Rational(), field_, Unchecked{});
  Rational n = field_norm(*this);
  return QuadElem(a_ / n, -b_ / n, field_, Unchecked{});
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) {
  common_field(x.field_, y.field_);
  return x * y.inverse();
}

QuadElem QuadElem::pow(unsigned e) const {
  QuadElem result = QuadElem(Rational(1), Rational(), field_, Unchecked{});
  QuadElem base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const QuadElem& x, const QuadElem& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  return x.b_.is_zero() || x.field_ == y.field_;
}

std::string QuadElem::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  std::string out;
  if (!a_.is_zero()) out = a_.to_string();
  Rational mag = b_.abs();
  if (b_.sign() < 0)
    out += "-";
  else if (!out.empty())
    out += "+";
  if (mag != Rational(1)) out += mag.to_string() + "*";
  out += "sqrt(" + std::to_string(field_.d()) + ")";
  return out;
}

std::size_t QuadElem::hash() const {
  std::size_t h = a_.hash();
  return h ^ (b_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << x.to_string(); }

QuadElem parse_quad(std::string_view text, FieldDesc hint) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw ParseError("empty number");

  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("cannot parse number '" + std::string(text) + "': " + why);
  };

  std::size_t pos = 0;
  auto read_digits = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (start == pos) throw fail("expected digits at offset " + std::to_string(start));
    return s.substr(start, pos - start);
  };
  auto starts_with = [&](std::string_view lit) { return s.compare(pos, lit.size(), lit) == 0; };

  Rational rational_sum;
  Rational root_sum;
  std::optional<std::int64_t> root;

  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw fail("expected '+' or '-' at offset " + std::to_string(pos));
    }
    first = false;

    Rational coeff(1);
    bool has_coeff = false;
    if (!starts_with("sqrt(")) {
      std::string num = read_digits();
      std::string den = "1";
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = read_digits();
      }
      coeff = Rational::parse(num + "/" + den);
      has_coeff = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        if (!starts_with("sqrt(")) throw fail("expected sqrt( after '*'");
      }
    }
    if (starts_with("sqrt(")) {
      pos += 5;
      std::size_t start = pos;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
      read_digits();
      std::int64_t d = 0;
      try {
        d = std::stoll(s.substr(start, pos - start));
      } catch (const std::exception&) {
        throw fail("sqrt argument out of range");
      }
      if (pos >= s.size() || s[pos] != ')') throw fail("missing ')'");
      ++pos;
      if (d == 1 || d == 0 || !is_squarefree(d)) throw fail("sqrt argument must be squarefree and not 0 or 1");
      if (root && *root != d) throw fail("mixed square roots");
      root = d;
      root_sum += sign > 0 ? coeff : -coeff;
    } else {
      if (!has_coeff) throw fail("empty term");
      rational_sum += sign > 0 ? coeff : -coeff;
    }
  }

  if (!root) return QuadElem(rational_sum, Rational(), hint);
  FieldDesc f(*root);
  if (!hint.is_rational() && hint != f)
    throw fail("element of " + f.to_string() + " where " + hint.to_string() + " was expected");
  return QuadElem(rational_sum, root_sum, f);
}

// ---------------------------------------------------------------------------
// Norm, trace, signs, embeddings

Rational field_norm(const QuadElem& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.irrational_part();
  if (b.is_zero()) return x.field().is_rational() ? a : a * a;
  return a * a - b * b * Rational(x.field().d());
}

Rational field_trace(const QuadElem& x) {
  if (x.field().is_rational()) return x.rational_part();
  return x.rational_part() * Rational(2);
}

bool is_algebraic_integer(const QuadElem& x) {
  if (x.is_rational()) return x.rational_part().is_integer();
  return field_trace(x).is_integer() && field_norm(x).is_integer();
}

int real_sign(const QuadElem& x) {
  if (!x.field().is_real_quadratic()) return x.rational_part().sign();
  return sign_with_root(x.rational_part(), x.irrational_part(), x.field().d());
}

int imag_sign(const QuadElem& x) {
  if (!x.field().is_imaginary()) return 0;
  return x.irrational_part().sign();
}

Rational modulus_squared(const QuadElem& x) {
  if (x.field().is_real_quadratic() && !x.is_rational())
    throw PreconditionError("|x|^2 is irrational in a real quadratic field");
  const Rational& a = x.rational_part();
  const Rational& b = x.irrational_part();
  if (b.is_zero()) return a * a;
  return a * a - b * b * Rational(x.field().d());
}

std::strong_ordering compare_modulus(const QuadElem& x, const QuadElem& y) {
  FieldDesc f = common_field(x.field(), y.field());
  if (!f.is_real_quadratic()) return modulus_squared(x) <=> modulus_squared(y);
  QuadElem ax = real_sign(x) < 0 ? -x : x;
  QuadElem ay = real_sign(y) < 0 ? -y : y;
  return sign_of(real_sign(ax - ay)) <=> 0;
}

mpz_class floor_real(const QuadElem& x) {
  if (!x.field().is_real_quadratic() || x.is_rational()) return x.rational_part().floor();
  return floor_with_root(x.rational_part(), x.irrational_part(), x.field().d());
}

mpz_class floor_imag(const QuadElem& x) {
  if (!x.field().is_imaginary() || x.is_rational()) return mpz_class(0);
  return floor_with_root(Rational(), x.irrational_part(), -x.field().d());
}

std::complex<double> embed(const QuadElem& x, bool conjugate) {
  const Rational& a = x.rational_part();
  Rational b = conjugate ? -x.irrational_part() : x.irrational_part();
  if (b.is_zero()) return {a.to_double(), 0.0};
  const std::int64_t d = x.field().d();
  if (d < 0) return {a.to_double(), b.to_double() * std::sqrt(double(-d))};
  double root = std::sqrt(double(d));
  if (a.sign() != 0 && a.sign() != b.sign()) {
    // a + b*sqrt(d) = (a^2 - d b^2) / (a - b*sqrt(d)) avoids cancellation.
    Rational n = a * a - b * b * Rational(d);
    return {n.to_double() / (a.to_double() - b.to_double() * root), 0.0};
  }
  return {a.to_double() + b.to_double() * root, 0.0};
}

mpf_class modulus_mpf(const QuadElem& x, unsigned bits) {
  if (!x.field().is_real_quadratic() || x.is_rational()) {
    mpf_class m(modulus_squared(x).to_mpq(), bits);
    return sqrt(m);
  }
  mpf_class root(x.field().d(), bits);
  root = sqrt(root);
  mpf_class a(x.rational_part().to_mpq(), bits);
  mpf_class b(x.irrational_part().to_mpq(), bits);
  mpf_class v(0, bits);
  if (x.rational_part().sign() != 0 && x.rational_part().sign() != x.irrational_part().sign()) {
    mpf_class n(field_norm(x).to_mpq(), bits);
    v = n / (a - b * root);
  } else {
    v = a + b * root;
  }
  return abs(v);
}

// ---------------------------------------------------------------------------
// Rings of integers

RingOfIntegers ring_of_integers(const FieldDesc& field) {
  if (field.is_rational())
    throw PreconditionError("ring_of_integers needs a quadratic field; use RingOfIntegers::integers() for Z");
  RingOfIntegers ring;
  ring.field_ = field;
  if (mod4(field.d()) == 1)
    ring.omega_ = QuadElem(Rational(1, 2), Rational(1, 2), field);
  else
    ring.omega_ = QuadElem(0, 1, field);
  return ring;
}

RingOfIntegers parse_ring(std::string_view text) {
  if (text == "Z" || text == "ZZ") return RingOfIntegers::integers();
  std::int64_t d = 0;
  try {
    std::size_t used = 0;
    d = std::stoll(std::string(text), &used);
    if (used != text.size()) throw ParseError("trailing characters");
  } catch (const std::exception&) {
    throw ParseError("ring must be 'Z' or an integer field generator, got '" + std::string(text) + "'");
  }
  return ring_of_integers(FieldDesc(d));
}

std::pair<Rational, Rational> RingOfIntegers::coordinates(const QuadElem& x) const {
  QuadElem y = x.in_field(field_);
  if (is_rational()) return {y.rational_part(), Rational()};
  Rational coeff = y.irrational_part() / omega_.irrational_part();
  Rational base = y.rational_part() - coeff * omega_.rational_part();
  return {base, coeff};
}

QuadElem RingOfIntegers::from_coordinates(const Rational& x, const Rational& y) const {
  if (is_rational()) return QuadElem(x);
  return QuadElem(x, Rational(), field_) + QuadElem(y, Rational(), field_) * omega_;
}

bool RingOfIntegers::contains(const QuadElem& x) const {
  if (!x.is_rational() && x.field() != field_) return false;
  auto [base, coeff] = coordinates(x);
  return base.is_integer() && coeff.is_integer();
}

bool RingOfIntegers::is_unit(const QuadElem& x) const {
  if (!contains(x)) return false;
  Rational n = is_rational() ? x.rational_part() : field_norm(x.in_field(field_));
  return n == Rational(1) || n == Rational(-1);
}

mpz_class RingOfIntegers::integral_denominator(const QuadElem& x) const {
  auto [base, coeff] = coordinates(x);
  return lcm(base.denominator(), coeff.denominator());
}

bool RingOfIntegers::is_euclidean() const {
  if (is_rational()) return true;
  switch (field_.d()) {
  case -1:
  case -2:
  case -3:
  case -7:
  case -11:
    return true;
  default:
    return false;
  }
}

std::int64_t RingOfIntegers::discriminant_radical() const {
  if (is_rational()) return 0;
  return field_.d() < 0 ? -field_.d() : field_.d();
}

mpz_class m1_constant(const RingOfIntegers& ring, const QuadElem& alpha) {
  if (ring.is_rational()) throw PreconditionError("M1 needs a quadratic ring");
  if (alpha.is_rational()) throw PreconditionError("alpha must be irrational");
  QuadElem a = alpha.in_field(ring.field());
  const QuadElem& w = ring.omega();
  // M*omega = m + n*alpha with n = M*r1, m = M*r2.
  Rational r1 = w.irrational_part() / a.irrational_part();
  Rational r2 = w.rational_part() - r1 * a.rational_part();
  return lcm(r1.denominator(), r2.denominator());
}

// ---------------------------------------------------------------------------
// Euclidean division and Bezout

namespace {

void require_euclidean(const RingOfIntegers& ring) {
  if (!ring.is_euclidean())
    throw UnsupportedRing("coprimality is only decided in Z and the Euclidean rings d = -1, -2, -3, -7, -11 (got " +
                          ring.field().to_string() + ")");
}

void require_member(const QuadElem& x, const RingOfIntegers& ring, const char* what) {
  if (!ring.contains(x))
    throw PreconditionError(std::string(what) + " = " + x.to_string() + " is not an algebraic integer of the ring");
}

} // namespace

QuadElem nearest_integer(const QuadElem& x, const RingOfIntegers& ring) {
  require_euclidean(ring);
  if (ring.is_rational()) {
    if (!x.is_rational()) throw FieldMismatch("irrational element divided in Z");
    // ties go to the smaller integer
    return QuadElem(Rational((x.rational_part() - Rational(1, 2)).ceil()));
  }
  auto [cx, cy] = ring.coordinates(x);
  const Rational& wa = ring.omega().rational_part();
  std::optional<QuadElem> best;
  Rational best_norm;
  Rational best_re;
  Rational best_y;
  mpz_class fy = cy.floor();
  for (int dy = -1; dy <= 2; ++dy) {
    Rational y{mpz_class(fy + dy)};
    Rational t = cx + (cy - y) * wa;
    mpz_class ft = t.floor();
    for (int dx = -1; dx <= 2; ++dx) {
      Rational xx{mpz_class(ft + dx)};
      QuadElem q = ring.from_coordinates(xx, y);
      Rational n = field_norm(x - q);
      Rational re = xx + y * wa;
      bool better = !best || n < best_norm || (n == best_norm && (re < best_re || (re == best_re && y < best_y)));
      if (better) {
        best = q;
        best_norm = n;
        best_re = re;
        best_y = y;
      }
    }
  }
  return *best;
}

ExtendedGcd extended_gcd(const QuadElem& r, const QuadElem& s, const RingOfIntegers& ring) {
  require_euclidean(ring);
  require_member(r, ring, "r");
  require_member(s, ring, "s");
  FieldDesc f = ring.field();
  QuadElem old_r = r.in_field(f), cur_r = s.in_field(f);
  QuadElem old_u = QuadElem(1).in_field(f), cur_u = QuadElem(0).in_field(f);
  QuadElem old_v = QuadElem(0).in_field(f), cur_v = QuadElem(1).in_field(f);
  while (!cur_r.is_zero()) {
    QuadElem q = nearest_integer(old_r / cur_r, ring);
    QuadElem next_r = old_r - q * cur_r;
    old_r = std::exchange(cur_r, next_r);
    QuadElem next_u = old_u - q * cur_u;
    old_u = std::exchange(cur_u, next_u);
    QuadElem next_v = old_v - q * cur_v;
    old_v = std::exchange(cur_v, next_v);
  }
  return {old_r, old_u, old_v};
}

BezoutResult bezout(const QuadElem& r, const QuadElem& s, const RingOfIntegers& ring) {
  require_euclidean(ring);
  require_member(r, ring, "r");
  require_member(s, ring, "s");
  FieldDesc f = ring.field();
  BezoutResult out;
  if (ring.is_unit(r)) {
    out.coprime = true;
    out.u = r.in_field(f).inverse();
    out.v = QuadElem(0).in_field(f);
    out.common_divisor = QuadElem(1).in_field(f);
    return out;
  }
  ExtendedGcd g = extended_gcd(r, s, ring);
  if (!ring.is_unit(g.gcd)) {
    out.coprime = false;
    out.common_divisor = g.gcd;
    return out;
  }
  QuadElem unit_inv = g.gcd.inverse();
  QuadElem u = g.u * unit_inv;
  QuadElem v = g.v * unit_inv;
  if (!s.is_zero()) {
    QuadElem k = nearest_integer(u / s, ring);
    u = u - k * s;
    v = v + k * r;
  }
  out.coprime = true;
  out.u = u;
  out.v = v;
  out.common_divisor = QuadElem(1).in_field(f);
  return out;
}

double m2_constant(const RingOfIntegers& ring) {
  double big_d = double(ring.discriminant_radical());
  return std::sqrt(1.0 + big_d * big_d) + 1.0;
}

std::optional<QuadElem> exact_quotient(const QuadElem& x, const QuadElem& y, const RingOfIntegers& ring) {
  if (y.is_zero()) throw DivisionByZero();
  QuadElem q = x / y;
  if (!ring.contains(q)) return std::nullopt;
  return q.in_field(ring.field());
}

std::pair<QuadElem, QuadElem> bezout_bounded(const QuadElem& r, const QuadElem& s, const QuadElem& s1,
                                             const RingOfIntegers& ring) {
  require_euclidean(ring);
  require_member(r, ring, "r");
  require_member(s, ring, "s");
  require_member(s1, ring, "s1");
  if (r.is_zero()) throw PreconditionError("bezout_bounded needs r != 0");
  if (s1.is_zero() || !exact_quotient(s, s1, ring)) throw PreconditionError("s is not in the ideal (s1)");
  BezoutResult first = bezout(r, s, ring);
  if (!first.coprime) throw PreconditionError("(r, s) != 1");

  // u''r + v''s = 1; reduce v'' to its least-norm residue modulo r.
  QuadElem w = nearest_integer(first.v / r, ring);
  QuadElem v = first.v - w * r;
  QuadElem u = first.u + w * s;
  if (!bezout(v, s1, ring).coprime) {
    v = v + r;
    u = u - s;
    if (!bezout(v, s1, ring).coprime)
      throw PreconditionError("no coprime correction found; the ideal (s1) is not primary");
  }
  if (u * r + v * s != QuadElem(1)) throw Error("bezout_bounded: internal identity check failed");
  return {u, v};
}

QuadElem prime_factor(const QuadElem& x, const RingOfIntegers& ring) {
  require_euclidean(ring);
  require_member(x, ring, "x");
  if (x.is_zero() || ring.is_unit(x)) throw PreconditionError("prime_factor needs a nonzero non-unit");
  mpz_class n = ring.is_rational() ? mpz_class(abs(x.rational_part().numerator()))
                                   : mpz_class(abs(field_norm(x).numerator()));
  mpz_class p = 2;
  while (n % p != 0) {
    if (p * p > n) {
      p = n;
      break;
    }
    p += 1;
  }
  if (!p.fits_slong_p()) throw PreconditionError("prime_factor: norm too large for the desk-scale search");
  const long prime = p.get_si();
  if (ring.is_rational()) return QuadElem(Rational(p));

  // Split or ramified p: an element of norm p dividing x. Otherwise p is inert.
  const QuadElem& w = ring.omega();
  double wim2 = -field_norm(w).to_double() + w.rational_part().to_double() * w.rational_part().to_double();
  wim2 = std::abs(wim2);
  long ybound = long(std::sqrt(double(prime) / std::max(wim2, 1e-9))) + 1;
  long xbound = long(std::sqrt(double(prime))) + ybound + 1;
  for (long y = 0; y <= ybound; ++y) {
    for (long xx = -xbound; xx <= xbound; ++xx) {
      QuadElem cand = ring.from_coordinates(Rational(xx), Rational(y));
      if (field_norm(cand) != Rational(p)) continue;
      if (exact_quotient(x, cand, ring)) return cand;
    }
  }
  QuadElem inert = QuadElem(Rational(p)).in_field(ring.field());
  if (!exact_quotient(x, inert, ring)) throw Error("prime_factor: no prime above " + p.get_str() + " divides x");
  return inert;
}

} // namespace tracelab

#include "tracelab/psl2.hpp"

#include <ostream>
#include <vector>

#include "tracelab/errors.hpp"

namespace tracelab {

Mat2::Mat2() : a_(1), b_(0), c_(0), d_(1) {}

Mat2::Mat2(QuadElem a, QuadElem b, QuadElem c, QuadElem d, FieldDesc field)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), field_(field) {}

Mat2 Mat2::make(const QuadElem& a, const QuadElem& b, const QuadElem& c, const QuadElem& d) {
  FieldDesc f = common_field(common_field(a.field(), b.field()), common_field(c.field(), d.field()));
  Mat2 m(a.in_field(f), b.in_field(f), c.in_field(f), d.in_field(f), f);
  if (m.det() != QuadElem(1))
    throw PreconditionError("matrix " + m.to_string() + " has determinant " + m.det().to_string() + ", not 1");
  return m;
}

Mat2 Mat2::identity(const FieldDesc& field) {
  return Mat2(QuadElem(1).in_field(field), QuadElem(0).in_field(field), QuadElem(0).in_field(field),
              QuadElem(1).in_field(field), field);
}

Mat2 Mat2::translation(const QuadElem& x) {
  FieldDesc f = x.field();
  return Mat2(QuadElem(1).in_field(f), x, QuadElem(0).in_field(f), QuadElem(1).in_field(f), f);
}

Mat2 Mat2::adj() const { return Mat2(d_, -b_, -c_, a_, field_); }

Mat2 Mat2::operator-() const { return Mat2(-a_, -b_, -c_, -d_, field_); }

bool Mat2::is_identity() const {
  return b_.is_zero() && c_.is_zero() && a_ == QuadElem(1) && d_ == QuadElem(1);
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  FieldDesc f = common_field(x.field_, y.field_);
  return Mat2(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
              x.c_ * y.b_ + x.d_ * y.d_, f);
}

std::string Mat2::to_string() const {
  return "[" + a_.to_string() + "," + b_.to_string() + ";" + c_.to_string() + "," + d_.to_string() + "]";
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) { return os << m.to_string(); }

Mat2 parse_mat(std::string_view text, FieldDesc hint) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t' && ch != '\n') s += ch;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("matrix must look like [a,b;c,d], got '" + std::string(text) + "'");
  std::string body = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::string cur;
  std::vector<char> seps;
  for (char ch : body) {
    if (ch == ',' || ch == ';') {
      parts.push_back(cur);
      seps.push_back(ch);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4 || seps[0] != ',' || seps[1] != ';' || seps[2] != ',')
    throw ParseError("matrix must look like [a,b;c,d], got '" + std::string(text) + "'");
  std::vector<QuadElem> e;
  for (const auto& p : parts) e.push_back(parse_quad(p, hint));
  FieldDesc f = hint;
  for (const auto& x : e) f = common_field(f, x.field());
  return Mat2::make(e[0].in_field(f), e[1].in_field(f), e[2].in_field(f), e[3].in_field(f));
}

namespace {

// Positive in the order: real part first, then imaginary part.
int lex_sign(const QuadElem& x) {
  int r = real_sign(x);
  return r != 0 ? r : imag_sign(x);
}

} // namespace

QuadElem canonical_trace(const QuadElem& t) { return lex_sign(t) < 0 ? -t : t; }

ProjMat::ProjMat(const Mat2& m) : rep_(m) {
  for (const QuadElem* e : {&m.a(), &m.b(), &m.c(), &m.d()}) {
    if (e->is_zero()) continue;
    if (lex_sign(*e) < 0) rep_ = -m;
    break;
  }
}

std::string to_string(ElementClass c) {
  switch (c) {
  case ElementClass::identity:
    return "identity";
  case ElementClass::parabolic:
    return "parabolic";
  case ElementClass::elliptic:
    return "elliptic";
  case ElementClass::hyperbolic_or_loxodromic:
    return "hyperbolic_or_loxodromic";
  }
  return "unknown";
}

ElementClass classify(const ProjMat& x) {
  if (x.is_identity()) return ElementClass::identity;
  QuadElem t = x.rep().trace();
  QuadElem disc = t * t - QuadElem(4);
  if (disc.is_zero()) return ElementClass::parabolic;
  bool real = !x.field().is_imaginary() || t.is_rational();
  if (real && real_sign(disc) < 0) return ElementClass::elliptic;
  return ElementClass::hyperbolic_or_loxodromic;
}

std::string to_string(const BoundaryPoint& p) { return p.infinite ? std::string("inf") : p.value.to_string(); }

BoundaryPoint mobius(const Mat2& m, const BoundaryPoint& z) {
  if (z.infinite) {
    if (m.c().is_zero()) return {true, {}};
    return {false, m.a() / m.c()};
  }
  QuadElem den = m.c() * z.value + m.d();
  if (den.is_zero()) return {true, {}};
  return {false, (m.a() * z.value + m.b()) / den};
}

BoundaryPoint parabolic_fixed_point(const ProjMat& p) {
  if (classify(p) != ElementClass::parabolic)
    throw PreconditionError("element " + p.rep().to_string() + " is not parabolic");
  const Mat2& m = p.rep();
  if (m.c().is_zero()) return {true, {}};
  return {false, (m.a() - m.d()) / (QuadElem(2) * m.c())};
}

namespace {

// Normalizes a unipotent representative so that its diagonal is +1.
Mat2 unipotent_rep(const Mat2& m) {
  Mat2 u = m.a() == QuadElem(-1) ? -m : m;
  if (u.a() != QuadElem(1) || u.d() != QuadElem(1))
    throw Error("cusp_normalize: conjugate " + m.to_string() + " is not unipotent");
  return u;
}

} // namespace

CuspNormalization cusp_normalize(const ProjMat& p, const ProjMat& g) {
  BoundaryPoint x = parabolic_fixed_point(p);
  BoundaryPoint y = mobius(g.rep(), x);
  if (x == y) throw PreconditionError("g fixes the cusp " + to_string(x) + " of p");

  FieldDesc f = common_field(p.field(), g.field());
  QuadElem one = QuadElem(1).in_field(f);
  QuadElem zero = QuadElem(0).in_field(f);
  Mat2 h;
  if (x.infinite) {
    h = Mat2::make(one, -y.value, zero, one);
  } else if (y.infinite) {
    h = Mat2::make(zero, -one, one, -x.value);
  } else {
    QuadElem diff = y.value - x.value;
    h = Mat2::make(one / diff, -y.value / diff, one, -x.value);
  }
  Mat2 hi = h.adj();
  Mat2 upper = unipotent_rep(h * p.rep() * hi);
  Mat2 lower = unipotent_rep(h * g.rep() * p.rep() * g.rep().adj() * hi);
  if (!upper.c().is_zero() || !lower.b().is_zero()) throw Error("cusp_normalize: conjugation failed");

  CuspNormalization out;
  out.conjugator = ProjMat(h);
  out.t = upper.b();
  out.tau = lower.c();
  out.beta_sq = -out.tau / out.t;
  return out;
}

Mat2 an_iteration(const Mat2& a, unsigned n) {
  FieldDesc f = a.field();
  QuadElem one = QuadElem(1).in_field(f);
  Mat2 t = Mat2::translation(one);
  Mat2 ti = Mat2::translation(-one);
  Mat2 cur = a;
  for (unsigned k = 0; k < n; ++k) cur = t * cur * ti * cur.adj();
  return cur;
}

QuadElem parabolic_shift_trace(const Mat2& an, const QuadElem& k) {
  const QuadElem& c = an.c();
  if (an.trace() != QuadElem(2) + c)
    throw PreconditionError("tr(A_n) != 2 + c_n; pass an A_n with n >= 1");
  QuadElem formula = QuadElem(2) + (k + QuadElem(1)) * c;
  QuadElem direct = (an * Mat2::translation(k.in_field(common_field(k.field(), an.field())))).trace();
  if (formula != direct) throw Error("parabolic_shift_trace: formula disagrees with the product");
  return formula;
}

} // namespace tracelab

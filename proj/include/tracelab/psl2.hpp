#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tracelab/number_field.hpp"

namespace tracelab {

/// 2x2 matrix with determinant 1 over Q or a quadratic field.
class Mat2 {
public:
  /// Identity over Q.
  Mat2();
  /// Checked constructor: throws PreconditionError unless ad - bc = 1.
  static Mat2 make(const QuadElem& a, const QuadElem& b, const QuadElem& c, const QuadElem& d);
  static Mat2 identity(const FieldDesc& field = {});
  /// (1, x; 0, 1)
  static Mat2 translation(const QuadElem& x);

  const QuadElem& a() const { return a_; }
  const QuadElem& b() const { return b_; }
  const QuadElem& c() const { return c_; }
  const QuadElem& d() const { return d_; }
  const FieldDesc& field() const { return field_; }

  QuadElem trace() const { return a_ + d_; }
  QuadElem det() const { return a_ * d_ - b_ * c_; }
  /// (d, -b; -c, a); equals the inverse since det = 1.
  Mat2 adj() const;
  Mat2 inverse() const { return adj(); }
  Mat2 operator-() const;
  bool is_identity() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y) = default;

  /// "[a,b;c,d]"
  std::string to_string() const;

private:
  Mat2(QuadElem a, QuadElem b, QuadElem c, QuadElem d, FieldDesc field);

  QuadElem a_, b_, c_, d_;
  FieldDesc field_;
};

std::ostream& operator<<(std::ostream& os, const Mat2& m);

/// Parses "[a,b;c,d]"; entries in the number text format.
Mat2 parse_mat(std::string_view text, FieldDesc hint = {});

/// Trace sign representative: nonnegative real part, ties toward nonnegative imaginary part.
QuadElem canonical_trace(const QuadElem& t);

/// Element of PSL(2): a Mat2 stored with its first nonzero entry (in order a, b, c, d)
/// having positive real part, ties broken by a positive imaginary part.
class ProjMat {
public:
  ProjMat() = default;
  explicit ProjMat(const Mat2& m);

  const Mat2& rep() const { return rep_; }
  const FieldDesc& field() const { return rep_.field(); }
  ProjMat inverse() const { return ProjMat(rep_.adj()); }
  /// Canonical trace.
  QuadElem trace() const { return canonical_trace(rep_.trace()); }
  bool is_identity() const { return rep_.is_identity(); }
  /// Exact serialization of the canonical representative, used as a dedup key.
  std::string key() const { return rep_.to_string(); }

  friend ProjMat operator*(const ProjMat& x, const ProjMat& y) { return ProjMat(x.rep_ * y.rep_); }
  friend bool operator==(const ProjMat& x, const ProjMat& y) = default;

private:
  Mat2 rep_;
};

enum class ElementClass { identity, parabolic, elliptic, hyperbolic_or_loxodromic };

std::string to_string(ElementClass c);
ElementClass classify(const ProjMat& x);

/// A point of the boundary P^1(K): either infinity or an element of the field.
struct BoundaryPoint {
  bool infinite = false;
  QuadElem value;

  friend bool operator==(const BoundaryPoint& x, const BoundaryPoint& y) {
    if (x.infinite || y.infinite) return x.infinite == y.infinite;
    return x.value == y.value;
  }
};

std::string to_string(const BoundaryPoint& p);

/// Mobius action z -> (az + b)/(cz + d).
BoundaryPoint mobius(const Mat2& m, const BoundaryPoint& z);
/// The fixed point of a parabolic element.
BoundaryPoint parabolic_fixed_point(const ProjMat& p);

struct CuspNormalization {
  ProjMat conjugator; // h
  QuadElem t;         // h p h^-1 = (1, t; 0, 1)
  QuadElem tau;       // h g p g^-1 h^-1 = (1, 0; tau, 1)
  QuadElem beta_sq;   // -tau / t
};

/// Conjugates the fixed point x of p to infinity and g x to 0.
CuspNormalization cusp_normalize(const ProjMat& p, const ProjMat& g);

/// A_0 = A, A_{k+1} = T A_k T^-1 adj(A_k) with T = (1, 1; 0, 1).
Mat2 an_iteration(const Mat2& a, unsigned n);

/// tr(A_n (1, k; 0, 1)) as 2 + (k + 1) c_n where c_n is the lower-left entry of A_n.
/// Requires tr(A_n) = 2 + c_n; checks the result against the direct product.
QuadElem parabolic_shift_trace(const Mat2& an, const QuadElem& k);

} // namespace tracelab

template <>
struct std::hash<tracelab::ProjMat> {
  std::size_t operator()(const tracelab::ProjMat& m) const {
    const auto& r = m.rep();
    std::size_t h = r.a().hash();
    for (const auto* e : {&r.b(), &r.c(), &r.d()}) h = h * 1000003u ^ e->hash();
    return h;
  }
};

#include <cmath>
#include <unordered_set>

#include "tracelab/errors.hpp"
#include "tracelab/trace_analytics.hpp"

namespace tracelab {

namespace {

mpz_class m1_for_omega(const RingOfIntegers& ring) {
  return ring.is_rational() ? mpz_class(1) : m1_constant(ring, ring.omega());
}

QuadElem power_of_two_power(const QuadElem& c, unsigned n) {
  QuadElem x = c;
  for (unsigned i = 0; i < n; ++i) x = x * x;
  return x;
}

QuadElem in_ring_field(const QuadElem& x, const RingOfIntegers& ring) {
  return ring.is_rational() ? x : x.in_field(ring.field());
}

// |x|^2 for Q and imaginary quadratic fields.
Rational abs_sq(const QuadElem& x) { return modulus_squared(x); }

} // namespace

std::vector<QuadElem> delta_c_set(const QuadElem& c, const RingOfIntegers& ring, std::int64_t k_bound,
                                  unsigned n_bound) {
  if (k_bound < 1) throw PreconditionError("k_bound must be at least 1");
  QuadElem cc = in_ring_field(c, ring);
  QuadElem m1{Rational(m1_for_omega(ring))};
  std::vector<QuadElem> out;
  std::unordered_set<QuadElem> seen;
  QuadElem power = cc;
  for (unsigned n = 0; n <= n_bound; ++n) {
    QuadElem base = m1 * power;
    std::int64_t y_bound = ring.is_rational() ? 0 : k_bound;
    for (std::int64_t y = -y_bound; y <= y_bound; ++y) {
      for (std::int64_t x = -k_bound; x <= k_bound; ++x) {
        QuadElem v = ring.from_coordinates(Rational(x), Rational(y)) * base;
        if (seen.insert(v).second) out.push_back(v);
      }
    }
    power = power * power;
  }
  return out;
}

std::optional<unsigned> delta_c_exponent(const QuadElem& z, const QuadElem& c, const RingOfIntegers& ring,
                                         unsigned n_max) {
  QuadElem m1{Rational(m1_for_omega(ring))};
  QuadElem power = in_ring_field(c, ring);
  for (unsigned n = 0; n <= n_max; ++n) {
    if (power.is_zero()) return z.is_zero() ? std::optional<unsigned>(n) : std::nullopt;
    if (ring.contains(z / (m1 * power))) return n;
    power = power * power;
  }
  return std::nullopt;
}

DeltaCWitness delta_c_cluster_witness(const QuadElem& c_in, const RingOfIntegers& ring, unsigned n) {
  if (!ring.is_euclidean())
    throw UnsupportedRing("the witness construction needs Z or a Euclidean imaginary quadratic ring");
  if (!ring.is_rational() && ring.field().is_real_quadratic())
    throw UnsupportedRing("the witness construction is implemented for Z and imaginary quadratic rings");
  if (n < 1) throw PreconditionError("witness size n must be at least 1");
  QuadElem c = in_ring_field(c_in, ring);
  if (ring.contains(c)) throw PreconditionError("c is an algebraic integer of the ring; Delta_c clusters boundedly");

  DeltaCWitness w;
  w.c = c;

  // Class number 1: s = 0, t = 1, so c^(2^s (2^t - 1)) = c = p / q and g(k) = 2^k - 1.
  mpz_class den = ring.integral_denominator(c);
  QuadElem dq = in_ring_field(QuadElem(Rational(den)), ring);
  QuadElem dc = c * dq;
  QuadElem g = extended_gcd(dc, dq, ring).gcd;
  w.p = *exact_quotient(dc, g, ring);
  w.q = *exact_quotient(dq, g, ring);
  if (ring.is_rational() && w.q.rational_part().sign() < 0) {
    w.p = -w.p;
    w.q = -w.q;
  }
  w.q1 = prime_factor(w.q, ring);

  w.m1 = m1_for_omega(ring);
  w.m2 = m2_constant(ring);
  w.M = std::max(w.m1.get_d(), w.m2);

  // f(j): least g(k) > f(j-1) with |q|^g(k) >= 2 M^j |c| prod_{i<j} |p|^f(i).
  const double log_q = std::log(modulus_mpf(w.q).get_d());
  const double log_p = std::log(modulus_mpf(w.p).get_d());
  const double log_c = std::log(modulus_mpf(c).get_d());
  const double log_m = std::log(w.M);
  w.f.push_back(0);
  w.k.push_back(0);
  for (unsigned j = 1; j <= n; ++j) {
    double rhs = std::log(2.0) + j * log_m + log_c;
    for (unsigned i = 0; i < j; ++i) rhs += double(w.f[i]) * log_p;
    bool found = false;
    for (unsigned k = 1; k <= 40 && !found; ++k) {
      std::uint64_t gk = (std::uint64_t{1} << k) - 1;
      if (gk <= w.f.back()) continue;
      double lhs = double(gk) * log_q;
      double tol = 1e-9 * std::max(1.0, std::abs(rhs));
      bool holds = lhs > rhs + tol;
      if (!holds && std::abs(lhs - rhs) <= tol) {
        // Near tie: decide with 1024-bit floats.
        const unsigned bits = 1024;
        mpf_class l(0, bits), r(2, bits), tmp(0, bits);
        mpf_pow_ui(l.get_mpf_t(), modulus_mpf(w.q, bits).get_mpf_t(), gk);
        mpf_class m_val(w.m1.get_d() > w.m2 ? mpf_class(w.m1, bits)
                                           : mpf_class(sqrt(mpf_class(1 + ring.discriminant_radical() *
                                                                             ring.discriminant_radical(), bits)) + 1, bits));
        mpf_pow_ui(tmp.get_mpf_t(), m_val.get_mpf_t(), j);
        r *= tmp;
        r *= modulus_mpf(c, bits);
        for (unsigned i = 0; i < j; ++i) {
          mpf_pow_ui(tmp.get_mpf_t(), modulus_mpf(w.p, bits).get_mpf_t(), w.f[i]);
          r *= tmp;
        }
        holds = l >= r;
      }
      if (holds) {
        w.f.push_back(gk);
        w.k.push_back(k);
        found = true;
      }
    }
    if (!found) throw PreconditionError("no admissible f(" + std::to_string(j) + ") below g(40)");
  }

  // u_i p^f(i) - v_i (v_{i+1} ... v_n) q^f(i) = 1, solved from i = n down to 1.
  QuadElem one = in_ring_field(QuadElem(1), ring);
  w.u.assign(n + 1, QuadElem(0));
  w.v.assign(n + 1, QuadElem(0));
  QuadElem tail = one;
  for (unsigned i = n; i >= 1; --i) {
    QuadElem r = w.p.pow(static_cast<unsigned>(w.f[i]));
    QuadElem s = -(tail * w.q.pow(static_cast<unsigned>(w.f[i])));
    auto [ui, vi] = bezout_bounded(r, s, w.q1, ring);
    w.u[i] = ui;
    w.v[i] = vi;
    tail = tail * vi;
  }

  QuadElem m1{Rational(w.m1)};
  QuadElem ratio = w.p / w.q;
  w.m.push_back(m1 * tail);
  w.z.push_back(w.m[0] * c);
  QuadElem prefix = one;
  for (unsigned j = 1; j <= n; ++j) {
    w.m.push_back(m1 * w.u[j] * prefix);
    w.z.push_back(w.m[j] * c * ratio.pow(static_cast<unsigned>(w.f[j])));
    prefix = prefix * w.v[j];
  }

  // Postconditions, exactly.
  w.distinct = true;
  w.diameter_sq = Rational(0);
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) {
      if (w.z[i] == w.z[j]) w.distinct = false;
      Rational d = abs_sq(w.z[i] - w.z[j]);
      if (d > w.diameter_sq) w.diameter_sq = d;
      if (i == 0 && d > w.max_dist_sq_to_z0) w.max_dist_sq_to_z0 = d;
    }
  w.within_half = w.max_dist_sq_to_z0 <= Rational(1, 4);

  w.members = true;
  w.power_identity = true;
  for (unsigned j = 0; j <= n; ++j) {
    QuadElem cp = power_of_two_power(c, w.k[j]);
    if (!ring.contains(w.z[j] / (m1 * cp))) w.members = false;
    if (cp != ratio.pow(static_cast<unsigned>((std::uint64_t{1} << w.k[j]) - 1)) * c) w.power_identity = false;
  }
  return w;
}

} // namespace tracelab

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracelab/number_field.hpp"

namespace tracelab {

// ---------------------------------------------------------------------------
// Clustering, gap, growth

/// Counts per unit cell [m, m+1) x [n, n+1).
struct ClusterGrid {
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> cells;
  std::size_t max_count = 0;
  std::pair<std::int64_t, std::int64_t> max_cell{0, 0};
  std::size_t total = 0;

  std::size_t cells_touched() const { return cells.size(); }
};

ClusterGrid cluster_counts(const std::vector<std::complex<double>>& points);
/// Exact cell assignment.
ClusterGrid cluster_counts(const std::vector<QuadElem>& points);

struct GapResult {
  double value = 0;
  /// The closest pair found.
  std::size_t i = 0, j = 0;
};

/// Minimum pairwise distance; throws PreconditionError for fewer than two points.
GapResult gap(const std::vector<std::complex<double>>& points);
/// Exact version: candidate pairs are compared exactly.
GapResult gap(const std::vector<QuadElem>& points);

/// #{a : |a| <= n}
std::size_t growth_count(const std::vector<QuadElem>& points, std::int64_t n);

struct GrowthReport {
  std::vector<std::pair<std::int64_t, std::size_t>> counts;
  double slope = 0;
  double intercept = 0;
};

/// growth_count for n = 1..n_max and the least-squares line through the counts.
GrowthReport growth_report(const std::vector<QuadElem>& points, std::int64_t n_max);

// ---------------------------------------------------------------------------
// Omega / Theta / Phi

/// Theta(k, l) = k l beta^2 a + k beta^2 b + l c
QuadElem theta_map(const QuadElem& a, const QuadElem& b, const QuadElem& c, const QuadElem& beta_sq,
                   std::int64_t k, std::int64_t l);

struct CollisionReport {
  std::int64_t K = 0;
  std::size_t distinct_values = 0;
  std::size_t collision_pairs = 0;   // unordered pairs (k,l) != (k',l') with equal Theta
  std::size_t phi_equal_pairs = 0;   // of those, pairs with equal Phi image
  bool phi_checked = false;
  std::vector<std::array<std::int64_t, 4>> examples; // first few colliding (k, l, k', l')
};

/// Scans k, l in [-K, K]. Phi(k, l) = (s k l + k, t k l + l) is evaluated when (s, t) is given.
CollisionReport omega_collision_scan(const QuadElem& a, const QuadElem& b, const QuadElem& c,
                                     const QuadElem& beta_sq, std::int64_t K,
                                     std::optional<std::pair<Rational, Rational>> st = std::nullopt);

// ---------------------------------------------------------------------------
// Counting sets

/// {(k, l) : k, l >= 1, k l <= N}, ordered by k l then k.
std::vector<std::array<std::int64_t, 2>> dn_set(std::int64_t N);

/// {(r1, r2, r3, r4) : 1 <= r2 <= r1 <= N, (r1, r2) = 1, 1 <= r4 <= r3 <= N / r1, (r3, r4) = 1}.
std::vector<std::array<std::int64_t, 4>> rn_set(std::int64_t N);

/// sum_{i <= N} phi(i) sum_{j <= N/i} phi(j)
std::uint64_t rn_size_formula(std::int64_t N);

/// Euler phi for 0..N (phi[0] = 0).
std::vector<std::int64_t> totients(std::int64_t N);

/// f(m, n, m', n') = (n n', n m' + m n', m m')
std::array<std::int64_t, 3> f_map(std::int64_t m, std::int64_t n, std::int64_t m2, std::int64_t n2);
/// g_x(m, n, m', n') = n n' x^2 + (n m' + m n') x + m m'
QuadElem g_map(const QuadElem& x, const std::array<std::int64_t, 4>& tuple);
std::complex<double> g_map(std::complex<double> x, const std::array<std::int64_t, 4>& tuple);

struct TwoToOneReport {
  std::int64_t N = 0;
  std::size_t tuples = 0;
  std::size_t images = 0;
  std::size_t max_fiber = 0;
  std::size_t swap_fibers = 0;   // fibers of size 2
  bool fibers_at_most_two = true;
  bool swap_characterization = true;
  bool diagonal_injective = true;
  std::vector<std::array<std::int64_t, 4>> counterexamples;

  bool passed() const { return fibers_at_most_two && swap_characterization && diagonal_injective; }
};

/// Groups R_N by f-image. R_N grows with N, so a pass at N covers every smaller N.
TwoToOneReport rn_two_to_one_check(std::int64_t N);

struct TotientReport {
  std::int64_t N = 0;
  std::uint64_t sum = 0;
  double asymptotic = 0; // 3 N^2 / pi^2
  double ratio = 0;
  bool pointwise_bound_holds = true; // checked for 3 <= n <= N
  std::int64_t first_failure = 0;
};

TotientReport totient_sum_check(std::int64_t N);

// ---------------------------------------------------------------------------
// Delta_c

/// {M1 x c^(2^n) : x = X + Y omega with |X|, |Y| <= k_bound (Y = 0 over Z), 0 <= n <= n_bound},
/// deduplicated, in generation order. M1 is taken for alpha = omega, i.e. M1 = 1.
std::vector<QuadElem> delta_c_set(const QuadElem& c, const RingOfIntegers& ring, std::int64_t k_bound,
                                  unsigned n_bound);

/// Whether z = M1 x c^(2^n) for some x in the ring and 0 <= n <= n_max.
std::optional<unsigned> delta_c_exponent(const QuadElem& z, const QuadElem& c, const RingOfIntegers& ring,
                                         unsigned n_max);

struct DeltaCWitness {
  QuadElem c;
  QuadElem p, q;     // c = p / q in lowest terms
  QuadElem q1;       // prime factor of q
  mpz_class m1;
  double m2 = 0;
  double M = 0;      // max(M1, M2)
  std::vector<std::uint64_t> f;  // f(0..n)
  std::vector<unsigned> k;       // f(j) = g(k_j) = 2^k_j - 1, so z_j uses c^(2^k_j)
  std::vector<QuadElem> u, v;    // index 1..n; entry 0 unused
  std::vector<QuadElem> m;       // m_0..m_n
  std::vector<QuadElem> z;       // z_0..z_n
  Rational max_dist_sq_to_z0;    // max_j |z_j - z_0|^2
  Rational diameter_sq;          // max_{i,j} |z_i - z_j|^2
  bool distinct = false;
  bool within_half = false;      // |z_j - z_0| <= 1/2 for all j
  bool members = false;          // every z_j in Delta_c
  bool power_identity = false;   // c^(2^k) = (p/q)^(2^k - 1) c for the k used

  bool ok() const { return distinct && within_half && members && power_identity; }
};

/// n + 1 distinct elements of Delta_c within distance 1/2 of z_0, for c outside the ring.
DeltaCWitness delta_c_cluster_witness(const QuadElem& c, const RingOfIntegers& ring, unsigned n);

// ---------------------------------------------------------------------------
// Kronecker

struct KroneckerReport {
  std::int64_t K = 0;
  std::vector<double> envelope; // envelope[K'-1] = min over max(|k|,|l|) <= K'
  double min_value = 0;
  std::int64_t best_k = 0, best_l = 0;
};

/// min over k, l in [-K, K] of |k theta1 - l theta2 - delta|; (0, 0) is skipped when delta = 0.
KroneckerReport kronecker_gap_demo(std::complex<double> theta1, std::complex<double> theta2,
                                   std::complex<double> delta, std::int64_t K);

} // namespace tracelab

#include "tracelab/trace_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw PreconditionError("cell index " + z.get_str() + " does not fit in 64 bits");
  return z.get_si();
}

void add_to_grid(ClusterGrid& grid, std::int64_t m, std::int64_t n) {
  std::size_t& count = grid.cells[{m, n}];
  ++count;
  ++grid.total;
  if (count > grid.max_count || (count == grid.max_count && std::make_pair(m, n) < grid.max_cell)) {
    grid.max_count = count;
    grid.max_cell = {m, n};
  }
}

// Exact |x - y| comparison: sign of |x| - |y|.
int modulus_cmp(const QuadElem& x, const QuadElem& y) {
  auto c = compare_modulus(x, y);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

} // namespace

// ---------------------------------------------------------------------------
// Clustering, gap, growth

ClusterGrid cluster_counts(const std::vector<std::complex<double>>& points) {
  ClusterGrid grid;
  for (const auto& z : points) {
    add_to_grid(grid, static_cast<std::int64_t>(std::floor(z.real())), static_cast<std::int64_t>(std::floor(z.imag())));
  }
  return grid;
}

ClusterGrid cluster_counts(const std::vector<QuadElem>& points) {
  ClusterGrid grid;
  for (const auto& z : points) add_to_grid(grid, to_i64(floor_real(z)), to_i64(floor_imag(z)));
  return grid;
}

GapResult gap(const std::vector<std::complex<double>>& points) {
  if (points.size() < 2) throw PreconditionError("gap needs at least two points");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].real() != points[b].real()) return points[a].real() < points[b].real();
    return points[a].imag() < points[b].imag();
  });
  GapResult best;
  best.value = INFINITY;
  for (std::size_t x = 0; x < order.size(); ++x) {
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      const auto& p = points[order[x]];
      const auto& q = points[order[y]];
      if (q.real() - p.real() > best.value) break;
      double d = std::abs(p - q);
      if (d < best.value) {
        best.value = d;
        best.i = std::min(order[x], order[y]);
        best.j = std::max(order[x], order[y]);
      }
    }
  }
  return best;
}

GapResult gap(const std::vector<QuadElem>& points) {
  if (points.size() < 2) throw PreconditionError("gap needs at least two points");
  std::vector<std::complex<double>> approx;
  approx.reserve(points.size());
  for (const auto& p : points) approx.push_back(embed(p));
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (approx[a].real() != approx[b].real()) return approx[a].real() < approx[b].real();
    return approx[a].imag() < approx[b].imag();
  });

  std::optional<QuadElem> best_diff;
  double best_approx = INFINITY;
  GapResult out;
  for (std::size_t x = 0; x < order.size(); ++x) {
    const auto& p = approx[order[x]];
    double tol_p = 1e-9 * std::max(1.0, std::abs(p));
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      const auto& q = approx[order[y]];
      double tol = std::max(tol_p, 1e-9 * std::abs(q));
      if (q.real() - p.real() > best_approx + tol) break;
      double d = std::abs(p - q);
      if (d > best_approx + tol) continue;
      QuadElem diff = points[order[x]] - points[order[y]];
      if (!best_diff || modulus_cmp(diff, *best_diff) < 0) {
        best_diff = diff;
        best_approx = d;
        out.i = std::min(order[x], order[y]);
        out.j = std::max(order[x], order[y]);
      }
    }
  }
  out.value = modulus_mpf(*best_diff).get_d();
  return out;
}

std::size_t growth_count(const std::vector<QuadElem>& points, std::int64_t n) {
  QuadElem bound{Rational(n)};
  std::size_t count = 0;
  for (const auto& p : points)
    if (modulus_cmp(p, bound) <= 0) ++count;
  return count;
}

GrowthReport growth_report(const std::vector<QuadElem>& points, std::int64_t n_max) {
  if (n_max < 1) throw PreconditionError("growth range must include n = 1");
  GrowthReport out;
  // One exact modulus floor per point, then a cumulative histogram.
  std::vector<std::size_t> hist(static_cast<std::size_t>(n_max) + 1, 0);
  for (const auto& p : points) {
    std::int64_t lo = 0;
    for (std::int64_t step = std::int64_t{1} << 40; step > 0; step >>= 1) {
      std::int64_t trial = lo + step;
      if (trial <= n_max && modulus_cmp(p, QuadElem(Rational(trial))) > 0) lo = trial;
    }
    // |p| <= lo + 1 (or |p| == 0 when lo == 0 and |p| <= 0)
    std::int64_t first = modulus_cmp(p, QuadElem(Rational(lo))) <= 0 ? lo : lo + 1;
    if (first <= n_max) ++hist[static_cast<std::size_t>(first)];
  }
  std::size_t running = hist[0];
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    running += hist[static_cast<std::size_t>(n)];
    out.counts.emplace_back(n, running);
    double x = double(n), y = double(running);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double cnt = double(n_max);
  double denom = cnt * sxx - sx * sx;
  out.slope = denom == 0 ? 0 : (cnt * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / cnt;
  return out;
}

// ---------------------------------------------------------------------------
// Omega / Theta / Phi

QuadElem theta_map(const QuadElem& a, const QuadElem& b, const QuadElem& c, const QuadElem& beta_sq,
                   std::int64_t k, std::int64_t l) {
  QuadElem kk{Rational(k)}, ll{Rational(l)};
  return kk * ll * beta_sq * a + kk * beta_sq * b + ll * c;
}

CollisionReport omega_collision_scan(const QuadElem& a, const QuadElem& b, const QuadElem& c,
                                     const QuadElem& beta_sq, std::int64_t K,
                                     std::optional<std::pair<Rational, Rational>> st) {
  if (K < 0) throw PreconditionError("K must be nonnegative");
  CollisionReport out;
  out.K = K;
  out.phi_checked = st.has_value();
  std::unordered_map<QuadElem, std::vector<std::pair<std::int64_t, std::int64_t>>> by_value;
  QuadElem ba = beta_sq * a, bb = beta_sq * b;
  for (std::int64_t k = -K; k <= K; ++k) {
    for (std::int64_t l = -K; l <= K; ++l) {
      QuadElem kk{Rational(k)}, ll{Rational(l)};
      by_value[kk * ll * ba + kk * bb + ll * c].emplace_back(k, l);
    }
  }
  out.distinct_values = by_value.size();
  // Deterministic example order: sort the colliding groups by their first member.
  std::vector<const std::vector<std::pair<std::int64_t, std::int64_t>>*> groups;
  for (const auto& [v, members] : by_value)
    if (members.size() > 1) groups.push_back(&members);
  std::sort(groups.begin(), groups.end(), [](auto* x, auto* y) { return x->front() < y->front(); });
  for (const auto* members : groups) {
    for (std::size_t i = 0; i < members->size(); ++i) {
      for (std::size_t j = i + 1; j < members->size(); ++j) {
        auto [k1, l1] = (*members)[i];
        auto [k2, l2] = (*members)[j];
        ++out.collision_pairs;
        if (st) {
          const auto& [s, t] = *st;
          Rational kl1 = Rational(k1) * Rational(l1), kl2 = Rational(k2) * Rational(l2);
          bool equal = s * kl1 + Rational(k1) == s * kl2 + Rational(k2) && t * kl1 + Rational(l1) == t * kl2 + Rational(l2);
          if (equal) ++out.phi_equal_pairs;
        }
        if (out.examples.size() < 20) out.examples.push_back({k1, l1, k2, l2});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counting sets

std::vector<std::array<std::int64_t, 2>> dn_set(std::int64_t N) {
  if (N < 1) throw PreconditionError("N must be at least 1");
  std::vector<std::array<std::int64_t, 2>> out;
  for (std::int64_t prod = 1; prod <= N; ++prod)
    for (std::int64_t k = 1; k <= prod; ++k)
      if (prod % k == 0) out.push_back({k, prod / k});
  return out;
}

std::vector<std::int64_t> totients(std::int64_t N) {
  std::vector<std::int64_t> phi(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)) + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::int64_t p = 2; p <= N; ++p) {
    if (phi[p] != p) continue; // composite
    for (std::int64_t m = p; m <= N; m += p) phi[m] -= phi[m] / p;
  }
  return phi;
}

std::vector<std::array<std::int64_t, 4>> rn_set(std::int64_t N) {
  if (N < 1) throw PreconditionError("N must be at least 1");
  std::vector<std::array<std::int64_t, 4>> out;
  for (std::int64_t r1 = 1; r1 <= N; ++r1)
    for (std::int64_t r2 = 1; r2 <= r1; ++r2) {
      if (std::gcd(r1, r2) != 1) continue;
      for (std::int64_t r3 = 1; r3 <= N / r1; ++r3)
        for (std::int64_t r4 = 1; r4 <= r3; ++r4)
          if (std::gcd(r3, r4) == 1) out.push_back({r1, r2, r3, r4});
    }
  return out;
}

std::uint64_t rn_size_formula(std::int64_t N) {
  auto phi = totients(N);
  std::vector<std::uint64_t> prefix(phi.size(), 0);
  for (std::size_t i = 1; i < phi.size(); ++i) prefix[i] = prefix[i - 1] + std::uint64_t(phi[i]);
  std::uint64_t total = 0;
  for (std::int64_t i = 1; i <= N; ++i) total += std::uint64_t(phi[i]) * prefix[N / i];
  return total;
}

std::array<std::int64_t, 3> f_map(std::int64_t m, std::int64_t n, std::int64_t m2, std::int64_t n2) {
  return {n * n2, n * m2 + m * n2, m * m2};
}

QuadElem g_map(const QuadElem& x, const std::array<std::int64_t, 4>& t) {
  auto [A, B, C] = f_map(t[0], t[1], t[2], t[3]);
  return QuadElem(Rational(A)) * x * x + QuadElem(Rational(B)) * x + QuadElem(Rational(C));
}

std::complex<double> g_map(std::complex<double> x, const std::array<std::int64_t, 4>& t) {
  auto [A, B, C] = f_map(t[0], t[1], t[2], t[3]);
  return double(A) * x * x + double(B) * x + double(C);
}

namespace {

struct TripleHash {
  std::size_t operator()(const std::array<std::int64_t, 3>& a) const {
    std::size_t h = std::hash<std::int64_t>{}(a[0]);
    h = h * 1000003u ^ std::hash<std::int64_t>{}(a[1]);
    return h * 1000003u ^ std::hash<std::int64_t>{}(a[2]);
  }
};

} // namespace

TwoToOneReport rn_two_to_one_check(std::int64_t N) {
  TwoToOneReport out;
  out.N = N;
  auto tuples = rn_set(N);
  out.tuples = tuples.size();
  std::unordered_map<std::array<std::int64_t, 3>, std::vector<std::size_t>, TripleHash> fibers;
  fibers.reserve(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const auto& t = tuples[i];
    fibers[f_map(t[0], t[1], t[2], t[3])].push_back(i);
  }
  out.images = fibers.size();
  for (const auto& [image, members] : fibers) {
    out.max_fiber = std::max(out.max_fiber, members.size());
    if (members.size() > 2) {
      out.fibers_at_most_two = false;
      if (out.counterexamples.size() < 10) out.counterexamples.push_back(tuples[members[0]]);
      continue;
    }
    if (members.size() == 2) {
      ++out.swap_fibers;
      const auto& x = tuples[members[0]];
      const auto& y = tuples[members[1]];
      bool swapped = x[0] == y[2] && x[1] == y[3] && x[2] == y[0] && x[3] == y[1];
      if (!swapped) {
        out.swap_characterization = false;
        if (out.counterexamples.size() < 10) out.counterexamples.push_back(x);
      }
      for (const auto* t : {&x, &y}) {
        if ((*t)[0] == (*t)[2] && (*t)[1] == (*t)[3]) {
          out.diagonal_injective = false;
          if (out.counterexamples.size() < 10) out.counterexamples.push_back(*t);
        }
      }
    }
  }
  std::sort(out.counterexamples.begin(), out.counterexamples.end());
  return out;
}

TotientReport totient_sum_check(std::int64_t N) {
  if (N < 2) throw PreconditionError("totient_sum_check needs N >= 2");
  TotientReport out;
  out.N = N;
  auto phi = totients(N);
  for (std::int64_t n = 1; n <= N; ++n) out.sum += std::uint64_t(phi[n]);
  out.asymptotic = 3.0 * double(N) * double(N) / (M_PI * M_PI);
  out.ratio = double(out.sum) / out.asymptotic;
  const double e_gamma = std::exp(0.57721566490153286061);
  for (std::int64_t n = 3; n <= N; ++n) {
    double ll = std::log(std::log(double(n)));
    double bound = double(n) / (e_gamma * ll + 3.0 / ll);
    if (!(double(phi[n]) > bound)) {
      out.pointwise_bound_holds = false;
      out.first_failure = n;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kronecker

KroneckerReport kronecker_gap_demo(std::complex<double> theta1, std::complex<double> theta2,
                                   std::complex<double> delta, std::int64_t K) {
  if (K < 1) throw PreconditionError("K must be at least 1");
  KroneckerReport out;
  out.K = K;
  out.min_value = INFINITY;
  const bool skip_origin = delta == std::complex<double>(0, 0);
  auto visit = [&](std::int64_t k, std::int64_t l) {
    if (skip_origin && k == 0 && l == 0) return;
    double v = std::abs(double(k) * theta1 - double(l) * theta2 - delta);
    if (v < out.min_value) {
      out.min_value = v;
      out.best_k = k;
      out.best_l = l;
    }
  };
  visit(0, 0);
  for (std::int64_t r = 1; r <= K; ++r) {
    // The ring max(|k|, |l|) = r.
    for (std::int64_t t = -r; t <= r; ++t) {
      visit(t, r);
      visit(t, -r);
      if (t != r && t != -r) {
        visit(r, t);
        visit(-r, t);
      }
    }
    out.envelope.push_back(out.min_value);
  }
  return out;
}

} // namespace tracelab

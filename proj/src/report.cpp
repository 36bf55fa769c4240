#include "tracelab/report.hpp"

#include <cstdio>
#include <sstream>

namespace tracelab {

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json quad_json(const QuadElem& x) {
  auto z = embed(x);
  return Json{{"exact", x.to_string()}, {"re", decimal(z.real())}, {"im", decimal(z.imag())}};
}

Json to_json(const ClusterGrid& grid) {
  return Json{{"points", grid.total},
              {"cells_touched", grid.cells_touched()},
              {"max_count", grid.max_count},
              {"max_cell", {grid.max_cell.first, grid.max_cell.second}},
              {"convention", "half-open [m,m+1)x[n,n+1)"}};
}

Json to_json(const GapResult& g, const std::vector<QuadElem>& points) {
  Json j{{"gap", decimal(g.value)}};
  if (g.i < points.size() && g.j < points.size()) {
    j["pair"] = {points[g.i].to_string(), points[g.j].to_string()};
    j["difference"] = (points[g.i] - points[g.j]).to_string();
  }
  return j;
}

Json to_json(const GrowthReport& g) {
  Json counts = Json::array();
  for (const auto& [n, c] : g.counts) counts.push_back({n, c});
  return Json{{"counts", counts}, {"slope", decimal(g.slope)}, {"intercept", decimal(g.intercept)}};
}

Json to_json(const CollisionReport& r) {
  Json ex = Json::array();
  for (const auto& e : r.examples) ex.push_back({e[0], e[1], e[2], e[3]});
  Json j{{"K", r.K}, {"distinct_values", r.distinct_values}, {"collision_pairs", r.collision_pairs}};
  if (r.phi_checked) j["phi_equal_pairs"] = r.phi_equal_pairs;
  j["examples"] = ex;
  return j;
}

Json to_json(const TwoToOneReport& r) {
  Json ce = Json::array();
  for (const auto& t : r.counterexamples) ce.push_back({t[0], t[1], t[2], t[3]});
  return Json{{"N", r.N},
              {"tuples", r.tuples},
              {"images", r.images},
              {"max_fiber", r.max_fiber},
              {"swap_fibers", r.swap_fibers},
              {"fibers_at_most_two", r.fibers_at_most_two},
              {"swap_characterization", r.swap_characterization},
              {"diagonal_injective", r.diagonal_injective},
              {"passed", r.passed()},
              {"counterexamples", ce}};
}

Json to_json(const TotientReport& r) {
  return Json{{"N", r.N},
              {"sum", r.sum},
              {"asymptotic", decimal(r.asymptotic)},
              {"ratio", decimal(r.ratio)},
              {"pointwise_bound_holds", r.pointwise_bound_holds},
              {"first_failure", r.first_failure}};
}

Json to_json(const DeltaCWitness& w) {
  Json z = Json::array();
  for (const auto& x : w.z) z.push_back(quad_json(x));
  Json u = Json::array(), v = Json::array(), m = Json::array();
  for (std::size_t i = 1; i < w.u.size(); ++i) {
    u.push_back(w.u[i].to_string());
    v.push_back(w.v[i].to_string());
  }
  for (const auto& x : w.m) m.push_back(x.to_string());
  mpf_class dist(w.max_dist_sq_to_z0.to_mpq(), 256);
  dist = sqrt(dist);
  mpf_class diam(w.diameter_sq.to_mpq(), 256);
  diam = sqrt(diam);
  mp_exp_t e1, e2;
  std::string d1 = dist.get_str(e1, 10, 30), d2 = diam.get_str(e2, 10, 30);
  auto fmt = [](const std::string& digits, mp_exp_t e) {
    if (digits.empty()) return std::string("0");
    std::string s = digits[0] == '-' ? digits.substr(1) : digits;
    return std::string("0.") + s + "e" + std::to_string(e);
  };
  Json f = Json::array(), k = Json::array();
  for (auto x : w.f) f.push_back(x);
  for (auto x : w.k) k.push_back(x);
  return Json{{"c", w.c.to_string()},
              {"p", w.p.to_string()},
              {"q", w.q.to_string()},
              {"q1", w.q1.to_string()},
              {"M1", w.m1.get_str()},
              {"M2", decimal(w.m2)},
              {"M", decimal(w.M)},
              {"f", f},
              {"k", k},
              {"u", u},
              {"v", v},
              {"m", m},
              {"z", z},
              {"max_dist_to_z0", fmt(d1, e1)},
              {"diameter", fmt(d2, e2)},
              {"distinct", w.distinct},
              {"within_half", w.within_half},
              {"members", w.members},
              {"power_identity", w.power_identity},
              {"ok", w.ok()}};
}

Json to_json(const KroneckerReport& r) {
  Json env = Json::array();
  for (std::size_t i = 0; i < r.envelope.size(); ++i) env.push_back({i + 1, decimal(r.envelope[i])});
  return Json{{"K", r.K}, {"min", decimal(r.min_value)}, {"best_k", r.best_k}, {"best_l", r.best_l}, {"envelope", env}};
}

Json to_json(const IntegralityViolation& v) {
  Json dens = Json::array();
  for (const auto& d : v.doubling_denominators) dens.push_back(d.get_str());
  return Json{{"trace", v.trace.to_string()},
              {"word_length", v.word_length},
              {"doubling_denominators", dens},
              {"certified", v.certified}};
}

Json to_json(const ConjugateGrowth& g) {
  Json shells = Json::array();
  for (const auto& [s, m] : g.shell_max) shells.push_back({s, decimal(m)});
  Json j{{"flag", to_string(g.flag)}, {"shell_max", shells}};
  if (g.flag == ConjugateFlag::unbounded_trend) {
    j["window_start"] = g.window_start;
    j["window_ratio"] = decimal(g.window_ratio);
  }
  return j;
}

Json to_json(const ArithmeticityReport& r) {
  Json viol = Json::array();
  for (const auto& v : r.violations) viol.push_back(to_json(v));
  return Json{{"group", r.group},
              {"radius", r.radius},
              {"trace_source", r.trace_source},
              {"trace_count", r.trace_count},
              {"trace_field_d", r.trace_field.is_rational() ? Json(nullptr) : Json(r.trace_field.d())},
              {"trace_field", r.trace_field.to_string()},
              {"integral", r.integral},
              {"violations", viol},
              {"conjugate_growth", to_json(r.conjugate_growth)},
              {"elementary", r.elementary},
              {"verdict", to_string(r.verdict)},
              {"witness", r.witness ? Json(r.witness->to_string()) : Json(nullptr)},
              {"witness_reason", r.witness_reason}};
}

Json to_json(const SubtractionReport& r) {
  Json viol = Json::array();
  for (const auto& v : r.violations) viol.push_back({v.a.to_string(), v.b.to_string(), v.difference.to_string()});
  return Json{{"window", r.window.to_string()},
              {"pairs_checked", r.pairs_checked},
              {"closed", r.closed},
              {"violation_count", r.violation_count},
              {"violations", viol},
              {"contains_2", r.has_two},
              {"contains_4", r.has_four},
              {"identity_four", r.identities.four_identity},
              {"identity_four_lhs", r.identities.four_lhs},
              {"identity_two", r.identities.two_identity}};
}

Json to_json(const TraceSet& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    Json q = quad_json(e.exact);
    q["word_length"] = e.word_length;
    entries.push_back(q);
  }
  return Json{{"radius", t.radius},
              {"reduced", t.reduced},
              {"field", t.field.to_string()},
              {"count", t.size()},
              {"traces", entries}};
}

std::string cluster_csv(const ClusterGrid& grid) {
  std::ostringstream os;
  os << "cell,m,n,count\n";
  std::size_t idx = 0;
  for (const auto& [cell, count] : grid.cells) os << idx++ << ',' << cell.first << ',' << cell.second << ',' << count << '\n';
  return os.str();
}

std::string trace_csv(const TraceSet& t) {
  std::ostringstream os;
  os << "exact,re,im,word_length\n";
  for (const auto& e : t.entries)
    os << e.exact.to_string() << ',' << decimal(e.embedded.real()) << ',' << decimal(e.embedded.imag()) << ','
       << e.word_length << '\n';
  return os.str();
}

std::string points_data(const std::vector<QuadElem>& points) {
  std::ostringstream os;
  for (const auto& p : points) {
    auto z = embed(p);
    os << decimal(z.real()) << ' ' << decimal(z.imag()) << '\n';
  }
  return os.str();
}

} // namespace tracelab

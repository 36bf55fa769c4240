#include "tracelab/group_enum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace tracelab {

std::string to_string(ExpectedClass c) {
  switch (c) {
  case ExpectedClass::arithmetic:
    return "arithmetic";
  case ExpectedClass::non_arithmetic:
    return "non_arithmetic";
  case ExpectedClass::unknown:
    return "unknown";
  }
  return "unknown";
}

ExpectedClass parse_expected_class(std::string_view text) {
  if (text == "arithmetic") return ExpectedClass::arithmetic;
  if (text == "non_arithmetic") return ExpectedClass::non_arithmetic;
  if (text == "unknown" || text.empty()) return ExpectedClass::unknown;
  throw ParseError("expected_class must be arithmetic, non_arithmetic or unknown, got '" + std::string(text) + "'");
}

void validate(const GroupSpec& spec) {
  if (spec.generators.empty()) throw PreconditionError("group '" + spec.name + "' has no generators");
  for (const auto& g : spec.generators) {
    if (g.field() != spec.field && !(g.field().is_rational()))
      throw FieldMismatch("generator " + g.rep().to_string() + " is not over " + spec.field.to_string());
  }
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

ProjMat pm(const QuadElem& a, const QuadElem& b, const QuadElem& c, const QuadElem& d) {
  return ProjMat(Mat2::make(a, b, c, d));
}

std::optional<long> parse_arg(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix || name.back() != ')') return std::nullopt;
  std::string inner(name.substr(prefix.size(), name.size() - prefix.size() - 1));
  try {
    std::size_t used = 0;
    long v = std::stol(inner, &used);
    if (used != inner.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

GroupSpec psl2z() {
  GroupSpec g;
  g.name = "psl2z";
  g.generators = {pm(0, -1, 1, 0), pm(1, 1, 0, 1)};
  g.expected_class = ExpectedClass::arithmetic;
  return g;
}

GroupSpec gamma0(long n) {
  GroupSpec g;
  g.name = "gamma0(" + std::to_string(n) + ")";
  g.expected_class = ExpectedClass::arithmetic;
  switch (n) {
  case 1:
    g.generators = psl2z().generators;
    break;
  case 2:
  case 3:
  case 4:
    g.generators = {pm(1, 1, 0, 1), pm(1, 0, n, 1)};
    break;
  case 5:
    g.generators = {pm(1, 1, 0, 1), pm(2, -1, 5, -2), pm(3, -2, 5, -3)};
    break;
  case 6:
    g.generators = {pm(1, 1, 0, 1), pm(1, 0, 6, 1), pm(5, -2, 18, -7)};
    break;
  default:
    throw PreconditionError("gamma0(N) is catalogued for 1 <= N <= 6 only");
  }
  return g;
}

GroupSpec hecke(long q) {
  GroupSpec g;
  g.name = "hecke(" + std::to_string(q) + ")";
  QuadElem lambda;
  switch (q) {
  case 4:
    lambda = QuadElem(0, 1, FieldDesc(2));
    g.expected_class = ExpectedClass::arithmetic;
    break;
  case 5:
    lambda = QuadElem(Rational(1, 2), Rational(1, 2), FieldDesc(5));
    g.expected_class = ExpectedClass::non_arithmetic;
    break;
  case 6:
    lambda = QuadElem(0, 1, FieldDesc(3));
    g.expected_class = ExpectedClass::arithmetic;
    break;
  default:
    throw PreconditionError("hecke(q) is catalogued for q in {4, 5, 6} only");
  }
  g.field = lambda.field();
  g.generators = {pm(0, -1, 1, 0), ProjMat(Mat2::translation(lambda))};
  return g;
}

GroupSpec bianchi(long d) {
  if (d != -1 && d != -2 && d != -3 && d != -7 && d != -11)
    throw PreconditionError("bianchi(d) is catalogued for d in {-1, -2, -3, -7, -11} only");
  GroupSpec g;
  g.name = "bianchi(" + std::to_string(d) + ")";
  g.field = FieldDesc(d);
  RingOfIntegers ring = ring_of_integers(g.field);
  QuadElem one = QuadElem(1).in_field(g.field);
  g.generators = {ProjMat(Mat2::translation(one)), ProjMat(Mat2::translation(ring.omega())), pm(0, -1, 1, 0)};
  g.expected_class = ExpectedClass::arithmetic;
  return g;
}

} // namespace

GroupSpec catalog(std::string_view name) {
  if (name == "psl2z") return psl2z();
  if (auto n = parse_arg(name, "gamma0(")) return gamma0(*n);
  if (auto q = parse_arg(name, "hecke(")) return hecke(*q);
  if (auto d = parse_arg(name, "bianchi(")) return bianchi(*d);
  throw PreconditionError("unknown catalog group '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out{"psl2z"};
  for (int n = 1; n <= 6; ++n) out.push_back("gamma0(" + std::to_string(n) + ")");
  for (int q : {4, 5, 6}) out.push_back("hecke(" + std::to_string(q) + ")");
  for (int d : {-1, -2, -3, -7, -11}) out.push_back("bianchi(" + std::to_string(d) + ")");
  return out;
}

GroupSpec parse_group_spec(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("group spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("group spec must be a JSON object");
  GroupSpec g;
  try {
    g.name = j.value("name", std::string("custom"));
    std::int64_t d = j.value("d", std::int64_t{1});
    if (d != 1) g.field = FieldDesc(d);
    if (!j.contains("generators") || !j["generators"].is_array())
      throw ParseError("group spec needs a 'generators' array");
    for (const auto& m : j["generators"]) {
      if (!m.is_string()) throw ParseError("each generator must be a matrix string like \"[a,b;c,d]\"");
      g.generators.emplace_back(parse_mat(m.get<std::string>(), g.field));
    }
    g.expected_class = parse_expected_class(j.value("expected_class", std::string("unknown")));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad group spec field: ") + e.what());
  }
  validate(g);
  return g;
}

GroupSpec load_group_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_spec(ss.str());
}

// ---------------------------------------------------------------------------
// Ball enumeration

std::optional<unsigned> Ball::length_of(const ProjMat& g) const {
  auto it = index.find(g.key());
  if (it == index.end()) return std::nullopt;
  return word_length[it->second];
}

BudgetExceeded::BudgetExceeded(std::size_t cap, std::shared_ptr<const Ball> partial)
    : Error("element budget of " + std::to_string(cap) + " exceeded; completed radius " +
            std::to_string(partial->radius)),
      partial_(std::move(partial)) {}

std::size_t default_budget() {
  const char* env = std::getenv("TRACELAB_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument("budget");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw PreconditionError("TRACELAB_BUDGET must be a positive integer, got '" + std::string(env) + "'");
  }
}

namespace {

struct Product {
  ProjMat element;
  std::string key;
};

// Products frontier[i] * gens[j], computed in parallel; output order is i-major.
std::vector<Product> expand(const std::vector<const ProjMat*>& frontier, const std::vector<ProjMat>& gens) {
  std::vector<Product> out(frontier.size() * gens.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        ProjMat p = *frontier[i] * gens[j];
        std::string key = p.key();
        out[i * gens.size() + j] = Product{std::move(p), std::move(key)};
      }
    }
  };
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<std::size_t>(threads, 16);
  if (frontier.size() < 256 || threads == 1) {
    work(0, frontier.size());
    return out;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (frontier.size() + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    std::size_t begin = t * chunk;
    std::size_t end = std::min(frontier.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

} // namespace

Ball enumerate_ball(const GroupSpec& spec, unsigned radius, std::size_t cap) {
  validate(spec);
  if (radius < 1) throw PreconditionError("ball radius must be at least 1");

  std::vector<ProjMat> gens;
  std::unordered_map<std::string, bool> seen_gen;
  for (const auto& g : spec.generators) {
    ProjMat gg(g.rep().field() == spec.field ? g.rep() : Mat2::make(g.rep().a().in_field(spec.field),
                                                                    g.rep().b().in_field(spec.field),
                                                                    g.rep().c().in_field(spec.field),
                                                                    g.rep().d().in_field(spec.field)));
    for (const ProjMat& x : {gg, gg.inverse()}) {
      if (seen_gen.emplace(x.key(), true).second) gens.push_back(x);
    }
  }

  auto ball = std::make_shared<Ball>();
  ball->field = spec.field;
  ProjMat id(Mat2::identity(spec.field));
  ball->elements.push_back(id);
  ball->word_length.push_back(0);
  ball->index.emplace(id.key(), 0);

  std::size_t level_begin = 0;
  for (unsigned len = 1; len <= radius; ++len) {
    std::size_t level_end = ball->elements.size();
    std::vector<const ProjMat*> frontier;
    frontier.reserve(level_end - level_begin);
    for (std::size_t i = level_begin; i < level_end; ++i) frontier.push_back(&ball->elements[i]);
    std::vector<Product> products = expand(frontier, gens);
    for (auto& p : products) {
      if (ball->index.count(p.key) != 0) continue;
      if (ball->elements.size() >= cap) {
        // Roll back the incomplete level.
        for (std::size_t i = level_end; i < ball->elements.size(); ++i) ball->index.erase(ball->elements[i].key());
        ball->elements.resize(level_end);
        ball->word_length.resize(level_end);
        throw BudgetExceeded(cap, ball);
      }
      ball->index.emplace(std::move(p.key), ball->elements.size());
      ball->elements.push_back(std::move(p.element));
      ball->word_length.push_back(len);
    }
    ball->radius = len;
    level_begin = level_end;
  }
  return std::move(*ball);
}

// ---------------------------------------------------------------------------
// Trace sets

namespace {

bool exact_less(const QuadElem& x, const QuadElem& y) {
  QuadElem diff = x - y;
  int r = real_sign(diff);
  if (r != 0) return r < 0;
  return imag_sign(diff) < 0;
}

} // namespace

bool TraceSet::contains(const QuadElem& t) const {
  QuadElem c = canonical_trace(t);
  auto it = std::lower_bound(entries.begin(), entries.end(), c,
                             [](const TraceEntry& e, const QuadElem& v) { return exact_less(e.exact, v); });
  return it != entries.end() && it->exact == c;
}

std::vector<QuadElem> TraceSet::exact_values() const {
  std::vector<QuadElem> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.exact);
  return out;
}

std::vector<std::complex<double>> TraceSet::embedded_values() const {
  std::vector<std::complex<double>> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.embedded);
  return out;
}

TraceSet make_trace_set(const std::vector<std::pair<QuadElem, unsigned>>& raw, const FieldDesc& field,
                        bool reduced, unsigned radius) {
  std::unordered_map<QuadElem, unsigned> least;
  for (const auto& [t, len] : raw) {
    QuadElem c = canonical_trace(t);
    auto [it, inserted] = least.emplace(c, len);
    if (!inserted && len < it->second) it->second = len;
  }
  TraceSet out;
  out.field = field;
  out.reduced = reduced;
  out.radius = radius;
  out.entries.reserve(least.size());
  for (const auto& [t, len] : least) out.entries.push_back({t.in_field(t.is_rational() ? field : t.field()), embed(t), len});
  std::sort(out.entries.begin(), out.entries.end(), [](const TraceEntry& x, const TraceEntry& y) {
    double tol = 1e-9 * std::max({1.0, std::abs(x.embedded.real()), std::abs(y.embedded.real())});
    if (x.embedded.real() + tol < y.embedded.real()) return true;
    if (y.embedded.real() + tol < x.embedded.real()) return false;
    return exact_less(x.exact, y.exact);
  });
  return out;
}

TraceSet trace_set(const Ball& ball, bool reduced) {
  std::vector<std::pair<QuadElem, unsigned>> raw;
  raw.reserve(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (reduced && ball.elements[i].is_identity()) continue;
    raw.emplace_back(ball.elements[i].trace(), ball.word_length[i]);
  }
  return make_trace_set(raw, ball.field, reduced, ball.radius);
}

} // namespace tracelab

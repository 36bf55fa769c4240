#include <doctest.h>

#include <array>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "tracelab/group_enum.hpp"

using namespace tracelab;

namespace {

using IMat = std::array<std::int64_t, 4>;

IMat imul(const IMat& x, const IMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

IMat iinv(const IMat& x) { return {x[3], -x[1], -x[2], x[0]}; }

IMat sign_normal(IMat x) {
  for (auto e : x) {
    if (e == 0) continue;
    if (e < 0)
      for (auto& y : x) y = -y;
    break;
  }
  return x;
}

Mat2 to_mat(const IMat& x) { return Mat2::make(QuadElem(x[0]), QuadElem(x[1]), QuadElem(x[2]), QuadElem(x[3])); }

// Every word of length <= L over the generators and their inverses, deduplicated up to sign.
std::set<IMat> brute_force_ball(const std::vector<IMat>& gens, unsigned L) {
  std::vector<IMat> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(iinv(g));
  }
  std::set<IMat> out{{1, 0, 0, 1}};
  std::vector<IMat> words{{1, 0, 0, 1}};
  for (unsigned len = 1; len <= L; ++len) {
    std::vector<IMat> next;
    for (const auto& w : words)
      for (const auto& l : letters) next.push_back(imul(w, l));
    for (const auto& w : next) out.insert(sign_normal(w));
    words = std::move(next);
  }
  return out;
}

const IMat kS{0, -1, 1, 0}, kT{1, 1, 0, 1};

// Right cosets of Gamma0(N) in PSL(2,Z) correspond to points (c:d) of P^1(Z/N).
using P1 = std::pair<std::int64_t, std::int64_t>;

P1 p1_normal(std::int64_t c, std::int64_t d, std::int64_t N) {
  c = ((c % N) + N) % N;
  d = ((d % N) + N) % N;
  P1 best{N, N};
  for (std::int64_t u = 1; u < N || (N == 1 && u == 1); ++u) {
    if (std::gcd(u, N) != 1) continue;
    best = std::min(best, P1{(u * c) % N, (u * d) % N});
    if (N == 1) break;
  }
  return best;
}

// Schreier generators of Gamma0(N) built from a spanning tree of the coset graph.
std::vector<IMat> schreier_generators(std::int64_t N) {
  std::map<P1, IMat> rep;
  std::queue<P1> todo;
  P1 start = p1_normal(0, 1, N);
  rep[start] = {1, 0, 0, 1};
  todo.push(start);
  while (!todo.empty()) {
    P1 x = todo.front();
    todo.pop();
    for (const auto& s : {kS, kT}) {
      IMat r = imul(rep[x], s);
      P1 y = p1_normal(r[2], r[3], N);
      if (!rep.count(y)) {
        rep[y] = r;
        todo.push(y);
      }
    }
  }
  std::vector<IMat> out;
  for (const auto& [x, r] : rep)
    for (const auto& s : {kS, kT}) {
      IMat g = imul(r, s);
      IMat h = imul(g, iinv(rep[p1_normal(g[2], g[3], N)]));
      out.push_back(h);
    }
  return out;
}

} // namespace

TEST_CASE("catalog metadata") {
  GroupSpec z = catalog("psl2z");
  CHECK(z.field.is_rational());
  CHECK(z.expected_class == ExpectedClass::arithmetic);
  GroupSpec h = catalog("hecke(5)");
  CHECK(h.field == FieldDesc(5));
  CHECK(h.expected_class == ExpectedClass::non_arithmetic);
  GroupSpec b = catalog("bianchi(-1)");
  CHECK(b.field == FieldDesc(-1));
  CHECK(b.expected_class == ExpectedClass::arithmetic);
  CHECK_THROWS_AS(catalog("hecke(7)"), PreconditionError);
  CHECK_THROWS_AS(catalog("nonsense"), PreconditionError);
  for (const auto& name : catalog_names()) CHECK_NOTHROW(validate(catalog(name)));
}

TEST_CASE("word ball of PSL(2,Z) against brute force") {
  GroupSpec z = catalog("psl2z");
  for (unsigned L = 1; L <= 6; ++L) {
    Ball ball = enumerate_ball(z, L);
    std::set<IMat> oracle = brute_force_ball({kS, kT}, L);
    CHECK(ball.size() == oracle.size());
    for (const auto& x : oracle) CHECK(ball.contains(ProjMat(to_mat(x))));
  }
  CHECK(enumerate_ball(z, 2).size() == 10);
  CHECK(enumerate_ball(z, 1).size() <= 2 * z.generators.size() + 1);
}

TEST_CASE("free abelian translation lattice") {
  GroupSpec g;
  g.name = "lattice";
  g.field = FieldDesc(-1);
  g.generators = {ProjMat(parse_mat("[1,1;0,1]", g.field)), ProjMat(parse_mat("[1,sqrt(-1);0,1]", g.field))};
  Ball ball = enumerate_ball(g, 3);
  CHECK(ball.size() == 25);
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      ProjMat t(Mat2::translation(QuadElem(Rational(m), Rational(n), g.field)));
      bool inside = std::abs(m) + std::abs(n) <= 3;
      CHECK(ball.contains(t) == inside);
      if (inside) CHECK(*ball.length_of(t) == unsigned(std::abs(m) + std::abs(n)));
    }
}

TEST_CASE("ball monotonicity, inverse closure and least lengths") {
  for (const char* name : {"psl2z", "hecke(5)", "bianchi(-3)", "gamma0(2)"}) {
    GroupSpec spec = catalog(name);
    Ball small = enumerate_ball(spec, 3), big = enumerate_ball(spec, 4);
    for (std::size_t i = 0; i < small.size(); ++i) {
      const ProjMat& g = small.elements[i];
      CHECK(big.contains(g));
      CHECK(*big.length_of(g) == small.word_length[i]);
      CHECK(*small.length_of(g.inverse()) == small.word_length[i]);
    }
    for (std::size_t i = 1; i < big.word_length.size(); ++i) CHECK(big.word_length[i - 1] <= big.word_length[i]);
  }
}

TEST_CASE("enumeration is deterministic") {
  GroupSpec spec = catalog("bianchi(-1)");
  Ball a = enumerate_ball(spec, 5), b = enumerate_ball(spec, 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.elements[i] == b.elements[i]);
}

TEST_CASE("trace sets") {
  CHECK_THROWS_AS(enumerate_ball(catalog("psl2z"), 0), PreconditionError);
  Ball z2 = enumerate_ball(catalog("psl2z"), 2);
  TraceSet t = trace_set(z2);
  std::set<std::int64_t> oracle;
  for (const auto& x : brute_force_ball({kS, kT}, 2))
    if (x != IMat{1, 0, 0, 1}) oracle.insert(std::abs(x[0] + x[3]));
  REQUIRE(t.size() == oracle.size());
  std::size_t i = 0;
  for (auto v : oracle) CHECK(t.entries[i++].exact == QuadElem(v));
  CHECK(t.contains(QuadElem(0)));
  CHECK_FALSE(t.contains(QuadElem(3)));
  for (unsigned L = 3; L <= 4; ++L) {
    bool oracle3 = false;
    for (const auto& x : brute_force_ball({kS, kT}, L)) oracle3 = oracle3 || std::abs(x[0] + x[3]) == 3;
    CHECK(trace_set(enumerate_ball(catalog("psl2z"), L)).contains(QuadElem(3)) == oracle3);
  }

  Ball z6 = enumerate_ball(catalog("psl2z"), 6);
  for (const auto& e : trace_set(z6).entries) CHECK(e.exact.is_rational());
  for (const auto& e : trace_set(z6).entries) CHECK(e.exact.rational_part().is_integer());

  GroupSpec id;
  id.name = "trivial";
  id.generators = {ProjMat(Mat2::identity())};
  Ball trivial = enumerate_ball(id, 3);
  CHECK(trivial.size() == 1);
  CHECK(trace_set(trivial).size() == 0);
  CHECK(trace_set(trivial, false).size() == 1);

  TraceSet h5 = trace_set(enumerate_ball(catalog("hecke(5)"), 2));
  CHECK(h5.contains(parse_quad("1/2+1/2*sqrt(5)")));
}

TEST_CASE("trace set ordering keeps least word length") {
  std::vector<std::pair<QuadElem, unsigned>> raw{{QuadElem(3), 4}, {QuadElem(-3), 2}, {QuadElem(1), 1},
                                                 {parse_quad("sqrt(2)"), 5}};
  TraceSet t = make_trace_set(raw, FieldDesc(2), true, 5);
  REQUIRE(t.size() == 3);
  CHECK(t.entries[0].exact == QuadElem(1));
  CHECK(t.entries[1].exact == parse_quad("sqrt(2)"));
  CHECK(t.entries[2].exact == QuadElem(3));
  CHECK(t.entries[2].word_length == 2);
}

TEST_CASE("congruence subgroup generators generate the whole subgroup") {
  for (std::int64_t N = 1; N <= 6; ++N) {
    GroupSpec spec = catalog("gamma0(" + std::to_string(N) + ")");
    for (const auto& g : spec.generators) {
      CHECK(g.rep().c().rational_part().is_integer());
      CHECK(g.rep().c().rational_part().numerator() % N == 0);
    }
    Ball ball = enumerate_ball(spec, 9);
    for (const auto& h : schreier_generators(N)) {
      INFO("N = " << N << ", Schreier generator " << to_mat(h));
      CHECK(h[2] % N == 0);
      CHECK(ball.contains(ProjMat(to_mat(h))));
    }
  }
}

TEST_CASE("JSON group spec files") {
  GroupSpec g = parse_group_spec(R"({"name":"h5","d":5,"generators":["[0,-1;1,0]","[1,1/2+1/2*sqrt(5);0,1]"],
                                     "expected_class":"non_arithmetic"})");
  CHECK(g.name == "h5");
  CHECK(g.field == FieldDesc(5));
  CHECK(g.generators.size() == 2);
  CHECK(g.expected_class == ExpectedClass::non_arithmetic);
  CHECK(enumerate_ball(g, 4).size() == enumerate_ball(catalog("hecke(5)"), 4).size());

  GroupSpec q = parse_group_spec(R"({"generators":["[1,1;0,1]"]})");
  CHECK(q.field.is_rational());
  CHECK(q.expected_class == ExpectedClass::unknown);

  CHECK_THROWS_AS(parse_group_spec("{"), ParseError);
  CHECK_THROWS_AS(parse_group_spec(R"({"d":5})"), ParseError);
  CHECK_THROWS_AS(parse_group_spec(R"({"generators":["[1,2;3,4]"]})"), PreconditionError);
  CHECK_THROWS_AS(parse_group_spec(R"({"generators":[]})"), PreconditionError);
  CHECK_THROWS_AS(parse_group_spec(R"({"generators":["[1,1;0,1]"],"expected_class":"maybe"})"), ParseError);
  CHECK_THROWS_AS(load_group_spec("/nonexistent/spec.json"), ParseError);

  const char* path = "test_group_spec.json";
  {
    std::ofstream out(path);
    out << R"({"name":"z","generators":["[0,-1;1,0]","[1,1;0,1]"],"expected_class":"arithmetic"})";
  }
  CHECK(enumerate_ball(load_group_spec(path), 2).size() == 10);
  std::remove(path);
}

TEST_CASE("element budget") {
  GroupSpec z = catalog("psl2z");
  try {
    enumerate_ball(z, 10, 50);
    FAIL("budget not enforced");
  } catch (const BudgetExceeded& e) {
    unsigned r = e.completed_radius();
    CHECK(e.partial().size() <= 50);
    CHECK(enumerate_ball(z, r + 1).size() > 50);
    Ball full = enumerate_ball(z, r);
    CHECK(e.partial().size() == full.size());
    CHECK(e.partial().radius == r);
  }
  CHECK(enumerate_ball(z, 3, enumerate_ball(z, 3).size()).radius == 3);

  setenv("TRACELAB_BUDGET", "12", 1);
  CHECK(default_budget() == 12);
  CHECK_THROWS_AS(enumerate_ball(z, 5), BudgetExceeded);
  setenv("TRACELAB_BUDGET", "abc", 1);
  CHECK_THROWS_AS(default_budget(), PreconditionError);
  unsetenv("TRACELAB_BUDGET");
  CHECK(default_budget() == kDefaultBudget);
}

// tracelab: command-line front end for the trace-set laboratory.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "tracelab/arithmeticity.hpp"
#include "tracelab/group_enum.hpp"
#include "tracelab/report.hpp"
#include "tracelab/trace_analytics.hpp"

using namespace tracelab;

namespace {

struct GroupOpts {
  std::string group;
  std::string spec;
  unsigned radius = 6;
};

struct Common {
  std::string format = "json";
  std::string output;
};

void add_group_opts(CLI::App* sub, GroupOpts& g) {
  auto* grp = sub->add_option("--group", g.group, "catalog group name, e.g. psl2z, hecke(5), bianchi(-1)");
  auto* spec = sub->add_option("--spec", g.spec, "JSON group spec file");
  grp->excludes(spec);
  spec->excludes(grp);
  sub->add_option("--radius,-L", g.radius, "word-length radius")->check(CLI::PositiveNumber);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv, json or data")->check(CLI::IsMember({"csv", "json", "data"}));
  sub->add_option("--output,-o", c.output, "output file (default stdout)");
}

GroupSpec resolve_group(const GroupOpts& g) {
  if (g.group.empty() == g.spec.empty()) throw CLI::ValidationError("exactly one of --group or --spec is required");
  return g.spec.empty() ? catalog(g.group) : load_group_spec(g.spec);
}

void emit(const Common& c, const std::string& payload) {
  if (c.output.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw PreconditionError("cannot write output file '" + c.output + "'");
  out << payload;
}

std::string dump(Json payload, const std::string& command) {
  Json doc{{"command", command}, {"version", kVersion}};
  doc["result"] = std::move(payload);
  return doc.dump(2) + "\n";
}

std::vector<QuadElem> ball_traces(const GroupSpec& spec, unsigned radius) {
  return trace_set(enumerate_ball(spec, radius), true).exact_values();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"tracelab: exact trace sets of Fuchsian and Kleinian lattices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GroupOpts g;
  Common common;

  auto* enumerate = app.add_subcommand("enumerate", "word-ball statistics");
  add_group_opts(enumerate, g);
  add_common(enumerate, common);

  bool full = false;
  auto* traces = app.add_subcommand("traces", "dump the trace set of a ball");
  add_group_opts(traces, g);
  add_common(traces, common);
  traces->add_flag("--full", full, "include the identity's trace");

  auto* cluster = app.add_subcommand("cluster", "unit-cell clustering of the trace set");
  add_group_opts(cluster, g);
  add_common(cluster, common);

  auto* gapc = app.add_subcommand("gap", "minimum distance between traces");
  add_group_opts(gapc, g);
  add_common(gapc, common);

  std::int64_t n_max = 20;
  auto* growth = app.add_subcommand("growth", "growth counts #{|t| <= n} and their slope");
  add_group_opts(growth, g);
  add_common(growth, common);
  growth->add_option("--n-max", n_max, "largest n")->check(CLI::PositiveNumber);

  auto* arith = app.add_subcommand("arith-check", "Takeuchi / Maclachlan-Reid checks on the Gamma^(2) ball");
  add_group_opts(arith, g);
  add_common(arith, common);

  std::string c_text, ring_text = "Z";
  std::int64_t k_bound = 10;
  unsigned n_bound = 4;
  unsigned witness = 0;
  auto* delta = app.add_subcommand("delta-c", "Delta_c truncations and clustering witnesses");
  add_common(delta, common);
  delta->add_option("--c", c_text, "c in the number text format")->required();
  delta->add_option("--ring", ring_text, "Z or a field generator d (e.g. -1)");
  delta->add_option("--k-bound", k_bound, "lattice box radius")->check(CLI::PositiveNumber);
  delta->add_option("--n-bound", n_bound, "largest exponent n in c^(2^n)");
  delta->add_option("--witness", witness, "build the n+1 point witness instead of the set");

  std::int64_t count_n = 100;
  auto* counting = app.add_subcommand("counting", "D_N, R_N, two-to-one and totient reports");
  add_common(counting, common);
  counting->add_option("--N", count_n, "N")->check(CLI::Range(std::int64_t{2}, std::int64_t{2000}));

  std::string theta1 = "sqrt(2)", theta2 = "1", delta_text = "0";
  std::int64_t K = 100;
  auto* kron = app.add_subcommand("kronecker", "gap collapse of k*theta1 - l*theta2 - delta");
  add_common(kron, common);
  kron->add_option("--theta1", theta1, "number text");
  kron->add_option("--theta2", theta2, "number text");
  kron->add_option("--delta", delta_text, "number text");
  kron->add_option("--K", K, "range bound")->check(CLI::PositiveNumber);

  std::string window = "5";
  auto* corollary = app.add_subcommand("corollary", "subtraction-closure check of the reduced trace set");
  add_group_opts(corollary, g);
  add_common(corollary, common);
  corollary->add_option("--window,-W", window, "window W (rational)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string& fmt = common.format;
    if (enumerate->parsed()) {
      GroupSpec spec = resolve_group(g);
      Ball ball = enumerate_ball(spec, g.radius);
      std::map<unsigned, std::size_t> by_len;
      for (auto l : ball.word_length) ++by_len[l];
      if (fmt == "json") {
        Json gens = Json::array();
        for (const auto& x : spec.generators) gens.push_back(x.rep().to_string());
        Json lengths = Json::array();
        for (const auto& [l, n] : by_len) lengths.push_back({l, n});
        emit(common, dump(Json{{"group", spec.name},
                               {"field", spec.field.to_string()},
                               {"expected_class", to_string(spec.expected_class)},
                               {"generators", gens},
                               {"radius", ball.radius},
                               {"size", ball.size()},
                               {"by_length", lengths}},
                              "enumerate"));
      } else {
        std::ostringstream os;
        if (fmt == "csv") os << "length,count\n";
        for (const auto& [l, n] : by_len) os << l << (fmt == "csv" ? "," : " ") << n << '\n';
        emit(common, os.str());
      }
    } else if (traces->parsed()) {
      TraceSet t = trace_set(enumerate_ball(resolve_group(g), g.radius), !full);
      if (fmt == "json") emit(common, dump(to_json(t), "traces"));
      else if (fmt == "csv") emit(common, trace_csv(t));
      else emit(common, points_data(t.exact_values()));
    } else if (cluster->parsed()) {
      auto pts = ball_traces(resolve_group(g), g.radius);
      ClusterGrid grid = cluster_counts(pts);
      if (fmt == "json") emit(common, dump(to_json(grid), "cluster"));
      else if (fmt == "csv") emit(common, cluster_csv(grid));
      else {
        std::ostringstream os;
        for (const auto& [cell, n] : grid.cells) os << cell.first << ' ' << cell.second << ' ' << n << '\n';
        emit(common, os.str());
      }
    } else if (gapc->parsed()) {
      auto pts = ball_traces(resolve_group(g), g.radius);
      GapResult r = gap(pts);
      if (fmt == "json") emit(common, dump(to_json(r, pts), "gap"));
      else if (fmt == "csv") emit(common, "radius,gap\n" + std::to_string(g.radius) + "," + decimal(r.value) + "\n");
      else emit(common, std::to_string(g.radius) + " " + decimal(r.value) + "\n");
    } else if (growth->parsed()) {
      auto pts = ball_traces(resolve_group(g), g.radius);
      GrowthReport r = growth_report(pts, n_max);
      if (fmt == "json") emit(common, dump(to_json(r), "growth"));
      else {
        std::ostringstream os;
        if (fmt == "csv") os << "n,count\n";
        for (const auto& [n, c] : r.counts) os << n << (fmt == "csv" ? "," : " ") << c << '\n';
        emit(common, os.str());
      }
    } else if (arith->parsed()) {
      GroupSpec spec = resolve_group(g);
      ArithmeticityReport r = takeuchi_verdict(enumerate_ball(spec, g.radius), spec.name);
      if (fmt == "json") emit(common, dump(to_json(r), "arith-check"));
      else {
        std::ostringstream os;
        if (fmt == "csv") os << "shell,max_conjugate\n";
        for (const auto& [s, m] : r.conjugate_growth.shell_max) os << s << (fmt == "csv" ? "," : " ") << decimal(m) << '\n';
        emit(common, os.str());
      }
    } else if (delta->parsed()) {
      RingOfIntegers ring = parse_ring(ring_text);
      QuadElem c = parse_quad(c_text, ring.field());
      if (witness > 0) {
        DeltaCWitness w = delta_c_cluster_witness(c, ring, witness);
        if (fmt == "json") emit(common, dump(to_json(w), "delta-c"));
        else {
          std::ostringstream os;
          if (fmt == "csv") os << "j,exact,re,im\n";
          for (std::size_t j = 0; j < w.z.size(); ++j) {
            auto z = embed(w.z[j]);
            if (fmt == "csv") os << j << ',' << w.z[j].to_string() << ',' << decimal(z.real()) << ',' << decimal(z.imag()) << '\n';
            else os << decimal(z.real()) << ' ' << decimal(z.imag()) << '\n';
          }
          emit(common, os.str());
        }
      } else {
        auto values = delta_c_set(c, ring, k_bound, n_bound);
        ClusterGrid grid = cluster_counts(values);
        if (fmt == "json") {
          emit(common, dump(Json{{"c", c.to_string()},
                                 {"ring", ring.is_rational() ? std::string("Z") : ring.field().to_string()},
                                 {"k_bound", k_bound},
                                 {"n_bound", n_bound},
                                 {"count", values.size()},
                                 {"cluster", to_json(grid)}},
                                "delta-c"));
        } else if (fmt == "csv") {
          std::ostringstream os;
          os << "exact,re,im\n";
          for (const auto& v : values) {
            auto z = embed(v);
            os << v.to_string() << ',' << decimal(z.real()) << ',' << decimal(z.imag()) << '\n';
          }
          emit(common, os.str());
        } else {
          emit(common, points_data(values));
        }
      }
    } else if (counting->parsed()) {
      const std::int64_t N = count_n;
      auto dn = dn_set(N);
      double dn_bound = double(N) * std::log(double(N)) - double(N);
      auto rn = rn_set(N);
      std::uint64_t formula = rn_size_formula(N);
      TwoToOneReport two = rn_two_to_one_check(N);
      TotientReport tot = totient_sum_check(N);
      if (fmt == "json") {
        emit(common, dump(Json{{"N", N},
                               {"dn", {{"size", dn.size()}, {"bound", decimal(dn_bound)}, {"meets_bound", double(dn.size()) >= dn_bound}}},
                               {"rn", {{"size", rn.size()}, {"formula", formula}, {"equal", rn.size() == formula},
                                       {"size_over_N2", decimal(double(rn.size()) / (double(N) * double(N)))}}},
                               {"two_to_one", to_json(two)},
                               {"totient", to_json(tot)}},
                              "counting"));
      } else {
        std::ostringstream os;
        const char* sep = fmt == "csv" ? "," : " ";
        if (fmt == "csv") os << "quantity,value\n";
        os << "dn_size" << sep << dn.size() << '\n';
        os << "dn_bound" << sep << decimal(dn_bound) << '\n';
        os << "rn_size" << sep << rn.size() << '\n';
        os << "rn_formula" << sep << formula << '\n';
        os << "two_to_one_passed" << sep << (two.passed() ? 1 : 0) << '\n';
        os << "totient_sum" << sep << tot.sum << '\n';
        os << "totient_ratio" << sep << decimal(tot.ratio) << '\n';
        emit(common, os.str());
      }
    } else if (kron->parsed()) {
      KroneckerReport r = kronecker_gap_demo(embed(parse_quad(theta1)), embed(parse_quad(theta2)),
                                             embed(parse_quad(delta_text)), K);
      if (fmt == "json") emit(common, dump(to_json(r), "kronecker"));
      else {
        std::ostringstream os;
        if (fmt == "csv") os << "K,envelope\n";
        for (std::size_t i = 0; i < r.envelope.size(); ++i)
          os << i + 1 << (fmt == "csv" ? "," : " ") << decimal(r.envelope[i]) << '\n';
        emit(common, os.str());
      }
    } else if (corollary->parsed()) {
      TraceSet t = trace_set(enumerate_ball(resolve_group(g), g.radius), true);
      SubtractionReport r = subtraction_closure_check(t, Rational::parse(window));
      if (fmt == "json") emit(common, dump(to_json(r), "corollary"));
      else {
        std::ostringstream os;
        if (fmt == "csv") os << "a,b,difference\n";
        for (const auto& v : r.violations)
          os << v.a.to_string() << (fmt == "csv" ? "," : " ") << v.b.to_string() << (fmt == "csv" ? "," : " ")
             << v.difference.to_string() << '\n';
        emit(common, os.str());
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

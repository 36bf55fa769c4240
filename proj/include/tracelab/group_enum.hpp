#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tracelab/errors.hpp"
#include "tracelab/psl2.hpp"

namespace tracelab {

enum class ExpectedClass { arithmetic, non_arithmetic, unknown };

std::string to_string(ExpectedClass c);
ExpectedClass parse_expected_class(std::string_view text);

struct GroupSpec {
  std::string name;
  FieldDesc field;
  std::vector<ProjMat> generators;
  ExpectedClass expected_class = ExpectedClass::unknown;
};

/// Checks that the generator list is nonempty and every generator lives in `field`.
void validate(const GroupSpec& spec);

/// Built-in groups: psl2z, gamma0(N) for N <= 6, hecke(q) for q in {4,5,6},
/// bianchi(d) for d in {-1,-2,-3,-7,-11}.
GroupSpec catalog(std::string_view name);
std::vector<std::string> catalog_names();

/// JSON group spec: {"name": ..., "d": ..., "generators": ["[a,b;c,d]", ...], "expected_class": ...}.
/// "d" may be omitted (or 1) for Q.
GroupSpec parse_group_spec(std::string_view json_text);
GroupSpec load_group_spec(const std::string& path);

/// Deduplicated word ball. Elements are stored in breadth-first order.
struct Ball {
  unsigned radius = 0;
  FieldDesc field;
  std::vector<ProjMat> elements;
  std::vector<unsigned> word_length; // parallel to elements
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return elements.size(); }
  bool contains(const ProjMat& g) const { return index.count(g.key()) != 0; }
  std::optional<unsigned> length_of(const ProjMat& g) const;
};

/// Thrown when the element budget is exhausted; carries the last fully completed ball.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(std::size_t cap, std::shared_ptr<const Ball> partial);
  unsigned completed_radius() const { return partial_->radius; }
  const Ball& partial() const { return *partial_; }

private:
  std::shared_ptr<const Ball> partial_;
};

inline constexpr std::size_t kDefaultBudget = 5'000'000;

/// kDefaultBudget, or the value of TRACELAB_BUDGET when set.
std::size_t default_budget();

/// All distinct elements given by words of length <= L in the generators and their inverses.
Ball enumerate_ball(const GroupSpec& spec, unsigned radius, std::size_t cap = default_budget());

struct TraceEntry {
  QuadElem exact;
  std::complex<double> embedded;
  unsigned word_length = 0;
};

/// Sorted set of canonical traces (by real part, then imaginary part, exactly).
struct TraceSet {
  FieldDesc field;
  bool reduced = true;
  unsigned radius = 0;
  std::vector<TraceEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool contains(const QuadElem& t) const;
  std::vector<QuadElem> exact_values() const;
  std::vector<std::complex<double>> embedded_values() const;
};

/// Builds a TraceSet from (trace, length) pairs: canonicalizes, keeps the least length, sorts.
TraceSet make_trace_set(const std::vector<std::pair<QuadElem, unsigned>>& raw, const FieldDesc& field,
                        bool reduced, unsigned radius);

/// Canonical traces of the ball (excluding the identity when reduced).
TraceSet trace_set(const Ball& ball, bool reduced = true);

} // namespace tracelab

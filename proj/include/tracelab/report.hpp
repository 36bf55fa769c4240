#pragma once

#include <complex>
#include <string>

#include <json.hpp>

#include "tracelab/arithmeticity.hpp"
#include "tracelab/trace_analytics.hpp"

namespace tracelab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// 17 significant digits, round-trippable through strtod.
std::string decimal(double x);

/// {"exact": ..., "re": ..., "im": ...}; decimals are strings so they survive JSON re-encoding.
Json quad_json(const QuadElem& x);

Json to_json(const ClusterGrid& grid);
Json to_json(const GapResult& g, const std::vector<QuadElem>& points);
Json to_json(const GrowthReport& g);
Json to_json(const CollisionReport& r);
Json to_json(const TwoToOneReport& r);
Json to_json(const TotientReport& r);
Json to_json(const DeltaCWitness& w);
Json to_json(const KroneckerReport& r);
Json to_json(const IntegralityViolation& v);
Json to_json(const ConjugateGrowth& g);
Json to_json(const ArithmeticityReport& r);
Json to_json(const SubtractionReport& r);
Json to_json(const TraceSet& t);

/// "cell,m,n,count" rows.
std::string cluster_csv(const ClusterGrid& grid);
/// "exact,re,im,word_length" rows.
std::string trace_csv(const TraceSet& t);
/// "re im" lines for plotting.
std::string points_data(const std::vector<QuadElem>& points);

} // namespace tracelab

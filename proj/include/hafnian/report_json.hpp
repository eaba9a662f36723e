#pragma once

#include <string>

#include "json.hpp"

#include "hafnian/counterexample.hpp"
#include "hafnian/estimator.hpp"
#include "hafnian/experiments.hpp"
#include "hafnian/graph.hpp"
#include "hafnian/hafnian_exact.hpp"
#include "hafnian/hypotheses.hpp"
#include "hafnian/scaling.hpp"

namespace hafnian {

using Json = nlohmann::ordered_json;

/// Number, or the strings "-inf" / "inf" / "nan" for non-finite values.
Json json_number(double v);

/// Inverse of json_number.
double number_from_json(const Json& j);

/// Object key for a real parameter such as a quantile level (shortest round-trip form).
std::string json_key(double v);

/// Serializes with every floating-point number printed to 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const HafnianValue& h);
Json to_json(const EstimatorSummary& s);
Json to_json(const ScalingResult& r, bool include_d = true);
Json to_json(const EntryAudit& a);
Json to_json(const SpectralGapReport& r);
Json to_json(const ExpansionReport& r);
Json to_json(const HypothesisReport& r);
Json to_json(const CounterexampleSpec& s);
Json to_json(const BiasReport& r);
Json to_json(const TailReport& r);
Json to_json(const DensityReport& r);
Json to_json(const ConcentrationReport& r);

Json to_json(const GeneratorSpec& g);
GeneratorSpec generator_from_json(const Json& j);

/// Config with every default filled in; `threads` is not part of it.
Json to_json(const ExperimentConfig& c);
/// Unknown keys are rejected with InputError.
ExperimentConfig experiment_config_from_json(const Json& j);

}  // namespace hafnian

#pragma once

#include "ndeq/hypotheses.hpp"
#include "ndeq/solver.hpp"
#include "ndeq/stability.hpp"

#include <json.hpp>

#include <iosfwd>

namespace ndeq {

/// Parses a problem document,
///   {"r":..,"p":..,"q":..,"a":..,"f":..,"gamma":{"num","den"},"alpha":{..},"k":int}.
/// Unknown keys anywhere are rejected with io_error.
ProblemSpec problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemSpec& p);

SequenceSpec sequence_from_json(const nlohmann::json& j);
nlohmann::json sequence_to_json(const SequenceSpec& s);

FunctionSpec function_from_json(const nlohmann::json& j);
nlohmann::json function_to_json(const FunctionSpec& f);

/// All reports are versioned with "schema": "v1".
nlohmann::json report_to_json(const HypothesisReport& r);
nlohmann::json trace_to_json(const IterationTrace& t);
nlohmann::json residuals_to_json(const ResidualReport& r);
nlohmann::json stability_to_json(const StabilityReport& r);

/// CSV columns "n,x" with 17 significant digits, so a written window parses
/// back to bit-identical doubles.
void write_window_csv(std::ostream& os, const SolutionWindow& w);
SolutionWindow read_window_csv(std::istream& is);

nlohmann::json window_to_json(const SolutionWindow& w);
SolutionWindow window_from_json(const nlohmann::json& j);

} // namespace ndeq

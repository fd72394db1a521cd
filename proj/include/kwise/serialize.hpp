#pragma once

#include "json.hpp"

#include "kwise/studies.hpp"

namespace kwise {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "kwise/1";

/// "num/den" (or "num"); never a float.
Json to_json(const Rational& q);
/// Rational as a string; algebraic as {defining, isolating, approx}.
Json to_json(const ExactReal& x);
/// Coefficient strings, increasing degree.
Json to_json(const Polynomial& f);
Json to_json(const DualBasis& b);
Json to_json(const ExactInterval& iv);
Json to_json(const PiecewisePolynomial& m);
Json to_json(const OptimizingDistribution& d);
Json to_json(const TheoremCheck& c);
Json to_json(const ConjectureResult& c);
Json to_json(const StudyReport& r);
Json to_json(const SpreadStats& s);

/// {"schema", "command", "params", "result", "exactness"}.
Json envelope(const std::string& command, Json params, Json result, Json exactness);

}  // namespace kwise

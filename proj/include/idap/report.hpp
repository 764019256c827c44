#pragma once

// JSON and CSV forms of the library's results, and the report envelope.

#include <string>
#include <string_view>

#include <json.hpp>

#include "idap/asymptotics.hpp"
#include "idap/empirical.hpp"
#include "idap/groebner.hpp"
#include "idap/variety.hpp"

namespace idap {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.3.1";
/// Floating results are printed with this many significant digits.
inline constexpr int kFloatDigits = 17;

std::string decimal(long double x);

json to_json(const RatVec& v);
json to_json(const Box& box);
json to_json(const MorphismCertificate& c);
json to_json(const HeightBoundReport& r);
json to_json(const Condition& c);
json to_json(const HypothesisReport& h);
json to_json(const Verdict& v);
json to_json(const DimensionResult& r);
json to_json(const DimensionEstimate& e);
json to_json(const TailSum& t);
json to_json(const OffManifoldReport& r);
/// Ball list included only when `with_balls`.
json to_json(const FiniteStageCover& c, bool with_balls);
json to_json(const ApproxFunction& psi);
json to_json(const DimFunction& f);

/// Columns q,count,min_ratio,max_ratio.
std::string to_csv(const HeightBoundReport& r);
/// Columns level,eps,count.
std::string to_csv(const DimensionEstimate& e);

std::string sha256_hex(std::string_view data);

/// {command, input_digest, tool_version, timestamp, payload}. The digest
/// covers `canonical_input` only.
json make_envelope(const std::string& command, const std::string& canonical_input, json payload);

}  // namespace idap

#pragma once

#include "fmr/codim.hpp"
#include "fmr/fibre.hpp"
#include "fmr/hypertangent.hpp"
#include "fmr/ledger.hpp"
#include "fmr/regularity.hpp"

#include <json.hpp>

#include <string>

namespace fmr {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "fmr";
inline constexpr const char* kToolVersion = "0.1.0";

// Integers that fit in 64 bits become JSON numbers; everything else an exact string.
Json exact_json(const BigInt& x);
Json exact_json(const Rational& x);

Json to_json(const BoundTable& t);
Json to_json(const RatioChain& c);
Json to_json(const MultBound& b);
Json to_json(const LinearRelation& r);
Json to_json(const FMResult& r);
Json to_json(const FMCertificate& c);
Json to_json(const LedgerReport& r);
Json to_json(const ConditionReport& r);
Json to_json(const SurveyReport& r);
Json to_json(const ConditionIII& c);
Json to_json(const RigidityThreshold& t);

// Envelope shared by every subcommand.
Json make_report(const std::string& command, Json config, Json field, Json seed, Json budgets, Json result);

// Two aligned columns: flattened path and value.
std::string render_text(const Json& j);

}  // namespace fmr

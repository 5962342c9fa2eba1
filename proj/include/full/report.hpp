#pragma once

// Machine-readable (JSON) and human-readable views of engine results.

#include <string>

#include <json.hpp>

#include "full/evaluator.hpp"

namespace full {

/// {"facts": [{id, scope, text, rule, premises, detail}], "witnesses": [...]}
nlohmann::json trace_json(const DerivationContext& ctx);
nlohmann::json ul_json(const UniversalizationRecord& rec);
nlohmann::json evidence_json(const DerivationContext& ctx, const ContradictionEvidence& ev);
nlohmann::json verdict_json(const Verdict& v, bool include_trace);

struct HumanStyle {
  bool color = false;
  bool trace = false;
};

std::string describe_ul(const UniversalizationRecord& rec);
std::string describe_verdict(const Verdict& v, HumanStyle style);
std::string describe_trace(const DerivationContext& ctx);

}  // namespace full

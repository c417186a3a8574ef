#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "gkt/knapsack.hpp"
#include "gkt/reductions.hpp"

namespace gkt {

// Instance file: {"problem": "...", "spec": {...}, <payload fields>}.
using ProblemPayload = std::variant<SSPInstance, BKPInstance, BSMPInstance,
                                    KPInstance, AGPInstance, RationalInstance>;

struct ProblemFile {
  std::string problem;  // ssp | bkp | bsmp | kp | agp | rational
  ProblemPayload payload;
};

GroupPtr group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const GroupSpec& spec);

LabeledGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const LabeledGraph& g);

ProblemFile problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemFile& f);

Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(const Certificate& cert);

BoundConfig bound_config_from_json(const nlohmann::json& j);

// Parses text as JSON, translating parse failures into MalformedInput.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace gkt

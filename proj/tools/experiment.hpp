#pragma once

// Everything needed to reproduce one CLI run, serializable to JSON.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace cli {

struct ExperimentSpec {
  std::string graph;
  std::string code;
  std::size_t r = 2;
  std::string epsilon = "1/2";
  std::size_t s_cap = 12;
  std::uint64_t seed = 1;
  /// Channel: exactly one of these drives erase_count/erase_rate/erase_explicit.
  std::optional<std::size_t> erasures;
  std::optional<double> rate;
  std::string pattern;
  std::string alg = "list-fast";
  std::string input;
  std::string out;
  std::string report;
};

inline void to_json(nlohmann::json& j, const ExperimentSpec& s) {
  j = nlohmann::json{{"graph", s.graph},   {"code", s.code}, {"r", s.r},         {"epsilon", s.epsilon},
                     {"s_cap", s.s_cap},   {"seed", s.seed}, {"pattern", s.pattern}, {"alg", s.alg},
                     {"input", s.input},   {"out", s.out},   {"report", s.report}};
  j["erasures"] = s.erasures ? nlohmann::json(*s.erasures) : nlohmann::json(nullptr);
  j["rate"] = s.rate ? nlohmann::json(*s.rate) : nlohmann::json(nullptr);
}

inline void from_json(const nlohmann::json& j, ExperimentSpec& s) {
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key) && !j[key].is_null()) j.at(key).get_to(field);
  };
  get("graph", s.graph);
  get("code", s.code);
  get("r", s.r);
  get("epsilon", s.epsilon);
  get("s_cap", s.s_cap);
  get("seed", s.seed);
  get("pattern", s.pattern);
  get("alg", s.alg);
  get("input", s.input);
  get("out", s.out);
  get("report", s.report);
  if (j.contains("erasures") && !j["erasures"].is_null()) s.erasures = j["erasures"].get<std::size_t>();
  if (j.contains("rate") && !j["rate"].is_null()) s.rate = j["rate"].get<double>();
}

}  // namespace cli

#pragma once

#include "markt/similarity.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace markt {

inline constexpr const char* kToolName = "markt";
inline constexpr const char* kToolVersion = "0.1.0";

struct InputDigest {
  std::string path;
  std::string digest;  // "fnv1a64:<16 hex digits>"

  friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

std::string digest_of(std::string_view contents);

struct ReportParams {
  std::optional<EpsilonSpec> epsilon;
  std::optional<Rational> nu;
  std::optional<Rational> precision;
  std::optional<Rational> recall;
  std::optional<std::size_t> max_len;
  std::optional<std::string> mode;
  bool two_sided = false;

  friend bool operator==(const ReportParams& a, const ReportParams& b);
};

struct Report {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::vector<InputDigest> inputs;
  std::string relation;
  ReportParams params;
  SimilarityVerdict verdict;
  double timing_ms = 0;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Rationals are written as "num/den" strings.
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

std::string render_text(const Report& r);

}  // namespace markt

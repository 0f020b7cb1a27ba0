#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wbench/liealg/cases.hpp"

namespace wb {

struct PipelineConfig {
  std::uint64_t seed = 42;
  int samples = 5;
  double tol = 1e-9;
  std::vector<std::string> stages;  // empty runs every stage
};

enum class StageStatus { pass, fail, error, halted, skipped };
std::string status_name(StageStatus s);
StageStatus status_from_name(const std::string& s);

struct StageResult {
  std::string name;
  StageStatus status = StageStatus::skipped;
  std::optional<double> residual;
  std::string detail;
  double seconds = 0;
  friend bool operator==(const StageResult&, const StageResult&) = default;
};

// Stages in execution order.
const std::vector<std::string>& stage_names();
// brackets, reduce, frobenius, central or all.
std::vector<std::string> stage_group(const std::string& group);

struct VerificationReport {
  std::string case_id;
  PipelineConfig config;
  std::vector<StageResult> stages;
  nlohmann::json results = nlohmann::json::object();

  // No failures or errors, and no requested stage left unrun.
  bool green() const;
  const StageResult& stage(const std::string& name) const;
  // Timings are left out unless asked for, which keeps reports byte-identical.
  nlohmann::json to_json(bool timings = false) const;
  static VerificationReport from_json(const nlohmann::json& j);
  std::string to_text(bool timings = false) const;
};

// Throws FixtureError for an unknown case.
VerificationReport run_pipeline(const std::string& case_id, const PipelineConfig& config = {});
VerificationReport run_pipeline(NilpotentCase c, const PipelineConfig& config = {});

}  // namespace wb

#pragma once

#include <filesystem>
#include <string>

#include "wbench/equilibrium/reduction.hpp"
#include "wbench/workbench/pipeline.hpp"

namespace wb {

enum class ExportKind { brackets, reduced, report };
enum class ExportFormat { json, text };
ExportKind export_kind(const std::string& s);
ExportFormat export_format(const std::string& s);

struct BracketArtifact {
  std::string case_id;
  std::string coords;  // coordinates of B1 and the Liouville field
  LocalPoissonOperator b2, b1;
  std::vector<DiffPoly> liouville;
  nlohmann::json to_json() const;
  static BracketArtifact from_json(const nlohmann::json& j);
  std::string to_text() const;
  friend bool operator==(const BracketArtifact& a, const BracketArtifact& b) {
    return a.case_id == b.case_id && a.coords == b.coords && a.b2 == b.b2 && a.b1 == b.b1 && a.liouville == b.liouville;
  }
};
BracketArtifact bracket_artifact(const NilpotentCase& c);

struct ReducedArtifact {
  std::string case_id;
  Symbols params;
  LocalPoissonOperator p2, p1;  // in params
  FlatPencil flat;
  bool dirac_flagged = false;
  nlohmann::json to_json() const;
  static ReducedArtifact from_json(const nlohmann::json& j);
  // Row-per-line matrix layout in the flat coordinates.
  std::string to_text() const;
};
bool operator==(const ReducedArtifact& a, const ReducedArtifact& b);
ReducedArtifact reduced_artifact(const NilpotentCase& c);

std::string export_artifact(const std::string& case_id, ExportKind kind, ExportFormat format,
                            const PipelineConfig& config = {});
// Writes to path, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace wb

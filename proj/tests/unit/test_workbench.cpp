#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "wbench/workbench/export.hpp"

using namespace wb;

TEST_CASE("pipeline verdicts") {
  auto r = run_pipeline("sl3-21");
  CHECK(r.green());
  for (const auto& v : r.results.at("central").at("values")) CHECK(v[0].get<double>() == doctest::Approx(-1.0 / 24).epsilon(1e-12));
  auto s = run_pipeline("sl4-22");
  CHECK(s.green());
  CHECK(!s.results.at("central").at("topological").get<bool>());
  CHECK(run_pipeline("sl4-31").green());
  CHECK_THROWS_AS(run_pipeline("sl5-41"), FixtureError);
}

TEST_CASE("fractional KdV report is red on Jacobi only") {
  auto r = run_pipeline("sl3-21-fkdv");
  CHECK(!r.green());
  for (const auto& s : r.stages) {
    INFO(s.name);
    CHECK(s.status == (s.name == "jacobi" ? StageStatus::fail : StageStatus::pass));
  }
  CHECK(r.results.at("dirac").at("flagged").get<bool>());
  CHECK(r.results.at("dirac").at("series").at("poisson_through_max").get<bool>());
}

TEST_CASE("stage selection and halting") {
  PipelineConfig cfg;
  cfg.stages = stage_group("central");
  auto r = run_pipeline("sl3-21", cfg);
  CHECK(r.green());
  CHECK(r.stage("sl2").status == StageStatus::skipped);
  CHECK(r.stage("rescaling").status == StageStatus::pass);
  cfg.stages = {"bogus"};
  CHECK_THROWS(run_pipeline("sl3-21", cfg));
  CHECK_THROWS(stage_group("bogus"));

  auto c = load_case("sl4-31");
  c.data["expected"]["potential"] = "t1^4";
  auto h = run_pipeline(c, {});
  CHECK(!h.green());
  CHECK(h.stage("wdvv").status == StageStatus::error);
  CHECK(h.stage("euler").status == StageStatus::halted);
  CHECK(h.stage("rescaling").status == StageStatus::halted);
  CHECK(h.stage("flatness").status == StageStatus::pass);
}

TEST_CASE("reports are deterministic and round trip") {
  PipelineConfig cfg;
  cfg.seed = 7;
  auto a = run_pipeline("sl4-31", cfg).to_json().dump();
  auto b = run_pipeline("sl4-31", cfg).to_json().dump();
  CHECK(a == b);
  auto j = nlohmann::json::parse(a);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("config").at("seed") == 7);
  CHECK(!j.at("stages")[0].contains("seconds"));
  auto back = VerificationReport::from_json(j);
  CHECK(back.to_json().dump() == a);
  CHECK(back.green());
  CHECK(run_pipeline("sl4-31", cfg).to_json(true).at("stages")[0].contains("seconds"));
  auto text = back.to_text();
  CHECK(text.find("central_invariants") != std::string::npos);
  CHECK(text.find("green") != std::string::npos);
}

TEST_CASE("bracket export round trip") {
  auto a = bracket_artifact(load_case("sl3-21"));
  auto b = BracketArtifact::from_json(nlohmann::json::parse(a.to_json().dump()));
  CHECK(a == b);
  CHECK(a.coords == "slice");
  CHECK(bracket_artifact(load_case("sl3-21-fkdv")).coords == "adapted");
  CHECK(a.to_text().find("Liouville field") != std::string::npos);
}

TEST_CASE("reduced export round trip") {
  for (const auto& id : case_ids()) {
    auto a = reduced_artifact(load_case(id));
    auto b = ReducedArtifact::from_json(nlohmann::json::parse(a.to_json().dump()));
    INFO(id);
    CHECK(a == b);
  }
  auto text = reduced_artifact(load_case("sl4-31")).to_text();
  CHECK(text.find("Omega2\n  2*t1") != std::string::npos);
  CHECK(text.find("-8*t2*t3") != std::string::npos);
  CHECK_THROWS(export_kind("potential"));
  CHECK_THROWS(export_format("xml"));
}

TEST_CASE("export writes files") {
  auto dir = std::filesystem::temp_directory_path() / "wbench_export_test";
  std::filesystem::remove_all(dir);
  auto path = dir / "sub" / "report.json";
  write_file(path, export_artifact("sl3-21", ExportKind::report, ExportFormat::json));
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  CHECK(j.at("green").get<bool>());
  CHECK(VerificationReport::from_json(j).case_id == "sl3-21");
  std::filesystem::remove_all(dir);
}

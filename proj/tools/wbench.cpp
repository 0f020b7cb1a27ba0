#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "wbench/centralinv/central.hpp"
#include "wbench/workbench/export.hpp"

namespace {

struct Options {
  std::string case_id;
  std::uint64_t seed = 42;
  int samples = 5;
  double tol = 1e-9;
  std::string out;
  bool json = false;
  bool timings = false;
  std::string what = "report";
  std::string format = "json";
};

std::vector<std::string> selected_cases(const Options& o) {
  if (o.case_id.empty()) return wb::case_ids();
  return {o.case_id};
}

wb::PipelineConfig config_for(const Options& o, const std::string& group) {
  wb::PipelineConfig c;
  c.seed = o.seed;
  c.samples = o.samples;
  c.tol = o.tol;
  if (group != "all") c.stages = wb::stage_group(group);
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) std::cout << text;
  else wb::write_file(o.out, text);
}

int verify(const Options& o, const std::string& group) {
  bool green = true;
  std::string text;
  auto arr = nlohmann::json::array();
  for (const auto& id : selected_cases(o)) {
    auto r = wb::run_pipeline(id, config_for(o, group));
    green = green && r.green();
    if (o.json) arr.push_back(r.to_json(o.timings));
    else text += r.to_text(o.timings);
  }
  if (o.json) text = (arr.size() == 1 ? arr[0] : arr).dump(2) + "\n";
  emit(o, text);
  return green ? 0 : 1;
}

std::string fmt_complex(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (std::abs(z.imag()) > 1e-12) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

int central(const Options& o) {
  bool green = true;
  std::ostringstream os;
  auto arr = nlohmann::json::array();
  for (const auto& id : selected_cases(o)) {
    auto c = wb::load_case(id);
    auto rc = wb::reduce_case(c, wb::classical_walgebra(c));
    auto rep = wb::central_invariants(rc.flat, o.seed, o.samples);
    std::vector<wb::FieldScalar> want;
    for (const auto& s : c.data.at("expected").at("central"))
      want.push_back(wb::SymExpr::parse(s.get<std::string>(), {}).constant_value());
    wb::compare_expected(rep, want, o.tol);
    bool top = c.data.at("expected").at("topological").get<bool>();
    bool ok = rep.constant && rep.matches.value_or(false) && rep.topological == top;
    green = green && ok;
    if (o.json) {
      auto samples = nlohmann::json::array();
      for (const auto& s : rep.samples) {
        auto pt = nlohmann::json::array(), roots = nlohmann::json::array(), cs = nlohmann::json::array();
        for (const auto& x : s.point) pt.push_back(fmt_complex(x));
        for (const auto& u : s.roots) roots.push_back(fmt_complex(u));
        for (const auto& v : s.c) cs.push_back(fmt_complex(v));
        samples.push_back({{"t", pt}, {"u", roots}, {"c", cs}});
      }
      arr.push_back({{"case", id},
                     {"seed", o.seed},
                     {"samples", samples},
                     {"rejected", rep.rejected.size()},
                     {"expected", c.data.at("expected").at("central")},
                     {"match_error", rep.match_error},
                     {"deviation", rep.deviation},
                     {"topological", rep.topological},
                     {"green", ok}});
      continue;
    }
    os << "case " << id << "  points " << rep.samples.size() << "  seed " << o.seed << "\n";
    for (const auto& s : rep.samples) {
      std::string pt, roots, cs;
      for (const auto& x : s.point) pt += (pt.empty() ? "" : ", ") + fmt_complex(x);
      for (const auto& u : s.roots) roots += (roots.empty() ? "" : ", ") + fmt_complex(u);
      for (const auto& v : s.c) cs += (cs.empty() ? "" : ", ") + fmt_complex(v);
      os << "  t = (" << pt << ")\n    u = " << roots << "\n    c = " << cs << "\n";
    }
    if (!rep.rejected.empty()) os << "  resampled " << rep.rejected.size() << " points\n";
    os << "  expected";
    for (const auto& s : c.data.at("expected").at("central")) os << " " << s.get<std::string>();
    os << "\n  max error " << rep.match_error << ", deviation " << rep.deviation << "\n";
    os << "  topological type: " << (rep.topological ? "yes" : "no") << "\n";
    os << (ok ? "green" : "red") << "\n";
  }
  if (o.json) os << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
  emit(o, os.str());
  return green ? 0 : 1;
}

int reduce(const Options& o) {
  bool green = true;
  std::string text;
  auto arr = nlohmann::json::array();
  for (const auto& id : selected_cases(o)) {
    auto r = wb::run_pipeline(id, config_for(o, "reduce"));
    green = green && r.green();
    if (o.json) {
      auto j = wb::reduced_artifact(wb::load_case(id)).to_json();
      j["report"] = r.to_json(o.timings);
      arr.push_back(j);
    } else {
      text += wb::reduced_artifact(wb::load_case(id)).to_text() + r.to_text(o.timings);
    }
  }
  if (o.json) text = (arr.size() == 1 ? arr[0] : arr).dump(2) + "\n";
  emit(o, text);
  return green ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical W-algebra and bihamiltonian workbench"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--case", o.case_id, "case id (default: every case)");
  app.add_option("--seed", o.seed, "sample seed")->capture_default_str();
  app.add_option("--samples,--points", o.samples, "sample points")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tol", o.tol, "numeric tolerance")->capture_default_str();
  app.add_option("--out", o.out, "write output to a file");
  app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--timings", o.timings, "include stage timings");

  auto* cases = app.add_subcommand("cases", "case registry")->fallthrough();
  auto* cases_list = cases->add_subcommand("list", "list cases")->fallthrough();
  cases->require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "compute artifacts")->fallthrough();
  auto* compute_w = compute->add_subcommand("w-algebra", "classical W-algebra brackets")->fallthrough();
  compute->require_subcommand(1);

  auto* verify_cmd = app.add_subcommand("verify", "run verification stages")->fallthrough();
  auto* verify_brackets = verify_cmd->add_subcommand("brackets", "bracket fixtures, skew, Jacobi, exactness")->fallthrough();
  auto* verify_frob = verify_cmd->add_subcommand("frobenius", "flat pencil, QFPM and potential checks")->fallthrough();
  auto* verify_all = verify_cmd->add_subcommand("all", "full pipeline")->fallthrough();
  verify_cmd->require_subcommand(1);

  auto* reduce_cmd = app.add_subcommand("reduce", "reduction to the equilibrium locus")->fallthrough();
  auto* central_cmd = app.add_subcommand("central-invariants", "central invariants at sample points")->fallthrough();
  auto* export_cmd = app.add_subcommand("export", "export an artifact")->fallthrough();
  export_cmd->add_option("--what", o.what, "brackets, reduced or report")
      ->check(CLI::IsMember({"brackets", "reduced", "report"}))
      ->capture_default_str();
  export_cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!o.case_id.empty()) wb::load_case(o.case_id);
    if (*cases_list) {
      std::ostringstream os;
      for (const auto& id : wb::case_ids()) os << id << "  " << wb::load_case(id).description << "\n";
      emit(o, os.str());
      return 0;
    }
    if (*compute_w) {
      std::string text;
      auto arr = nlohmann::json::array();
      for (const auto& id : selected_cases(o)) {
        auto a = wb::bracket_artifact(wb::load_case(id));
        if (o.json) arr.push_back(a.to_json());
        else text += a.to_text();
      }
      if (o.json) text = (arr.size() == 1 ? arr[0] : arr).dump(2) + "\n";
      emit(o, text);
      return 0;
    }
    if (*verify_brackets) return verify(o, "brackets");
    if (*verify_frob) return verify(o, "frobenius");
    if (*verify_all) return verify(o, "all");
    if (*reduce_cmd) return reduce(o);
    if (*central_cmd) return central(o);
    if (*export_cmd) {
      auto kind = wb::export_kind(o.what);
      auto fmt = wb::export_format(o.format);
      auto ids = selected_cases(o);
      std::string text;
      if (fmt == wb::ExportFormat::json && ids.size() > 1) {
        auto arr = nlohmann::json::array();
        for (const auto& id : ids) arr.push_back(nlohmann::json::parse(wb::export_artifact(id, kind, fmt, config_for(o, "all"))));
        text = arr.dump(2) + "\n";
      } else {
        for (const auto& id : ids) text += wb::export_artifact(id, kind, fmt, config_for(o, "all"));
      }
      emit(o, text);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

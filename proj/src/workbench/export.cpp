#include "wbench/workbench/export.hpp"

#include <fstream>
#include <sstream>

namespace wb {

namespace {

nlohmann::json matrix_strings(const SymMat& m, const Symbols& names) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str(names));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json poly_list(const std::vector<DiffPoly>& v) {
  auto a = nlohmann::json::array();
  for (const auto& p : v) a.push_back(p.to_json());
  return a;
}

std::vector<DiffPoly> poly_list_from(const nlohmann::json& j) {
  std::vector<DiffPoly> v;
  for (const auto& p : j) v.push_back(DiffPoly::from_json(p));
  return v;
}

void print_matrix(std::ostream& os, const std::string& title, const SymMat& m, const Symbols& names) {
  std::vector<std::vector<std::string>> cells(m.rows());
  std::size_t w = 1;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      cells[i].push_back(m(i, j).str(names));
      w = std::max(w, cells[i].back().size());
    }
  os << title << "\n";
  for (const auto& row : cells) {
    os << " ";
    for (std::size_t j = 0; j < row.size(); ++j)
      os << " " << row[j] << (j + 1 < row.size() ? std::string(w - row[j].size(), ' ') : "");
    os << "\n";
  }
}

}  // namespace

ExportKind export_kind(const std::string& s) {
  if (s == "brackets") return ExportKind::brackets;
  if (s == "reduced") return ExportKind::reduced;
  if (s == "report") return ExportKind::report;
  throw std::invalid_argument("unknown export kind " + s);
}

ExportFormat export_format(const std::string& s) {
  if (s == "json") return ExportFormat::json;
  if (s == "text") return ExportFormat::text;
  throw std::invalid_argument("unknown export format " + s);
}

nlohmann::json BracketArtifact::to_json() const {
  return {{"schema", 1},      {"kind", "brackets"},           {"case", case_id},
          {"coords", coords}, {"B2", b2.to_json()},           {"B1", b1.to_json()},
          {"liouville", poly_list(liouville)}};
}

BracketArtifact BracketArtifact::from_json(const nlohmann::json& j) {
  if (j.at("schema").get<int>() != 1 || j.at("kind") != "brackets") throw std::invalid_argument("not a bracket artifact");
  BracketArtifact a;
  a.case_id = j.at("case").get<std::string>();
  a.coords = j.at("coords").get<std::string>();
  a.b2 = LocalPoissonOperator::from_json(j.at("B2"));
  a.b1 = LocalPoissonOperator::from_json(j.at("B1"));
  a.liouville = poly_list_from(j.at("liouville"));
  return a;
}

std::string BracketArtifact::to_text() const {
  std::ostringstream os;
  os << case_id << " second bracket\n" << b2.to_text() << "\n";
  os << case_id << " first bracket (" << coords << " coordinates)\n" << b1.to_text() << "\n";
  os << "Liouville field:";
  for (std::size_t i = 0; i < liouville.size(); ++i)
    if (!liouville[i].is_zero()) os << " " << liouville[i].str(b1.names()) << " d/d" << b1.names()[i];
  os << "\n";
  return os.str();
}

BracketArtifact bracket_artifact(const NilpotentCase& c) {
  auto pd = first_bracket(c, classical_walgebra(c));
  return {c.id, pd.coords, pd.b2, pd.b1, pd.liouville};
}

nlohmann::json ReducedArtifact::to_json() const {
  auto e = nlohmann::json::array();
  for (const auto& x : flat.e) e.push_back(x.str(flat.names));
  return {{"schema", 1},
          {"kind", "reduced"},
          {"case", case_id},
          {"params", params},
          {"P2", p2.to_json()},
          {"P1", p1.to_json()},
          {"dirac_flagged", dirac_flagged},
          {"flat",
           {{"coordinates", flat.names},
            {"Omega2", matrix_strings(flat.omega2, flat.names)},
            {"Omega1", matrix_strings(flat.omega1, flat.names)},
            {"S22", matrix_strings(flat.s22, flat.names)},
            {"S12", matrix_strings(flat.s12, flat.names)},
            {"e", e},
            {"dispersionless", flat.dispersionless},
            {"s1_zero", flat.s1_zero},
            {"degree1_zero", flat.degree1_zero}}}};
}

ReducedArtifact ReducedArtifact::from_json(const nlohmann::json& j) {
  if (j.at("schema").get<int>() != 1 || j.at("kind") != "reduced") throw std::invalid_argument("not a reduced artifact");
  ReducedArtifact a;
  a.case_id = j.at("case").get<std::string>();
  a.params = j.at("params").get<Symbols>();
  a.p2 = LocalPoissonOperator::from_json(j.at("P2"));
  a.p1 = LocalPoissonOperator::from_json(j.at("P1"));
  a.dirac_flagged = j.at("dirac_flagged").get<bool>();
  const auto& f = j.at("flat");
  a.flat.names = f.at("coordinates").get<Symbols>();
  a.flat.omega2 = parse_sym_matrix(f.at("Omega2"), a.flat.names);
  a.flat.omega1 = parse_sym_matrix(f.at("Omega1"), a.flat.names);
  a.flat.s22 = parse_sym_matrix(f.at("S22"), a.flat.names);
  a.flat.s12 = parse_sym_matrix(f.at("S12"), a.flat.names);
  for (const auto& s : f.at("e")) a.flat.e.push_back(SymExpr::parse(s.get<std::string>(), a.flat.names));
  a.flat.dispersionless = f.at("dispersionless").get<bool>();
  a.flat.s1_zero = f.at("s1_zero").get<bool>();
  a.flat.degree1_zero = f.at("degree1_zero").get<bool>();
  return a;
}

std::string ReducedArtifact::to_text() const {
  std::ostringstream os;
  os << case_id << " reduced pencil in";
  for (const auto& n : flat.names) os << " " << n;
  os << "\n";
  print_matrix(os, "Omega2", flat.omega2, flat.names);
  print_matrix(os, "Omega1", flat.omega1, flat.names);
  print_matrix(os, "S22", flat.s22, flat.names);
  print_matrix(os, "S12", flat.s12, flat.names);
  os << "e =";
  for (const auto& x : flat.e) os << " " << x.str(flat.names);
  os << "\n";
  if (dirac_flagged) os << "note: mixed delta' block nonzero on the locus\n";
  return os.str();
}

bool operator==(const ReducedArtifact& a, const ReducedArtifact& b) {
  const auto &f = a.flat, &g = b.flat;
  return a.case_id == b.case_id && a.params == b.params && a.p2 == b.p2 && a.p1 == b.p1 &&
         a.dirac_flagged == b.dirac_flagged && f.names == g.names && f.omega2 == g.omega2 && f.omega1 == g.omega1 &&
         f.s22 == g.s22 && f.s12 == g.s12 && f.e == g.e && f.dispersionless == g.dispersionless &&
         f.s1_zero == g.s1_zero && f.degree1_zero == g.degree1_zero;
}

ReducedArtifact reduced_artifact(const NilpotentCase& c) {
  auto rc = reduce_case(c, classical_walgebra(c));
  return {c.id, rc.locus.params, rc.pencil.p2, rc.pencil.p1, rc.flat, rc.dirac.flagged()};
}

std::string export_artifact(const std::string& case_id, ExportKind kind, ExportFormat format,
                            const PipelineConfig& config) {
  const bool json = format == ExportFormat::json;
  switch (kind) {
    case ExportKind::brackets: {
      auto a = bracket_artifact(load_case(case_id));
      return json ? a.to_json().dump(2) + "\n" : a.to_text();
    }
    case ExportKind::reduced: {
      auto a = reduced_artifact(load_case(case_id));
      return json ? a.to_json().dump(2) + "\n" : a.to_text();
    }
    case ExportKind::report: {
      auto r = run_pipeline(case_id, config);
      return json ? r.to_json().dump(2) + "\n" : r.to_text();
    }
  }
  throw std::invalid_argument("unknown export kind");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace wb

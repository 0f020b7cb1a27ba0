#include "wbench/workbench/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "wbench/centralinv/central.hpp"

namespace wb {

namespace {

constexpr double kWdvvTol = 1e-10;
constexpr double kConstancyTol = 1e-8;
const std::vector<FieldScalar> kRescale{FieldScalar(-24), FieldScalar(2)};

struct Artifacts {
  Artifacts(NilpotentCase cs, const PipelineConfig& cfg) : c(std::move(cs)), config(cfg) {}

  NilpotentCase c;
  PipelineConfig config;
  nlohmann::json results = nlohmann::json::object();

  const LocalPoissonOperator& b2() {
    if (!b2_) b2_ = classical_walgebra(c);
    return *b2_;
  }
  const PencilData& pencil() {
    if (!pd_) pd_ = first_bracket(c, b2());
    return *pd_;
  }
  const PencilReport& pencil_report() {
    if (!pr_) pr_ = pencil_checks(pencil().b2, pencil().b1, pencil().liouville);
    return *pr_;
  }
  const ReducedCase& reduced() {
    if (!rc_) rc_ = reduce_case(c, b2());
    return *rc_;
  }
  const FlatPencil& flat() { return reduced().flat; }
  std::vector<Point> points() {
    return sample_points(static_cast<int>(flat().names.size()), config.seed, config.samples);
  }
  const FrobeniusPotential& potential() {
    if (!fp_) fp_ = potential_from_json(expected(), flat().names);
    return *fp_;
  }
  const PotentialMetric& potential_metric() {
    if (!pm_) pm_ = metric_from_potential(potential());
    return *pm_;
  }
  const CentralInvariantReport& central() {
    if (!ci_) {
      ci_ = central_invariants(flat(), config.seed, config.samples, kConstancyTol);
      std::vector<FieldScalar> want;
      for (const auto& s : expected().at("central"))
        want.push_back(SymExpr::parse(s.get<std::string>(), {}).constant_value());
      compare_expected(*ci_, want, config.tol);
    }
    return *ci_;
  }
  const nlohmann::json& expected() const { return c.data.at("expected"); }

private:
  std::optional<LocalPoissonOperator> b2_;
  std::optional<PencilData> pd_;
  std::optional<PencilReport> pr_;
  std::optional<ReducedCase> rc_;
  std::optional<FrobeniusPotential> fp_;
  std::optional<PotentialMetric> pm_;
  std::optional<CentralInvariantReport> ci_;
};

struct Outcome {
  bool ok = false;
  std::optional<double> residual;
  std::string detail;
};

std::string join(const std::vector<std::string>& parts, const char* sep = "; ") {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : sep) + p;
  return s;
}

nlohmann::json complex_json(const std::complex<double>& z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json sym_matrix_json(const SymMat& m, const Symbols& names) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str(names));
    rows.push_back(row);
  }
  return rows;
}

Outcome stage_sl2(Artifacts& a) {
  bool ok = verify_sl2(a.c.triple).ok();
  std::vector<std::string> d{ok ? "triple relations hold" : "triple relations fail"};
  if (a.c.data.value("opposite_cartan", false)) {
    auto oc = verify_opposite_cartan(a.c);
    ok = ok && oc.ok();
    d.push_back(oc.ok() ? "L1 + K1 regular semisimple" : "opposite Cartan check fails");
  }
  return {ok, std::nullopt, join(d)};
}

Outcome stage_invariants(Artifacts& a) {
  bool inv = restricted_invariants(a.c).ok(), hom = slice_homogeneity(a.c).ok();
  return {inv && hom, std::nullopt,
          join({inv ? "invariants match the characteristic polynomial" : "invariant mismatch",
                hom ? "slice quasihomogeneous" : "slice homogeneity fails"})};
}

Outcome stage_walgebra(Artifacts& a) {
  auto want = LocalPoissonOperator::from_bracket_list(a.c.data.at("walgebra").at("brackets"), a.c.chart.names);
  bool ok = a.b2() == want;
  return {ok, std::nullopt, ok ? "every listed bracket matches" : "computed brackets differ from the fixture"};
}

Outcome stage_skew(Artifacts& a) {
  const auto& rc = a.reduced();
  std::vector<std::pair<std::string, const LocalPoissonOperator*>> ops{
      {"B2", &a.pencil().b2}, {"B1", &a.pencil().b1}, {"reduced P2", &rc.pencil.p2}, {"reduced P1", &rc.pencil.p1}};
  bool ok = true;
  std::vector<std::string> bad;
  for (const auto& [name, p] : ops)
    if (!skew_residual(*p).is_zero()) ok = false, bad.push_back(name + " not skew");
  return {ok, std::nullopt, ok ? "all skew" : join(bad)};
}

std::string combination_note(const PencilReport& r) {
  int bad = 0;
  for (const auto& [l, ok] : r.combination_jacobi) bad += !ok;
  return bad ? std::to_string(bad) + " pencil combinations fail" : "";
}

Outcome stage_jacobi(Artifacts& a) {
  const auto& pr = a.pencil_report();
  const auto& rc = a.reduced();
  const auto& rr = rc.pencil.checks;
  std::vector<std::string> d;
  auto note = [&](const std::string& name, bool ok, const LocalPoissonOperator* p) {
    if (ok) {
      d.push_back(name + " ok");
      return;
    }
    int deg = p ? check_jacobi(*p).lowest_degree : -1;
    d.push_back(name + " fails" + (deg >= -2 && p ? " at degree " + std::to_string(deg) : ""));
  };
  note("B2", pr.p2_jacobi, &a.pencil().b2);
  note("B1", pr.p1_jacobi, &a.pencil().b1);
  note("reduced P2", rr.p2_jacobi, &rc.pencil.p2);
  note("reduced P1", rr.p1_jacobi, &rc.pencil.p1);
  bool combos = true;
  for (const auto* r : {&pr, &rr})
    for (const auto& [l, ok] : r->combination_jacobi) combos = combos && ok;
  for (const auto* r : {&pr, &rr})
    if (auto s = combination_note(*r); !s.empty()) d.push_back(s);
  bool ok = pr.p2_jacobi && pr.p1_jacobi && rr.p2_jacobi && rr.p1_jacobi && combos;
  return {ok, std::nullopt, join(d)};
}

Outcome stage_exactness(Artifacts& a) {
  const auto& pr = a.pencil_report();
  const auto& dp = a.reduced().pencil;
  bool full = pr.lie_v_p2_is_p1 && pr.lie_v_p1_zero;
  bool red = dp.checks.lie_v_p2_is_p1 && dp.checks.lie_v_p1_zero && dp.lie_e_squared_zero;
  return {full && red, std::nullopt,
          join({full ? "L_V B2 = B1, L_V B1 = 0" : "Liouville field fails on (B2, B1)",
                red ? "reduced: L_e P2 = P1, L_e^2 P2 = 0" : "reduced pencil not exact"})};
}

Outcome stage_reduction(Artifacts& a) {
  const auto& f = a.flat();
  const auto& ex = a.expected();
  std::vector<std::string> bad;
  if (!a.reduced().chart.inverse_ok) bad.push_back("flat chart not invertible");
  if (f.omega2 != parse_sym_matrix(ex.at("reduced_Omega2"), f.names)) bad.push_back("Omega2 differs");
  if (f.s22 != parse_sym_matrix(ex.at("reduced_S22"), f.names)) bad.push_back("S22 differs");
  if (ex.contains("Omega1") && f.omega1 != parse_sym_matrix(ex.at("Omega1"), f.names)) bad.push_back("Omega1 differs");
  if (ex.contains("e_flat")) {
    std::vector<SymExpr> want;
    for (const auto& s : ex.at("e_flat")) want.push_back(SymExpr::parse(s.get<std::string>(), f.names));
    if (want != f.e) bad.push_back("e differs");
  }
  if (!f.dispersionless) bad.push_back("F part nonzero");
  if (!f.s1_zero) bad.push_back("S;1 part nonzero");
  a.results["reduced"] = {{"coordinates", f.names},
                          {"Omega2", sym_matrix_json(f.omega2, f.names)},
                          {"S22", sym_matrix_json(f.s22, f.names)},
                          {"Omega1", sym_matrix_json(f.omega1, f.names)},
                          {"S12", sym_matrix_json(f.s12, f.names)}};
  return {bad.empty(), std::nullopt, bad.empty() ? "Omega2 and S22 match; F and S;1 vanish" : join(bad)};
}

Outcome stage_dirac(Artifacts& a) {
  const auto& rc = a.reduced();
  const auto& d = rc.dirac;
  bool ok = d.mixed_F_zero && d.correction_zero;
  nlohmann::json j{{"mixed_F_zero", d.mixed_F_zero},
                   {"mixed_Omega_zero", d.mixed_Omega_zero},
                   {"correction_zero", d.correction_zero},
                   {"flagged", d.flagged()}};
  std::vector<std::string> det{ok ? "dispersionless correction vanishes" : "dispersionless correction nonzero"};
  if (d.flagged()) {
    det.push_back("flagged: mixed delta' block nonzero on the locus");
    const auto& s = rc.series;
    nlohmann::json sj{{"available", s.available}, {"max_degree", s.max_degree}};
    if (s.available) {
      sj["jacobi_lowest_degree"] = s.jacobi_lowest_degree;
      sj["poisson_through_max"] = s.poisson_through_max();
      auto s22 = delta_coefficient(s.bracket, 3);
      auto rows = nlohmann::json::array();
      for (int i = 0; i < s22.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < s22.cols(); ++k) row.push_back(s22(i, k).str(rc.locus.params));
        rows.push_back(row);
      }
      sj["S22"] = rows;
      int mdeg = check_jacobi(rc.pencil.p2).lowest_degree;
      det.push_back("minor Jacobiator lowest degree " + std::to_string(mdeg) + ", Dirac series " +
                    (s.poisson_through_max() ? "Poisson through degree " + std::to_string(s.max_degree)
                                             : "not Poisson"));
    } else {
      sj["reason"] = s.reason;
      det.push_back("Dirac series unavailable: " + s.reason);
    }
    j["series"] = sj;
  }
  a.results["dirac"] = j;
  return {ok, std::nullopt, join(det)};
}

Outcome stage_hydrodynamic(Artifacts& a) {
  const auto& rc = a.reduced();
  auto pts = sample_points(static_cast<int>(rc.locus.params.size()), a.config.seed, a.config.samples);
  double r = std::max(hydrodynamic_mismatch(extract_dispersion(rc.pencil.p2), rc.locus.params, pts),
                      hydrodynamic_mismatch(extract_dispersion(rc.pencil.p1), rc.locus.params, pts));
  return {r <= a.config.tol, r, "u' delta coefficients against Levi-Civita symbols"};
}

Outcome stage_flatness(Artifacts& a) {
  const auto& f = a.flat();
  auto rep = flat_pencil_check(f.omega2, f.omega1, f.names, a.points());
  double r = std::max({rep.omega2, rep.omega1, rep.additivity});
  for (const auto& [l, v] : rep.combinations) r = std::max(r, v);
  std::ostringstream os;
  os << "curvature O2 " << rep.omega2 << ", O1 " << rep.omega1 << ", " << rep.combinations.size()
     << " combinations; additivity " << rep.additivity;
  return {rep.ok(a.config.tol), r, os.str()};
}

Outcome stage_qfpm(Artifacts& a) {
  const auto& f = a.flat();
  const auto& ex = a.expected();
  auto q = qfpm_check(f.omega2, f.omega1, SymExpr::parse(ex.at("tau").get<std::string>(), f.names), f.names, a.points());
  auto want = SymExpr::parse(ex.at("charge").get<std::string>(), f.names).constant_value();
  bool charge = q.charge && *q.charge == want;
  bool euler = true;
  for (std::size_t i = 0; i < q.E.size(); ++i)
    euler = euler && q.E[i] == SymExpr::parse(ex.at("euler")[i].get<std::string>(), f.names);
  nlohmann::json j{{"charge", q.charge ? q.charge->str() : "none"}, {"regular", q.regular}, {"min_det_R", q.min_det_R}};
  auto e = nlohmann::json::array();
  for (const auto& x : q.E) e.push_back(x.str(f.names));
  j["euler"] = e;
  a.results["qfpm"] = j;
  std::vector<std::string> d;
  d.push_back(q.charge ? "d = " + q.charge->str() : "no charge");
  if (!q.bracket_ok) d.push_back("[e, E] != e");
  if (!q.lie_e_o2) d.push_back("L_e O2 != O1");
  if (!q.lie_e_o1) d.push_back("L_e O1 != 0");
  if (!euler) d.push_back("Euler field differs");
  d.push_back(q.regular ? "regular" : "R degenerate (reported only)");
  return {q.ok() && charge && euler, std::nullopt, join(d)};
}

Outcome stage_wdvv(Artifacts& a) {
  auto w = wdvv_residual(a.potential(), a.potential_metric(), a.points());
  a.results["wdvv"] = {{"vacuous", w.vacuous}, {"exact", w.exact}, {"max_residual", w.max_residual}};
  std::string d = w.vacuous ? "vacuous in two dimensions" : (w.exact ? "holds identically" : "sampled");
  return {w.max_residual <= kWdvvTol, w.max_residual, d};
}

Outcome stage_euler(Artifacts& a) {
  auto rem = euler_remainder(a.potential());
  auto want = SymExpr::parse(a.expected().at("euler_remainder").get<std::string>(), a.flat().names);
  a.results["euler_remainder"] = rem.str(a.flat().names);
  return {rem == want, std::nullopt, "E F - (3 - d) F = " + rem.str(a.flat().names)};
}

Outcome stage_intersection(Artifacts& a) {
  const auto& f = a.flat();
  const auto& pm = a.potential_metric();
  auto pts = a.points();
  SymMat eta = pm.eta.map<SymExpr>([](const FieldScalar& s) { return SymExpr(s); });
  SymMat g = intersection_form(a.potential(), pm);
  double r = 0;
  for (const auto& p : pts) {
    r = std::max(r, (eval_matrix(eta, p) - eval_matrix(f.omega1, p)).cwiseAbs().maxCoeff());
    r = std::max(r, (eval_matrix(g, p) - eval_matrix(f.omega2, p)).cwiseAbs().maxCoeff());
  }
  std::vector<std::string> d;
  bool ok = r <= a.config.tol;
  if (a.expected().contains("Pi")) {
    bool pi = pm.pi.map<SymExpr>([](const FieldScalar& s) { return SymExpr(s); }) ==
              parse_sym_matrix(a.expected().at("Pi"), f.names);
    ok = ok && pi;
    d.push_back(pi ? "Pi matches" : "Pi differs");
  }
  auto alg = frobenius_algebra_check(a.potential(), pm, pts, a.config.seed);
  ok = ok && alg.commutative && alg.unity && alg.invariance <= a.config.tol;
  d.push_back("eta = O1, intersection form = O2 at samples");
  if (!alg.commutative || !alg.unity) d.push_back("algebra not commutative with unity");
  return {ok, std::max(r, alg.invariance), join(d)};
}

Outcome stage_central(Artifacts& a) {
  const auto& ci = a.central();
  bool want_top = a.expected().at("topological").get<bool>();
  auto vals = nlohmann::json::array();
  for (const auto& v : ci.values) vals.push_back(complex_json(v));
  a.results["central"] = {{"values", vals},
                          {"expected", a.expected().at("central")},
                          {"deviation", ci.deviation},
                          {"match_error", ci.match_error},
                          {"samples", ci.samples.size()},
                          {"rejected", ci.rejected.size()},
                          {"topological", ci.topological}};
  std::ostringstream os;
  os << std::setprecision(12);
  for (std::size_t i = 0; i < ci.values.size(); ++i) os << (i ? ", " : "c = ") << ci.values[i].real();
  os << "; topological type " << (ci.topological ? "yes" : "no");
  bool ok = ci.constant && ci.matches.value_or(false) && ci.topological == want_top;
  return {ok, std::max(ci.deviation, ci.match_error), os.str()};
}

Outcome stage_rescaling(Artifacts& a) {
  double r = 0;
  for (const auto& k : kRescale) r = std::max(r, rescale_check(a.flat(), a.central(), k).max_error);
  return {r <= a.config.tol, r, "c -> c / kappa for kappa = -24, 2"};
}

using StageFn = Outcome (*)(Artifacts&);
const std::vector<std::pair<std::string, StageFn>>& stage_table() {
  static const std::vector<std::pair<std::string, StageFn>> t{
      {"sl2", stage_sl2},
      {"invariants", stage_invariants},
      {"walgebra_fixtures", stage_walgebra},
      {"skew", stage_skew},
      {"jacobi", stage_jacobi},
      {"exactness", stage_exactness},
      {"reduction_fixtures", stage_reduction},
      {"dirac", stage_dirac},
      {"hydrodynamic", stage_hydrodynamic},
      {"flatness", stage_flatness},
      {"qfpm", stage_qfpm},
      {"wdvv", stage_wdvv},
      {"euler", stage_euler},
      {"intersection_form", stage_intersection},
      {"central_invariants", stage_central},
      {"rescaling", stage_rescaling},
  };
  return t;
}

}  // namespace

std::string status_name(StageStatus s) {
  switch (s) {
    case StageStatus::pass: return "pass";
    case StageStatus::fail: return "fail";
    case StageStatus::error: return "error";
    case StageStatus::halted: return "halted";
    case StageStatus::skipped: return "skipped";
  }
  return "skipped";
}

StageStatus status_from_name(const std::string& s) {
  for (auto st : {StageStatus::pass, StageStatus::fail, StageStatus::error, StageStatus::halted, StageStatus::skipped})
    if (status_name(st) == s) return st;
  throw std::invalid_argument("unknown stage status " + s);
}

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : stage_table()) v.push_back(n);
    return v;
  }();
  return names;
}

std::vector<std::string> stage_group(const std::string& group) {
  if (group == "all") return stage_names();
  if (group == "brackets") return {"sl2", "invariants", "walgebra_fixtures", "skew", "jacobi", "exactness"};
  if (group == "reduce") return {"reduction_fixtures", "dirac"};
  if (group == "frobenius") return {"hydrodynamic", "flatness", "qfpm", "wdvv", "euler", "intersection_form"};
  if (group == "central") return {"central_invariants", "rescaling"};
  throw std::invalid_argument("unknown stage group " + group);
}

bool VerificationReport::green() const {
  return std::none_of(stages.begin(), stages.end(), [](const StageResult& s) {
    return s.status == StageStatus::fail || s.status == StageStatus::error || s.status == StageStatus::halted;
  });
}

const StageResult& VerificationReport::stage(const std::string& name) const {
  for (const auto& s : stages)
    if (s.name == name) return s;
  throw std::out_of_range("no stage " + name);
}

nlohmann::json VerificationReport::to_json(bool timings) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["case"] = case_id;
  j["config"] = {{"seed", config.seed}, {"samples", config.samples}, {"tol", config.tol}, {"stages", config.stages}};
  j["green"] = green();
  auto st = nlohmann::json::array();
  for (const auto& s : stages) {
    nlohmann::json e{{"name", s.name}, {"status", status_name(s.status)}, {"detail", s.detail}};
    e["residual"] = s.residual ? nlohmann::json(*s.residual) : nlohmann::json(nullptr);
    if (timings) e["seconds"] = s.seconds;
    st.push_back(e);
  }
  j["stages"] = st;
  j["results"] = results;
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  if (j.at("schema").get<int>() != 1) throw std::invalid_argument("unsupported report schema");
  VerificationReport r;
  r.case_id = j.at("case").get<std::string>();
  const auto& c = j.at("config");
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.samples = c.at("samples").get<int>();
  r.config.tol = c.at("tol").get<double>();
  r.config.stages = c.at("stages").get<std::vector<std::string>>();
  for (const auto& e : j.at("stages")) {
    StageResult s;
    s.name = e.at("name").get<std::string>();
    s.status = status_from_name(e.at("status").get<std::string>());
    s.detail = e.at("detail").get<std::string>();
    if (!e.at("residual").is_null()) s.residual = e.at("residual").get<double>();
    if (e.contains("seconds")) s.seconds = e.at("seconds").get<double>();
    r.stages.push_back(s);
  }
  r.results = j.at("results");
  return r;
}

std::string VerificationReport::to_text(bool timings) const {
  std::ostringstream os;
  os << "case " << case_id << "  seed " << config.seed << "  samples " << config.samples << "  tol " << config.tol
     << "\n";
  for (const auto& s : stages) {
    os << "  " << std::left << std::setw(20) << s.name << std::setw(8) << status_name(s.status);
    if (s.residual) os << std::setw(12) << std::setprecision(3) << *s.residual << std::setprecision(6);
    else os << std::setw(12) << "-";
    if (timings) os << std::setw(10) << std::fixed << std::setprecision(3) << s.seconds << std::defaultfloat << std::setprecision(6);
    os << s.detail << "\n";
  }
  os << (green() ? "green" : "red") << "\n";
  return os.str();
}

VerificationReport run_pipeline(const std::string& case_id, const PipelineConfig& config) {
  return run_pipeline(load_case(case_id), config);
}

VerificationReport run_pipeline(NilpotentCase c, const PipelineConfig& config) {
  VerificationReport rep;
  rep.case_id = c.id;
  Artifacts a(std::move(c), config);
  rep.config = config;
  for (const auto& s : config.stages)
    if (std::find(stage_names().begin(), stage_names().end(), s) == stage_names().end())
      throw std::invalid_argument("unknown stage " + s);
  std::string halted_by;
  for (const auto& [name, fn] : stage_table()) {
    StageResult r;
    r.name = name;
    bool wanted = config.stages.empty() ||
                  std::find(config.stages.begin(), config.stages.end(), name) != config.stages.end();
    if (!wanted) {
      rep.stages.push_back(r);
      continue;
    }
    if (!halted_by.empty()) {
      r.status = StageStatus::halted;
      r.detail = "not run after " + halted_by + " error";
      rep.stages.push_back(r);
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = fn(a);
      r.status = o.ok ? StageStatus::pass : StageStatus::fail;
      r.residual = o.residual;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.status = StageStatus::error;
      r.detail = e.what();
      halted_by = name;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.stages.push_back(r);
  }
  rep.results = a.results;
  return rep;
}

}  // namespace wb

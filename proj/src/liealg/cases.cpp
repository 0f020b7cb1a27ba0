#include "wbench/liealg/cases.hpp"

#include <cstdlib>
#include <fstream>

namespace wb {

namespace {

FMat constant_part(const PolyMat& m) {
  FMat c(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      DiffPoly rest = m(i, j);
      for (int v = 0; v <= rest.max_var(); ++v) rest = rest.set_zero(v);
      c(i, j) = rest.is_zero() ? FieldScalar() : rest.constant_value();
    }
  return c;
}

void require(bool cond, const std::string& what, const std::string& id) {
  if (!cond) throw FixtureError(id + ": " + what);
}

}  // namespace

std::filesystem::path default_fixture_dir() {
  if (const char* env = std::getenv("WBENCH_FIXTURES")) return env;
  return WBENCH_FIXTURE_DIR;
}

std::vector<std::string> case_ids() { return {"sl3-21", "sl3-21-fkdv", "sl4-31", "sl4-22"}; }

NilpotentCase load_case(const std::string& id, const std::filesystem::path& dir) {
  bool known = false;
  for (const auto& k : case_ids()) known = known || k == id;
  if (!known) throw FixtureError("unknown case: " + id);
  std::ifstream in(dir / (id + ".json"));
  if (!in) throw FixtureError("missing fixture file for " + id + " in " + dir.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FixtureError(id + ": malformed fixture: " + e.what());
  }
  return case_from_json(j);
}

NilpotentCase case_from_json(const nlohmann::json& j) {
  NilpotentCase c;
  c.id = j.at("id").get<std::string>();
  c.description = j.value("description", "");
  c.n = j.at("n").get<int>();
  c.rank = j.at("rank").get<int>();
  c.kappa = parse_scalar(j.at("kappa").get<std::string>());
  const auto& tr = j.at("triple");
  c.triple = {parse_matrix(tr.at("e")), parse_matrix(tr.at("h")), parse_matrix(tr.at("f"))};
  c.K1 = parse_matrix(j.at("K1"));

  const auto& sl = j.at("slice");
  c.chart.names = sl.at("names").get<std::vector<std::string>>();
  c.dim = static_cast<int>(c.chart.names.size());
  c.chart.matrix = parse_poly_matrix(sl.at("matrix"), c.chart.names);
  for (const auto& e : sl.at("eta")) c.chart.eta.push_back(Rational::parse(e.get<std::string>()));
  for (const auto& e : c.chart.eta) c.chart.degrees.push_back(e + Rational(1));
  for (const auto& s : j.at("invariants").at("normalized"))
    c.invariants.push_back(DiffPoly::parse(s.get<std::string>(), c.chart.names));
  Symbols a = default_names("a", c.n);
  for (const auto& s : j.at("invariants").at("relations")) c.relations.push_back(DiffPoly::parse(s.get<std::string>(), a));
  c.data = j;

  const std::string& id = c.id;
  require(c.chart.matrix.rows() == c.n && c.chart.matrix.cols() == c.n, "slice matrix size", id);
  require(static_cast<int>(c.chart.eta.size()) == c.dim, "eta list length", id);
  require(static_cast<int>(c.invariants.size()) == c.n - 1 && c.relations.size() == c.invariants.size(),
          "invariant list length", id);
  require(verify_sl2(c.triple).ok(), "sl2 relations fail", id);
  require(normalized_form(c.triple.e, c.triple.f, c.kappa).is_one(), "kappa does not normalize (L1, f) to 1", id);
  require(constant_part(c.chart.matrix) == c.triple.e, "slice matrix at z = 0 is not L1", id);
  for (int v = 0; v < c.dim; ++v) {
    PolyMat d(c.n, c.n);
    for (int a1 = 0; a1 < c.n; ++a1)
      for (int b = 0; b < c.n; ++b) {
        DiffPoly e = c.chart.matrix(a1, b).partial(v, 0);
        require(e.is_constant() || e.is_zero(), "slice matrix is not affine in " + c.chart.names[v], id);
        d(a1, b) = e;
      }
    FMat x = constant_part(d);
    require(commutator(c.triple.f, x).is_zero(), "X" + std::to_string(v + 1) + " does not centralize f", id);
    require(commutator(c.triple.h, x) == x.scaled(FieldScalar(-c.chart.eta[v])),
            "ad_h X" + std::to_string(v + 1) + " != -eta X", id);
    c.chart.basis.push_back(x);
  }
  auto gf = centralizer_basis(c.triple.f);
  require(static_cast<int>(gf.size()) == c.dim, "dim g^f differs from the slice dimension", id);
  FMat span(c.n * c.n, c.dim);
  for (int v = 0; v < c.dim; ++v) {
    auto col = flatten(c.chart.basis[v]);
    for (int k = 0; k < c.n * c.n; ++k) span(k, v) = col[k];
  }
  require(rank(span) == c.dim, "slice basis is dependent", id);
  return c;
}

bool InvariantReport::ok() const {
  for (const auto& m : mismatch)
    if (!m.is_zero()) return false;
  return true;
}

InvariantReport restricted_invariants(const NilpotentCase& c) {
  InvariantReport r;
  r.charpoly = charpoly_coefficients(c.chart.matrix);
  for (std::size_t k = 0; k < c.invariants.size(); ++k)
    r.mismatch.push_back(c.invariants[k] - c.relations[k].substitute(r.charpoly));
  return r;
}

HomogeneityReport slice_homogeneity(const NilpotentCase& c) {
  HomogeneityReport r;
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) {
      Rational want = Rational(1) - grade_of(c.triple.h, i, j);
      for (const auto& t : c.chart.matrix(i, j).terms()) {
        Rational deg;
        for (auto f : t.mono) deg += c.chart.degrees[DiffPoly::var_of(f)] * Rational(DiffPoly::exp_of(f));
        if (deg != want) {
          r.bad_slots.emplace_back(i, j);
          break;
        }
      }
    }
  return r;
}

bool is_regular_semisimple(const FMat& x) {
  auto cp = charpoly(x);
  UniPoly p(cp.rbegin(), cp.rend());
  return uni_squarefree(p);
}

OppositeCartanReport verify_opposite_cartan(const NilpotentCase& c) {
  if (!c.data.value("opposite_cartan", false)) throw FixtureError(c.id + ": no opposite Cartan data");
  OppositeCartanReport r;
  FMat hprime = c.triple.e + c.K1;
  r.regular_semisimple = is_regular_semisimple(hprime);
  std::vector<FMat> gens{c.chart.basis[0], c.triple.e + c.triple.f};
  bool commute = true;
  for (const auto& g : gens) commute = commute && commutator(hprime, g).is_zero();
  FMat span(c.n * c.n, 2);
  for (int k = 0; k < 2; ++k) {
    auto col = flatten(gens[k]);
    for (int i = 0; i < c.n * c.n; ++i) span(i, k) = col[i];
  }
  int cdim = static_cast<int>(centralizer_basis(hprime).size());
  r.spans_centralizer = commute && rank(span) == 2 && cdim == c.n - 1;
  return r;
}

}  // namespace wb

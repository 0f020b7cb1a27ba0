#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wbench/liealg/lie.hpp"

namespace wb {

struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SliceChart {
  Symbols names;               // z1 .. zn
  std::vector<FMat> basis;     // X_i = dq/dz_i
  std::vector<Rational> eta;   // ad_h X_i = -eta_i X_i
  std::vector<Rational> degrees;
  PolyMat matrix;              // q(z) = L1 + sum z_i X_i
};

struct NilpotentCase {
  std::string id;
  std::string description;
  int n = 0;     // matrix size
  int dim = 0;   // slice coordinates
  int rank = 0;
  FieldScalar kappa;
  Sl2Triple triple;  // e = L1
  FMat K1;
  SliceChart chart;
  std::vector<DiffPoly> invariants;  // normalized restricted invariants in z
  std::vector<DiffPoly> relations;   // the same in terms of a1..an
  nlohmann::json data;               // the full fixture, read by later stages
};

std::filesystem::path default_fixture_dir();
std::vector<std::string> case_ids();
NilpotentCase load_case(const std::string& id, const std::filesystem::path& dir = default_fixture_dir());
NilpotentCase case_from_json(const nlohmann::json& j);

struct InvariantReport {
  std::vector<DiffPoly> charpoly;  // a_1..a_n in z
  std::vector<DiffPoly> mismatch;  // normalized minus relation, per invariant
  bool ok() const;
};
InvariantReport restricted_invariants(const NilpotentCase& c);

struct HomogeneityReport {
  std::vector<std::pair<int, int>> bad_slots;
  bool ok() const { return bad_slots.empty(); }
};
// deg z_i = eta_i + 1 and slot degree 1 - grade.
HomogeneityReport slice_homogeneity(const NilpotentCase& c);

struct OppositeCartanReport {
  bool regular_semisimple = false;
  bool spans_centralizer = false;
  bool ok() const { return regular_semisimple && spans_centralizer; }
};
bool is_regular_semisimple(const FMat& x);
OppositeCartanReport verify_opposite_cartan(const NilpotentCase& c);

}  // namespace wb

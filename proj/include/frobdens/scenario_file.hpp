#pragma once

#include "frobdens/estimator.hpp"
#include "frobdens/field.hpp"
#include "frobdens/group.hpp"
#include "frobdens/rational.hpp"
#include "frobdens/set_expr.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace frobdens {

struct LProbeSpec {
  CharacterFn chi;
  std::vector<double> s;
  std::uint64_t X;
};

/// A parsed and validated scenario document.
///
///   {"field": {"type": "abelian", "conductor": 15, "K_kernel": [11], "L_kernel": []}
///          or {"type": "sn", "poly": [-2, 0, 0, 1], "H": "alternating"},
///    "x": 2 | "(1 2 3)" | "identity",
///    "set": <set expression>,
///    "psi": {"kind": "regular" | "trivial" | "point_mass" | "table", ...},
///    "schedule": [[0.2, 100000], ...], "burn_in": 10000,
///    "X": 10000000, "tolerance": 0.02,
///    "expected": "1/2", "lprobe": {"chi": {...}, "s": [...], "X": ...}}
///
/// Element specs name elements of G = Gal(L/Q): a residue mod the conductor
/// for abelian fields, cycle notation or 1-based images for S_n fields. Where
/// an element of Gal(K/Q) is wanted its image under pi is used.
struct ScenarioFile {
  std::string name;
  FieldScenario field;
  ElemId x;
  SetExprPtr set;
  std::optional<CharacterFn> psi;
  std::optional<Schedule> schedule;
  std::optional<std::uint64_t> burn_in;
  std::uint64_t X;
  double tolerance;
  std::optional<Rational> expected;
  std::optional<LProbeSpec> lprobe;
};

/// Throws Error(BadInput) on schema violations; group errors propagate.
ScenarioFile parse_scenario(const std::string& json_text);
ScenarioFile load_scenario(const std::filesystem::path& file);

}  // namespace frobdens

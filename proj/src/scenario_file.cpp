#include "frobdens/scenario_file.hpp"

#include "frobdens/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace frobdens {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::BadInput, what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t as_int(const json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == static_cast<double>(static_cast<std::int64_t>(v))) return static_cast<std::int64_t>(v);
  }
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      const auto v = std::stoll(j.get<std::string>(), &used);
      if (used == j.get<std::string>().size()) return v;
    } catch (const std::exception&) {
    }
  }
  schema(what + " must be an integer");
}

double as_double(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  schema(what + " must be a number");
}

std::vector<std::int64_t> int_list(const json& j, const std::string& what) {
  if (!j.is_array()) schema(what + " must be an array");
  std::vector<std::int64_t> out;
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

FieldScenario parse_field(const json& j) {
  const auto type = need(j, "type").get<std::string>();
  if (type == "abelian") {
    const auto m = as_int(need(j, "conductor"), "conductor");
    const auto k_kernel = j.contains("K_kernel") ? int_list(j["K_kernel"], "K_kernel") : std::vector<std::int64_t>{};
    std::optional<std::vector<std::int64_t>> l_kernel;
    if (j.contains("L_kernel")) l_kernel = int_list(j["L_kernel"], "L_kernel");
    return FieldScenario::abelian(m, k_kernel, l_kernel);
  }
  if (type == "sn") {
    const IntPoly f = int_list(need(j, "poly"), "poly");
    const json& h = j.contains("H") ? j["H"] : json("trivial");
    if (h.is_string()) return FieldScenario::sn_splitting(f, h.get<std::string>());
    if (!h.is_array()) schema("H must be a name or a list of generators");
    std::vector<Code> gens;
    for (const auto& g : h) gens.push_back(parse_cycles(g.get<std::string>(), degree(f)));
    return FieldScenario::sn_splitting(f, gens);
  }
  schema("unknown field type '" + type + "'");
}

/// Element of G = Gal(L/Q) named by `j`.
ElemId element_of(const FieldScenario& sc, const json& j) {
  if (sc.kind() == FieldKind::Abelian) return sc.element_of_residue(as_int(j, "element"));
  const int n = sc.poly_degree();
  Code perm;
  if (j.is_string()) {
    perm = parse_cycles(j.get<std::string>(), n);
  } else if (j.is_array()) {
    for (const auto& v : j) perm.push_back(static_cast<std::int32_t>(as_int(v, "permutation image") - 1));
  } else {
    schema("permutation must be cycle notation or a list of images");
  }
  return sc.galois_l()->index_of(perm);
}

ElemId element_of_k(const FieldScenario& sc, const json& j) { return sc.projection()(element_of(sc, j)); }

std::vector<ElemId> elements_of(const FieldScenario& sc, const json& j) {
  if (!j.is_array()) schema("element list must be an array");
  std::vector<ElemId> out;
  for (const auto& e : j) out.push_back(element_of(sc, e));
  return out;
}

SetExprPtr parse_set(const FieldScenario& sc, const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "all") return SetExpr::all();
    if (s == "empty") return SetExpr::empty();
    schema("unknown set '" + s + "'");
  }
  if (!j.is_object() || j.size() != 1) schema("a set expression is a string or a one-key object");
  const auto& [key, body] = *j.items().begin();
  if (key == "congruence")
    return SetExpr::congruence(as_int(need(body, "modulus"), "modulus"), int_list(need(body, "residues"), "residues"));
  if (key == "chebotarev") {
    if (body.contains("conductor"))
      return SetExpr::chebotarev_abelian(as_int(body["conductor"], "conductor"),
                                         body.contains("kernel") ? int_list(body["kernel"], "kernel")
                                                                 : std::vector<std::int64_t>{},
                                         as_int(need(body, "sigma"), "sigma"));
    if (body.contains("cycle_types")) {
      if (sc.kind() != FieldKind::SnSplitting) schema("cycle_types needs an S_n field");
      std::vector<ElemId> reps;
      for (const auto& ct : body["cycle_types"]) {
        std::vector<int> t;
        for (auto v : int_list(ct, "cycle type")) t.push_back(static_cast<int>(v));
        reps.push_back(sc.galois_l()->index_of(permutation_with_cycle_type(t, sc.poly_degree())));
      }
      return SetExpr::chebotarev(sc, reps);
    }
    return SetExpr::chebotarev(sc, elements_of(sc, need(body, "elements")));
  }
  if (key == "fiber") return SetExpr::fiber(sc, elements_of(sc, need(body, "elements")));
  if (key == "frobenius") return SetExpr::frobenius_is(element_of_k(sc, body));
  if (key == "frobenius_over") {
    std::vector<ElemId> gens;
    for (const auto& g : need(body, "subgroup")) gens.push_back(element_of_k(sc, g));
    return SetExpr::frobenius_over(sc, subgroup_generated(*sc.galois_k(), gens), element_of_k(sc, need(body, "x")));
  }
  if (key == "union" || key == "intersect") {
    if (!body.is_array()) schema(key + " takes an array");
    std::vector<SetExprPtr> parts;
    for (const auto& part : body) parts.push_back(parse_set(sc, part));
    return key == "union" ? SetExpr::union_of(std::move(parts)) : SetExpr::intersect_of(std::move(parts));
  }
  if (key == "complement") return SetExpr::complement(parse_set(sc, body));
  if (key == "minus_finite") {
    std::vector<std::uint64_t> primes;
    for (auto p : int_list(need(body, "primes"), "primes")) {
      if (p < 2) schema("finite prime list must hold primes");
      primes.push_back(static_cast<std::uint64_t>(p));
    }
    return SetExpr::minus_finite(parse_set(sc, need(body, "set")), std::move(primes));
  }
  schema("unknown set expression '" + key + "'");
}

CharacterFn parse_character(const FieldScenario& sc, const json& j, ElemId x) {
  const auto& gk = sc.galois_k();
  const auto kind = need(j, "kind").get<std::string>();
  if (kind == "regular") return regular_character(gk);
  if (kind == "trivial") return trivial_character(gk);
  if (kind == "point_mass") return point_mass_character(gk, j.contains("at") ? element_of_k(sc, j["at"]) : x);
  if (kind == "table") {
    std::vector<Rational> values(gk->size(), Rational(0));
    for (const auto& row : need(j, "values")) {
      const auto& v = need(row, "value");
      values[element_of_k(sc, need(row, "at"))] =
          v.is_string() ? parse_rational(v.get<std::string>()) : Rational(BigInt(as_int(v, "value")));
    }
    return CharacterFn::from_rational(gk, std::move(values));
  }
  schema("unknown character kind '" + kind + "'");
}

std::uint64_t as_cutoff(const json& j, const std::string& what) {
  const auto v = as_int(j, what);
  if (v < 2) schema(what + " must be at least 2");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

ScenarioFile parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) schema("scenario must be a JSON object");
    auto field = parse_field(need(doc, "field"));
    const ElemId x = doc.contains("x") ? element_of_k(field, doc["x"]) : field.galois_k()->identity();
    ScenarioFile out{doc.value("name", std::string{}),
                     field,
                     x,
                     doc.contains("set") ? parse_set(field, doc["set"]) : SetExpr::all(),
                     std::nullopt,
                     std::nullopt,
                     std::nullopt,
                     doc.contains("X") ? as_cutoff(doc["X"], "X") : std::uint64_t{1'000'000},
                     doc.contains("tolerance") ? as_double(doc["tolerance"], "tolerance") : 0.02,
                     std::nullopt,
                     std::nullopt};
    if (doc.contains("psi")) out.psi = parse_character(field, doc["psi"], x);
    if (doc.contains("schedule")) {
      Schedule s;
      for (const auto& row : doc["schedule"]) {
        if (!row.is_array() || row.size() != 2) schema("schedule rows are [epsilon, X] pairs");
        s.push_back(ScheduleEntry{as_double(row[0], "epsilon"), as_cutoff(row[1], "schedule X")});
      }
      validate_schedule(s);
      out.schedule = std::move(s);
    }
    if (doc.contains("burn_in")) {
      const auto b = as_int(doc["burn_in"], "burn_in");
      if (b < 0) schema("burn_in must be non-negative");
      out.burn_in = static_cast<std::uint64_t>(b);
    }
    if (doc.contains("expected")) {
      const auto& e = doc["expected"];
      out.expected = e.is_string() ? parse_rational(e.get<std::string>()) : parse_rational(e.dump());
    }
    if (doc.contains("lprobe")) {
      const auto& lp = doc["lprobe"];
      LProbeSpec spec{lp.contains("chi") ? parse_character(field, lp["chi"], x) : trivial_character(field.galois_k()),
                      {},
                      lp.contains("X") ? as_cutoff(lp["X"], "lprobe X") : out.X};
      for (const auto& s : need(lp, "s")) spec.s.push_back(as_double(s, "s"));
      out.lprobe = std::move(spec);
    }
    if (out.tolerance < 0) schema("tolerance must be non-negative");
    return out;
  } catch (const json::exception& e) {
    schema(std::string("schema error: ") + e.what());
  }
}

ScenarioFile load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  auto out = parse_scenario(text.str());
  if (out.name.empty()) out.name = file.stem().string();
  return out;
}

}  // namespace frobdens

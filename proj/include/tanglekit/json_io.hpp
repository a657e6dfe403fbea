#pragma once
// JSON documents for the three value kinds that cross the tool boundary,
// plus the registry of embedded fixtures addressable by name.
//
// Formats (parsers accept exactly what the emitters produce; unknown keys
// are ignored, so every emitted document re-parses to an equal value):
//   - subgroup:   {"level": n, "generators": [[[a,b],[c,d]], ...]} with
//     integer entries; emitted groups additionally carry "order" and
//     "fingerprint".
//   - polynomial: {"coefficients": [...]} ascending by degree.  Over Q the
//     entries are exact "p/q" strings; over Q(t) each entry is
//     {"num": [...], "den": [...]} with integer-string coefficient arrays,
//     again ascending.
//   - curve:      {"a_invariants": [a1, a2, a3, a4, a6], "base": "Q"|"Q(t)"}
//     with entries in the matching scalar encoding; emitted curves may carry
//     a "label".

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tanglekit/eqcurves.hpp"
#include "tanglekit/fixtures.hpp"
#include "tanglekit/modmat.hpp"
#include "tanglekit/numeric.hpp"
#include "tanglekit/qpoly.hpp"

namespace tanglekit {

using Json = nlohmann::json;

// ============================================================================
// Group documents
// ============================================================================

inline Json fingerprint_to_json(const GroupFingerprint& fp) {
  return Json{{"order", fp.order},
              {"abelian", fp.is_abelian},
              {"invariants", fp.abelian_invariants},
              {"exponent", fp.exponent},
              {"conjugacy_classes", fp.conjugacy_class_count},
              {"abelianization", fp.abelianization_invariants}};
}

inline Json matrix_to_json(const ResidueMatrix& g) {
  return Json::array({Json::array({g.a, g.b}), Json::array({g.c, g.d})});
}

inline Json subgroup_to_json(const FiniteMatrixGroup& G) {
  Json gens = Json::array();
  for (const ResidueMatrix& g : G.generators()) gens.push_back(matrix_to_json(g));
  return Json{{"level", G.level()},
              {"generators", std::move(gens)},
              {"order", G.order()},
              {"fingerprint", fingerprint_to_json(fingerprint(G))}};
}

namespace detail {

inline i64 json_int(const Json& j, const std::string& what) {
  require(j.is_number_integer(), what + " must be an integer");
  return j.get<i64>();
}

}  // namespace detail

/// Parse {"level", "generators"}; the group is rebuilt by closure, so a
/// document listing generators only is as good as a fully emitted one.  A
/// present "order" field is cross-checked to catch corrupted documents.
inline FiniteMatrixGroup subgroup_from_json(const Json& j,
                                            u64 budget = kDefaultClosureBudget) {
  require(j.is_object() && j.contains("level") && j.contains("generators"),
          "subgroup document requires \"level\" and \"generators\"");
  const i64 n = detail::json_int(j.at("level"), "subgroup level");
  require(n >= 1, "subgroup level must be positive");
  require(j.at("generators").is_array(), "subgroup \"generators\" must be an array");
  std::vector<ResidueMatrix> gens;
  for (const Json& m : j.at("generators")) {
    require(m.is_array() && m.size() == 2 && m[0].is_array() && m[1].is_array() &&
                m[0].size() == 2 && m[1].size() == 2,
            "subgroup generator must be a 2x2 integer matrix [[a,b],[c,d]]");
    gens.emplace_back(n, detail::json_int(m[0][0], "matrix entry"),
                      detail::json_int(m[0][1], "matrix entry"),
                      detail::json_int(m[1][0], "matrix entry"),
                      detail::json_int(m[1][1], "matrix entry"));
  }
  FiniteMatrixGroup G = FiniteMatrixGroup::closure(n, gens, budget);
  if (j.contains("order")) {
    require(j.at("order").is_number_unsigned() || j.at("order").is_number_integer(),
            "subgroup \"order\" must be an integer");
    require(j.at("order").get<u64>() == G.order(),
            "subgroup document \"order\" does not match the closure of its generators");
  }
  return G;
}

// ============================================================================
// Polynomial documents (over Q and over Q(t))
// ============================================================================

inline Json ratfunc_to_json(const RatFunc& f) {
  auto ints = [](const PolyZ& p) {
    Json a = Json::array();
    for (const Int& v : p) a.push_back(v.str());
    return a;
  };
  return Json{{"num", ints(f.num())}, {"den", ints(f.den())}};
}

inline RatFunc ratfunc_from_json(const Json& j) {
  require(j.is_object() && j.contains("num") && j.contains("den"),
          "Q(t) scalar requires \"num\" and \"den\" integer arrays");
  auto ints = [](const Json& a, const std::string& what) {
    require(a.is_array(), what + " must be an array of integer strings");
    PolyZ p;
    for (const Json& v : a) {
      require(v.is_string(), what + " entries must be integer strings");
      try {
        p.emplace_back(v.get<std::string>());
      } catch (const std::runtime_error&) {
        throw ValidationError("malformed integer literal: " + v.get<std::string>());
      }
    }
    return p;
  };
  PolyZ num = ints(j.at("num"), "\"num\"");
  PolyZ den = ints(j.at("den"), "\"den\"");
  bool den_zero = true;
  for (const Int& v : den) den_zero = den_zero && v == 0;
  require(!den_zero, "Q(t) scalar with zero denominator");
  return RatFunc(std::move(num), std::move(den));
}

inline Json poly_to_json(const Poly<Rat>& f) {
  Json coeffs = Json::array();
  for (i64 r = 0; r <= f.degree(); ++r) coeffs.push_back(rat_to_string(f.coeff(r)));
  if (f.is_zero()) coeffs = Json::array();
  return Json{{"coefficients", std::move(coeffs)}};
}

inline Json poly_to_json(const Poly<RatFunc>& f) {
  Json coeffs = Json::array();
  for (i64 r = 0; r <= f.degree(); ++r) coeffs.push_back(ratfunc_to_json(f.coeff(r)));
  if (f.is_zero()) coeffs = Json::array();
  return Json{{"coefficients", std::move(coeffs)}};
}

namespace detail {

inline const Json& poly_coeff_array(const Json& j) {
  require(j.is_object() && j.contains("coefficients") && j.at("coefficients").is_array(),
          "polynomial document requires a \"coefficients\" array");
  return j.at("coefficients");
}

}  // namespace detail

/// True when the document's coefficients are Q(t) objects rather than "p/q"
/// strings (an empty coefficient list counts as a Q polynomial).
inline bool poly_json_over_qt(const Json& j) {
  const Json& coeffs = detail::poly_coeff_array(j);
  return !coeffs.empty() && coeffs.front().is_object();
}

inline Poly<Rat> poly_q_from_json(const Json& j) {
  std::vector<Rat> c;
  for (const Json& v : detail::poly_coeff_array(j)) {
    require(v.is_string(), "Q polynomial coefficients must be \"p/q\" strings");
    c.push_back(rat_from_string(v.get<std::string>()));
  }
  return Poly<Rat>(std::move(c));
}

inline Poly<RatFunc> poly_t_from_json(const Json& j) {
  std::vector<RatFunc> c;
  for (const Json& v : detail::poly_coeff_array(j)) c.push_back(ratfunc_from_json(v));
  return Poly<RatFunc>(std::move(c));
}

// ============================================================================
// Curve documents
// ============================================================================

inline Json curve_to_json(const CurveQ& e) {
  Json a = Json::array();
  for (const Rat& ai : e.a) a.push_back(rat_to_string(ai));
  Json j{{"a_invariants", std::move(a)}, {"base", "Q"}};
  if (!e.label.empty()) j["label"] = e.label;
  return j;
}

inline Json curve_to_json(const CurveT& e) {
  Json a = Json::array();
  for (const RatFunc& ai : e.a) a.push_back(ratfunc_to_json(ai));
  Json j{{"a_invariants", std::move(a)}, {"base", "Q(t)"}};
  if (!e.label.empty()) j["label"] = e.label;
  return j;
}

namespace detail {

inline const Json& curve_a_array(const Json& j) {
  require(j.is_object() && j.contains("a_invariants") &&
              j.at("a_invariants").is_array() && j.at("a_invariants").size() == 5,
          "curve document requires an \"a_invariants\" array [a1,a2,a3,a4,a6]");
  return j.at("a_invariants");
}

}  // namespace detail

/// True when the document declares base Q(t) (or, lacking a "base" key, when
/// its a-invariants are Q(t) objects).
inline bool curve_json_over_qt(const Json& j) {
  detail::curve_a_array(j);
  if (j.contains("base")) {
    require(j.at("base").is_string(), "curve \"base\" must be \"Q\" or \"Q(t)\"");
    const std::string base = j.at("base").get<std::string>();
    require(base == "Q" || base == "Q(t)", "curve \"base\" must be \"Q\" or \"Q(t)\"");
    return base == "Q(t)";
  }
  return j.at("a_invariants").front().is_object();
}

inline CurveQ curve_q_from_json(const Json& j) {
  const Json& a = detail::curve_a_array(j);
  CurveQ e;
  for (int i = 0; i < 5; ++i) {
    require(a[i].is_string(), "Q curve a-invariants must be \"p/q\" strings");
    e.a[static_cast<std::size_t>(i)] = rat_from_string(a[i].get<std::string>());
  }
  if (j.contains("label") && j.at("label").is_string())
    e.label = j.at("label").get<std::string>();
  return e;
}

inline CurveT curve_t_from_json(const Json& j) {
  const Json& a = detail::curve_a_array(j);
  CurveT e;
  for (int i = 0; i < 5; ++i) e.a[static_cast<std::size_t>(i)] = ratfunc_from_json(a[i]);
  if (j.contains("label") && j.at("label").is_string())
    e.label = j.at("label").get<std::string>();
  return e;
}

// ============================================================================
// Embedded fixtures
// ============================================================================

struct GroupFixture {
  std::string name;
  std::string description;
  FiniteMatrixGroup (*make)();
};

inline const std::vector<GroupFixture>& group_fixtures() {
  static const std::vector<GroupFixture> table = {
      {"serre6",
       "index-2 fiber product in GL(2, Z/6) matching sign characters mod 2 "
       "and mod 3; carries a (2,3)-entanglement of type [2]",
       &fixture_serre6},
      {"serre15",
       "index-2 fiber product in GL(2, Z/15) matching quadratic characters "
       "mod 3 and mod 5; carries a (3,5)-entanglement of type [2]",
       &fixture_serre15},
      {"serre6_preimage12",
       "full preimage at level 12 of the serre6 group under reduction mod 6",
       &fixture_serre6_preimage12},
      {"abelian_not_weil_6",
       "level-6 group whose (2,3)-entanglement is abelian of type [2] but "
       "not of Weil type",
       &fixture_abelian_not_weil_6},
      {"cm8_index2",
       "index-2 subgroup of the normalizer of the delta = -2 Cartan at "
       "level 8 cut out by a quadratic character; mod-8 image profile of the "
       "e1 quartet curve",
       &fixture_cm8_index2},
  };
  return table;
}

inline FiniteMatrixGroup group_fixture(const std::string& name) {
  for (const GroupFixture& f : group_fixtures())
    if (f.name == name) return f.make();
  std::string names;
  for (const GroupFixture& f : group_fixtures()) names += " " + f.name;
  throw ValidationError("unknown group fixture \"" + name + "\"; available:" + names);
}

// ============================================================================
// Command-line argument resolution: inline JSON, fixture name, or file path
// ============================================================================

namespace detail {

/// Strip an optional "fixtures/" prefix and ".json" suffix so that the
/// spelling `fixtures/serre6.json` used in documentation resolves to the
/// embedded fixture of the same name.
inline std::string fixture_key(const std::string& arg) {
  std::string s = arg;
  const std::string prefix = "fixtures/";
  if (s.rfind(prefix, 0) == 0) s = s.substr(prefix.size());
  const std::string suffix = ".json";
  if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0)
    s = s.substr(0, s.size() - suffix.size());
  return s;
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  require(!j.is_discarded(), "malformed JSON in " + what);
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open document: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json_text(text.str(), path);
}

/// An argument starting with '{' is inline JSON; anything else is a file
/// path (fixture spellings are handled by the callers that have a registry).
inline Json resolve_json_argument(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_json_text(arg, "inline argument");
  return read_json_file(arg);
}

}  // namespace detail

/// Group argument: inline JSON, an embedded fixture name (optionally spelled
/// `fixtures/<name>.json`), or a path to a subgroup document.
inline FiniteMatrixGroup resolve_group_argument(const std::string& arg,
                                                u64 budget = kDefaultClosureBudget) {
  if (!arg.empty() && arg.front() == '{')
    return subgroup_from_json(detail::parse_json_text(arg, "inline group"), budget);
  const std::string key = detail::fixture_key(arg);
  for (const GroupFixture& f : group_fixtures())
    if (f.name == key) return f.make();
  return subgroup_from_json(detail::read_json_file(arg), budget);
}

/// Curve argument as a document: inline JSON, a built-in curve name
/// ("50.a1", "e1", CM-table labels; optionally spelled
/// `fixtures/<name>.json`), or a path.  The result may have base Q or Q(t).
inline Json resolve_curve_document(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return detail::parse_json_text(arg, "inline curve");
  const std::string key = detail::fixture_key(arg);
  const std::vector<std::string>& names = fixture_curve_names();
  if (std::find(names.begin(), names.end(), key) != names.end())
    return curve_to_json(fixture_curve(key));
  return detail::read_json_file(arg);
}

/// Curve argument restricted to base Q.
inline CurveQ resolve_curve_argument(const std::string& arg) {
  Json j = resolve_curve_document(arg);
  require(!curve_json_over_qt(j), "expected a curve over Q, got base Q(t)");
  return curve_q_from_json(j);
}

/// Polynomial argument: inline JSON or a path; base is detected from the
/// coefficient encoding.
inline Json resolve_poly_argument(const std::string& arg) {
  Json j = detail::resolve_json_argument(arg);
  detail::poly_coeff_array(j);
  return j;
}

}  // namespace tanglekit

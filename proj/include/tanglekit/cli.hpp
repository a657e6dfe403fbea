#pragma once
// Command-line dispatcher.  run_cli is the entire tool: tools/main.cpp wraps
// it over argv, and the test suite drives it in-process with captured
// streams.  One invocation handles one request; results go to `out` (JSON by
// default, indented plain text with --no-json), errors go to `err` as
// structured JSON with a stable code.
//
// Exit codes: 0 success, 2 unknown subcommand, 3 validation failure,
// 4 resource budget exceeded, 1 internal invariant failure.

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tanglekit/entangle.hpp"
#include "tanglekit/frobsample.hpp"
#include "tanglekit/gaussperiod.hpp"
#include "tanglekit/json_io.hpp"
#include "tanglekit/stdgroups.hpp"

namespace tanglekit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUnknownSubcommand = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitResource = 4;

namespace detail {

// ---------------------------------------------------------------------------
// Output rendering
// ---------------------------------------------------------------------------

inline bool plain_flat_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const Json& x : v)
    if (x.is_structured()) return false;
  return true;
}

inline std::string plain_scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void print_plain(std::ostream& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      if (!val.is_structured()) {
        out << pad << key << ": " << plain_scalar_text(val) << "\n";
      } else if (plain_flat_array(val)) {
        out << pad << key << ": " << val.dump() << "\n";
      } else {
        out << pad << key << ":\n";
        print_plain(out, val, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const Json& x : v) {
      if (!x.is_structured()) {
        out << pad << "- " << plain_scalar_text(x) << "\n";
      } else {
        out << pad << "-\n";
        print_plain(out, x, indent + 2);
      }
    }
  } else {
    out << pad << plain_scalar_text(v) << "\n";
  }
}

inline void emit_document(std::ostream& out, const Json& doc, bool json_mode) {
  if (json_mode)
    out << doc.dump(2) << "\n";
  else
    print_plain(out, doc, 0);
}

inline std::string error_text(const std::string& code, const std::string& message) {
  return Json{{"error", Json{{"code", code}, {"message", message}}}}.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Small parsers for flag payloads
// ---------------------------------------------------------------------------

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline i64 parse_i64(const std::string& tok) {
  try {
    std::size_t used = 0;
    const i64 v = std::stoll(tok, &used);
    require(!tok.empty() && used == tok.size(), "trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("malformed integer literal: \"" + tok + "\"");
  }
}

inline ResidueMatrix parse_matrix_csv(i64 level, const std::string& s) {
  const std::vector<std::string> toks = split_csv(s);
  require(toks.size() == 4,
          "a generator is four comma-separated integers a,b,c,d; got \"" + s + "\"");
  return ResidueMatrix(level, parse_i64(toks[0]), parse_i64(toks[1]), parse_i64(toks[2]),
                       parse_i64(toks[3]));
}

inline std::vector<Rat> parse_rat_csv(const std::string& s) {
  std::vector<Rat> out;
  for (const std::string& tok : split_csv(s)) out.push_back(rat_from_string(tok));
  return out;
}

// ---------------------------------------------------------------------------
// Document builders for module result types
// ---------------------------------------------------------------------------

inline Json optional_fingerprint_json(const std::optional<GroupFingerprint>& fp) {
  return fp ? fingerprint_to_json(*fp) : Json(nullptr);
}

inline Json report_to_json(const EntanglementReport& r) {
  return Json{{"a", r.a},
              {"b", r.b},
              {"d", r.d},
              {"c", r.c},
              {"order_gc", r.order_gc},
              {"order_na", r.order_na},
              {"order_nb", r.order_nb},
              {"order_nd", r.order_nd},
              {"order_join", r.order_join},
              {"nontrivial", r.nontrivial},
              {"det_surjective", r.det_surjective},
              {"type", optional_fingerprint_json(r.type)}};
}

inline Json lattice_entry_to_json(const LatticeEntry& e) {
  return Json{{"a", e.a}, {"b", e.b}, {"type", fingerprint_to_json(e.type)}};
}

inline Json signature_key_to_json(const SignatureKey& k) {
  Json fix = Json::array();
  for (const auto& [m, inv] : k.fix)
    fix.push_back(Json{{"m", m}, {"invariant_factors", Json::array({inv[0], inv[1]})}});
  return Json{{"trace", k.trace}, {"det", k.det}, {"fix", std::move(fix)}};
}

inline Json samefield_to_json(const SameFieldVerdict& v) {
  return Json{{"consistent", v.consistent},
              {"certificate_prime",
               v.certificate_prime ? Json(*v.certificate_prime) : Json(nullptr)},
              {"sample_size", v.sample_size},
              {"skipped_primes", v.skipped_primes}};
}

inline Json list_fixtures_json() {
  Json groups = Json::array();
  for (const GroupFixture& f : group_fixtures()) {
    const FiniteMatrixGroup G = f.make();
    groups.push_back(Json{{"name", f.name},
                          {"level", G.level()},
                          {"order", G.order()},
                          {"description", f.description}});
  }
  Json curves = Json::array();
  for (const std::string& name : fixture_curve_names()) {
    const CurveQ e = fixture_curve(name);
    std::string desc;
    if (name == "50.a1") {
      desc = "conductor-50 curve; built-in target for the mod-3 and mod-5 "
             "image checks";
    } else if (name.size() == 2 && name[0] == 'e') {
      desc = "member of the quartet of Z[sqrt(-2)]-CM curves related by "
             "quadratic twists over Q(i, sqrt 2)";
    } else {
      for (const CmTableRow& row : cm_table()) {
        if (row.label_a == name || row.label_b == name) {
          desc = "CM curve with j = " + rat_to_string(row.j) + " for the order of discriminant " +
                 Int(row.field_disc * row.order_conductor * row.order_conductor).str();
          break;
        }
      }
    }
    Json doc = curve_to_json(e);
    doc["name"] = name;
    doc["description"] = desc;
    curves.push_back(std::move(doc));
  }
  Json families = Json::array();
  for (const std::string& name : family_names()) {
    std::string desc;
    if (name == "hesse3") {
      desc = "every fiber has a rational root of its 3-division polynomial";
    } else if (name == "rs9") {
      desc = "the 2-division field is the same cyclic cubic for every fiber";
    } else if (name == "isog5") {
      desc = "every fiber carries a rational 5-isogeny";
    } else if (name == "isog7") {
      desc = "every fiber carries a rational 7-isogeny; the kernel x-cubic "
             "cuts out a cyclic cubic field";
    } else if (name == "tors4") {
      desc = "every fiber has a rational point of order 4";
    } else {
      desc = "j-line family presented by its j-map through the universal curve";
    }
    families.push_back(Json{{"name", name},
                            {"description", desc},
                            {"model", family_has_explicit_model(name) ? "explicit" : "j-map"}});
  }
  return Json{{"groups", std::move(groups)},
              {"curves", std::move(curves)},
              {"families", std::move(families)}};
}

}  // namespace detail

// ===========================================================================
// The dispatcher
// ===========================================================================

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  // --list-fixtures is a standalone request: honor it before any parsing so
  // it needs no subcommand.
  for (const std::string& a : args) {
    if (a == "--list-fixtures") {
      bool json_mode = true;
      for (const std::string& b : args)
        if (b == "--no-json") json_mode = false;
      detail::emit_document(out, detail::list_fixtures_json(), json_mode);
      return kExitOk;
    }
  }

  CLI::App app{"exact entanglement calculus for mod-n images of Galois representations"};
  app.name("tanglekit");

  bool json_mode = true;
  i64 pbound = 10000;
  u64 budget = kDefaultClosureBudget;
  bool list_fixtures = false;
  app.add_flag("--json,!--no-json", json_mode, "emit JSON (default) or indented plain text");
  app.add_option("--pbound", pbound, "bound for exhaustive prime sweeps (default 10000)");
  app.add_option("--budget", budget, "element budget for group closures");
  app.add_flag("--list-fixtures", list_fixtures, "enumerate the embedded fixtures and exit");

  auto emit = [&](const Json& doc) { detail::emit_document(out, doc, json_mode); };

  // ---- entangle ----------------------------------------------------------
  CLI::App* entangle = app.add_subcommand("entangle", "entanglement detection and typing");
  entangle->fallthrough();
  entangle->require_subcommand(1);

  struct {
    std::string group;
    i64 a = 0, b = 0;
  } ent;
  CLI::App* ent_report =
      entangle->add_subcommand("report", "pairwise entanglement report for divisors a, b");
  ent_report->fallthrough();
  ent_report->add_option("--group", ent.group, "subgroup document, fixture name, or path")
      ->required();
  ent_report->add_option("--a", ent.a, "first divisor of the level")->required();
  ent_report->add_option("--b", ent.b, "second divisor of the level")->required();
  ent_report->callback([&] {
    const FiniteMatrixGroup G = resolve_group_argument(ent.group, budget);
    emit(detail::report_to_json(entanglement_report(G, ent.a, ent.b, budget)));
  });

  std::string lat_group;
  CLI::App* ent_lattice =
      entangle->add_subcommand("lattice", "all nontrivially entangled divisor pairs");
  ent_lattice->fallthrough();
  ent_lattice->add_option("--group", lat_group, "subgroup document, fixture name, or path")
      ->required();
  ent_lattice->callback([&] {
    const FiniteMatrixGroup G = resolve_group_argument(lat_group, budget);
    const EntanglementLattice lat = entanglement_lattice(G, budget);
    Json entries = Json::array();
    for (const LatticeEntry& e : lat.entries)
      entries.push_back(detail::lattice_entry_to_json(e));
    emit(Json{{"level", lat.level},
              {"entries", std::move(entries)},
              {"maximal", lat.maximal ? detail::lattice_entry_to_json(*lat.maximal)
                                      : Json(nullptr)},
              {"primitive", lat.primitive}});
  });

  struct {
    std::string group;
    i64 a = 0, b = 0;
  } cls;
  CLI::App* ent_classify = entangle->add_subcommand(
      "classify", "report plus abelian and Weil classification for divisors a, b");
  ent_classify->fallthrough();
  ent_classify->add_option("--group", cls.group, "subgroup document, fixture name, or path")
      ->required();
  ent_classify->add_option("--a", cls.a, "first divisor of the level")->required();
  ent_classify->add_option("--b", cls.b, "second divisor of the level")->required();
  ent_classify->callback([&] {
    const FiniteMatrixGroup G = resolve_group_argument(cls.group, budget);
    const EntanglementReport rep = entanglement_report(G, cls.a, cls.b, budget);
    const std::optional<GroupFingerprint> ab = abelian_type(G, cls.a, cls.b, budget);
    const std::optional<WeilReport> weil = weil_type(G, cls.a, cls.b, budget);
    Json weil_doc(nullptr);
    if (weil) {
      weil_doc = Json{{"headline", fingerprint_to_json(weil->headline)},
                      {"orientation_a", detail::optional_fingerprint_json(weil->orientation_a)},
                      {"orientation_b", detail::optional_fingerprint_json(weil->orientation_b)}};
    }
    emit(Json{{"report", detail::report_to_json(rep)},
              {"abelian", detail::optional_fingerprint_json(ab)},
              {"weil", std::move(weil_doc)}});
  });

  // ---- group -------------------------------------------------------------
  CLI::App* group = app.add_subcommand("group", "finite matrix groups over Z/n");
  group->fallthrough();
  group->require_subcommand(1);

  struct {
    i64 level = 0;
    std::vector<std::string> gens;
  } gcl;
  CLI::App* group_closure =
      group->add_subcommand("closure", "generate a subgroup of GL(2, Z/n) from matrices");
  group_closure->fallthrough();
  group_closure->add_option("--level", gcl.level, "the modulus n")->required();
  group_closure
      ->add_option("--gen", gcl.gens, "generator as four integers a,b,c,d (repeatable)")
      ->required();
  group_closure->callback([&] {
    std::vector<ResidueMatrix> gens;
    require(gcl.level >= 1, "group closure: level must be positive");
    for (const std::string& s : gcl.gens)
      gens.push_back(detail::parse_matrix_csv(gcl.level, s));
    emit(subgroup_to_json(FiniteMatrixGroup::closure(gcl.level, gens, budget)));
  });

  struct {
    std::string group;
    i64 e = 0;
  } gker;
  CLI::App* group_kernel = group->add_subcommand(
      "kernel", "kernel of reduction to level e inside the group, N_e");
  group_kernel->fallthrough();
  group_kernel->add_option("--group", gker.group, "subgroup document, fixture name, or path")
      ->required();
  group_kernel->add_option("--e", gker.e, "divisor of the level")->required();
  group_kernel->callback([&] {
    const FiniteMatrixGroup G = resolve_group_argument(gker.group, budget);
    emit(subgroup_to_json(kernel_of_reduction(G, gker.e)));
  });

  struct {
    std::string group, other;
  } gjoin;
  CLI::App* group_join =
      group->add_subcommand("join", "subgroup generated by two groups of the same level");
  group_join->fallthrough();
  group_join->add_option("--group", gjoin.group, "first subgroup document")->required();
  group_join->add_option("--other", gjoin.other, "second subgroup document")->required();
  group_join->callback([&] {
    const FiniteMatrixGroup H1 = resolve_group_argument(gjoin.group, budget);
    const FiniteMatrixGroup H2 = resolve_group_argument(gjoin.other, budget);
    emit(subgroup_to_json(join(H1, H2, budget)));
  });

  struct {
    std::string group, normal;
  } gquo;
  CLI::App* group_quotient =
      group->add_subcommand("quotient", "fingerprint of G/N for a normal subgroup N");
  group_quotient->fallthrough();
  group_quotient->add_option("--group", gquo.group, "the ambient group G")->required();
  group_quotient->add_option("--normal", gquo.normal, "the normal subgroup N")->required();
  group_quotient->callback([&] {
    const FiniteMatrixGroup G = resolve_group_argument(gquo.group, budget);
    const FiniteMatrixGroup N = resolve_group_argument(gquo.normal, budget);
    emit(Json{{"order_g", G.order()},
              {"order_n", N.order()},
              {"fingerprint", fingerprint_to_json(quotient_fingerprint(G, N))}});
  });

  std::string gcrt_group;
  CLI::App* group_crt = group->add_subcommand(
      "crt", "projections to the prime-power parts of the level");
  group_crt->fallthrough();
  group_crt->add_option("--group", gcrt_group, "subgroup document, fixture name, or path")
      ->required();
  group_crt->callback([&] {
    const FiniteMatrixGroup G = resolve_group_argument(gcrt_group, budget);
    const CrtSplit split = crt_split(G);
    Json projections = Json::array();
    for (const FiniteMatrixGroup& H : split.projections)
      projections.push_back(subgroup_to_json(H));
    emit(Json{{"moduli", split.moduli},
              {"projections", std::move(projections)},
              {"full_fiber_product", split.full_fiber_product}});
  });

  // ---- stdgroup / cartan --------------------------------------------------
  struct {
    std::string label;
    i64 ell = 0;
  } sg;
  CLI::App* stdgroup = app.add_subcommand(
      "stdgroup", "standard subgroup of GL(2, Z/ell): Borel, Cartan, or normalizer");
  stdgroup->fallthrough();
  stdgroup->add_option("--label", sg.label, "one of B, Cs, Cn, Ns, Nn")->required();
  stdgroup->add_option("--ell", sg.ell, "an odd prime")->required();
  stdgroup->callback([&] {
    const FiniteMatrixGroup G =
        standard_subgroup(standard_label_from_string(sg.label), sg.ell, budget);
    Json doc = subgroup_to_json(G);
    doc["label"] = sg.label;
    emit(doc);
  });

  struct {
    i64 dk = 0;
    i64 f = 1;
    i64 n = 0;
    bool normalizer = false;
  } ca;
  CLI::App* cartan = app.add_subcommand(
      "cartan", "CM Cartan subgroup C_{delta,phi}(n) of an imaginary quadratic order");
  cartan->fallthrough();
  cartan->add_option("--dk", ca.dk, "fundamental discriminant of the CM field (negative)")
      ->required();
  cartan->add_option("--f", ca.f, "conductor of the order (default 1)");
  cartan->add_option("--n", ca.n, "the level n")->required();
  cartan->add_flag("--normalizer", ca.normalizer, "emit the normalizer instead");
  cartan->callback([&] {
    const CartanParams params = cartan_params(ca.dk, ca.f, ca.n);
    const FiniteMatrixGroup G =
        ca.normalizer ? cartan_normalizer(params, budget) : cartan_group(params, budget);
    Json doc = subgroup_to_json(G);
    doc["cartan"] = Json{{"delta", params.delta},
                         {"phi", params.phi},
                         {"disc_k", params.disc_k},
                         {"conductor", params.conductor},
                         {"normalizer", ca.normalizer}};
    emit(doc);
  });

  // ---- poly ---------------------------------------------------------------
  CLI::App* poly = app.add_subcommand("poly", "exact polynomial operations over Q and Q(t)");
  poly->fallthrough();
  poly->require_subcommand(1);

  struct {
    std::string curve;
    i64 m = 0;
  } pdiv;
  CLI::App* poly_division =
      poly->add_subcommand("division", "m-division polynomial of a curve");
  poly_division->fallthrough();
  poly_division->add_option("--curve", pdiv.curve, "curve document, fixture name, or path")
      ->required();
  poly_division->add_option("--m", pdiv.m, "the division index m >= 1")->required();
  poly_division->callback([&] {
    const Json cj = resolve_curve_document(pdiv.curve);
    if (curve_json_over_qt(cj)) {
      const Poly<RatFunc> psi = curve_division_polynomial(curve_t_from_json(cj), pdiv.m);
      Json doc = poly_to_json(psi);
      doc["base"] = "Q(t)";
      doc["m"] = pdiv.m;
      doc["degree"] = psi.degree();
      emit(doc);
    } else {
      const Poly<Rat> psi = curve_division_polynomial(curve_q_from_json(cj), pdiv.m);
      Json doc = poly_to_json(psi);
      doc["base"] = "Q";
      doc["m"] = pdiv.m;
      doc["degree"] = psi.degree();
      emit(doc);
    }
  });

  std::string pdisc_poly;
  CLI::App* poly_disc = poly->add_subcommand("disc", "discriminant and its square class");
  poly_disc->fallthrough();
  poly_disc->add_option("--poly", pdisc_poly, "polynomial document or path")->required();
  poly_disc->callback([&] {
    const Json pj = resolve_poly_argument(pdisc_poly);
    if (poly_json_over_qt(pj)) {
      const RatFunc d = poly_discriminant(poly_t_from_json(pj));
      emit(Json{{"base", "Q(t)"},
                {"discriminant", ratfunc_to_json(d)},
                {"is_square", ratfunc_is_square(d)}});
    } else {
      const Rat d = poly_discriminant(poly_q_from_json(pj));
      Json doc{{"base", "Q"},
               {"discriminant", rat_to_string(d)},
               {"is_square", is_square(d)}};
      doc["square_class"] = (d == 0) ? "0" : squarefree_part(d).str();
      emit(doc);
    }
  });

  struct {
    std::string poly;
    int dmax = 3;
  } pfac;
  CLI::App* poly_factors = poly->add_subcommand(
      "factors", "all monic rational factors of degree at most dmax");
  poly_factors->fallthrough();
  poly_factors->add_option("--poly", pfac.poly, "polynomial document or path (base Q)")
      ->required();
  poly_factors->add_option("--dmax", pfac.dmax, "degree bound, 1 to 3 (default 3)");
  poly_factors->callback([&] {
    const Json pj = resolve_poly_argument(pfac.poly);
    require(!poly_json_over_qt(pj), "poly factors: base-Q coefficients required");
    const SmallFactors sf = small_rational_factors(poly_q_from_json(pj), pfac.dmax);
    Json factors = Json::array();
    for (const Poly<Rat>& f : sf.factors) factors.push_back(poly_to_json(f));
    emit(Json{{"dmax", pfac.dmax},
              {"prime_used", sf.prime_used},
              {"factors", std::move(factors)}});
  });

  struct {
    std::string poly;
    i64 p = 0;
  } pfp;
  CLI::App* poly_fingerprint = poly->add_subcommand(
      "fingerprint", "degree multiset of the squarefree factorization mod p");
  poly_fingerprint->fallthrough();
  poly_fingerprint->add_option("--poly", pfp.poly, "polynomial document or path (base Q)")
      ->required();
  poly_fingerprint->add_option("--p", pfp.p, "a prime")->required();
  poly_fingerprint->callback([&] {
    const Json pj = resolve_poly_argument(pfp.poly);
    require(!poly_json_over_qt(pj), "poly fingerprint: base-Q coefficients required");
    const SplitFingerprint fp = factor_fingerprint_mod_p(poly_q_from_json(pj), pfp.p);
    emit(Json{{"p", fp.p}, {"ramified", fp.ramified}, {"degrees", fp.degree_multiset}});
  });

  struct {
    std::string f, g;
  } psf;
  CLI::App* poly_samefield = poly->add_subcommand(
      "samefield", "splitting-field comparison by factorization fingerprints");
  poly_samefield->fallthrough();
  poly_samefield->add_option("--f", psf.f, "first polynomial document or path")->required();
  poly_samefield->add_option("--g", psf.g, "second polynomial document or path")->required();
  poly_samefield->callback([&] {
    const Json fj = resolve_poly_argument(psf.f);
    const Json gj = resolve_poly_argument(psf.g);
    require(!poly_json_over_qt(fj) && !poly_json_over_qt(gj),
            "poly samefield: base-Q coefficients required");
    const SameFieldVerdict v =
        same_splitting_field_mc(poly_q_from_json(fj), poly_q_from_json(gj), pbound);
    Json doc = detail::samefield_to_json(v);
    doc["pbound"] = pbound;
    emit(doc);
  });

  // ---- curve --------------------------------------------------------------
  CLI::App* curve = app.add_subcommand("curve", "elliptic curves over Q and Q(t)");
  curve->fallthrough();
  curve->require_subcommand(1);

  std::string cinv_curve;
  CLI::App* curve_invariants_cmd =
      curve->add_subcommand("invariants", "b-, c-invariants, discriminant, and j");
  curve_invariants_cmd->fallthrough();
  curve_invariants_cmd
      ->add_option("--curve", cinv_curve, "curve document, fixture name, or path")
      ->required();
  curve_invariants_cmd->callback([&] {
    const Json cj = resolve_curve_document(cinv_curve);
    if (curve_json_over_qt(cj)) {
      const CurveT e = curve_t_from_json(cj);
      const auto inv = curve_invariants(e);
      Json doc{{"base", "Q(t)"},         {"b2", ratfunc_to_json(inv.b2)},
               {"b4", ratfunc_to_json(inv.b4)}, {"b6", ratfunc_to_json(inv.b6)},
               {"b8", ratfunc_to_json(inv.b8)}, {"c4", ratfunc_to_json(inv.c4)},
               {"c6", ratfunc_to_json(inv.c6)}, {"discriminant", ratfunc_to_json(inv.disc)},
               {"j", ratfunc_to_json(inv.j)}};
      if (!e.label.empty()) doc["label"] = e.label;
      emit(doc);
    } else {
      const CurveQ e = curve_q_from_json(cj);
      const auto inv = curve_invariants(e);
      Json doc{{"base", "Q"},          {"b2", rat_to_string(inv.b2)},
               {"b4", rat_to_string(inv.b4)}, {"b6", rat_to_string(inv.b6)},
               {"b8", rat_to_string(inv.b8)}, {"c4", rat_to_string(inv.c4)},
               {"c6", rat_to_string(inv.c6)}, {"discriminant", rat_to_string(inv.disc)},
               {"j", rat_to_string(inv.j)}};
      if (!e.label.empty()) doc["label"] = e.label;
      emit(doc);
    }
  });

  struct {
    std::string curve;
    i64 d = 0;
  } ctw;
  CLI::App* curve_twist = curve->add_subcommand(
      "twist", "quadratic twist by a squarefree integer d");
  curve_twist->fallthrough();
  curve_twist->add_option("--curve", ctw.curve, "curve document, fixture name, or path")
      ->required();
  curve_twist->add_option("--d", ctw.d, "squarefree twisting integer")->required();
  curve_twist->callback([&] {
    emit(curve_to_json(quadratic_twist(resolve_curve_argument(ctw.curve), Int(ctw.d))));
  });

  std::string cser_curve;
  CLI::App* curve_serre = curve->add_subcommand(
      "serre", "the quadratic field Q(sqrt(disc E)) inside a cyclotomic field");
  curve_serre->fallthrough();
  curve_serre->add_option("--curve", cser_curve, "curve document, fixture name, or path")
      ->required();
  curve_serre->callback([&] {
    const SerreReport r = serre_entanglement(resolve_curve_argument(cser_curve));
    emit(Json{{"curve_label", r.curve_label},
              {"delta_square_class", r.delta_square_class.str()},
              {"vertical_flag", r.vertical_flag},
              {"serre_field", r.serre_field},
              {"minimal_cyclotomic_level", r.minimal_cyclotomic_level.str()},
              {"level_bound", r.level_bound.str()}});
  });

  struct {
    std::string family;
    std::string t;
    bool generic = false;
  } csp;
  CLI::App* curve_specialize = curve->add_subcommand(
      "specialize", "fiber of a built-in family at t, or its generic fiber");
  curve_specialize->fallthrough();
  curve_specialize->add_option("--family", csp.family, "family name (see --list-fixtures)")
      ->required();
  CLI::Option* csp_t =
      curve_specialize->add_option("--t", csp.t, "parameter value as an exact rational");
  curve_specialize->add_flag("--generic", csp.generic, "emit the generic fiber over Q(t)")
      ->excludes(csp_t);
  curve_specialize->callback([&] {
    if (csp.generic) {
      emit(curve_to_json(family_model(csp.family)));
      return;
    }
    require(!csp.t.empty(), "curve specialize: provide --t or --generic");
    emit(curve_to_json(family_specialize(csp.family, rat_from_string(csp.t))));
  });

  struct {
    i64 m = 0, n = 0;
  } ccd;
  CLI::App* curve_cdpoint = curve->add_subcommand(
      "cdpoint", "rational point on the conic C_d for d = m^2 + n^2");
  curve_cdpoint->fallthrough();
  curve_cdpoint->add_option("--m", ccd.m, "first integer")->required();
  curve_cdpoint->add_option("--n", ccd.n, "second integer")->required();
  curve_cdpoint->callback([&] {
    const CdPoint pt = c_d_point(Int(ccd.m), Int(ccd.n));
    emit(Json{{"d", pt.d.str()}, {"x", rat_to_string(pt.x)}, {"y", rat_to_string(pt.y)}});
  });

  // ---- frob ---------------------------------------------------------------
  CLI::App* frob = app.add_subcommand(
      "frob", "Frobenius data of curves over Q at primes of good reduction");
  frob->fallthrough();
  frob->require_subcommand(1);

  struct {
    std::string curve;
    i64 p = 0;
  } fct;
  CLI::App* frob_count = frob->add_subcommand("count", "#E(F_p) and the Frobenius trace");
  frob_count->fallthrough();
  frob_count->add_option("--curve", fct.curve, "curve document, fixture name, or path")
      ->required();
  frob_count->add_option("--p", fct.p, "a prime of good reduction")->required();
  frob_count->callback([&] {
    const i64 count = count_points(resolve_curve_argument(fct.curve), fct.p);
    emit(Json{{"p", fct.p}, {"count", count}, {"trace", fct.p + 1 - count}});
  });

  struct {
    std::string curve;
    i64 p = 0, n = 0;
  } fsig;
  CLI::App* frob_signature_cmd = frob->add_subcommand(
      "signature", "mod-n Frobenius signature: trace, determinant, torsion structure");
  frob_signature_cmd->fallthrough();
  frob_signature_cmd
      ->add_option("--curve", fsig.curve, "curve document, fixture name, or path")
      ->required();
  frob_signature_cmd->add_option("--p", fsig.p, "a prime of good reduction, coprime to n")
      ->required();
  frob_signature_cmd->add_option("--n", fsig.n, "the level n")->required();
  frob_signature_cmd->callback([&] {
    const FrobeniusSignature s =
        frob_signature(resolve_curve_argument(fsig.curve), fsig.p, fsig.n);
    Json doc = detail::signature_key_to_json(s.key);
    doc["p"] = s.p;
    doc["n"] = s.n;
    doc["point_count"] = s.point_count;
    emit(doc);
  });

  struct {
    std::string curve, group;
    double threshold = kDefaultCoverageThreshold;
  } fv;
  CLI::App* frob_verify = frob->add_subcommand(
      "verify", "containment check of Frobenius signatures against a candidate image");
  frob_verify->fallthrough();
  frob_verify->add_option("--curve", fv.curve, "curve document, fixture name, or path")
      ->required();
  frob_verify->add_option("--group", fv.group, "candidate image subgroup document")
      ->required();
  frob_verify->add_option("--threshold", fv.threshold,
                          "coverage needed for a consistent verdict (default 0.99)");
  frob_verify->callback([&] {
    const CurveQ e = resolve_curve_argument(fv.curve);
    const FiniteMatrixGroup H = resolve_group_argument(fv.group, budget);
    const ImageVerdict v = verify_image(e, H, pbound, fv.threshold);
    Json violations = Json::array();
    for (const auto& [p, key] : v.containment_violations) {
      Json item = detail::signature_key_to_json(key);
      item["p"] = p;
      violations.push_back(std::move(item));
    }
    emit(Json{{"level", v.level},
              {"candidate_order", v.candidate_order},
              {"det_surjective", v.det_surjective},
              {"primes_used", v.primes_used},
              {"violations", std::move(violations)},
              {"certificate_prime",
               v.certificate_prime ? Json(*v.certificate_prime) : Json(nullptr)},
              {"coverage", v.coverage},
              {"coverage_threshold", v.coverage_threshold},
              {"verdict", v.verdict}});
  });

  // ---- gauss --------------------------------------------------------------
  CLI::App* gauss = app.add_subcommand(
      "gauss", "period polynomials of prime level and their companion families");
  gauss->fallthrough();
  gauss->require_subcommand(1);

  i64 gp_ell = 0;
  CLI::App* gauss_period = gauss->add_subcommand(
      "period", "degree-(ell-1)/2 period polynomial of a prime ell > 3");
  gauss_period->fallthrough();
  gauss_period->add_option("--ell", gp_ell, "a prime > 3 with (ell-1)/2 odd")->required();
  gauss_period->callback([&] {
    const PeriodPolynomial pp = period_polynomial(gp_ell);
    Json a = Json::array();
    for (const Int& v : pp.a) a.push_back(v.str());
    emit(Json{{"ell", pp.ell},
              {"e", pp.e},
              {"a", std::move(a)},
              {"poly", poly_to_json(pp.poly)},
              {"discriminant", rat_to_string(poly_discriminant(pp.poly))}});
  });

  struct {
    i64 ell = 0;
    std::string b;
    bool check2 = false;
  } gf;
  CLI::App* gauss_family = gauss->add_subcommand(
      "family", "companion-matrix family member at coordinates b");
  gauss_family->fallthrough();
  gauss_family->add_option("--ell", gf.ell, "a prime > 3 with (ell-1)/2 odd")->required();
  gauss_family->add_option("--b", gf.b, "family coordinates as comma-separated rationals")
      ->required();
  gauss_family->add_flag("--check-2torsion", gf.check2,
                         "compare splitting fields of the member and the base");
  gauss_family->callback([&] {
    const PeriodPolynomial pp = period_polynomial(gf.ell);
    const CompanionFamilyMember m = companion_family(pp, detail::parse_rat_csv(gf.b));
    Json b = Json::array();
    for (const Rat& v : m.b) b.push_back(rat_to_string(v));
    Json k = Json::array();
    for (const Rat& v : m.k) k.push_back(rat_to_string(v));
    Json doc{{"ell", gf.ell},
             {"base", poly_to_json(m.base)},
             {"b", std::move(b)},
             {"k", std::move(k)},
             {"member", poly_to_json(m.member)},
             {"discriminant", rat_to_string(m.disc)},
             {"on_discriminant_locus", m.on_discriminant_locus}};
    if (gf.check2) {
      const SameFieldVerdict v = two_torsion_match(m.base, m.member, pbound);
      doc["two_torsion"] = detail::samefield_to_json(v);
    }
    emit(doc);
  });

  // ---- parse and dispatch -------------------------------------------------
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("tanglekit");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (app.get_subcommands().empty() && !list_fixtures) {
      out << app.help();
      return kExitOk;
    }
    return kExitOk;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    // A stray non-flag token is a misspelled subcommand; everything else the
    // parser rejects is a malformed request.
    std::string stray;
    for (const std::string& r : app.remaining(true)) {
      if (!r.empty() && r.front() != '-') {
        stray = r;
        break;
      }
    }
    if (!stray.empty()) {
      err << detail::error_text("unknown-subcommand", "unknown subcommand: " + stray);
      return kExitUnknownSubcommand;
    }
    err << detail::error_text("validation", e.what());
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << detail::error_text("validation", e.what());
    return kExitValidation;
  } catch (const ResourceError& e) {
    err << detail::error_text("resource", e.what());
    return kExitResource;
  } catch (const std::exception& e) {
    err << detail::error_text("internal", e.what());
    return kExitInternal;
  }
}

}  // namespace tanglekit

// Tests for the command-line dispatcher.  Every case drives run_cli
// in-process with captured streams and checks the emitted JSON against the
// library calls it is supposed to wrap, the documented exit codes, and the
// byte-stability and round-trip guarantees of the document formats.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tanglekit/cli.hpp"
#include "tanglekit/entangle.hpp"

using namespace tanglekit;
using Catch::Matchers::ContainsSubstring;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
  Json error() const { return Json::parse(err); }
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

/// Write a document to a temp file and return the path.
std::string temp_doc(const std::string& name, const Json& doc) {
  const std::string path = "cli_test_" + name + ".json";
  std::ofstream f(path);
  f << doc.dump(2) << "\n";
  return path;
}

}  // namespace

TEST_CASE("cartan subgroup orders at level 8", "[cli]") {
  RunResult norm = run({"cartan", "--dk", "-8", "--f", "1", "--n", "8", "--normalizer"});
  REQUIRE(norm.code == kExitOk);
  Json j = norm.json();
  CHECK(j["order"] == 64);
  CHECK(j["level"] == 8);
  CHECK(j["cartan"]["delta"] == 6);
  CHECK(j["cartan"]["phi"] == 0);
  CHECK(j["cartan"]["normalizer"] == true);

  RunResult plain = run({"cartan", "--dk", "-8", "--f", "1", "--n", "8"});
  REQUIRE(plain.code == kExitOk);
  CHECK(plain.json()["order"] == 32);

  // The emitted document reproduces the group it came from.
  const FiniteMatrixGroup G = subgroup_from_json(norm.json());
  CHECK(G.same_elements(cartan_normalizer(cartan_params(-8, 1, 8))));
}

TEST_CASE("entangle report on the serre6 fixture", "[cli]") {
  RunResult r = run({"entangle", "report", "--group", "fixtures/serre6.json", "--a", "2",
                     "--b", "3"});
  REQUIRE(r.code == kExitOk);
  Json j = r.json();
  CHECK(j["nontrivial"] == true);
  CHECK(j["det_surjective"] == true);
  CHECK(j["order_gc"] == 144);
  CHECK(j["type"]["invariants"] == Json::array({2}));

  // The bare fixture name and the fixtures/ spelling resolve identically.
  RunResult bare = run({"entangle", "report", "--group", "serre6", "--a", "2", "--b", "3"});
  REQUIRE(bare.code == kExitOk);
  CHECK(bare.out == r.out);
}

TEST_CASE("validation failures exit with code 3", "[cli]") {
  RunResult nine = run({"gauss", "period", "--ell", "9"});
  CHECK(nine.code == kExitValidation);
  CHECK(nine.out.empty());
  CHECK(nine.error()["error"]["code"] == "validation");
  CHECK_THAT(nine.error()["error"]["message"].get<std::string>(),
             ContainsSubstring("prime"));

  // Missing a required flag is also a malformed request.
  RunResult missing = run({"entangle", "report", "--group", "serre6", "--a", "2"});
  CHECK(missing.code == kExitValidation);
  CHECK(missing.error()["error"]["code"] == "validation");

  // A corrupt document: declared order contradicts the generators.
  RunResult corrupt = run({"group", "kernel", "--group",
                           R"({"level":6,"generators":[[[1,1],[0,1]]],"order":7})", "--e", "2"});
  CHECK(corrupt.code == kExitValidation);
  CHECK_THAT(corrupt.error()["error"]["message"].get<std::string>(),
             ContainsSubstring("order"));
}

TEST_CASE("unknown subcommands exit with code 2", "[cli]") {
  RunResult top = run({"frobnicate"});
  CHECK(top.code == kExitUnknownSubcommand);
  CHECK(top.error()["error"]["code"] == "unknown-subcommand");
  CHECK_THAT(top.error()["error"]["message"].get<std::string>(),
             ContainsSubstring("frobnicate"));

  RunResult nested = run({"gauss", "bogus"});
  CHECK(nested.code == kExitUnknownSubcommand);
  CHECK_THAT(nested.error()["error"]["message"].get<std::string>(),
             ContainsSubstring("bogus"));
}

TEST_CASE("resource budgets exit with code 4", "[cli]") {
  RunResult r = run({"group", "closure", "--level", "6", "--gen", "1,1,0,1", "--gen",
                     "5,0,0,5", "--budget", "3"});
  CHECK(r.code == kExitResource);
  CHECK(r.error()["error"]["code"] == "resource");
}

TEST_CASE("stdgroup matches the library construction", "[cli]") {
  RunResult r = run({"stdgroup", "--label", "Ns", "--ell", "5"});
  REQUIRE(r.code == kExitOk);
  Json j = r.json();
  CHECK(j["label"] == "Ns");
  CHECK(j["order"] == 32);
  const FiniteMatrixGroup G = subgroup_from_json(j);
  CHECK(G.same_elements(standard_subgroup(StandardLabel::Ns, 5)));
}

TEST_CASE("group operations: closure, kernel, join, quotient, crt", "[cli]") {
  RunResult closure = run({"group", "closure", "--level", "6", "--gen", "1,1,0,1"});
  REQUIRE(closure.code == kExitOk);
  CHECK(closure.json()["order"] == 6);

  // N_1 inside serre6 is the whole group; its document round-trips.
  RunResult kernel = run({"group", "kernel", "--group", "serre6", "--e", "1"});
  REQUIRE(kernel.code == kExitOk);
  CHECK(kernel.json()["order"] == 144);
  CHECK(subgroup_from_json(kernel.json()).same_elements(fixture_serre6()));

  const std::string path = temp_doc("serre6_n1", kernel.json());
  RunResult from_file = run({"entangle", "report", "--group", path, "--a", "2", "--b", "3"});
  std::remove(path.c_str());
  REQUIRE(from_file.code == kExitOk);
  RunResult from_fixture =
      run({"entangle", "report", "--group", "serre6", "--a", "2", "--b", "3"});
  CHECK(from_file.out == from_fixture.out);

  RunResult join = run({"group", "join", "--group",
                        R"({"level":6,"generators":[[[1,1],[0,1]]]})", "--other",
                        R"({"level":6,"generators":[[[5,0],[0,1]]]})"});
  REQUIRE(join.code == kExitOk);
  CHECK(join.json()["order"] == 12);

  RunResult quot = run({"group", "quotient", "--group", "serre6", "--normal",
                        R"({"level":6,"generators":[[[1,0],[0,1]]]})"});
  REQUIRE(quot.code == kExitOk);
  CHECK(quot.json()["fingerprint"]["order"] == 144);
  CHECK(quot.json()["order_n"] == 1);

  RunResult crt = run({"group", "crt", "--group", "serre6"});
  REQUIRE(crt.code == kExitOk);
  CHECK(crt.json()["moduli"] == Json::array({2, 3}));
  CHECK(crt.json()["full_fiber_product"] == false);
  REQUIRE(crt.json()["projections"].size() == 2);
  CHECK(crt.json()["projections"][0]["order"] == 6);
  CHECK(crt.json()["projections"][1]["order"] == 48);
}

TEST_CASE("entangle classify separates abelian from Weil", "[cli]") {
  RunResult r = run({"entangle", "classify", "--group", "abelian_not_weil_6", "--a", "2",
                     "--b", "3"});
  REQUIRE(r.code == kExitOk);
  Json j = r.json();
  CHECK(j["report"]["nontrivial"] == true);
  CHECK(j["abelian"]["invariants"] == Json::array({2}));
  CHECK(j["weil"].is_null());

  RunResult weil = run({"entangle", "classify", "--group", "serre15", "--a", "3", "--b", "5"});
  REQUIRE(weil.code == kExitOk);
  CHECK(weil.json()["weil"]["headline"]["invariants"] == Json::array({2}));
}

TEST_CASE("entangle lattice reports maximal entry and primitivity", "[cli]") {
  RunResult r = run({"entangle", "lattice", "--group", "serre6_preimage12"});
  REQUIRE(r.code == kExitOk);
  Json j = r.json();
  CHECK(j["level"] == 12);
  REQUIRE(j["maximal"].is_object());
  CHECK(j["maximal"]["a"] == 2);
  CHECK(j["maximal"]["b"] == 3);
  CHECK(j["primitive"] == false);

  RunResult prim = run({"entangle", "lattice", "--group", "serre6"});
  REQUIRE(prim.code == kExitOk);
  CHECK(prim.json()["primitive"] == true);
}

TEST_CASE("poly pipeline: division, disc, factors, fingerprint, samefield", "[cli]") {
  RunResult div = run({"poly", "division", "--curve", "50.a1", "--m", "3"});
  REQUIRE(div.code == kExitOk);
  Json psi = div.json();
  CHECK(psi["degree"] == 4);
  CHECK(psi["base"] == "Q");

  // The emitted polynomial document feeds the other poly commands inline.
  const std::string psi_doc = psi.dump();
  RunResult disc = run({"poly", "disc", "--poly", psi_doc});
  REQUIRE(disc.code == kExitOk);
  CHECK(disc.json()["square_class"] == "-3");
  CHECK(disc.json()["is_square"] == false);

  RunResult fac = run({"poly", "factors", "--poly", psi_doc, "--dmax", "1"});
  REQUIRE(fac.code == kExitOk);
  REQUIRE(fac.json()["factors"].size() == 1);
  CHECK(fac.json()["factors"][0]["coefficients"] == Json::array({"19/3", "1"}));

  RunResult fp = run({"poly", "fingerprint", "--poly", psi_doc, "--p", "11"});
  REQUIRE(fp.code == kExitOk);
  CHECK(fp.json()["p"] == 11);
  CHECK(fp.json()["degrees"].is_array());

  RunResult sf = run({"poly", "samefield", "--f", R"({"coefficients":["1","-3","0","1"]})",
                      "--g", R"({"coefficients":["-2","0","0","1"]})", "--pbound", "2000"});
  REQUIRE(sf.code == kExitOk);
  CHECK(sf.json()["consistent"] == false);
  CHECK(sf.json()["certificate_prime"] == 5);
  CHECK(sf.json()["pbound"] == 2000);
}

TEST_CASE("poly division over the generic fiber stays exact", "[cli]") {
  RunResult gen = run({"curve", "specialize", "--family", "tors4", "--generic"});
  REQUIRE(gen.code == kExitOk);
  CHECK(gen.json()["base"] == "Q(t)");

  RunResult div =
      run({"poly", "division", "--curve", gen.json().dump(), "--m", "2"});
  REQUIRE(div.code == kExitOk);
  CHECK(div.json()["base"] == "Q(t)");
  CHECK(div.json()["degree"] == 3);

  // tors4 fibers have full rational 2-torsion, so the 2-division cubic
  // splits over Q(t) and its discriminant is a square there.
  RunResult disc = run({"poly", "disc", "--poly", div.json().dump()});
  REQUIRE(disc.code == kExitOk);
  CHECK(disc.json()["base"] == "Q(t)");
  CHECK(disc.json()["is_square"] == true);

  // Round trip through the Q(t) encoding.
  const Poly<RatFunc> psi = poly_t_from_json(div.json());
  CHECK(poly_to_json(psi) == Json{{"coefficients", div.json()["coefficients"]}});
}

TEST_CASE("curve commands match the library", "[cli]") {
  RunResult inv = run({"curve", "invariants", "--curve", "e1"});
  REQUIRE(inv.code == kExitOk);
  CHECK(inv.json()["j"] == "8000");

  RunResult serre = run({"curve", "serre", "--curve", "50.a1"});
  REQUIRE(serre.code == kExitOk);
  CHECK(serre.json()["serre_field"] == "Q(sqrt(-2))");
  CHECK(serre.json()["delta_square_class"] == "-2");
  CHECK(serre.json()["minimal_cyclotomic_level"] == "8");
  CHECK(serre.json()["vertical_flag"] == false);

  RunResult twist = run({"curve", "twist", "--curve", "e1", "--d", "-1"});
  REQUIRE(twist.code == kExitOk);
  const CurveQ tw = curve_q_from_json(twist.json());
  CHECK(curve_invariants(tw).j == Rat(8000));

  RunResult spec = run({"curve", "specialize", "--family", "isog5", "--t", "2"});
  REQUIRE(spec.code == kExitOk);
  const CurveQ fiber = curve_q_from_json(spec.json());
  const CurveQ direct = family_specialize("isog5", Rat(2));
  CHECK(fiber.a == direct.a);

  RunResult cd = run({"curve", "cdpoint", "--m", "2", "--n", "3"});
  REQUIRE(cd.code == kExitOk);
  CHECK(cd.json()["d"] == "13");
  CHECK(cd.json()["x"] == "-27/25");
  CHECK(cd.json()["y"] == "2/5");
}

TEST_CASE("frob commands match the library", "[cli]") {
  RunResult count = run({"frob", "count", "--curve", "50.a1", "--p", "7"});
  REQUIRE(count.code == kExitOk);
  CHECK(count.json()["count"] == count_points(fixture_curve("50.a1"), 7));
  CHECK(count.json()["trace"].get<i64>() ==
        7 + 1 - count.json()["count"].get<i64>());

  RunResult sig = run({"frob", "signature", "--curve", "e1", "--p", "101", "--n", "8"});
  REQUIRE(sig.code == kExitOk);
  Json j = sig.json();
  CHECK(j["point_count"] == 102);
  CHECK(j["trace"] == 0);
  CHECK(j["det"] == 101 % 8);
  REQUIRE(j["fix"].size() == 4);  // m = 1, 2, 4, 8
  CHECK(j["fix"][1]["m"] == 2);
  CHECK(j["fix"][1]["invariant_factors"] == Json::array({1, 2}));
}

TEST_CASE("frob verify separates the right mod-5 image from a wrong one", "[cli]") {
  // Diagonal (u^2, u) with unipotent: the mod-5 image shape of 50.a1.
  RunResult good = run({"frob", "verify", "--curve", "50.a1", "--group",
                        R"({"level":5,"generators":[[[4,0],[0,3]],[[1,1],[0,1]]]})",
                        "--pbound", "2000"});
  REQUIRE(good.code == kExitOk);
  CHECK(good.json()["verdict"] == "consistent");
  CHECK(good.json()["certificate_prime"].is_null());
  CHECK(good.json()["candidate_order"] == 20);

  // Swapping the diagonal character pair is refuted by an explicit prime.
  RunResult bad = run({"frob", "verify", "--curve", "50.a1", "--group",
                       R"({"level":5,"generators":[[[2,0],[0,3]],[[1,1],[0,1]]]})",
                       "--pbound", "2000"});
  REQUIRE(bad.code == kExitOk);
  CHECK(bad.json()["verdict"] == "inconsistent");
  CHECK(bad.json()["certificate_prime"] == 7);
  CHECK(bad.json()["violations"][0]["p"] == 7);
}

TEST_CASE("gauss commands match the library", "[cli]") {
  RunResult period = run({"gauss", "period", "--ell", "7"});
  REQUIRE(period.code == kExitOk);
  CHECK(period.json()["poly"]["coefficients"] == Json::array({"-1", "-2", "1", "1"}));
  CHECK(period.json()["discriminant"] == "49");
  CHECK(period.json()["e"] == 3);

  RunResult fam = run({"gauss", "family", "--ell", "7", "--b", "1,1,0", "--check-2torsion",
                       "--pbound", "1000"});
  REQUIRE(fam.code == kExitOk);
  Json j = fam.json();
  CHECK(j["member"]["coefficients"] == Json::array({"7/27", "-7/3", "0", "1"}));
  CHECK(j["discriminant"] == "49");
  CHECK(j["on_discriminant_locus"] == false);
  CHECK(j["two_torsion"]["consistent"] == true);
  CHECK(j["two_torsion"]["sample_size"].get<u64>() > 100);

  RunResult locus = run({"gauss", "family", "--ell", "7", "--b", "-2,1,1"});
  REQUIRE(locus.code == kExitOk);
  CHECK(locus.json()["on_discriminant_locus"] == true);
}

TEST_CASE("fixture listing and byte-stable output", "[cli]") {
  RunResult r1 = run({"--list-fixtures"});
  REQUIRE(r1.code == kExitOk);
  Json j = r1.json();
  REQUIRE(j["groups"].size() == 5);
  CHECK(j["groups"][0]["name"] == "serre6");
  CHECK(j["groups"][0]["order"] == 144);
  bool has_50a1 = false;
  for (const Json& c : j["curves"]) has_50a1 = has_50a1 || c["name"] == "50.a1";
  CHECK(has_50a1);
  CHECK(j["families"].size() == 10);

  RunResult r2 = run({"--list-fixtures"});
  CHECK(r1.out == r2.out);

  // Identical requests produce identical bytes for computed documents too.
  RunResult a = run({"entangle", "classify", "--group", "serre15", "--a", "3", "--b", "5"});
  RunResult b = run({"entangle", "classify", "--group", "serre15", "--a", "3", "--b", "5"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("plain-text mode renders every scalar on its own line", "[cli]") {
  RunResult r = run({"cartan", "--dk", "-8", "--f", "1", "--n", "8", "--normalizer",
                     "--no-json"});
  REQUIRE(r.code == kExitOk);
  CHECK_THAT(r.out, ContainsSubstring("order: 64"));
  CHECK_THAT(r.out, ContainsSubstring("delta: 6"));
  CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("bare invocation prints usage and succeeds", "[cli]") {
  RunResult r = run({});
  CHECK(r.code == kExitOk);
  CHECK_THAT(r.out, ContainsSubstring("Subcommands"));
  CHECK_THAT(r.out, ContainsSubstring("entangle"));
}

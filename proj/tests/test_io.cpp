#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "kacforge/corpus.hpp"
#include "kacforge/errors.hpp"
#include "kacforge/io.hpp"

using namespace kacforge;

namespace {

const std::string data = KACFORGE_DATA_DIR;
std::string at(const std::string &f) { return data + "/" + f; }

std::string scratch(const std::string &name, const std::string &content) {
  const auto dir = std::filesystem::temp_directory_path() / "kacforge_test_io";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << content;
  return path;
}

Report run(const std::string &name, std::vector<std::string> inputs,
           std::map<std::string, std::string> options = {}, RunConfig cfg = {}) {
  Command c;
  c.name = name;
  c.inputs = std::move(inputs);
  c.options = std::move(options);
  return run_pipeline(c, cfg);
}

const ReportEntry *find_entry(const Report &r, const std::string &needle) {
  for (const auto &s : r.sections)
    for (const auto &e : s.entries)
      if (e.name.find(needle) != std::string::npos)
        return &e;
  return nullptr;
}

} // namespace

TEST_CASE("group files") {
  const auto s3 = load_group(at("s3_perm.json"));
  CHECK(s3.group.order() == 6);
  CHECK(!s3.group.is_abelian());
  CHECK(s3.degree == 3);
  CHECK(load_group(at("z4_cayley.json")).group.is_abelian());
  CHECK(load_group(at("sl2_f3.json")).group.order() == 24);

  try {
    load_group(at("bad_cayley.json"));
    FAIL("non-associative table accepted");
  } catch (const ValidationError &e) {
    CHECK(std::string(e.what()).find("witness triple") != std::string::npos);
  }
  try {
    load_group(at("bad_syntax.json"));
    FAIL("syntax error accepted");
  } catch (const ParseError &e) {
    // The missing comma sits at the end of line 3; the parser stops on line 4.
    CHECK(std::string(e.what()).find("bad_syntax.json:4:") != std::string::npos);
  }
  const auto multi = scratch("multi.json", "{\"object\": \"group\",\n  \"kind\": \"perm\",\n  \"degree\": 3,\n  \"generators\": [\"(1 2)\",]\n}");
  try {
    load_group(multi);
    FAIL("trailing comma accepted");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("multi.json:4:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_group(scratch("kind.json", R"J({"object": "group", "kind": "lie"})J")), ParseError);
  CHECK_THROWS_AS(load_group(scratch("miss.json", R"J({"object": "group", "kind": "perm"})J")), ParseError);
  CHECK_THROWS_AS(load_group(at("s3_z2_z3.json")), ValidationError); // wrong object kind
  SizeCaps tiny;
  tiny.cayley_table = 3;
  CHECK_THROWS_AS(load_group(at("z4_cayley.json"), tiny), SizeBound);
}

TEST_CASE("matched-pair files agree with independent constructions") {
  const auto p = load_pair(at("s4_s3_z4.json"));
  CHECK(!p.pair.alpha_trivial());
  CHECK(!p.pair.beta_trivial());
  const auto ref = corpus::s4_s3_z4();
  CHECK(p.pair.alpha_table() == ref.alpha_table());
  CHECK(p.pair.beta_table() == ref.beta_table());

  // Explicit actions: Z/2 inverting Z/3, the same pair as the (1 2), (1 2 3) factorization.
  const auto z = load_pair(at("z2_inverts_z3.json")).pair;
  CHECK(z.beta_trivial());
  CHECK(z.alpha(1, 1) == 2);

  const auto lam = load_pair(at("lambda_deformed.json"));
  REQUIRE(lam.recipe);
  const auto lref = corpus::lambda_deformed();
  CHECK(lam.pair.alpha_table() == lref.alpha_table());
  CHECK(lam.pair.beta_table() == lref.beta_table());
  const auto quo = load_pair(at("quotient_deformed.json"));
  CHECK(quo.pair.n_gamma() == 36);
  CHECK(quo.pair.beta_table() == corpus::quotient_deformed().beta_table());
  CHECK(load_pair(at("s3_conj_z3.json")).pair.alpha_table() == corpus::s3_conj_z3().alpha_table());

  // x -> 0 is not a bijection of Z/3.
  const auto bad = scratch("badpair.json", R"J({"object": "matched_pair", "gamma": "cyclic:2", "g": "cyclic:3",
    "alpha": [[0, 1, 2], [0, 0, 0]]})J");
  CHECK_THROWS_AS(load_pair(bad), ValidationError);
  const auto notchi = scratch("notchi.json", R"J({"object": "matched_pair", "recipe": "chi_G",
    "base": "corpus:s3_on_z7", "chi": [0, 1, 0, 0, 0, 0, 0]})J");
  CHECK_THROWS_AS(load_pair(notchi), NotCrossedHom);
  const auto inter = scratch("inter.json", R"J({"object": "matched_pair", "ambient": "S3",
    "gamma": ["(1 2)"], "g": ["(1 2)"]})J");
  CHECK_THROWS_AS(load_pair(inter), NotMatched);
}

TEST_CASE("ring, measure and config files") {
  const auto fo = load_ring(at("free_orthogonal.json")).ring;
  CHECK(fo.truncated);
  CHECK(fo.size() == 7);
  const auto rep = load_ring(at("rep_ring_s3.json")).ring;
  CHECK(rep.size() == 3);
  CHECK(rep.N(2, 2, 0) == 1);
  CHECK(check_ring(load_ring(at("ising.json")).ring).ok());
  const auto bad = scratch("badring.json", R"J({"object": "ring", "labels": ["1", "g"], "unit": "1",
    "dual": {"1": "1", "g": "g"}, "dims": [1, 1],
    "fusion": [["1", "1", "1", 1], ["1", "g", "g", 1], ["g", "1", "g", 1], ["g", "g", "g", 1]]})J");
  CHECK_THROWS_AS(load_ring(bad), ValidationError);

  const auto m = load_measure(at("mu_skew_z3.json"));
  CHECK(m.measure.weights[1] == Rational(7, 10));
  CHECK(m.measure.weights[0] == 0);
  const auto heavy = scratch("heavy.json", R"J({"object": "measure", "group": "cyclic:2", "weights": {"0": "1", "1": "1/2"}})J");
  CHECK_THROWS_AS(load_measure(heavy), ValidationError);

  const auto cfg = load_config(at("config.json"));
  CHECK(cfg.seed == 0xC0FFEE);
  CHECK(cfg.tolerances.axiom == 1e-9);
  const auto neg = scratch("neg.json", R"J({"object": "config", "tolerances": {"axiom": -1}})J");
  CHECK_THROWS_AS(load_config(neg), ValidationError);

  const auto in = parse_inputs({at("s3_perm.json"), at("s3_z2_z3.json"), at("ising.json"),
                                at("mu_uniform_z3.json"), at("config.json"), "corpus:a4_z3_v4"});
  CHECK(in.groups.size() == 1);
  CHECK(in.pairs.size() == 2);
  CHECK(in.rings.size() == 1);
  CHECK(in.measures.size() == 1);
}

TEST_CASE("seed from the environment") {
  RunConfig c;
  ::setenv("KACFORGE_SEED", "0x2A", 1);
  CHECK(apply_environment(c).seed == 42);
  ::setenv("KACFORGE_SEED", "12x", 1);
  CHECK_THROWS_AS(apply_environment(c), ParseError);
  ::unsetenv("KACFORGE_SEED");
  CHECK(apply_environment(c).seed == kDefaultSeed);
}

TEST_CASE("pipeline reports") {
  const auto inv = run("invariants", {at("s3_z2_z3.json")});
  const auto *e = find_entry(inv, "Int(G)");
  REQUIRE(e);
  CHECK(e->status == Status::pass);
  CHECK(e->detail.find("Int S3 (order 6)") != std::string::npos);
  CHECK(inv.exit_code() == 0);

  const auto au = run("audit", {at("s3_z3_z2.json")});
  const auto *d = find_entry(au, "distinct");
  REQUIRE(d);
  CHECK(d->status == Status::audit_disagree);
  CHECK(d->witness.find("-1") != std::string::npos);
  CHECK(au.exit_code() == 0);

  Command cheb;
  cheb.name = "shadow";
  cheb.sub = "chebyshev";
  cheb.options = {{"N", "3"}, {"t", "2"}, {"cutoff", "10"}};
  const auto ch = run_pipeline(cheb, {});
  REQUIRE(!ch.sections.empty());
  CHECK(ch.sections[0].entries[0].detail.rfind("1, 2/3, 3/8, 4/21", 0) == 0);
  CHECK(ch.exit_code() == 0);
  cheb.options["t"] = "3";
  CHECK(run_pipeline(cheb, {}).exit_code() == 1); // t outside (0, N)

  const auto build = run("build", {at("s4_s3_z4.json")});
  CHECK(build.exit_code() == 0);
  CHECK(build.count(Status::fail) == 0);
  CHECK(build.count(Status::pass) >= 13);
}

TEST_CASE("exit codes") {
  CHECK(run("validate", {at("bad_cayley.json")}).exit_code() == 1);
  CHECK(run("validate", {at("bad_syntax.json")}).exit_code() == 1);
  CHECK(run("irreps", {at("missing.json")}).exit_code() == 1);
  CHECK(run("crossed", {at("s4_s3_z4.json")}).exit_code() == 1); // beta nontrivial
  RunConfig strict;
  strict.tolerances.axiom = 1e-30; // below floating-point round-off
  const auto r = run("crossed", {at("s3_conj_z3.json")}, {}, strict);
  CHECK(r.exit_code() == 2);
  const auto *f = find_entry(r, "Fourier");
  REQUIRE(f);
  CHECK(f->failure == FailureKind::tolerance);
  CHECK(!f->witness.empty());
  CHECK_THROWS_AS(run("frobnicate", {}), ValidationError);
}

TEST_CASE("reports are deterministic and self-describing") {
  RunConfig cfg;
  cfg.seed = 7;
  const auto a = run("crossed", {at("s3_z2_z3.json")}, {}, cfg);
  const auto b = run("crossed", {at("s3_z2_z3.json")}, {}, cfg);
  CHECK(a.to_text() == b.to_text());
  CHECK(a.to_json() == b.to_json());
  const auto doc = nlohmann::json::parse(a.to_json());
  CHECK(doc["format"] == "kacforge-report");
  CHECK(doc["seed"] == "0x7");
  CHECK(doc["summary"]["exit"] == 0);
  CHECK(doc["sections"].size() == a.sections.size());
  // Every FAIL carries a witness.
  const auto bad = run("validate", {at("bad_cayley.json"), at("bad_syntax.json")});
  for (const auto &s : bad.sections)
    for (const auto &e : s.entries)
      if (e.status == Status::fail)
        CHECK(!e.witness.empty());
}

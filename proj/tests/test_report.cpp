#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "gl3trace/report.hpp"

using namespace gl3trace;
using njson = nlohmann::json;

namespace {

RunConfig config(uint64_t p, unsigned n) {
  RunConfig cfg;
  cfg.p = p;
  cfg.n = n;
  return cfg;
}

size_t line_count(const std::string& s) {
  size_t c = 0;
  for (char ch : s)
    if (ch == '\n') ++c;
  return c;
}

}  // namespace

TEST_CASE("class descriptors resolve, canonicalize, and reject garbage") {
  Tower t = Tower::build(2, 2);
  Field fq2 = build_quadratic_extension(t.fq);
  ConjClasses cc = ConjClasses::build(t.fq, fq2, t.fq3);

  CHECK(find_class(t, fq2, cc, "central:1").kind == ClassKind::Central);
  CHECK(find_class(t, fq2, cc, "hyp2:3,1,2").params ==
        std::vector<uint64_t>{1, 2, 3});

  // any Galois conjugate of an elliptic eigenvalue names the same class
  const ClassDescriptor& e = find_class(t, fq2, cc, "ell_cubic:28");
  uint64_t conj = t.frob_q(28);
  CHECK(conj != 28);
  CHECK(&find_class(t, fq2, cc, "ell_cubic:" + std::to_string(conj)) == &e);

  CHECK_THROWS_AS(find_class(t, fq2, cc, "central"), Error);
  CHECK_THROWS_AS(find_class(t, fq2, cc, "foo:1"), Error);
  CHECK_THROWS_AS(find_class(t, fq2, cc, "central:x"), Error);
  CHECK_THROWS_AS(find_class(t, fq2, cc, "central:"), Error);
  CHECK_THROWS_AS(find_class(t, fq2, cc, "central:0"), Error);
  CHECK_THROWS_AS(find_class(t, fq2, cc, "hyp2:1,1,2"), Error);
}

TEST_CASE("decompose reports integral multiplicities in {0, 1} at the base") {
  RunResult r = run_decompose(config(7, 1));
  CHECK(r.exit_code == 0);
  njson j = njson::parse(r.body);
  CHECK(j["command"] == "decompose");
  CHECK(j["all_populated_integral"] == true);
  for (const auto& row : j["rows"]) {
    if (row["count"] == "0") continue;  // vacant cases carry no constraint
    std::string m = row["multiplicity"];
    CHECK((m == "0" || m == "1"));
    CHECK(row["integral"] == true);
  }
  CHECK(j["checksums"]["index"] == "1");
  CHECK(j["checksums"]["dual_ok"] == true);
  CHECK(j["checksums"]["index_ok"] == true);

  RunConfig csv = config(7, 1);
  csv.format = "csv";
  RunResult rc = run_decompose(csv);
  CHECK(line_count(rc.body) == j["rows"].size() + 2);

  CHECK_THROWS_AS(run_decompose(config(2, 2)), UnsupportedRegimeError);
  CHECK_THROWS_AS(run_decompose(config(5, 1)), NotCongruent1Mod3Error);
}

TEST_CASE("orbit listing is deterministic and tiles the half-space") {
  RunConfig cfg = config(2, 2);
  cfg.format = "csv";
  RunResult a = run_orbits(cfg);
  RunResult b = run_orbits(cfg);
  CHECK(a.body == b.body);

  uint64_t total = 0;
  size_t rows = 0;
  std::istringstream in(a.body);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'o') continue;
    auto last = line.rfind(',');
    total += std::stoull(line.substr(last + 1));
    ++rows;
  }
  CHECK(total == 2880);

  cfg.format = "json";
  njson j = njson::parse(run_orbits(cfg).body);
  CHECK(j["orbits"].size() == rows);
  CHECK(j["total_points"] == "2880");
}

TEST_CASE("character table emits one exact value per class") {
  RunConfig cfg = config(2, 2);
  RunResult r = run_chars(cfg);
  njson j = njson::parse(r.body);
  CHECK(j["classes"].size() == 60);
  bool saw_identity = false;
  for (const auto& row : j["classes"])
    if (row["label"] == "central_1") {
      saw_identity = true;
      CHECK(row["chi"] == "1080");
    }
  CHECK(saw_identity);

  cfg.format = "csv";
  CHECK(line_count(run_chars(cfg).body) == 62);
}

TEST_CASE("orbital command pairs each closed form with its oracle") {
  RunConfig cfg = config(2, 2);
  cfg.f_table = "0 5\n1 7/3\n";

  njson j = njson::parse(run_orbital(cfg, "central:1").body);
  CHECK(j["class"]["size"] == "1");
  bool saw_delta = false, saw_table = false;
  for (const auto& e : j["evaluations"]) {
    CHECK(e["closed"] == e["oracle"]);
    CHECK(e["closed_matches"] == true);
    if (e["f"] == "base_point_delta") {
      saw_delta = true;
      CHECK(e["closed"] == "1");
    }
    if (e["f"] == "table") saw_table = true;
  }
  CHECK(saw_delta);
  CHECK(saw_table);

  // three distinct eigenvalues: one horocycle-transform argument reported
  njson h = njson::parse(run_orbital(config(2, 2), "hyp2:1,2,3").body);
  for (const auto& e : h["evaluations"]) {
    CHECK(e["closed_matches"] == true);
    CHECK(e["hf_inputs"].size() == 1);
  }

  // irreducible cubic: the printed entry formula is recorded next to the
  // conjugation route; only the latter is expected to match
  njson c = njson::parse(run_orbital(config(2, 2), "ell_cubic:28").body);
  for (const auto& e : c["evaluations"]) {
    CHECK(e.contains("conjugation_route"));
    CHECK(e["conjugation_route_matches"] == true);
    CHECK(e.contains("closed_matches"));
  }

  // irreducible quadratic at an even tower level: wrong branch, no closed
  // form, oracle still evaluated
  njson s = njson::parse(
      run_orbital(config(2, 2), "ell_quad_scalar:5,1").body);
  for (const auto& e : s["evaluations"]) {
    CHECK(e["closed"].is_null());
    CHECK(e.contains("branch_note"));
    CHECK(e.contains("oracle"));
  }
}

TEST_CASE("verify closes the books at the smallest scale") {
  RunConfig cfg = config(2, 2);
  cfg.num_f = 2;
  RunResult r = run_verify(cfg);
  CHECK(r.exit_code == 0);

  njson j = njson::parse(r.body);
  CHECK(j["geometric"].size() == 4);
  for (const auto& jf : j["geometric"]) {
    CHECK(jf["identity_ok"] == true);
    CHECK(jf["oracles_agree"] == true);
    CHECK(jf["rows"].size() == 6);
  }
  CHECK(j["induced_character"]["closed_mismatch_count"] == 0);
  CHECK(j["induced_character"]["identity_matches"] == true);
  CHECK(j["induced_character"]["orthogonality_ok"] == true);
  CHECK(j["induced_character"]["cross_ok"] == true);
  CHECK(j["induced_character"]["cross_inner_product"] == "18");
  CHECK(j["double_cosets"]["two_sided"] == "24");
  CHECK(j["double_cosets"]["point_side"] == "18");
  CHECK(j["constant_function_identity"]["matches"] == true);
  CHECK(j["base_point_mass_identity"]["oracle"] == "18");
  CHECK(j["base_point_mass_identity"]["printed_matches"] == false);
  CHECK(j["summary"]["oracle_identities_ok"] == true);

  // the ledger carries the printed-formula defects, never an oracle failure
  CHECK(j["discrepancies"].size() > 0);
  bool point_mass = false, appendix = false, cubic = false;
  for (const auto& d : j["discrepancies"]) {
    std::string loc = d["location"];
    if (loc == "point_mass_count/printed_total") {
      point_mass = true;
      CHECK(d["claimed"] == "180/7");
      CHECK(d["computed"] == "18");
    }
    if (loc == "hyp2_total_weight/appendix_chain") appendix = true;
    if (loc.rfind("orbital_closed/ell_cubic", 0) == 0) cubic = true;
  }
  CHECK(point_mass);
  CHECK(appendix);
  CHECK(cubic);

  // byte determinism: same config, same report
  CHECK(run_verify(cfg).body == r.body);
}

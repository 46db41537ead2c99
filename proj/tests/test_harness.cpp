#include <catch2/catch_amalgamated.hpp>

#include "radlab/harness.hpp"

using namespace radlab;

namespace {

SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.suites = {"all"};
  cfg.dim_lo = 2;
  cfg.dim_hi = 3;
  cfg.trials = 56;  // full rotation through families and dims
  cfg.seed = 5;
  return cfg;
}

const SuiteStats& stats_for(const TrialReport& r, const std::string& id) {
  for (const auto& [k, s] : r.bounds)
    if (k == id) return s;
  for (const auto& [k, s] : r.lemmas)
    if (k == id) return s;
  FAIL("missing suite id " + id);
  static SuiteStats dummy;
  return dummy;
}

}  // namespace

TEST_CASE("verify: clean sweep on a small config") {
  const TrialReport r = run_verify(small_config());
  CHECK(r.violations_total == 0);
  for (const auto& [id, s] : r.bounds) {
    INFO(id);
    CHECK(s.violations == 0);
    CHECK(s.trials == 56);
    CHECK(s.passes + s.skips + s.violations == s.trials);
  }
  for (const auto& [id, s] : r.lemmas) {
    INFO(id);
    CHECK(s.violations == 0);
    CHECK(s.passes == s.trials);
  }
  // at desk scale the m > 1 hypothesis is never certified: all trials skip
  CHECK(stats_for(r, "kant_th1_cor").skips == 56);
  CHECK(stats_for(r, "kant_prop").skips == 56);
  CHECK(r.kant_certified == 0);
  CHECK(r.kant_attempted > 0);

  // tightness table covers the single-operator bounds
  bool found = false;
  long wins_total = 0;
  for (const auto& [id, cell] : r.tightness) {
    if (id == "eq2_kittaneh") found = true;
    wins_total += cell.wins;
    if (cell.applicable) CHECK(cell.gap_sum >= -1e-9 * double(cell.applicable));
  }
  CHECK(found);
  CHECK(wins_total == 56);
}

TEST_CASE("verify: reports are byte-identical across runs") {
  const TrialReport a = run_verify(small_config());
  const TrialReport b = run_verify(small_config());
  REQUIRE(report_to_json_text(a) == report_to_json_text(b));
  REQUIRE(report_to_csv_text(a) == report_to_csv_text(b));
}

TEST_CASE("verify: suite selection and config validation") {
  SuiteConfig cfg = small_config();
  cfg.suites = {"eq2_kittaneh", "young"};
  cfg.trials = 30;
  const TrialReport r = run_verify(cfg);
  CHECK(r.bounds.size() == 1);
  CHECK(r.lemmas.size() == 1);
  CHECK(r.violations_total == 0);

  cfg.suites = {"nope"};
  CHECK_THROWS_AS(run_verify(cfg), ConfigError);
  cfg.suites = {"all"};
  cfg.trials = 0;
  CHECK_THROWS_AS(run_verify(cfg), ConfigError);
  cfg.trials = 10;
  cfg.dim_lo = 1;
  CHECK_THROWS_AS(run_verify(cfg), ConfigError);
  cfg.dim_lo = 2;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(run_verify(cfg), ConfigError);
  cfg.tol = 1e-9;
  cfg.grid_r = {0.5};
  CHECK_THROWS_AS(run_verify(cfg), ConfigError);
}

TEST_CASE("verify: th5_cor skips when the r grid has no valid point") {
  SuiteConfig cfg = small_config();
  cfg.suites = {"th5_cor"};
  cfg.trials = 6;
  cfg.grid_r = {1.0, 1.5};  // below the corollary's r >= 2
  const TrialReport r = run_verify(cfg);
  CHECK(stats_for(r, "th5_cor").skips == 6);
  CHECK(r.violations_total == 0);
}

TEST_CASE("search: smoke runs find near-tight slack on equality families") {
  SearchConfig cfg;
  cfg.bound_id = "eq1_upper";
  cfg.dim = 2;
  cfg.iters = 400;
  cfg.seed = 3;
  const SearchResult r = run_search(cfg);
  CHECK(r.evaluated);
  CHECK_FALSE(r.violation);
  CHECK(r.min_rel_slack >= -1e-9);
  CHECK(r.min_rel_slack <= 0.05);  // hill climb approaches a normal matrix
  REQUIRE(r.best_operands.size() == 1);
  CHECK(r.best_operands[0].first == "T");

  SearchConfig k = cfg;
  k.bound_id = "eq2_kittaneh";
  const SearchResult rk = run_search(k);
  CHECK(rk.min_rel_slack >= -1e-9);
  CHECK(rk.min_rel_slack <= 0.05);
}

TEST_CASE("search: kantorovich bounds report skips, not violations") {
  SearchConfig cfg;
  cfg.bound_id = "kant_th1_cor";
  cfg.dim = 2;
  cfg.iters = 60;
  cfg.seed = 1;
  const SearchResult r = run_search(cfg);
  CHECK_FALSE(r.violation);
  CHECK(r.skips + r.evals == 60);

  cfg.bound_id = "unknown";
  CHECK_THROWS_AS(run_search(cfg), ConfigError);
  cfg.bound_id = "th5_cor";
  cfg.params.r = 1.0;
  CHECK_THROWS_AS(run_search(cfg), ConfigError);
}

TEST_CASE("search result serializes") {
  SearchConfig cfg;
  cfg.bound_id = "eq2_kittaneh";
  cfg.dim = 2;
  cfg.iters = 50;
  const auto j = search_to_json(run_search(cfg));
  CHECK(j["bound"] == "eq2_kittaneh");
  CHECK(j.contains("operands"));
  CHECK(j["operands"].contains("T"));
}

TEST_CASE("compare: hand-checked table on the canonical nilpotent") {
  CompareConfig cfg;
  cfg.family = Family::nilpotent_jordan;
  cfg.dim = 2;
  cfg.trials = 5;
  const CompareReport rep = run_compare(cfg);
  REQUIRE(rep.trials_done == 5);
  for (const auto& row : rep.rows) {
    if (row.id == "eq1_upper") {
      // bound 1 against w = 1/2: relative gap 1
      CHECK(row.gap_sum / double(row.applicable) == Catch::Approx(1.0).margin(1e-8));
      CHECK(row.wins == 0);
    }
    if (row.id == "eq2_kittaneh") {
      CHECK(row.applicable == 5);
      CHECK(row.gap_sum / double(row.applicable) == Catch::Approx(0.0).margin(1e-8));
    }
    if (row.id == "kant_th1_cor") CHECK(row.applicable == 0);
  }
  CHECK(rep.th2_le_elhaddad_r2 == rep.trials_done);
}

TEST_CASE("compare: ginibre table is complete and the proved ordering holds") {
  CompareConfig cfg;
  cfg.family = Family::ginibre;
  cfg.dim = 3;
  cfg.trials = 40;
  cfg.seed = 9;
  const CompareReport rep = run_compare(cfg);
  REQUIRE(rep.trials_done == 40);
  CHECK(rep.th2_le_elhaddad_r2 == 40);
  long wins = 0;
  for (const auto& row : rep.rows) {
    wins += row.wins;
    if (row.id != "kant_th1_cor" && row.id != "kant_prop")
      CHECK(row.applicable == 40);
  }
  CHECK(wins == 40);
  CHECK(compare_to_csv_text(rep).rfind("bound_id,", 0) == 0);
}

TEST_CASE("fov runner writes the export") {
  CMatrix j(2, 2);
  j << 0, 1, 0, 0;
  write_matrix_file("harness_fov_in.json", j);
  const FovSummary s = run_fov("harness_fov_in.json", 24, "harness_fov_out.csv");
  CHECK(s.w == Catch::Approx(0.5).margin(1e-9));
  CHECK(s.opnorm == Catch::Approx(1.0).margin(1e-12));
  CHECK(s.points.size() == 24);
  std::remove("harness_fov_in.json");
  std::remove("harness_fov_out.csv");
}

// radlab: batch verification of numerical-radius bounds, adversarial
// counterexample search, tightness comparison, and field-of-values export.
//
// Exit codes: 0 all pass, 1 violation found, 2 config or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radlab/radlab.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_grid(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const auto& tok : split_commas(s)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw radlab::ConfigError(std::string("bad ") + what + " value: " + tok);
    }
  }
  if (out.empty()) throw radlab::ConfigError(std::string(what) + " grid is empty");
  return out;
}

void parse_dims(const std::string& s, int& lo, int& hi) {
  const auto pos = s.find("..");
  try {
    if (pos == std::string::npos) {
      lo = hi = std::stoi(s);
    } else {
      lo = std::stoi(s.substr(0, pos));
      hi = std::stoi(s.substr(pos + 2));
    }
  } catch (const std::exception&) {
    throw radlab::ConfigError("bad --dims value: " + s + " (expected LO..HI)");
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw radlab::IoError("cannot open for write: " + path);
  out << text;
  if (!out) throw radlab::IoError("write failed: " + path);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical-radius inequality verification lab"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the bound/lemma suites");
  std::string v_suite = "all", v_dims = "2..8", v_lambda = "0,0.5,1,2,10";
  std::string v_alpha = "0,0.25,0.5,0.75,1", v_r = "1,1.5,2,3", v_out, v_format = "json";
  long v_trials = 1000;
  std::uint64_t v_seed = 0;
  double v_tol = 1e-9;
  verify->add_option("--suite", v_suite, "suite ids (comma list) or 'all'");
  verify->add_option("--dims", v_dims, "dimension range LO..HI");
  verify->add_option("--trials", v_trials, "trials per suite");
  verify->add_option("--seed", v_seed, "stream seed");
  verify->add_option("--tol", v_tol, "violation tolerance (relative)");
  verify->add_option("--grid-lambda", v_lambda, "lambda grid (comma list)");
  verify->add_option("--grid-alpha", v_alpha, "alpha grid (comma list)");
  verify->add_option("--grid-r", v_r, "power grid (comma list)");
  verify->add_option("--out", v_out, "report path (stdout when omitted)");
  verify->add_option("--format", v_format, "json or csv");

  // search
  auto* search = app.add_subcommand("search", "adversarial slack minimization");
  std::string s_bound = "eq1_upper", s_out;
  int s_dim = 2;
  long s_iters = 1000;
  std::uint64_t s_seed = 0;
  double s_lambda = 0.5, s_alpha = 0.5, s_r = 0.0, s_tol = 1e-9;
  search->add_option("--bound", s_bound, "bound id from the catalog")->required();
  search->add_option("--dim", s_dim, "operand dimension");
  search->add_option("--iters", s_iters, "total evaluation budget");
  search->add_option("--seed", s_seed, "stream seed");
  search->add_option("--lambda", s_lambda, "lambda value");
  search->add_option("--alpha", s_alpha, "alpha value");
  search->add_option("--r", s_r, "power value (defaults to the bound's minimum)");
  search->add_option("--tol", s_tol, "violation tolerance (relative)");
  search->add_option("--out", s_out, "result path (stdout when omitted)");

  // compare
  auto* compare = app.add_subcommand("compare", "tightness ranking of upper bounds");
  std::string c_family = "ginibre", c_out;
  std::string c_lambda = "0,0.5,1,2,10", c_alpha = "0,0.25,0.5,0.75,1", c_r = "1,1.5,2,3";
  int c_dim = 4;
  long c_trials = 1000;
  std::uint64_t c_seed = 0;
  compare->add_option("--family", c_family, "operand family");
  compare->add_option("--dim", c_dim, "operand dimension");
  compare->add_option("--trials", c_trials, "number of sampled operators");
  compare->add_option("--seed", c_seed, "stream seed");
  compare->add_option("--grid-lambda", c_lambda, "lambda grid (comma list)");
  compare->add_option("--grid-alpha", c_alpha, "alpha grid (comma list)");
  compare->add_option("--grid-r", c_r, "power grid (comma list)");
  compare->add_option("--out", c_out, "table path; .json for JSON, else CSV");

  // fov
  auto* fov = app.add_subcommand("fov", "numerical-range boundary export");
  std::string f_matrix, f_out = "fov.csv";
  int f_points = 360;
  fov->add_option("--matrix", f_matrix, "matrix JSON path")->required();
  fov->add_option("--points", f_points, "number of boundary samples");
  fov->add_option("--out", f_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      radlab::SuiteConfig cfg;
      cfg.suites = split_commas(v_suite);
      parse_dims(v_dims, cfg.dim_lo, cfg.dim_hi);
      cfg.trials = v_trials;
      cfg.seed = v_seed;
      cfg.tol = v_tol;
      cfg.grid_lambda = parse_grid(v_lambda, "lambda");
      cfg.grid_alpha = parse_grid(v_alpha, "alpha");
      cfg.grid_r = parse_grid(v_r, "r");
      cfg.out = v_out;
      if (v_format == "json") cfg.format = radlab::SuiteConfig::Format::json;
      else if (v_format == "csv") cfg.format = radlab::SuiteConfig::Format::csv;
      else throw radlab::ConfigError("--format must be json or csv");

      const radlab::TrialReport report = radlab::run_verify(cfg);
      radlab::write_report(report);
      if (!cfg.out.empty())
        std::fprintf(stderr, "verify: %ld violations over %ld trials -> %s\n",
                     report.violations_total, cfg.trials, cfg.out.c_str());
      return report.violations_total ? 1 : 0;
    }

    if (*search) {
      radlab::SearchConfig cfg;
      cfg.bound_id = s_bound;
      cfg.dim = s_dim;
      cfg.iters = s_iters;
      cfg.seed = s_seed;
      cfg.tol = s_tol;
      cfg.params.lambda = s_lambda;
      cfg.params.alpha = s_alpha;
      const radlab::BoundInfo* info = radlab::find_bound(s_bound);
      if (!info) throw radlab::ConfigError("unknown bound id: " + s_bound);
      cfg.params.r = s_r > 0.0 ? s_r : info->r_min;

      const radlab::SearchResult res = radlab::run_search(cfg);
      write_text(s_out, radlab::search_to_json(res).dump(1) + "\n");
      if (!s_out.empty())
        std::fprintf(stderr, "search %s: min rel slack %.3e (%s)\n",
                     s_bound.c_str(), res.min_rel_slack,
                     res.violation ? "VIOLATION" : "ok");
      return res.violation ? 1 : 0;
    }

    if (*compare) {
      radlab::CompareConfig cfg;
      cfg.family = radlab::family_from_name(c_family);
      cfg.dim = c_dim;
      cfg.trials = c_trials;
      cfg.seed = c_seed;
      cfg.grid_lambda = parse_grid(c_lambda, "lambda");
      cfg.grid_alpha = parse_grid(c_alpha, "alpha");
      cfg.grid_r = parse_grid(c_r, "r");
      cfg.out = c_out;

      const radlab::CompareReport rep = radlab::run_compare(cfg);
      const bool json = c_out.empty() || ends_with(c_out, ".json");
      write_text(c_out, json ? radlab::compare_to_json(rep).dump(1) + "\n"
                             : radlab::compare_to_csv_text(rep));
      return 0;
    }

    if (*fov) {
      const radlab::FovSummary s = radlab::run_fov(f_matrix, f_points, f_out);
      std::fprintf(stderr, "fov: %d points, w = %.12g, norm = %.12g -> %s\n",
                   f_points, s.w, s.opnorm, f_out.c_str());
      return 0;
    }
  } catch (const radlab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

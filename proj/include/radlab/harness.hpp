#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "radlab/bounds.hpp"
#include "radlab/genlab.hpp"
#include "radlab/io.hpp"
#include "radlab/lemmas.hpp"

namespace radlab {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct SuiteConfig {
  std::vector<std::string> suites{"all"};
  int dim_lo = 2;
  int dim_hi = 8;
  long trials = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::vector<double> grid_lambda{0.0, 0.5, 1.0, 2.0, 10.0};
  std::vector<double> grid_alpha{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> grid_r{1.0, 1.5, 2.0, 3.0};
  std::string out;  // empty: stdout
  enum class Format { json, csv };
  Format format = Format::json;
};

struct LemmaInfo {
  const char* id;
  bool uses_lambda = false;
  bool uses_alpha = false;
  bool uses_r = false;
  bool lambda_unit = false;
  double tol = 1e-12;
};

inline const std::vector<LemmaInfo>& lemma_catalog() {
  static const std::vector<LemmaInfo> table = {
      {"young"},
      {"kantorovich_young"},
      {"buzano"},
      {"cauchyimp", true},
      {"gen_buzano", true},
      {"gen_buzano_chain", true},
      {"dolat23", false, true, true},
      {"ext_buzano", true, false, true, true},
      {"imp_triangle", true},
      {"polarization"},
      {"app_imp_triangle", true},
      {"mccarthy", false, false, true},
      {"convex_op", false, false, true, false, 1e-10},
      {"mixed_schwarz", false, false, false, false, 1e-10},
      {"jensen_op", false, false, true},
      {"convex_scalar", false, true, true, false, 1e-15},
  };
  return table;
}

inline const LemmaInfo* find_lemma(const std::string& id) {
  for (const auto& l : lemma_catalog())
    if (id == l.id) return &l;
  return nullptr;
}

struct SelectedSuites {
  std::vector<BoundInfo> bounds;
  std::vector<LemmaInfo> lemmas;
};

inline SelectedSuites select_suites(const std::vector<std::string>& ids) {
  SelectedSuites out;
  bool all = ids.empty();
  for (const auto& s : ids)
    if (s == "all") all = true;
  if (all) {
    out.bounds = bound_catalog();
    out.lemmas = lemma_catalog();
    return out;
  }
  for (const auto& s : ids)
    if (!find_bound(s) && !find_lemma(s))
      throw ConfigError("unknown suite id: " + s);
  for (const auto& b : bound_catalog())
    for (const auto& s : ids)
      if (s == b.id) {
        out.bounds.push_back(b);
        break;
      }
  for (const auto& l : lemma_catalog())
    for (const auto& s : ids)
      if (s == l.id) {
        out.lemmas.push_back(l);
        break;
      }
  return out;
}

inline void validate_config(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.dim_lo < 2 || cfg.dim_hi > kMaxDim || cfg.dim_lo > cfg.dim_hi)
    throw ConfigError("dims must satisfy 2 <= lo <= hi <= " +
                      std::to_string(kMaxDim));
  for (double l : cfg.grid_lambda)
    if (!(l >= 0.0)) throw ConfigError("grid lambda values must be >= 0");
  for (double a : cfg.grid_alpha)
    if (!(a >= 0.0 && a <= 1.0))
      throw ConfigError("grid alpha values must lie in [0,1]");
  for (double r : cfg.grid_r)
    if (!(r >= 1.0)) throw ConfigError("grid r values must be >= 1");
  if (cfg.grid_lambda.empty() || cfg.grid_alpha.empty() || cfg.grid_r.empty())
    throw ConfigError("parameter grids must be non-empty");
}

// ---------------------------------------------------------------------------
// Deterministic operand streams
// ---------------------------------------------------------------------------

namespace detail {

enum Role : std::uint32_t {
  kRoleT = 1, kRoleS, kRoleA, kRoleB, kRoleC, kRoleD,
  kRoleRealT, kRoleRealS, kRolePsdA, kRolePsdB, kRoleSchwarzT,
};

inline constexpr std::uint32_t kTagVecX = 0x564331u;
inline constexpr std::uint32_t kTagVecY = 0x564332u;
inline constexpr std::uint32_t kTagVecE = 0x564333u;
inline constexpr std::uint32_t kTagVecRealX = 0x564334u;
inline constexpr std::uint32_t kTagVecRealY = 0x564335u;
inline constexpr std::uint32_t kTagUnitX = 0x564336u;
inline constexpr std::uint32_t kTagScalars = 0x564337u;
inline constexpr std::uint32_t kTagSearchInit = 0x534231u;
inline constexpr std::uint32_t kTagSearchNoise = 0x534232u;

inline std::uint64_t role_seed(std::uint64_t seed, std::uint32_t role) {
  return seed ^ (0x9E3779B97F4A7C15ull * (role + 1));
}

inline const std::vector<Family>& rotation_families() {
  static const std::vector<Family> fams = {
      Family::ginibre, Family::normal, Family::upper_triangular,
      Family::unitary, Family::nilpotent_jordan, Family::psd,
      Family::real_ginibre};
  return fams;
}

inline CVector disk_vector(std::uint64_t seed, std::uint32_t tag,
                           std::uint64_t index, int n) {
  CounterRng rng(seed, tag, index);
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.unit_disk();
  return v;
}

inline CVector unit_vector(std::uint64_t seed, std::uint32_t tag,
                           std::uint64_t index, int n) {
  CounterRng rng(seed, tag, index);
  return random_unit_vector(rng, n);
}

inline CVector real_vector(std::uint64_t seed, std::uint32_t tag,
                           std::uint64_t index, int n) {
  CounterRng rng(seed, tag, index);
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(rng.uniform(-1.0, 1.0), 0.0);
  return v;
}

// Per-trial operand bundle, built lazily per operand kind.
struct TrialContext {
  Family family;
  int dim;
  std::uint64_t seed;
  std::uint64_t index;

  std::optional<SingleOpPieces> single;
  std::optional<PairOpPieces> pair;
  std::optional<PairOpPieces> real_pair;
  std::optional<QuadOpPieces> quad;
  bool kant_done = false;
  bool kant_invertible = false;
  std::optional<KantorovichCert> kant_cert;

  CMatrix draw(Family f, std::uint32_t role) {
    return generate(f, dim, role_seed(seed, role), index);
  }

  SingleOpPieces& get_single() {
    if (!single) single.emplace(draw(family, kRoleT));
    return *single;
  }
  PairOpPieces& get_pair() {
    if (!pair) pair.emplace(draw(family, kRoleT), draw(family, kRoleS));
    return *pair;
  }
  PairOpPieces& get_real_pair() {
    if (!real_pair)
      real_pair.emplace(draw(Family::real_ginibre, kRoleRealT),
                        draw(Family::real_ginibre, kRoleRealS));
    return *real_pair;
  }
  QuadOpPieces& get_quad() {
    if (!quad)
      quad.emplace(draw(family, kRoleA), draw(family, kRoleB),
                   draw(family, kRoleC), draw(family, kRoleD));
    return *quad;
  }
  // Certification of the trial's T; absent cert means the m > 1 hypothesis
  // is unmet and the trial is a skip for the Kantorovich bounds.
  void ensure_kant() {
    if (kant_done) return;
    kant_done = true;
    SingleOpPieces& p = get_single();
    kant_invertible = p.invertible();
    if (kant_invertible) kant_cert = certify_kantorovich(p.T());
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Grid expansion and dispatch
// ---------------------------------------------------------------------------

inline std::vector<BoundParams> bound_grid(const BoundInfo& b,
                                           const SuiteConfig& cfg) {
  std::vector<double> ls{0.0}, as{0.0}, rs{1.0};
  if (b.uses_lambda) {
    ls.clear();
    for (double l : cfg.grid_lambda)
      if (!b.lambda_unit || l <= 1.0) ls.push_back(l);
  }
  if (b.uses_alpha) as = cfg.grid_alpha;
  if (b.uses_r) {
    rs.clear();
    for (double r : cfg.grid_r)
      if (r >= b.r_min) rs.push_back(r);
  }
  std::vector<BoundParams> grid;
  for (double r : rs)
    for (double l : ls)
      for (double a : as) {
        BoundParams p;
        p.r = r;
        p.lambda = l;
        p.alpha = a;
        grid.push_back(p);
      }
  return grid;
}

// All records a bound id emits at one parameter point. Kantorovich ids
// require ctx.kant_cert to be present.
inline std::vector<BoundEval> evaluate_bound_id(const std::string& id,
                                                detail::TrialContext& ctx,
                                                const BoundParams& prm) {
  if (id == "eq1_lower") return {eval_eq1(ctx.get_single())[0]};
  if (id == "eq1_upper") return {eval_eq1(ctx.get_single())[1]};
  if (id == "eq2_kittaneh") return {eval_kittaneh(ctx.get_single())};
  if (id == "elhaddad_kittaneh")
    return {eval_elhaddad_kittaneh(ctx.get_single(), prm.r)};
  if (id == "eq3_abu_omar") return {eval_abu_omar(ctx.get_single())};
  if (id == "eq11_bhunia") return {eval_bhunia(ctx.get_single())};
  if (id == "dragomir") return {eval_dragomir(ctx.get_pair(), prm.r)};
  if (id == "eq4_aldolat") return {eval_aldolat(ctx.get_pair(), prm.lambda)};
  if (id == "th2") return {eval_th2(ctx.get_single(), prm.lambda)};
  if (id == "th2_chain") return {eval_th2_chain(ctx.get_single(), prm.lambda)};
  if (id == "th4") return {eval_th4(ctx.get_single(), prm.alpha, prm.r)};
  if (id == "th6") return {eval_th6(ctx.get_pair(), prm.lambda, prm.r)};
  if (id == "th6_cor1") return {eval_th6_cor1(ctx.get_pair(), prm.lambda)};
  if (id == "th6_cor2") return {eval_th6_cor2(ctx.get_pair(), prm.lambda, prm.r)};
  if (id == "th5") return {eval_th5(ctx.get_quad(), prm.r)};
  if (id == "th5_cor") return {eval_th5_cor(ctx.get_quad(), prm.r)};
  if (id == "polarization_prop")
    return {eval_polarization_bound(ctx.get_real_pair(), prm.lambda)};
  if (id == "kant_th1_cor") {
    auto pairrec = eval_kantorovich_cor(ctx.get_single(), *ctx.kant_cert, prm.r);
    return {pairrec[0], pairrec[1]};
  }
  if (id == "kant_prop")
    return {eval_kantorovich_prop(ctx.get_single(), *ctx.kant_cert, prm.lambda)};
  throw ConfigError("unknown bound id: " + id);
}

// ---------------------------------------------------------------------------
// Lemma runners: slack plus the magnitude the tolerance is relative to.
// ---------------------------------------------------------------------------

struct LemmaOutcome {
  double slack;
  double scale;  // violation iff slack < -tol * scale
};

namespace detail {

inline std::vector<LemmaOutcome> run_lemma_trial(const LemmaInfo& lemma,
                                                 TrialContext& ctx,
                                                 const BoundParams& prm) {
  const std::string id = lemma.id;
  const std::uint64_t seed = ctx.seed;
  const std::uint64_t i = ctx.index;
  const int n = ctx.dim;

  if (id == "young" || id == "kantorovich_young") {
    CounterRng rng(seed, kTagScalars, i);
    const double x = std::exp(rng.uniform(-3.0, 3.0));
    const double y = std::exp(rng.uniform(-3.0, 3.0));
    const double t = rng.uniform01();
    const ScalarPair pr(x, y, t);
    const double rhs = t * x + (1.0 - t) * y;
    const double slack =
        id == "young" ? check_young(pr) : check_kantorovich_young(pr);
    return {{slack, std::max(1.0, rhs)}};
  }

  const CVector x = disk_vector(seed, kTagVecX, i, n);
  const CVector y = disk_vector(seed, kTagVecY, i, n);

  if (id == "buzano" || id == "gen_buzano" || id == "gen_buzano_chain" ||
      id == "dolat23" || id == "ext_buzano") {
    const VectorTriple v(x, y, unit_vector(seed, kTagVecE, i, n));
    if (id == "buzano") {
      const double lhs = std::abs(inner(v.x, v.e) * inner(v.e, v.y));
      const double slack = check_buzano(v);
      return {{slack, std::max(1.0, slack + lhs)}};
    }
    if (id == "gen_buzano") {
      const double rhs = gen_buzano_rhs(v, prm.lambda);
      return {{check_gen_buzano(v, prm.lambda), std::max(1.0, rhs)}};
    }
    if (id == "gen_buzano_chain") {
      // proof-route recomposition: composing Buzano with the refined
      // Cauchy-Schwarz must reproduce the one-shot right-hand side
      const double composed = gen_buzano_composed_rhs(v, prm.lambda);
      const double direct = gen_buzano_rhs(v, prm.lambda);
      return {{composed - direct, std::max(1.0, direct)}};
    }
    if (id == "dolat23") {
      const double slack = check_dolat23(v, prm.alpha, prm.r);
      const double lhs = std::pow(
          std::abs(inner(v.x, v.e) * inner(v.e, v.y)), 2.0 * prm.r);
      return {{slack, std::max(1.0, slack + lhs)}};
    }
    const double slack = check_ext_buzano(v, prm.lambda, prm.r);
    const double lhs =
        std::pow(std::abs(inner(v.x, v.e) * inner(v.e, v.y)), prm.r);
    return {{slack, std::max(1.0, slack + lhs)}};
  }

  if (id == "cauchyimp") {
    const auto s = check_cauchyimp(x, y, prm.lambda);
    const double scale = std::max(1.0, x.squaredNorm() * y.squaredNorm());
    return {{s.first, scale}, {s.second, scale}};
  }
  if (id == "imp_triangle") {
    const auto s = check_imp_triangle(x, y, prm.lambda);
    const double sum = x.norm() + y.norm();
    const double scale = std::max(1.0, sum * sum);
    return {{s.first, scale}, {s.second, scale}};
  }

  if (id == "polarization" || id == "app_imp_triangle") {
    const CVector rx = real_vector(seed, kTagVecRealX, i, n);
    const CVector ry = real_vector(seed, kTagVecRealY, i, n);
    if (id == "polarization") {
      const double residual = check_polarization(rx, ry);
      const double scale = std::max(1.0, rx.squaredNorm() + ry.squaredNorm());
      return {{-residual, scale}};
    }
    const double slack = check_app_imp_triangle(rx, ry, prm.lambda);
    const double sum = rx.norm() + ry.norm();
    return {{slack, std::max(1.0, sum * sum)}};
  }

  if (id == "mccarthy" || id == "jensen_op") {
    const Hermitian m(generate(Family::psd, n, role_seed(seed, kRolePsdA), i));
    const CVector u = unit_vector(seed, kTagUnitX, i, n);
    const double scale = std::max(1.0, std::pow(lambda_max(m), prm.r));
    const double slack = id == "mccarthy"
                             ? check_mccarthy(m, u, prm.r)
                             : check_jensen_op(m, u, ConvexPowerFn(prm.r));
    return {{slack, scale}};
  }
  if (id == "convex_op") {
    const Hermitian a(generate(Family::psd, n, role_seed(seed, kRolePsdA), i));
    const Hermitian b(generate(Family::psd, n, role_seed(seed, kRolePsdB), i));
    const double scale =
        std::max(1.0, std::pow(std::max(lambda_max(a), lambda_max(b)), prm.r));
    return {{check_convex_op_norm(a, b, prm.r), scale}};
  }
  if (id == "mixed_schwarz") {
    const CMatrix t = ctx.draw(ctx.family, kRoleSchwarzT);
    const double nt = op_norm(t);
    const double scale =
        std::max(1.0, nt * nt * x.squaredNorm() * y.squaredNorm());
    return {{check_mixed_schwarz(t, x, y), scale}};
  }
  if (id == "convex_scalar") {
    CounterRng rng(seed, kTagScalars, i);
    const double xv = std::exp(rng.uniform(-3.0, 3.0));
    const ConvexPowerFn f(prm.r);
    return {{check_convex_scalar(f, xv, prm.alpha), std::max(1.0, f(xv))}};
  }
  throw ConfigError("unknown lemma id: " + id);
}

inline std::vector<BoundParams> lemma_grid(const LemmaInfo& l,
                                           const SuiteConfig& cfg) {
  BoundInfo proxy{};
  proxy.uses_lambda = l.uses_lambda;
  proxy.uses_alpha = l.uses_alpha;
  proxy.uses_r = l.uses_r;
  proxy.lambda_unit = l.lambda_unit;
  proxy.r_min = 1.0;
  return bound_grid(proxy, cfg);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Verify
// ---------------------------------------------------------------------------

struct SuiteStats {
  long trials = 0;
  long violations = 0;
  long passes = 0;
  long skips = 0;
  std::vector<double> slacks;  // per-trial min relative slack
  std::map<std::string, long> extra;
};

struct TightnessCell {
  long applicable = 0;
  long wins = 0;
  double gap_sum = 0.0;
};

struct TrialReport {
  SuiteConfig config;
  std::vector<std::pair<std::string, SuiteStats>> bounds;
  std::vector<std::pair<std::string, SuiteStats>> lemmas;
  std::vector<std::pair<std::string, TightnessCell>> tightness;
  long kant_attempted = 0;
  long kant_certified = 0;
  long violations_total = 0;
};

namespace detail {

inline double quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const std::size_t idx = std::size_t(std::llround(p * double(v.size() - 1)));
  return v[std::min(idx, v.size() - 1)];
}

// Applies the per-record violation rules (sign of slack, identity residual,
// chain steps, explicit-bound contract) and folds the relative slack.
inline void absorb_record(const BoundInfo& b, const BoundEval& rec, double tol,
                          double& min_rel, bool& violated, SuiteStats& stats) {
  const double scale = std::max(1.0, std::abs(rec.rhs));
  const double rel = rec.slack / scale;
  min_rel = std::min(min_rel, rel);
  if (b.identity) {
    if (std::abs(rec.slack) > tol * scale) {
      violated = true;
      ++stats.extra["identity_violations"];
    }
  } else if (rel < -tol) {
    violated = true;
  }
  for (const auto& [key, value] : rec.certificates) {
    if (key == "chain_slack" || key == "line2_slack" ||
        key.rfind("step", 0) == 0) {
      if (value < -tol * scale) {
        violated = true;
        ++stats.extra["chain_violations"];
      }
    } else if (key == "explicit_gap") {
      if (value < -1e-8) {
        violated = true;
        ++stats.extra["explicit_violations"];
      }
    } else if (key == "quad_residual") {
      if (value > 1e-10) {
        violated = true;
        ++stats.extra["quad_residual_violations"];
      }
    }
  }
}

struct TightnessInputs {
  SingleOpPieces& p;
  const SuiteConfig& cfg;
  TrialContext& ctx;
};

// Best (smallest) upper bound on w^2 a parameterized family provides at the
// configured grid; nullopt when the bound does not apply to this trial.
inline std::optional<double> w2_bound_value(const std::string& id,
                                            TightnessInputs& in) {
  SingleOpPieces& p = in.p;
  if (id == "eq1_upper") {
    const double v = p.opn();
    return v * v;
  }
  if (id == "eq2_kittaneh") {
    const double v = 0.5 * p.normsum(1.0);
    return v * v;
  }
  if (id == "elhaddad_kittaneh") {
    double best = std::numeric_limits<double>::infinity();
    for (double r : in.cfg.grid_r)
      best = std::min(best, std::pow(0.5 * p.normsum(2.0 * r), 1.0 / r));
    return best;
  }
  if (id == "eq3_abu_omar") return 0.25 * p.normsum(2.0) + 0.5 * p.w_T2();
  if (id == "eq11_bhunia") return 0.25 * p.normsum(2.0) + 0.5 * p.w_abs_prod();
  if (id == "th2") {
    double best = std::numeric_limits<double>::infinity();
    for (double l : in.cfg.grid_lambda)
      best = std::min(best, std::sqrt(th2_rhs(p, l)));
    return best;
  }
  if (id == "th4") {
    double best = std::numeric_limits<double>::infinity();
    for (double r : in.cfg.grid_r)
      for (double a : in.cfg.grid_alpha) {
        const BoundEval e = eval_th4(p, a, r);
        best = std::min(best, *e.explicit_bound * *e.explicit_bound);
      }
    return best;
  }
  if (id == "kant_th1_cor") {
    in.ctx.ensure_kant();
    if (!in.ctx.kant_cert) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    for (double r : in.cfg.grid_r)
      best = std::min(best, std::pow(kantorovich_cor_rhs(p, in.ctx.kant_cert->m_max, r),
                                     1.0 / r));
    return best;
  }
  if (id == "kant_prop") {
    in.ctx.ensure_kant();
    if (!in.ctx.kant_cert) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    for (double l : in.cfg.grid_lambda) {
      if (l > 1.0) continue;
      const BoundEval e = eval_kantorovich_prop(p, *in.ctx.kant_cert, l);
      best = std::min(best, e.rhs);
    }
    return best;
  }
  return std::nullopt;  // not a single-operator upper bound on w^2
}

}  // namespace detail

inline TrialReport run_verify(const SuiteConfig& cfg) {
  validate_config(cfg);
  const SelectedSuites sel = select_suites(cfg.suites);

  TrialReport report;
  report.config = cfg;
  for (const auto& b : sel.bounds) report.bounds.emplace_back(b.id, SuiteStats{});
  for (const auto& l : sel.lemmas) report.lemmas.emplace_back(l.id, SuiteStats{});

  std::vector<std::vector<BoundParams>> bound_grids, lemma_grids;
  for (const auto& b : sel.bounds) bound_grids.push_back(bound_grid(b, cfg));
  for (const auto& l : sel.lemmas) lemma_grids.push_back(detail::lemma_grid(l, cfg));

  // tightness participants, in catalog order, restricted to the selection
  std::vector<std::string> tight_ids;
  for (const auto& b : sel.bounds) {
    const std::string id = b.id;
    if (id == "eq1_upper" || id == "eq2_kittaneh" || id == "elhaddad_kittaneh" ||
        id == "eq3_abu_omar" || id == "eq11_bhunia" || id == "th2" ||
        id == "th4" || id == "kant_th1_cor" || id == "kant_prop")
      tight_ids.push_back(id);
  }
  std::map<std::string, TightnessCell> tight_cells;

  const auto& fams = detail::rotation_families();
  const int dim_count = cfg.dim_hi - cfg.dim_lo + 1;

  for (long trial = 0; trial < cfg.trials; ++trial) {
    detail::TrialContext ctx;
    ctx.family = fams[std::size_t(trial) % fams.size()];
    ctx.dim = cfg.dim_lo + int(trial % dim_count);
    ctx.seed = cfg.seed;
    ctx.index = std::uint64_t(trial);

    for (std::size_t bi = 0; bi < sel.bounds.size(); ++bi) {
      const BoundInfo& b = sel.bounds[bi];
      SuiteStats& stats = report.bounds[bi].second;
      ++stats.trials;
      const auto& grid = bound_grids[bi];
      if (grid.empty()) {
        ++stats.skips;
        continue;
      }
      if (b.operands == OperandKind::kantorovich) {
        if (!ctx.kant_done) {
          ctx.ensure_kant();
          ++report.kant_attempted;
          if (ctx.kant_cert) ++report.kant_certified;
        }
        if (!ctx.kant_cert) {
          ++stats.skips;
          continue;
        }
      }
      bool violated = false;
      double min_rel = std::numeric_limits<double>::infinity();
      for (const auto& prm : grid)
        for (const BoundEval& rec : evaluate_bound_id(b.id, ctx, prm))
          detail::absorb_record(b, rec, cfg.tol, min_rel, violated, stats);
      if (violated) {
        ++stats.violations;
        ++report.violations_total;
      } else {
        ++stats.passes;
      }
      stats.slacks.push_back(min_rel);
    }

    // tightness table over this trial's single operator
    if (!tight_ids.empty()) {
      SingleOpPieces& p = ctx.get_single();
      const double w = p.w();
      if (w * w > 1e-150) {
        detail::TightnessInputs in{p, cfg, ctx};
        std::string winner;
        double winner_val = std::numeric_limits<double>::infinity();
        std::vector<std::pair<std::string, double>> vals;
        for (const auto& id : tight_ids) {
          const auto v = detail::w2_bound_value(id, in);
          if (!v) continue;
          vals.emplace_back(id, *v);
          if (*v < winner_val) {
            winner_val = *v;
            winner = id;
          }
        }
        for (const auto& [id, v] : vals) {
          auto& cell = tight_cells[id];
          ++cell.applicable;
          cell.gap_sum += (v - w * w) / (w * w);
          if (id == winner) ++cell.wins;
        }
      }
    }

    for (std::size_t li = 0; li < sel.lemmas.size(); ++li) {
      const LemmaInfo& l = sel.lemmas[li];
      SuiteStats& stats = report.lemmas[li].second;
      ++stats.trials;
      const auto& grid = lemma_grids[li];
      if (grid.empty()) {
        ++stats.skips;
        continue;
      }
      bool violated = false;
      double min_rel = std::numeric_limits<double>::infinity();
      for (const auto& prm : grid)
        for (const LemmaOutcome& o : detail::run_lemma_trial(l, ctx, prm)) {
          const double rel = o.slack / o.scale;
          min_rel = std::min(min_rel, rel);
          if (rel < -l.tol) violated = true;
        }
      if (violated) {
        ++stats.violations;
        ++report.violations_total;
      } else {
        ++stats.passes;
      }
      stats.slacks.push_back(min_rel);
    }
  }

  for (const auto& id : tight_ids)
    report.tightness.emplace_back(id, tight_cells[id]);
  return report;
}

// ---------------------------------------------------------------------------
// Report serialization (canonical JSON; CSV projection)
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::ordered_json stats_to_json(const SuiteStats& s) {
  nlohmann::ordered_json j;
  j["trials"] = s.trials;
  j["violations"] = s.violations;
  j["passes"] = s.passes;
  j["skips"] = s.skips;
  if (s.slacks.empty()) {
    j["min_slack"] = nullptr;
    j["q05"] = nullptr;
    j["q50"] = nullptr;
    j["q95"] = nullptr;
  } else {
    j["min_slack"] = *std::min_element(s.slacks.begin(), s.slacks.end());
    j["q05"] = quantile(s.slacks, 0.05);
    j["q50"] = quantile(s.slacks, 0.50);
    j["q95"] = quantile(s.slacks, 0.95);
  }
  if (!s.extra.empty()) {
    nlohmann::ordered_json e;
    for (const auto& [k, v] : s.extra) e[k] = v;
    j["extra"] = e;
  }
  return j;
}

inline std::string fmt_or_empty(const SuiteStats& s, double q) {
  return s.slacks.empty() ? "" : fmt17(q);
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const TrialReport& r) {
  nlohmann::ordered_json j;
  j["radlab_version"] = kVersion;
  nlohmann::ordered_json cfg;
  cfg["command"] = "verify";
  cfg["suites"] = r.config.suites;
  cfg["dims"] = {r.config.dim_lo, r.config.dim_hi};
  cfg["trials"] = r.config.trials;
  cfg["seed"] = r.config.seed;
  cfg["tol"] = r.config.tol;
  cfg["grid"] = {{"lambda", r.config.grid_lambda},
                 {"alpha", r.config.grid_alpha},
                 {"r", r.config.grid_r}};
  cfg["format"] = r.config.format == SuiteConfig::Format::json ? "json" : "csv";
  cfg["out"] = r.config.out;
  j["config"] = cfg;

  nlohmann::ordered_json bounds;
  for (const auto& [id, s] : r.bounds) bounds[id] = detail::stats_to_json(s);
  j["bounds"] = bounds;
  nlohmann::ordered_json lemmas;
  for (const auto& [id, s] : r.lemmas) lemmas[id] = detail::stats_to_json(s);
  j["lemmas"] = lemmas;

  nlohmann::ordered_json tight;
  for (const auto& [id, c] : r.tightness) {
    nlohmann::ordered_json cell;
    cell["applicable"] = c.applicable;
    cell["wins"] = c.wins;
    cell["win_rate"] = c.applicable ? double(c.wins) / double(c.applicable) : 0.0;
    cell["mean_rel_gap"] =
        c.applicable ? c.gap_sum / double(c.applicable) : 0.0;
    tight[id] = cell;
  }
  j["tightness"] = tight;

  nlohmann::ordered_json kant;
  kant["attempted"] = r.kant_attempted;
  kant["certified"] = r.kant_certified;
  kant["hit_rate"] = r.kant_attempted
                         ? double(r.kant_certified) / double(r.kant_attempted)
                         : 0.0;
  j["kantorovich"] = kant;

  j["totals"] = {{"violations", r.violations_total}, {"trials", r.config.trials}};
  return j;
}

inline std::string report_to_json_text(const TrialReport& r) {
  return report_to_json(r).dump(1) + "\n";
}

inline std::string report_to_csv_text(const TrialReport& r) {
  std::string out = "kind,id,trials,violations,passes,skips,min_slack,q05,q50,q95\n";
  auto row = [&](const char* kind, const std::string& id, const SuiteStats& s) {
    const bool has = !s.slacks.empty();
    const double mn =
        has ? *std::min_element(s.slacks.begin(), s.slacks.end()) : 0.0;
    out += std::string(kind) + "," + id + "," + std::to_string(s.trials) + "," +
           std::to_string(s.violations) + "," + std::to_string(s.passes) + "," +
           std::to_string(s.skips) + "," + (has ? detail::fmt17(mn) : "") + "," +
           (has ? detail::fmt17(detail::quantile(s.slacks, 0.05)) : "") + "," +
           (has ? detail::fmt17(detail::quantile(s.slacks, 0.50)) : "") + "," +
           (has ? detail::fmt17(detail::quantile(s.slacks, 0.95)) : "") + "\n";
  };
  for (const auto& [id, s] : r.bounds) row("bound", id, s);
  for (const auto& [id, s] : r.lemmas) row("lemma", id, s);
  out += "\ntightness_id,applicable,wins,win_rate,mean_rel_gap\n";
  for (const auto& [id, c] : r.tightness) {
    out += id + "," + std::to_string(c.applicable) + "," + std::to_string(c.wins) +
           "," +
           detail::fmt17(c.applicable ? double(c.wins) / double(c.applicable) : 0.0) +
           "," +
           detail::fmt17(c.applicable ? c.gap_sum / double(c.applicable) : 0.0) +
           "\n";
  }
  out += "\nkant_attempted,kant_certified,hit_rate\n";
  out += std::to_string(r.kant_attempted) + "," + std::to_string(r.kant_certified) +
         "," +
         detail::fmt17(r.kant_attempted
                           ? double(r.kant_certified) / double(r.kant_attempted)
                           : 0.0) +
         "\n";
  return out;
}

inline void write_report(const TrialReport& r) {
  const std::string text = r.config.format == SuiteConfig::Format::json
                               ? report_to_json_text(r)
                               : report_to_csv_text(r);
  if (r.config.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(r.config.out, std::ios::binary);
  if (!out) throw IoError("cannot open for write: " + r.config.out);
  out << text;
  if (!out) throw IoError("write failed: " + r.config.out);
}

// ---------------------------------------------------------------------------
// Adversarial search
// ---------------------------------------------------------------------------

struct SearchConfig {
  std::string bound_id = "eq1_upper";
  BoundParams params;
  int dim = 2;
  std::uint64_t seed = 0;
  long iters = 1000;
  double tol = 1e-9;
};

struct SearchResult {
  SearchConfig config;
  long evals = 0;
  long skips = 0;
  long improvements = 0;
  bool evaluated = false;
  bool violation = false;
  double min_rel_slack = std::numeric_limits<double>::infinity();
  BoundEval best;
  std::vector<std::pair<std::string, CMatrix>> best_operands;
};

namespace detail {

inline std::vector<std::string> operand_names(OperandKind kind) {
  switch (kind) {
    case OperandKind::single:
    case OperandKind::kantorovich:
      return {"T"};
    case OperandKind::pair:
    case OperandKind::real_pair:
      return {"T", "S"};
    case OperandKind::quad:
      return {"A", "B", "C", "D"};
  }
  return {};
}

inline void normalize_opnorm(CMatrix& m) {
  const double nrm = op_norm(m);
  if (nrm > 1e-12) m /= nrm;
}

// Relative slack of one parameter point; nullopt when the hypothesis is
// unmet (Kantorovich certification failed).
inline std::optional<std::pair<double, BoundEval>> search_objective(
    const BoundInfo& b, const std::vector<CMatrix>& mats, const BoundParams& prm) {
  double min_rel = std::numeric_limits<double>::infinity();
  BoundEval best;
  std::vector<BoundEval> records;
  switch (b.operands) {
    case OperandKind::single: {
      SingleOpPieces p(mats[0]);
      BoundParams q = prm;
      if (std::string(b.id) == "eq1_lower") records = {eval_eq1(p)[0]};
      else if (std::string(b.id) == "eq1_upper") records = {eval_eq1(p)[1]};
      else if (std::string(b.id) == "eq2_kittaneh") records = {eval_kittaneh(p)};
      else if (std::string(b.id) == "elhaddad_kittaneh")
        records = {eval_elhaddad_kittaneh(p, q.r)};
      else if (std::string(b.id) == "eq3_abu_omar") records = {eval_abu_omar(p)};
      else if (std::string(b.id) == "eq11_bhunia") records = {eval_bhunia(p)};
      else if (std::string(b.id) == "th2") records = {eval_th2(p, q.lambda)};
      else if (std::string(b.id) == "th2_chain")
        records = {eval_th2_chain(p, q.lambda)};
      else
        records = {eval_th4(p, q.alpha, q.r)};
      break;
    }
    case OperandKind::pair:
    case OperandKind::real_pair: {
      PairOpPieces p(mats[0], mats[1]);
      if (std::string(b.id) == "dragomir") records = {eval_dragomir(p, prm.r)};
      else if (std::string(b.id) == "eq4_aldolat")
        records = {eval_aldolat(p, prm.lambda)};
      else if (std::string(b.id) == "th6")
        records = {eval_th6(p, prm.lambda, prm.r)};
      else if (std::string(b.id) == "th6_cor1")
        records = {eval_th6_cor1(p, prm.lambda)};
      else if (std::string(b.id) == "th6_cor2")
        records = {eval_th6_cor2(p, prm.lambda, prm.r)};
      else
        records = {eval_polarization_bound(p, prm.lambda)};
      break;
    }
    case OperandKind::quad: {
      QuadOpPieces p(mats[0], mats[1], mats[2], mats[3]);
      records = std::string(b.id) == "th5" ? std::vector<BoundEval>{eval_th5(p, prm.r)}
                                           : std::vector<BoundEval>{eval_th5_cor(p, prm.r)};
      break;
    }
    case OperandKind::kantorovich: {
      SingleOpPieces p(mats[0]);
      if (!p.invertible()) return std::nullopt;
      const auto cert = certify_kantorovich(p.T());
      if (!cert) return std::nullopt;
      if (std::string(b.id) == "kant_th1_cor") {
        auto two = eval_kantorovich_cor(p, *cert, prm.r);
        records = {two[0], two[1]};
      } else {
        records = {eval_kantorovich_prop(p, *cert, prm.lambda)};
      }
      break;
    }
  }
  for (const auto& rec : records) {
    const double rel = rec.slack / std::max(1.0, std::abs(rec.rhs));
    if (rel < min_rel) {
      min_rel = rel;
      best = rec;
    }
  }
  return std::make_pair(min_rel, best);
}

}  // namespace detail

// Hill-climb on matrix entries (Gaussian perturbation, adaptive step, accept
// on slack decrease) across seeded restarts; operands are renormalized to
// unit operator norm so the search stays on a compact, scale-fixed set.
inline SearchResult run_search(const SearchConfig& cfg) {
  const BoundInfo* b = find_bound(cfg.bound_id);
  if (!b) throw ConfigError("unknown bound id: " + cfg.bound_id);
  if (cfg.dim < 2 || cfg.dim > kMaxDim)
    throw ConfigError("search dim must be in [2, " + std::to_string(kMaxDim) + "]");
  if (cfg.iters < 1) throw ConfigError("iters must be >= 1");
  if (b->uses_r && !(cfg.params.r >= b->r_min))
    throw ConfigError(std::string(cfg.bound_id) + ": r must be >= " +
                      std::to_string(b->r_min));
  if (b->uses_lambda && b->lambda_unit &&
      !(cfg.params.lambda >= 0.0 && cfg.params.lambda <= 1.0))
    throw ConfigError(std::string(cfg.bound_id) + ": lambda must lie in [0,1]");

  const auto names = detail::operand_names(b->operands);
  const bool real_ops = b->operands == OperandKind::real_pair;
  const int n = cfg.dim;

  SearchResult out;
  out.config = cfg;

  const long restarts = std::min<long>(8, cfg.iters);
  const long base_steps = cfg.iters / restarts;
  const long leftover = cfg.iters % restarts;

  for (long k = 0; k < restarts; ++k) {
    std::vector<CMatrix> mats;
    for (std::size_t ridx = 0; ridx < names.size(); ++ridx) {
      CounterRng rng(detail::role_seed(cfg.seed, std::uint32_t(100 + ridx)),
                     detail::kTagSearchInit, std::uint64_t(k));
      CMatrix m(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          m(i, j) = real_ops ? Complex(rng.normal(), 0.0) : rng.complex_normal();
      detail::normalize_opnorm(m);
      mats.push_back(std::move(m));
    }

    auto eval_candidate = [&](const std::vector<CMatrix>& cand)
        -> std::optional<std::pair<double, BoundEval>> {
      auto res = detail::search_objective(*b, cand, cfg.params);
      if (!res) {
        ++out.skips;
        return std::nullopt;
      }
      ++out.evals;
      out.evaluated = true;
      if (res->first < out.min_rel_slack) {
        out.min_rel_slack = res->first;
        out.best = res->second;
        out.best_operands.clear();
        for (std::size_t ridx = 0; ridx < names.size(); ++ridx)
          out.best_operands.emplace_back(names[ridx], cand[ridx]);
      }
      return res;
    };

    auto current = eval_candidate(mats);
    double step = 0.3;
    CounterRng noise(cfg.seed, detail::kTagSearchNoise, std::uint64_t(k));
    const long steps = base_steps + (k < leftover ? 1 : 0);
    for (long s = 1; s < steps; ++s) {
      std::vector<CMatrix> cand = mats;
      for (auto& m : cand) {
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i)
            m(i, j) += step * (real_ops ? Complex(noise.normal(), 0.0)
                                        : noise.complex_normal());
        detail::normalize_opnorm(m);
      }
      auto res = eval_candidate(cand);
      if (res && (!current || res->first < current->first)) {
        mats = std::move(cand);
        current = res;
        ++out.improvements;
        step = std::min(step * 1.2, 1.0);
      } else {
        step = std::max(step * 0.95, 1e-9);
      }
    }
  }

  out.violation = out.evaluated && out.min_rel_slack < -cfg.tol;
  return out;
}

inline nlohmann::ordered_json search_to_json(const SearchResult& r) {
  nlohmann::ordered_json j;
  j["radlab_version"] = kVersion;
  j["command"] = "search";
  j["bound"] = r.config.bound_id;
  j["params"] = {{"r", r.config.params.r},
                 {"lambda", r.config.params.lambda},
                 {"alpha", r.config.params.alpha}};
  j["dim"] = r.config.dim;
  j["seed"] = r.config.seed;
  j["iters"] = r.config.iters;
  j["tol"] = r.config.tol;
  j["evals"] = r.evals;
  j["skips"] = r.skips;
  j["improvements"] = r.improvements;
  j["evaluated"] = r.evaluated;
  j["violation"] = r.violation;
  if (r.evaluated) {
    j["min_rel_slack"] = r.min_rel_slack;
    nlohmann::ordered_json best;
    best["bound_id"] = r.best.bound_id;
    nlohmann::ordered_json prm;
    for (const auto& [k, v] : r.best.params) prm[k] = v;
    best["params"] = prm;
    best["lhs"] = r.best.lhs;
    best["rhs"] = r.best.rhs;
    best["slack"] = r.best.slack;
    if (r.best.explicit_bound) best["explicit_bound"] = *r.best.explicit_bound;
    best["hypothesis_ok"] = r.best.hypothesis_ok;
    nlohmann::ordered_json certs;
    for (const auto& [k, v] : r.best.certificates) certs[k] = v;
    best["certificates"] = certs;
    j["best"] = best;
    nlohmann::ordered_json ops;
    for (const auto& [name, m] : r.best_operands) ops[name] = matrix_to_json(m);
    j["operands"] = ops;
  } else {
    j["min_rel_slack"] = nullptr;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Tightness comparison
// ---------------------------------------------------------------------------

struct CompareConfig {
  Family family = Family::ginibre;
  int dim = 4;
  long trials = 1000;
  std::uint64_t seed = 0;
  std::vector<double> grid_lambda{0.0, 0.5, 1.0, 2.0, 10.0};
  std::vector<double> grid_alpha{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> grid_r{1.0, 1.5, 2.0, 3.0};
  std::string out;  // empty: stdout (JSON)
};

struct CompareRow {
  std::string id;
  long applicable = 0;
  long wins = 0;
  double gap_sum = 0.0;
};

struct CompareReport {
  CompareConfig config;
  long trials_done = 0;
  std::vector<CompareRow> rows;
  long th2_le_elhaddad_r2 = 0;  // trials where max over lambda of th2 rhs
                                // stays below the r=2 power-norm bound
};

inline CompareReport run_compare(const CompareConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.dim < 2 || cfg.dim > kMaxDim)
    throw ConfigError("compare dim must be in [2, " + std::to_string(kMaxDim) + "]");

  CompareReport rep;
  rep.config = cfg;
  const std::vector<std::string> ids = {
      "eq1_upper", "eq2_kittaneh", "elhaddad_kittaneh", "eq3_abu_omar",
      "eq11_bhunia", "th2", "th4", "kant_th1_cor", "kant_prop"};
  for (const auto& id : ids) rep.rows.push_back({id, 0, 0, 0.0});

  for (long trial = 0; trial < cfg.trials; ++trial) {
    SingleOpPieces p(generate(cfg.family, cfg.dim, cfg.seed, std::uint64_t(trial)));
    const double w = p.w();
    if (!(w > 1e-150)) continue;
    ++rep.trials_done;

    std::optional<KantorovichCert> cert;
    if (p.invertible()) cert = certify_kantorovich(p.T());

    // upper bounds normalized to bound w itself
    std::vector<std::optional<double>> vals(ids.size());
    vals[0] = p.opn();
    vals[1] = 0.5 * p.normsum(1.0);
    {
      double best = std::numeric_limits<double>::infinity();
      for (double r : cfg.grid_r)
        best = std::min(best, std::pow(0.5 * p.normsum(2.0 * r), 0.5 / r));
      vals[2] = best;
    }
    vals[3] = std::sqrt(0.25 * p.normsum(2.0) + 0.5 * p.w_T2());
    vals[4] = std::sqrt(0.25 * p.normsum(2.0) + 0.5 * p.w_abs_prod());
    {
      double best = std::numeric_limits<double>::infinity();
      for (double l : cfg.grid_lambda)
        best = std::min(best, std::pow(th2_rhs(p, l), 0.25));
      vals[5] = best;
    }
    {
      double best = std::numeric_limits<double>::infinity();
      for (double r : cfg.grid_r)
        for (double a : cfg.grid_alpha)
          best = std::min(best, *eval_th4(p, a, r).explicit_bound);
      vals[6] = best;
    }
    if (cert) {
      double best = std::numeric_limits<double>::infinity();
      for (double r : cfg.grid_r)
        best = std::min(best,
                        std::pow(kantorovich_cor_rhs(p, cert->m_max, r), 0.5 / r));
      vals[7] = best;
      double bestp = std::numeric_limits<double>::infinity();
      for (double l : cfg.grid_lambda)
        if (l <= 1.0)
          bestp = std::min(bestp,
                           std::sqrt(eval_kantorovich_prop(p, *cert, l).rhs));
      vals[8] = bestp;
    }

    std::size_t winner = 0;
    double winner_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (vals[i] && *vals[i] < winner_val) {
        winner_val = *vals[i];
        winner = i;
      }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!vals[i]) continue;
      ++rep.rows[i].applicable;
      rep.rows[i].gap_sum += (*vals[i] - w) / w;
      if (i == winner) ++rep.rows[i].wins;
    }

    double worst_th2 = 0.0;
    for (double l : cfg.grid_lambda)
      worst_th2 = std::max(worst_th2, th2_rhs(p, l));
    const double elkit2 = 0.5 * p.normsum(4.0);
    if (worst_th2 <= elkit2 + 1e-9 * std::max(1.0, elkit2))
      ++rep.th2_le_elhaddad_r2;
  }
  return rep;
}

inline nlohmann::ordered_json compare_to_json(const CompareReport& r) {
  nlohmann::ordered_json j;
  j["radlab_version"] = kVersion;
  j["command"] = "compare";
  j["family"] = family_name(r.config.family);
  j["dim"] = r.config.dim;
  j["trials"] = r.config.trials;
  j["trials_done"] = r.trials_done;
  j["seed"] = r.config.seed;
  nlohmann::ordered_json rows;
  for (const auto& row : r.rows) {
    nlohmann::ordered_json cell;
    cell["applicable"] = row.applicable;
    cell["wins"] = row.wins;
    cell["win_rate"] =
        row.applicable ? double(row.wins) / double(row.applicable) : 0.0;
    cell["mean_rel_gap"] =
        row.applicable ? row.gap_sum / double(row.applicable) : 0.0;
    rows[row.id] = cell;
  }
  j["bounds"] = rows;
  nlohmann::ordered_json ord;
  ord["th2_le_elhaddad_r2"] = {{"satisfied", r.th2_le_elhaddad_r2},
                               {"trials", r.trials_done},
                               {"rate", r.trials_done
                                            ? double(r.th2_le_elhaddad_r2) /
                                                  double(r.trials_done)
                                            : 0.0}};
  j["orderings"] = ord;
  return j;
}

inline std::string compare_to_csv_text(const CompareReport& r) {
  std::string out = "bound_id,applicable,wins,win_rate,mean_rel_gap\n";
  for (const auto& row : r.rows) {
    out += row.id + "," + std::to_string(row.applicable) + "," +
           std::to_string(row.wins) + "," +
           detail::fmt17(row.applicable ? double(row.wins) / double(row.applicable)
                                        : 0.0) +
           "," +
           detail::fmt17(row.applicable ? row.gap_sum / double(row.applicable)
                                        : 0.0) +
           "\n";
  }
  out += "\nordering,satisfied,trials,rate\n";
  out += "th2_le_elhaddad_r2," + std::to_string(r.th2_le_elhaddad_r2) + "," +
         std::to_string(r.trials_done) + "," +
         detail::fmt17(r.trials_done
                           ? double(r.th2_le_elhaddad_r2) / double(r.trials_done)
                           : 0.0) +
         "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Field-of-values export
// ---------------------------------------------------------------------------

struct FovSummary {
  double w = 0.0;
  double opnorm = 0.0;
  std::vector<FovPoint> points;
};

inline FovSummary run_fov(const std::string& matrix_path, int k,
                          const std::string& out_path) {
  const CMatrix t = read_matrix_file(matrix_path);
  FovSummary s;
  s.points = fov_boundary(t, k);
  s.w = numerical_radius(t).value;
  s.opnorm = op_norm(t);
  write_fov_csv(out_path, s.points, s.w, s.opnorm);
  return s;
}

}  // namespace radlab

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radlab/genlab.hpp"
#include "radlab/lemmas.hpp"
#include "radlab/matcore.hpp"
#include "radlab/numrad.hpp"

namespace radlab {

// Scalar knobs appearing across the catalog; each bound validates the subset
// it uses against its own range.
struct BoundParams {
  double r = 1.0;       // power, >= 1 (>= 2 for th5_cor)
  double lambda = 0.0;  // refinement weight, >= 0 ([0,1] where noted)
  double alpha = 0.5;   // convex mixing, in [0,1]
  double m = 1.0;       // Loewner order constant, > 1 when certified
};

// One evaluation record. slack = rhs - lhs; explicit_bound is present for
// self-referential bounds and is a direct upper bound on the radius itself.
struct BoundEval {
  std::string bound_id;
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::optional<double> explicit_bound;
  bool hypothesis_ok = true;
  std::vector<std::pair<std::string, double>> certificates;

  double certificate(const std::string& key, double fallback = 0.0) const {
    for (const auto& [k, v] : certificates)
      if (k == key) return v;
    return fallback;
  }
};

// ---------------------------------------------------------------------------
// Memoized spectral pieces per operand set. Every w(.) on a right-hand side
// goes through the rotation engine so that reports are deterministic.
// ---------------------------------------------------------------------------

class SingleOpPieces {
 public:
  explicit SingleOpPieces(CMatrix t)
      : t_(std::move(t)),
        gram_(Hermitian(CMatrix(t_.adjoint() * t_))),
        gram_adj_(Hermitian(CMatrix(t_ * t_.adjoint()))) {}

  const CMatrix& T() const { return t_; }
  Eigen::Index dim() const { return t_.rows(); }

  double opn() {
    if (!opn_) opn_ = std::sqrt(gram_.lam_max());
    return *opn_;
  }
  double min_singular() const { return std::sqrt(gram_.lam_min()); }
  bool invertible() const {
    return std::sqrt(gram_.lam_min()) > 1e-10 * std::sqrt(gram_.lam_max());
  }

  double w() {
    if (!w_) w_ = numerical_radius(t_).value;
    return *w_;
  }
  double w_T2() {
    if (!w_t2_) w_t2_ = numerical_radius(CMatrix(t_ * t_)).value;
    return *w_t2_;
  }
  // w(|T| |T*|)
  double w_abs_prod() {
    if (!w_abs_prod_)
      w_abs_prod_ =
          numerical_radius(CMatrix(gram_.power(0.5) * gram_adj_.power(0.5))).value;
    return *w_abs_prod_;
  }
  // w(|T*|^{2r} |T|^{2r})
  double w_pow_prod(double r) {
    auto it = w_pow_prod_.find(r);
    if (it == w_pow_prod_.end())
      it = w_pow_prod_
               .emplace(r, numerical_radius(
                               CMatrix(gram_adj_.power(r) * gram_.power(r))).value)
               .first;
    return it->second;
  }
  // || |T|^k + |T*|^k ||
  double normsum(double k) {
    auto it = normsum_.find(k);
    if (it == normsum_.end())
      it = normsum_
               .emplace(k, hermitian_lambda_max(CMatrix(
                               gram_.power(k / 2.0) + gram_adj_.power(k / 2.0))))
               .first;
    return it->second;
  }

 private:
  CMatrix t_;
  PsdSpectrum gram_;      // spectrum of T*T
  PsdSpectrum gram_adj_;  // spectrum of TT*
  std::optional<double> opn_, w_, w_t2_, w_abs_prod_;
  std::map<double, double> w_pow_prod_, normsum_;
};

class PairOpPieces {
 public:
  PairOpPieces(CMatrix t, CMatrix s)
      : t_(std::move(t)),
        s_(std::move(s)),
        gram_t_(Hermitian(CMatrix(t_.adjoint() * t_))),
        gram_s_(Hermitian(CMatrix(s_.adjoint() * s_))) {
    if (t_.rows() != s_.rows())
      throw DimensionMismatch("operator pair: dimension mismatch");
  }

  const CMatrix& T() const { return t_; }
  const CMatrix& S() const { return s_; }

  double w_ST() {
    if (!w_st_) w_st_ = numerical_radius(CMatrix(s_.adjoint() * t_)).value;
    return *w_st_;
  }
  double w_TS() {
    if (!w_ts_) w_ts_ = numerical_radius(CMatrix(t_.adjoint() * s_)).value;
    return *w_ts_;
  }
  // || |T|^k + |S|^k ||
  double normsum(double k) {
    auto it = normsum_.find(k);
    if (it == normsum_.end())
      it = normsum_
               .emplace(k, hermitian_lambda_max(CMatrix(
                               gram_t_.power(k / 2.0) + gram_s_.power(k / 2.0))))
               .first;
    return it->second;
  }
  // w(|S|^{2r} |T|^{2r})
  double w_pow_prod(double r) {
    auto it = w_pow_prod_.find(r);
    if (it == w_pow_prod_.end())
      it = w_pow_prod_
               .emplace(r, numerical_radius(
                               CMatrix(gram_s_.power(r) * gram_t_.power(r))).value)
               .first;
    return it->second;
  }
  double opn_T() {
    if (!opn_t_) opn_t_ = std::sqrt(gram_t_.lam_max());
    return *opn_t_;
  }
  double opn_S() {
    if (!opn_s_) opn_s_ = std::sqrt(gram_s_.lam_max());
    return *opn_s_;
  }
  double opn_sum() {
    if (!opn_sum_) opn_sum_ = op_norm(CMatrix(t_ + s_));
    return *opn_sum_;
  }
  // sup over unit x of the signed quadratic form <T*S x, x>
  double sup_sym_TS() {
    if (!sup_sym_ts_) {
      const CMatrix m = t_.adjoint() * s_;
      sup_sym_ts_ = lambda_max(Hermitian(CMatrix(0.5 * (m + m.adjoint()))));
    }
    return *sup_sym_ts_;
  }

 private:
  CMatrix t_, s_;
  PsdSpectrum gram_t_, gram_s_;
  std::optional<double> w_st_, w_ts_, opn_t_, opn_s_, opn_sum_, sup_sym_ts_;
  std::map<double, double> normsum_, w_pow_prod_;
};

class QuadOpPieces {
 public:
  QuadOpPieces(CMatrix a, CMatrix b, CMatrix c, CMatrix d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
        gram_a_(Hermitian(CMatrix(a_.adjoint() * a_))),
        gram_b_(Hermitian(CMatrix(b_.adjoint() * b_))),
        gram_c_(Hermitian(CMatrix(c_.adjoint() * c_))),
        gram_d_(Hermitian(CMatrix(d_.adjoint() * d_))),
        gram_a_adj_(Hermitian(CMatrix(a_ * a_.adjoint()))),
        gram_c_adj_(Hermitian(CMatrix(c_ * c_.adjoint()))) {
    if (a_.rows() != b_.rows() || a_.rows() != c_.rows() || a_.rows() != d_.rows())
      throw DimensionMismatch("operator quadruple: dimension mismatch");
  }

  double w_main() {
    if (!w_main_)
      w_main_ = numerical_radius(CMatrix(a_.adjoint() * b_ + c_.adjoint() * d_)).value;
    return *w_main_;
  }
  double w_adj_main() {
    if (!w_adj_main_)
      w_adj_main_ = numerical_radius(CMatrix(a_ * b_ + c_ * d_)).value;
    return *w_adj_main_;
  }
  double w_b2a2() {
    if (!w_b2a2_)
      w_b2a2_ = numerical_radius(CMatrix(gram_b_.power(1.0) * gram_a_.power(1.0))).value;
    return *w_b2a2_;
  }
  double w_d2c2() {
    if (!w_d2c2_)
      w_d2c2_ = numerical_radius(CMatrix(gram_d_.power(1.0) * gram_c_.power(1.0))).value;
    return *w_d2c2_;
  }
  double w_b2a2_adj() {
    if (!w_b2a2_adj_)
      w_b2a2_adj_ =
          numerical_radius(CMatrix(gram_b_.power(1.0) * gram_a_adj_.power(1.0))).value;
    return *w_b2a2_adj_;
  }
  double w_d2c2_adj() {
    if (!w_d2c2_adj_)
      w_d2c2_adj_ =
          numerical_radius(CMatrix(gram_d_.power(1.0) * gram_c_adj_.power(1.0))).value;
    return *w_d2c2_adj_;
  }
  // || |A|^{4r} + |B|^{4r} + |C|^{4r} + |D|^{4r} ||
  double normsum4_all(double r) {
    auto it = normsum4_all_.find(r);
    if (it == normsum4_all_.end())
      it = normsum4_all_
               .emplace(r, hermitian_lambda_max(CMatrix(
                               gram_a_.power(2.0 * r) + gram_b_.power(2.0 * r) +
                               gram_c_.power(2.0 * r) + gram_d_.power(2.0 * r))))
               .first;
    return it->second;
  }
  // same with A*, C* in place of A, C
  double normsum4_all_adj(double r) {
    auto it = normsum4_all_adj_.find(r);
    if (it == normsum4_all_adj_.end())
      it = normsum4_all_adj_
               .emplace(r, hermitian_lambda_max(CMatrix(
                               gram_a_adj_.power(2.0 * r) + gram_b_.power(2.0 * r) +
                               gram_c_adj_.power(2.0 * r) + gram_d_.power(2.0 * r))))
               .first;
    return it->second;
  }
  // || |A*|^{4r} + |B|^{4r} ||
  double normsum4_ab_adj(double r) {
    auto it = normsum4_ab_adj_.find(r);
    if (it == normsum4_ab_adj_.end())
      it = normsum4_ab_adj_
               .emplace(r, hermitian_lambda_max(CMatrix(gram_a_adj_.power(2.0 * r) +
                                                        gram_b_.power(2.0 * r))))
               .first;
    return it->second;
  }
  // || |C*|^{4r} + |D|^{4r} ||
  double normsum4_cd_adj(double r) {
    auto it = normsum4_cd_adj_.find(r);
    if (it == normsum4_cd_adj_.end())
      it = normsum4_cd_adj_
               .emplace(r, hermitian_lambda_max(CMatrix(gram_c_adj_.power(2.0 * r) +
                                                        gram_d_.power(2.0 * r))))
               .first;
    return it->second;
  }

 private:
  CMatrix a_, b_, c_, d_;
  PsdSpectrum gram_a_, gram_b_, gram_c_, gram_d_, gram_a_adj_, gram_c_adj_;
  std::optional<double> w_main_, w_adj_main_, w_b2a2_, w_d2c2_, w_b2a2_adj_,
      w_d2c2_adj_;
  std::map<double, double> normsum4_all_, normsum4_all_adj_, normsum4_ab_adj_,
      normsum4_cd_adj_;
};

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

namespace detail {

inline BoundEval make_eval(const char* id, double lhs, double rhs) {
  BoundEval e;
  e.bound_id = id;
  e.lhs = lhs;
  e.rhs = rhs;
  e.slack = rhs - lhs;
  return e;
}

// Positive root of u^2 = a u + b (a, b >= 0).
inline double quad_root(double a, double b) {
  return 0.5 * (a + std::sqrt(a * a + 4.0 * b));
}

inline double quad_residual_rel(double root, double a, double b) {
  return std::abs(root * root - (a * root + b)) / std::max(1.0, root * root);
}

inline void require_r(double r, double rmin, const char* who) {
  if (!(r >= rmin))
    throw DomainError(std::string(who) + ": power must be >= " + std::to_string(rmin));
}

inline void require_lambda(double lambda, const char* who) {
  if (!(lambda >= 0.0))
    throw DomainError(std::string(who) + ": lambda must be >= 0");
}

inline void require_unit_interval(double v, const char* who, const char* knob) {
  if (!(v >= 0.0 && v <= 1.0))
    throw DomainError(std::string(who) + ": " + knob + " must lie in [0,1]");
}

}  // namespace detail

// ||T||/2 <= w(T) and w(T) <= ||T||.
inline std::array<BoundEval, 2> eval_eq1(SingleOpPieces& p) {
  const double w = p.w();
  const double nrm = p.opn();
  return {detail::make_eval("eq1_lower", 0.5 * nrm, w),
          detail::make_eval("eq1_upper", w, nrm)};
}

// w(T) <= || |T| + |T*| || / 2.
inline BoundEval eval_kittaneh(SingleOpPieces& p) {
  return detail::make_eval("eq2_kittaneh", p.w(), 0.5 * p.normsum(1.0));
}

// w(T)^{2r} <= || |T|^{2r} + |T*|^{2r} || / 2.
inline BoundEval eval_elhaddad_kittaneh(SingleOpPieces& p, double r) {
  detail::require_r(r, 1.0, "elhaddad_kittaneh");
  BoundEval e = detail::make_eval("elhaddad_kittaneh", std::pow(p.w(), 2.0 * r),
                                  0.5 * p.normsum(2.0 * r));
  e.params.emplace_back("r", r);
  return e;
}

// w(T)^2 <= || |T|^2 + |T*|^2 || / 4 + w(T^2) / 2.
inline BoundEval eval_abu_omar(SingleOpPieces& p) {
  const double w = p.w();
  return detail::make_eval("eq3_abu_omar", w * w,
                           0.25 * p.normsum(2.0) + 0.5 * p.w_T2());
}

// w(T)^2 <= || |T|^2 + |T*|^2 || / 4 + w(|T| |T*|) / 2.
inline BoundEval eval_bhunia(SingleOpPieces& p) {
  const double w = p.w();
  return detail::make_eval("eq11_bhunia", w * w,
                           0.25 * p.normsum(2.0) + 0.5 * p.w_abs_prod());
}

// w(S*T)^r <= || |T|^{2r} + |S|^{2r} || / 2.
inline BoundEval eval_dragomir(PairOpPieces& p, double r) {
  detail::require_r(r, 1.0, "dragomir");
  BoundEval e = detail::make_eval("dragomir", std::pow(p.w_ST(), r),
                                  0.5 * p.normsum(2.0 * r));
  e.params.emplace_back("r", r);
  return e;
}

// w(S*T)^2 <= a w(S*T) + b with
//   a = || |T|^2 + |S|^2 || / (2(1+l)),  b = l || |T|^4 + |S|^4 || / (2(1+l)).
inline BoundEval eval_aldolat(PairOpPieces& p, double lambda) {
  detail::require_lambda(lambda, "eq4_aldolat");
  const double w = p.w_ST();
  const double a = p.normsum(2.0) / (2.0 * (1.0 + lambda));
  const double b = lambda / (2.0 * (1.0 + lambda)) * p.normsum(4.0);
  BoundEval e = detail::make_eval("eq4_aldolat", w * w, a * w + b);
  e.params.emplace_back("lambda", lambda);
  const double root = detail::quad_root(a, b);
  e.explicit_bound = root;
  e.certificates.emplace_back("quad_residual", detail::quad_residual_rel(root, a, b));
  e.certificates.emplace_back("explicit_gap", root - w);
  return e;
}

inline double th2_rhs(SingleOpPieces& p, double lambda) {
  return (2.0 * lambda + 3.0) / (8.0 * (lambda + 1.0)) * p.normsum(2.0) * p.w_T2() +
         (2.0 * lambda + 1.0) / (8.0 * (lambda + 1.0)) * p.normsum(4.0);
}

// w(T)^4 <= (2l+3)/(8(l+1)) || |T|^2+|T*|^2 || w(T^2)
//         + (2l+1)/(8(l+1)) || |T|^4+|T*|^4 ||.
inline BoundEval eval_th2(SingleOpPieces& p, double lambda) {
  detail::require_lambda(lambda, "th2");
  const double w = p.w();
  BoundEval e = detail::make_eval("th2", w * w * w * w, th2_rhs(p, lambda));
  e.params.emplace_back("lambda", lambda);
  return e;
}

// Chain w^4 <= th2 rhs <= || |T|^4 + |T*|^4 || / 2; at lambda = 1 the two
// intermediate stops of the refined chain are asserted as well.
// slack = min over consecutive steps.
inline BoundEval eval_th2_chain(SingleOpPieces& p, double lambda) {
  detail::require_lambda(lambda, "th2_chain");
  const double w = p.w();
  std::vector<double> chain;
  chain.push_back(w * w * w * w);
  chain.push_back(th2_rhs(p, lambda));
  if (lambda == 1.0)
    chain.push_back(0.125 * p.normsum(2.0) * p.w_T2() + 0.375 * p.normsum(4.0));
  chain.push_back(0.5 * p.normsum(4.0));

  BoundEval e;
  e.bound_id = "th2_chain";
  e.params.emplace_back("lambda", lambda);
  e.lhs = chain.front();
  e.rhs = chain.back();
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const double step = chain[i + 1] - chain[i];
    e.certificates.emplace_back("step" + std::to_string(i), step);
    min_step = std::min(min_step, step);
  }
  e.certificates.emplace_back("mid", chain[1]);
  e.slack = min_step;
  return e;
}

// w(T)^{4r} <= C + D w(T)^{2r} with
//   C = a/8 || |T|^{4r}+|T*|^{4r} || + a/4 w(|T*|^{2r}|T|^{2r}) + a/2 w(T^2)^{2r}
//   D = (1-a)/4 || |T|^{2r}+|T*|^{2r} || + (1-a)/2 w(T^2)^r
// plus the trailing chain C + D w^{2r} <= || |T|^{4r}+|T*|^{4r} || / 2.
inline BoundEval eval_th4(SingleOpPieces& p, double alpha, double r) {
  detail::require_unit_interval(alpha, "th4", "alpha");
  detail::require_r(r, 1.0, "th4");
  const double w = p.w();
  const double w2 = p.w_T2();
  const double big = std::pow(w, 4.0 * r);
  const double c = alpha / 8.0 * p.normsum(4.0 * r) +
                   alpha / 4.0 * p.w_pow_prod(r) +
                   alpha / 2.0 * std::pow(w2, 2.0 * r);
  const double d = (1.0 - alpha) / 4.0 * p.normsum(2.0 * r) +
                   (1.0 - alpha) / 2.0 * std::pow(w2, r);
  const double rhs = c + d * std::pow(w, 2.0 * r);
  BoundEval e = detail::make_eval("th4", big, rhs);
  e.params.emplace_back("alpha", alpha);
  e.params.emplace_back("r", r);
  const double root = detail::quad_root(d, c);
  const double explicit_w = std::pow(root, 1.0 / (2.0 * r));
  e.explicit_bound = explicit_w;
  const double chain_bound = 0.5 * p.normsum(4.0 * r);
  e.certificates.emplace_back("chain_bound", chain_bound);
  e.certificates.emplace_back("chain_slack", chain_bound - rhs);
  e.certificates.emplace_back("quad_residual", detail::quad_residual_rel(root, d, c));
  e.certificates.emplace_back("explicit_gap", explicit_w - w);
  return e;
}

inline double th6_rhs(PairOpPieces& p, double lambda, double r) {
  const double u = std::pow(p.w_TS(), r);
  return p.normsum(2.0 * r) / (2.0 * (lambda + 1.0)) * u +
         lambda / (4.0 * (lambda + 1.0)) * p.normsum(4.0 * r) +
         lambda / (2.0 * (lambda + 1.0)) * p.w_pow_prod(r);
}

// w(T*S)^{2r} <= || |T|^{2r}+|S|^{2r} || w(T*S)^r / (2(l+1))
//             + l || |T|^{4r}+|S|^{4r} || / (4(l+1))
//             + l w(|S|^{2r}|T|^{2r}) / (2(l+1)).
inline BoundEval eval_th6(PairOpPieces& p, double lambda, double r) {
  detail::require_lambda(lambda, "th6");
  detail::require_r(r, 1.0, "th6");
  const double w = p.w_TS();
  const double u = std::pow(w, r);
  const double a = p.normsum(2.0 * r) / (2.0 * (lambda + 1.0));
  const double b = lambda / (4.0 * (lambda + 1.0)) * p.normsum(4.0 * r) +
                   lambda / (2.0 * (lambda + 1.0)) * p.w_pow_prod(r);
  BoundEval e = detail::make_eval("th6", u * u, a * u + b);
  e.params.emplace_back("lambda", lambda);
  e.params.emplace_back("r", r);
  const double root = detail::quad_root(a, b);
  const double explicit_w = std::pow(root, 1.0 / r);
  e.explicit_bound = explicit_w;
  e.certificates.emplace_back("quad_residual", detail::quad_residual_rel(root, a, b));
  e.certificates.emplace_back("explicit_gap", explicit_w - w);
  return e;
}

// r = 1 instance of th6 against the independently coded first corollary line;
// slack is the signed difference and should vanish to roundoff. The second
// corollary line (the w(|S|^2|T|^2) term relaxed by a norm) is carried as a
// certificate step.
inline BoundEval eval_th6_cor1(PairOpPieces& p, double lambda) {
  detail::require_lambda(lambda, "th6_cor1");
  const double from_th6 = th6_rhs(p, lambda, 1.0);
  const double w = p.w_TS();
  const double line1 = 1.0 / (2.0 * (lambda + 1.0)) * p.normsum(2.0) * w +
                       lambda / (4.0 * (lambda + 1.0)) * p.normsum(4.0) +
                       lambda / (2.0 * (lambda + 1.0)) * p.w_pow_prod(1.0);
  const double line2 = 1.0 / (2.0 * (lambda + 1.0)) * p.normsum(2.0) * w +
                       lambda / (2.0 * (lambda + 1.0)) * p.normsum(4.0);
  BoundEval e = detail::make_eval("th6_cor1", from_th6, line1);
  e.params.emplace_back("lambda", lambda);
  e.certificates.emplace_back("line2_slack", line2 - line1);
  return e;
}

// th6 rhs (with the true radius plugged in) <= || |T|^{4r}+|S|^{4r} || / 2.
inline BoundEval eval_th6_cor2(PairOpPieces& p, double lambda, double r) {
  detail::require_lambda(lambda, "th6_cor2");
  detail::require_r(r, 1.0, "th6_cor2");
  BoundEval e = detail::make_eval("th6_cor2", th6_rhs(p, lambda, r),
                                  0.5 * p.normsum(4.0 * r));
  e.params.emplace_back("lambda", lambda);
  e.params.emplace_back("r", r);
  return e;
}

// w(A*B + C*D)^{2r} <= 2^{2r-3} || |A|^{4r}+|B|^{4r}+|C|^{4r}+|D|^{4r} ||
//                    + 2^{2r-2} (w(|B|^2|A|^2)^r + w(|D|^2|C|^2)^r).
inline BoundEval eval_th5(QuadOpPieces& p, double r) {
  detail::require_r(r, 1.0, "th5");
  const double lhs = std::pow(p.w_main(), 2.0 * r);
  const double rhs = std::pow(2.0, 2.0 * r - 3.0) * p.normsum4_all(r) +
                     std::pow(2.0, 2.0 * r - 2.0) *
                         (std::pow(p.w_b2a2(), r) + std::pow(p.w_d2c2(), r));
  BoundEval e = detail::make_eval("th5", lhs, rhs);
  e.params.emplace_back("r", r);
  return e;
}

// w(AB + CD)^{2r} <= th5 rhs with A*, C* in place of A, C
//                 <= 2^{2r-2} [ || |A*|^{4r}+|B|^{4r} || + || |C*|^{4r}+|D|^{4r} || ].
// slack = min of the two chain steps; rhs is the middle expression.
inline BoundEval eval_th5_cor(QuadOpPieces& p, double r) {
  detail::require_r(r, 2.0, "th5_cor");
  const double lhs = std::pow(p.w_adj_main(), 2.0 * r);
  const double middle = std::pow(2.0, 2.0 * r - 3.0) * p.normsum4_all_adj(r) +
                        std::pow(2.0, 2.0 * r - 2.0) *
                            (std::pow(p.w_b2a2_adj(), r) + std::pow(p.w_d2c2_adj(), r));
  const double outer = std::pow(2.0, 2.0 * r - 2.0) *
                       (p.normsum4_ab_adj(r) + p.normsum4_cd_adj(r));
  BoundEval e;
  e.bound_id = "th5_cor";
  e.params.emplace_back("r", r);
  e.lhs = lhs;
  e.rhs = middle;
  e.slack = std::min(middle - lhs, outer - middle);
  e.certificates.emplace_back("outer", outer);
  e.certificates.emplace_back("step0", middle - lhs);
  e.certificates.emplace_back("step1", outer - middle);
  return e;
}

// Real operators only:
// sup <T*S x, x> <= l || |T|^2+|S|^2 || / (2(l+1)) + ||T+S|| (||T||+||S||) / (4(l+1)).
// The bounded quantity is the signed supremum (the top eigenvalue of the
// symmetric part of T*S): the polarization route controls <Sx, Tx>, not its
// absolute value, and the modulus form fails at S = -T.
inline BoundEval eval_polarization_bound(PairOpPieces& p, double lambda) {
  detail::require_lambda(lambda, "polarization_prop");
  if (!is_real(p.T()) || !is_real(p.S()))
    throw ComplexInput("polarization_prop: operands must be real matrices");
  const double rhs = lambda / (2.0 * (lambda + 1.0)) * p.normsum(2.0) +
                     p.opn_sum() * (p.opn_T() + p.opn_S()) / (4.0 * (lambda + 1.0));
  BoundEval e = detail::make_eval("polarization_prop", p.sup_sym_TS(), rhs);
  e.params.emplace_back("lambda", lambda);
  return e;
}

inline double kantorovich_cor_rhs(SingleOpPieces& p, double m, double r) {
  return p.normsum(2.0 * r) / (4.0 * std::sqrt(kantorovich_ratio(m))) +
         0.5 * std::pow(p.w_T2(), r);
}

// w(T)^{2r} <= || |T|^{2r}+|T*|^{2r} || / (4 sqrt(K(m,2))) + w(T^2)^r / 2
// at the certified maximal m. Emits a second record for the composed power
// form f(w^2) with f(t) = t^r, identical by algebra.
inline std::array<BoundEval, 2> eval_kantorovich_cor(SingleOpPieces& p,
                                                     const KantorovichCert& cert,
                                                     double r) {
  detail::require_r(r, 1.0, "kant_th1_cor");
  if (!p.invertible())
    throw NotInvertible("kant_th1_cor: operand is numerically singular");
  if (!(cert.m_max > 1.0))
    throw HypothesisFailed("kant_th1_cor: certificate must have m_max > 1");
  const double k = kantorovich_ratio(cert.m_max);
  const double rhs = kantorovich_cor_rhs(p, cert.m_max, r);
  const double w = p.w();

  BoundEval main = detail::make_eval("kant_th1_cor", std::pow(w, 2.0 * r), rhs);
  main.params.emplace_back("r", r);
  main.params.emplace_back("m", cert.m_max);
  main.certificates.emplace_back("kantorovich_K", k);
  main.certificates.emplace_back("residual", cert.residual);

  BoundEval power_form = detail::make_eval("kant_th1_cor", std::pow(w * w, r), rhs);
  power_form.params = main.params;
  power_form.certificates = main.certificates;
  power_form.certificates.emplace_back("th1_power_form", 1.0);
  return {main, power_form};
}

// w(T)^2 <= beta || |T|^2+|T*|^2 || / (2 sqrt(K(m,2))) + gamma w(T^2) with
// beta = min{(1+l)/2, 1-l/2}, gamma = min{(1-l)/2, l/2}.
inline BoundEval eval_kantorovich_prop(SingleOpPieces& p,
                                       const KantorovichCert& cert,
                                       double lambda) {
  detail::require_unit_interval(lambda, "kant_prop", "lambda");
  if (!p.invertible())
    throw NotInvertible("kant_prop: operand is numerically singular");
  if (!(cert.m_max > 1.0))
    throw HypothesisFailed("kant_prop: certificate must have m_max > 1");
  const double beta = std::min(0.5 * (1.0 + lambda), 1.0 - 0.5 * lambda);
  const double gamma = std::min(0.5 * (1.0 - lambda), 0.5 * lambda);
  const double k = kantorovich_ratio(cert.m_max);
  const double w = p.w();
  const double rhs =
      beta / (2.0 * std::sqrt(k)) * p.normsum(2.0) + gamma * p.w_T2();
  BoundEval e = detail::make_eval("kant_prop", w * w, rhs);
  e.params.emplace_back("lambda", lambda);
  e.params.emplace_back("m", cert.m_max);
  e.certificates.emplace_back("kantorovich_K", k);
  return e;
}

// Convenience overloads building the pieces on the fly.
inline std::array<BoundEval, 2> eval_eq1(const CMatrix& t) {
  SingleOpPieces p(t);
  return eval_eq1(p);
}
inline BoundEval eval_kittaneh(const CMatrix& t) {
  SingleOpPieces p(t);
  return eval_kittaneh(p);
}
inline BoundEval eval_elhaddad_kittaneh(const CMatrix& t, double r) {
  SingleOpPieces p(t);
  return eval_elhaddad_kittaneh(p, r);
}
inline BoundEval eval_abu_omar(const CMatrix& t) {
  SingleOpPieces p(t);
  return eval_abu_omar(p);
}
inline BoundEval eval_bhunia(const CMatrix& t) {
  SingleOpPieces p(t);
  return eval_bhunia(p);
}
inline BoundEval eval_dragomir(const CMatrix& t, const CMatrix& s, double r) {
  PairOpPieces p(t, s);
  return eval_dragomir(p, r);
}
inline BoundEval eval_aldolat(const CMatrix& t, const CMatrix& s, double lambda) {
  PairOpPieces p(t, s);
  return eval_aldolat(p, lambda);
}
inline BoundEval eval_th2(const CMatrix& t, double lambda) {
  SingleOpPieces p(t);
  return eval_th2(p, lambda);
}
inline BoundEval eval_th2_chain(const CMatrix& t, double lambda) {
  SingleOpPieces p(t);
  return eval_th2_chain(p, lambda);
}
inline BoundEval eval_th4(const CMatrix& t, double alpha, double r) {
  SingleOpPieces p(t);
  return eval_th4(p, alpha, r);
}
inline BoundEval eval_th6(const CMatrix& t, const CMatrix& s, double lambda, double r) {
  PairOpPieces p(t, s);
  return eval_th6(p, lambda, r);
}
inline BoundEval eval_th5(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                          const CMatrix& d, double r) {
  QuadOpPieces p(a, b, c, d);
  return eval_th5(p, r);
}
inline BoundEval eval_th5_cor(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                              const CMatrix& d, double r) {
  QuadOpPieces p(a, b, c, d);
  return eval_th5_cor(p, r);
}
inline BoundEval eval_polarization_bound(const CMatrix& t, const CMatrix& s,
                                         double lambda) {
  PairOpPieces p(t, s);
  return eval_polarization_bound(p, lambda);
}
inline std::array<BoundEval, 2> eval_kantorovich_cor(const CMatrix& t,
                                                     const KantorovichCert& cert,
                                                     double r) {
  SingleOpPieces p(t);
  return eval_kantorovich_cor(p, cert, r);
}
inline BoundEval eval_kantorovich_prop(const CMatrix& t, const KantorovichCert& cert,
                                       double lambda) {
  SingleOpPieces p(t);
  return eval_kantorovich_prop(p, cert, lambda);
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

enum class OperandKind { single, pair, real_pair, quad, kantorovich };

struct BoundInfo {
  const char* id;
  OperandKind operands;
  bool uses_r = false;
  bool uses_lambda = false;
  bool uses_alpha = false;
  double r_min = 1.0;
  bool lambda_unit = false;  // lambda restricted to [0,1]
  bool identity = false;     // pass criterion is |slack| small, not slack >= 0
};

inline const std::vector<BoundInfo>& bound_catalog() {
  static const std::vector<BoundInfo> table = {
      {"eq1_lower", OperandKind::single},
      {"eq1_upper", OperandKind::single},
      {"eq2_kittaneh", OperandKind::single},
      {"elhaddad_kittaneh", OperandKind::single, true},
      {"eq3_abu_omar", OperandKind::single},
      {"eq11_bhunia", OperandKind::single},
      {"dragomir", OperandKind::pair, true},
      {"eq4_aldolat", OperandKind::pair, false, true},
      {"th2", OperandKind::single, false, true},
      {"th2_chain", OperandKind::single, false, true},
      {"th4", OperandKind::single, true, false, true},
      {"th6", OperandKind::pair, true, true},
      {"th6_cor1", OperandKind::pair, false, true, false, 1.0, false, true},
      {"th6_cor2", OperandKind::pair, true, true},
      {"th5", OperandKind::quad, true},
      {"th5_cor", OperandKind::quad, true, false, false, 2.0},
      {"polarization_prop", OperandKind::real_pair, false, true},
      {"kant_th1_cor", OperandKind::kantorovich, true},
      {"kant_prop", OperandKind::kantorovich, false, true, false, 1.0, true},
  };
  return table;
}

inline const BoundInfo* find_bound(const std::string& id) {
  for (const auto& b : bound_catalog())
    if (id == b.id) return &b;
  return nullptr;
}

}  // namespace radlab

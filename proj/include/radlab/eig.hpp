#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "radlab/matrix.hpp"

namespace radlab {

struct HermEig {
  RVector values;   // descending
  CMatrix vectors;  // column j pairs with values(j)
};

inline HermEig herm_eig(const Hermitian& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.mat());
  if (es.info() != Eigen::Success)
    throw DidNotConverge("herm_eig: eigensolver iteration budget exhausted");
  HermEig out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

namespace detail {

// Top eigenvalue of a 2x2 Hermitian matrix, closed form.
inline double lmax2(const CMatrix& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double off = std::abs(h(1, 0));
  return 0.5 * (a + d) + std::hypot(0.5 * (a - d), off);
}

// Top eigenvalue of a 3x3 Hermitian matrix via the trigonometric cubic,
// shifted and scaled for stability.
inline double lmax3(const CMatrix& h) {
  const double a = h(0, 0).real();
  const double b = h(1, 1).real();
  const double c = h(2, 2).real();
  const Complex f = h(0, 1), g = h(0, 2), e = h(1, 2);
  const double q = (a + b + c) / 3.0;
  const double p2 = ((a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q)) / 6.0 +
                    (std::norm(f) + std::norm(g) + std::norm(e)) / 3.0;
  if (p2 <= 0.0) return q;
  const double p = std::sqrt(p2);
  const double aa = (a - q) / p, bb = (b - q) / p, cc = (c - q) / p;
  const Complex ff = f / p, gg = g / p, ee = e / p;
  // det((H - qI)/p) is real for Hermitian H
  const double det = aa * bb * cc - aa * std::norm(ee) - cc * std::norm(ff) -
                     bb * std::norm(gg) + 2.0 * (ff * ee * std::conj(gg)).real();
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi);
}

}  // namespace detail

// Largest eigenvalue of a Hermitian matrix; closed forms for n <= 3, Eigen's
// iterative solver otherwise. `ws` lets hot loops reuse the workspace.
inline double hermitian_lambda_max(const CMatrix& h,
                                   Eigen::SelfAdjointEigenSolver<CMatrix>& ws) {
  switch (h.rows()) {
    case 1:
      return h(0, 0).real();
    case 2:
      return detail::lmax2(h);
    case 3:
      return detail::lmax3(h);
    default:
      ws.compute(h, Eigen::EigenvaluesOnly);
      if (ws.info() != Eigen::Success)
        throw DidNotConverge("lambda_max: eigensolver did not converge");
      return ws.eigenvalues()(h.rows() - 1);
  }
}

inline double hermitian_lambda_max(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> ws;
  return hermitian_lambda_max(h, ws);
}

inline double lambda_max(const Hermitian& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw DidNotConverge("lambda_max: eigensolver did not converge");
  return es.eigenvalues()(m.dim() - 1);
}

inline double lambda_min(const Hermitian& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw DidNotConverge("lambda_min: eigensolver did not converge");
  return es.eigenvalues()(0);
}

// Operator norm of a Hermitian matrix: max |eigenvalue|.
inline double hermitian_op_norm(const Hermitian& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw DidNotConverge("hermitian_op_norm: eigensolver did not converge");
  return std::max(std::abs(es.eigenvalues()(0)),
                  std::abs(es.eigenvalues()(m.dim() - 1)));
}

}  // namespace radlab

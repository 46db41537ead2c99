#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "radlab/eig.hpp"
#include "radlab/matrix.hpp"
#include "radlab/rng.hpp"

namespace radlab {

enum class RadiusMethod { rotation, ascent };

struct RadiusResult {
  double value = 0.0;
  double theta = 0.0;   // maximizing angle in [0, 2pi)
  CVector witness;      // unit vector attaining |<Tx,x>| = value
  RadiusMethod method = RadiusMethod::rotation;
};

namespace detail {

inline double wrap_angle(double th) {
  th = std::fmod(th, kTwoPi);
  if (th < 0.0) th += kTwoPi;
  return th;
}

// Golden-section maximization on [a,b]; returns the best evaluated point.
// On exact ties the interval shrinks from the right, so the smaller abscissa
// wins deterministically.
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  double bx = c, bf = fc;
  if (fd > bf) { bx = d; bf = fd; }
  while (b - a > tol) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
      if (fc > bf) { bx = c; bf = fc; }
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
      if (fd > bf) { bx = d; bf = fd; }
    }
  }
  return {bx, bf};
}

inline CVector random_unit_vector(CounterRng& rng, Eigen::Index n) {
  CVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.complex_normal();
  const double nrm = x.norm();
  if (nrm <= 1e-300) {
    x.setZero();
    x(0) = 1.0;
    return x;
  }
  return x / nrm;
}

inline constexpr std::uint32_t kTagAscent = 0x41534Eu;  // stream tag

}  // namespace detail

// w(T) by the rotation identity w(T) = max_theta lambda_max(H_theta) with
// H_theta = (e^{i theta} T + e^{-i theta} T*)/2 = cos(theta) Hr + sin(theta) Hi.
// A uniform grid of 720 angles brackets the maximum; every local maximum of
// the grid near the top is refined by golden section to angle tolerance
// 1e-10 so that near-ties between brackets cannot drop the global peak.
// Smallest angle attaining the maximum (within 1e-10) wins.
inline RadiusResult numerical_radius(const CMatrix& t) {
  validate_operand(t);
  const Eigen::Index n = t.rows();
  const CMatrix hr = 0.5 * (t + t.adjoint());
  const CMatrix hi = 0.5 * Complex(0.0, 1.0) * (t - t.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> ws;
  CMatrix h(n, n);
  auto g = [&](double theta) {
    h.noalias() = std::cos(theta) * hr + std::sin(theta) * hi;
    return hermitian_lambda_max(h, ws);
  };

  constexpr int kGrid = 720;
  const double step = kTwoPi / kGrid;
  std::vector<double> gv(kGrid);
  for (int j = 0; j < kGrid; ++j) gv[j] = g(step * j);

  // Local maxima of the cyclic grid sequence; plateaus keep their left edge.
  std::vector<int> cands;
  for (int j = 0; j < kGrid; ++j) {
    const double left = gv[(j + kGrid - 1) % kGrid];
    const double right = gv[(j + 1) % kGrid];
    if (gv[j] >= left && gv[j] >= right && (gv[j] > left || j == 0))
      cands.push_back(j);
  }
  if (cands.empty()) cands.push_back(0);
  std::stable_sort(cands.begin(), cands.end(),
                   [&](int a, int b) { return gv[a] > gv[b]; });
  if (cands.size() > 16) cands.resize(16);

  std::vector<std::pair<double, double>> refined;  // (theta, value)
  for (int j : cands) {
    const double center = step * j;
    auto [th, val] = detail::golden_max(g, center - step, center + step, 1e-10);
    if (gv[j] > val) { th = center; val = gv[j]; }
    refined.emplace_back(detail::wrap_angle(th), val);
  }
  double vmax = refined.front().second;
  for (const auto& [th, val] : refined) vmax = std::max(vmax, val);
  // Smallest angle attaining the maximum within 1e-10 wins; grid points in
  // the tie band count as attaining it.
  double best_theta = std::numeric_limits<double>::infinity();
  for (const auto& [th, val] : refined)
    if (val >= vmax - 1e-10 && th < best_theta) best_theta = th;
  for (int j = 0; j < kGrid; ++j) {
    if (gv[j] >= vmax - 1e-10) {
      best_theta = std::min(best_theta, step * j);
      break;
    }
  }

  h.noalias() = std::cos(best_theta) * hr + std::sin(best_theta) * hi;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw DidNotConverge("numerical_radius: eigensolver did not converge");

  RadiusResult out;
  out.value = es.eigenvalues()(n - 1);
  out.theta = best_theta;
  out.witness = es.eigenvectors().col(n - 1);
  out.method = RadiusMethod::rotation;
  return out;
}

// Independent lower-bound oracle: shifted fixed-point iteration of
// x <- normalize((e^{-i phi} T + e^{i phi} T* + 2||T|| I) x), phi = arg<Tx,x>,
// from seeded random starts. The shift keeps the iteration matrix PSD, which
// makes |<Tx,x>| monotone along the iterates; without it the update flips
// between eigenvectors whenever the rotated Hermitian part has a symmetric
// spectrum. Returns the best |<Tx,x>| seen, a lower bound on w(T) by
// construction.
inline RadiusResult numerical_radius_ascent(const CMatrix& t, int restarts,
                                            std::uint64_t seed) {
  validate_operand(t);
  if (restarts < 1) throw DomainError("numerical_radius_ascent: restarts must be >= 1");
  const Eigen::Index n = t.rows();
  const CMatrix tadj = t.adjoint();
  const double shift = 2.0 * std::sqrt(std::max(
      0.0, hermitian_lambda_max(CMatrix(tadj * t))));

  double best = -1.0;
  CVector best_x;
  for (int k = 0; k < restarts; ++k) {
    CounterRng rng(seed, detail::kTagAscent, std::uint64_t(k));
    CVector x = detail::random_unit_vector(rng, n);
    bool done = false;
    for (int it = 0; it <= 500; ++it) {
      const CVector tx = t * x;
      const Complex c = x.dot(tx);
      const double a = std::abs(c);
      if (a > best) {
        best = a;
        best_x = x;
      }
      if (done || it == 500) break;
      const double phi = a > 0.0 ? std::arg(c) : 0.0;
      CVector y = std::polar(1.0, -phi) * tx + std::polar(1.0, phi) * (tadj * x) +
                  shift * x;
      const double nu = y.norm();
      if (nu <= 1e-300) break;
      y /= nu;
      if (1.0 - std::abs(y.dot(x)) <= 1e-12) done = true;
      x.swap(y);
    }
  }

  RadiusResult out;
  out.value = best;
  out.witness = best_x;
  out.method = RadiusMethod::ascent;
  const Complex c = best_x.dot(CVector(t * best_x));
  out.theta = std::abs(c) > 0.0 ? detail::wrap_angle(-std::arg(c)) : 0.0;
  return out;
}

struct FovPoint {
  double theta;
  Complex value;
};

// k boundary samples of the numerical range: <T x_j, x_j> with x_j the top
// eigenvector of H_{theta_j}, theta_j = 2 pi j / k.
inline std::vector<FovPoint> fov_boundary(const CMatrix& t, int k) {
  validate_operand(t);
  if (k < 3) throw DomainError("fov_boundary: need at least 3 sample angles");
  const Eigen::Index n = t.rows();
  const CMatrix hr = 0.5 * (t + t.adjoint());
  const CMatrix hi = 0.5 * Complex(0.0, 1.0) * (t - t.adjoint());
  std::vector<FovPoint> pts;
  pts.reserve(std::size_t(k));
  CMatrix h(n, n);
  for (int j = 0; j < k; ++j) {
    const double theta = kTwoPi * j / k;
    h.noalias() = std::cos(theta) * hr + std::sin(theta) * hi;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success)
      throw DidNotConverge("fov_boundary: eigensolver did not converge");
    const CVector x = es.eigenvectors().col(n - 1);
    pts.push_back({theta, x.dot(CVector(t * x))});
  }
  return pts;
}

}  // namespace radlab

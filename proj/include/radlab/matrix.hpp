#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "radlab/errors.hpp"

namespace radlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Desk-scale dimension cap; larger operators are rejected outright.
inline constexpr int kMaxDim = 64;

// <x, y>, linear in the first argument (the convention used throughout).
inline Complex inner(const CVector& x, const CVector& y) { return y.dot(x); }

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_real(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j).imag() != 0.0) return false;
  return true;
}

inline void validate_operand(const CMatrix& t, const char* what = "matrix") {
  if (t.rows() != t.cols())
    throw DimensionMismatch(std::string(what) + ": operand must be square");
  if (t.rows() < 1 || t.rows() > kMaxDim)
    throw UnsupportedDim(std::string(what) + ": dimension must be in [1, " +
                         std::to_string(kMaxDim) + "], got " +
                         std::to_string(t.rows()));
  if (!t.allFinite())
    throw DomainError(std::string(what) + ": non-finite entry");
}

inline void validate_vector(const CVector& x, const char* what = "vector") {
  if (x.size() < 1) throw DimensionMismatch(std::string(what) + ": empty");
  if (!x.allFinite()) throw DomainError(std::string(what) + ": non-finite entry");
}

inline double hermitian_tol(const CMatrix& m) {
  return 1e-12 * std::max(1.0, max_abs(m));
}

// A square matrix certified Hermitian at construction:
// ||M - M*||_max <= 1e-12 * max(1, ||M||_max).
class Hermitian {
 public:
  explicit Hermitian(CMatrix m) : m_(std::move(m)) {
    validate_operand(m_, "Hermitian");
    asymmetry_ = max_abs(m_ - m_.adjoint());
    if (asymmetry_ > hermitian_tol(m_))
      throw NotHermitian("asymmetry " + std::to_string(asymmetry_) +
                         " exceeds tolerance " +
                         std::to_string(hermitian_tol(m_)));
  }

  const CMatrix& mat() const { return m_; }
  double asymmetry() const { return asymmetry_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
  double asymmetry_ = 0.0;
};

// f(t) = t^r on [0, inf), increasing and convex with f(0) = 0 for r >= 1.
struct ConvexPowerFn {
  double r;
  explicit ConvexPowerFn(double exponent) : r(exponent) {
    if (!(r >= 1.0)) throw DomainError("ConvexPowerFn: exponent must be >= 1");
  }
  double operator()(double t) const { return std::pow(t, r); }
};

}  // namespace radlab

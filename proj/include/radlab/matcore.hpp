#pragma once

#include <cmath>
#include <utility>

#include "radlab/eig.hpp"
#include "radlab/matrix.hpp"

namespace radlab {

// Spectral decomposition of a nominally-PSD Hermitian matrix with the
// roundoff clamp applied: eigenvalues in [-1e-12*||M||, 0) are treated as 0,
// anything below that signals genuinely non-PSD input.
class PsdSpectrum {
 public:
  explicit PsdSpectrum(const Hermitian& m) {
    HermEig eig = herm_eig(m);
    const Eigen::Index n = eig.values.size();
    const double scale =
        std::max(std::abs(eig.values(0)), std::abs(eig.values(n - 1)));
    const double clamp = -1e-12 * scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (eig.values(i) < clamp)
        throw NegativeEigenvalue("eigenvalue " + std::to_string(eig.values(i)) +
                                 " below clamp threshold " + std::to_string(clamp));
      eig.values(i) = std::max(eig.values(i), 0.0);
    }
    values_ = std::move(eig.values);
    vectors_ = std::move(eig.vectors);
  }

  // V diag(lambda^p) V*. Negative p requires a strictly positive spectrum.
  CMatrix power(double p) const {
    const Eigen::Index n = values_.size();
    if (p < 0.0 && values_(n - 1) <= 0.0)
      throw NotInvertible("matrix power with negative exponent on a singular matrix");
    RVector lp(n);
    for (Eigen::Index i = 0; i < n; ++i)
      lp(i) = values_(i) == 0.0 ? 0.0 : std::pow(values_(i), p);
    return vectors_ * lp.asDiagonal() * vectors_.adjoint();
  }

  const RVector& values() const { return values_; }  // descending, clamped
  const CMatrix& vectors() const { return vectors_; }
  double lam_max() const { return values_(0); }
  double lam_min() const { return values_(values_.size() - 1); }

 private:
  RVector values_;
  CMatrix vectors_;
};

// |T| = (T*T)^{1/2}.
inline Hermitian abs_value(const CMatrix& t) {
  validate_operand(t);
  const CMatrix gram = t.adjoint() * t;
  return Hermitian(PsdSpectrum(Hermitian(gram)).power(0.5));
}

// M^p for PSD Hermitian M, p > 0.
inline Hermitian mat_power(const Hermitian& m, double p) {
  if (!(p > 0.0)) throw DomainError("mat_power: exponent must be > 0");
  return Hermitian(PsdSpectrum(m).power(p));
}

// Largest singular value.
inline double op_norm(const CMatrix& t) {
  validate_operand(t);
  const CMatrix gram = t.adjoint() * t;
  return std::sqrt(std::max(0.0, lambda_max(Hermitian(gram))));
}

// A <= B in the Loewner order, up to tol on lambda_min(B - A).
inline bool loewner_leq(const Hermitian& a, const Hermitian& b, double tol) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("loewner_leq: dimension mismatch");
  const Hermitian diff(b.mat() - a.mat());
  return lambda_min(diff) >= -tol;
}

}  // namespace radlab

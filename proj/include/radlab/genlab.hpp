#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radlab/matcore.hpp"
#include "radlab/matrix.hpp"
#include "radlab/rng.hpp"

namespace radlab {

enum class Family {
  ginibre,
  normal,
  nilpotent_jordan,
  upper_triangular,
  real_ginibre,
  unitary,
  psd,
  kantorovich_search,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::ginibre: return "ginibre";
    case Family::normal: return "normal";
    case Family::nilpotent_jordan: return "nilpotent_jordan";
    case Family::upper_triangular: return "upper_triangular";
    case Family::real_ginibre: return "real_ginibre";
    case Family::unitary: return "unitary";
    case Family::psd: return "psd";
    case Family::kantorovich_search: return "kantorovich_search";
  }
  return "?";
}

inline Family family_from_name(const std::string& s) {
  for (Family f : {Family::ginibre, Family::normal, Family::nilpotent_jordan,
                   Family::upper_triangular, Family::real_ginibre,
                   Family::unitary, Family::psd, Family::kantorovich_search})
    if (s == family_name(f)) return f;
  throw ConfigError("unknown family: " + s);
}

struct FamilySpec {
  Family family = Family::ginibre;
  int dim = 2;
  std::uint64_t seed = 0;
  int count = 1;
};

namespace detail {

inline std::uint32_t family_tag(Family f) {
  return 0x46414Du + std::uint32_t(f);  // disjoint stream tags per family
}

inline CMatrix haar_unitary(CounterRng& rng, int n) {
  CMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  CVector phases(n);
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    phases(i) = a > 0.0 ? r(i, i) / a : Complex(1.0, 0.0);
  }
  return q * phases.asDiagonal();
}

}  // namespace detail

// Element `index` of the family stream keyed by (family, dim, seed). A pure
// function of its arguments, so streams may be materialized in any order.
inline CMatrix generate(Family f, int dim, std::uint64_t seed, std::uint64_t index) {
  if (dim < 2 || dim > kMaxDim)
    throw UnsupportedDim("generate: dim must be in [2, " +
                         std::to_string(kMaxDim) + "]");
  switch (f) {
    case Family::ginibre: {
      CounterRng rng(seed, detail::family_tag(f), index);
      CMatrix m(dim, dim);
      for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) m(i, j) = rng.complex_normal();
      return m;
    }
    case Family::real_ginibre: {
      CounterRng rng(seed, detail::family_tag(f), index);
      CMatrix m(dim, dim);
      for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) m(i, j) = Complex(rng.normal(), 0.0);
      return m;
    }
    case Family::nilpotent_jordan: {
      CMatrix m = CMatrix::Zero(dim, dim);
      for (int i = 0; i + 1 < dim; ++i) m(i, i + 1) = 1.0;
      return m;
    }
    case Family::upper_triangular: {
      CounterRng rng(seed, detail::family_tag(f), index);
      CMatrix m = CMatrix::Zero(dim, dim);
      for (int j = 0; j < dim; ++j)
        for (int i = 0; i <= j; ++i) m(i, j) = rng.complex_normal();
      return m;
    }
    case Family::unitary: {
      CounterRng rng(seed, detail::family_tag(f), index);
      return detail::haar_unitary(rng, dim);
    }
    case Family::normal: {
      CounterRng rng(seed, detail::family_tag(f), index);
      CVector eigs(dim);
      for (int i = 0; i < dim; ++i) eigs(i) = rng.complex_normal();
      const CMatrix u = detail::haar_unitary(rng, dim);
      return u * eigs.asDiagonal() * u.adjoint();
    }
    case Family::psd: {
      CounterRng rng(seed, detail::family_tag(f), index);
      CMatrix g(dim, dim);
      for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_normal();
      return g.adjoint() * g;
    }
    case Family::kantorovich_search:
      // candidate stream the certification search filters
      return index % 2 == 0
                 ? generate(Family::ginibre, dim, seed, index / 2)
                 : generate(Family::upper_triangular, dim, seed, index / 2);
  }
  throw ConfigError("generate: unknown family");
}

inline std::vector<CMatrix> generate(const FamilySpec& spec) {
  if (spec.count < 1) throw DomainError("generate: count must be >= 1");
  std::vector<CMatrix> out;
  out.reserve(std::size_t(spec.count));
  for (int i = 0; i < spec.count; ++i)
    out.push_back(generate(spec.family, spec.dim, spec.seed, std::uint64_t(i)));
  return out;
}

// Certified maximal m for one of the order hypotheses m|T| <= |T*| or
// m|T*| <= |T|.
struct KantorovichCert {
  enum class Direction { mT_leq_Tstar, mTstar_leq_T };
  Direction direction = Direction::mT_leq_Tstar;
  double m_max = 0.0;
  double residual = 0.0;  // lambda_min of the certifying difference at m_max
};

inline double min_singular_value(const CMatrix& t) {
  validate_operand(t);
  const PsdSpectrum gram((Hermitian(CMatrix(t.adjoint() * t))));
  return std::sqrt(gram.lam_min());
}

inline bool is_invertible(const CMatrix& t) {
  validate_operand(t);
  const PsdSpectrum gram((Hermitian(CMatrix(t.adjoint() * t))));
  return std::sqrt(gram.lam_min()) > 1e-10 * std::sqrt(gram.lam_max());
}

struct KantorovichDirections {
  double m_abs_leq_absadj;  // max m with m|T|  <= |T*|
  double m_absadj_leq_abs;  // max m with m|T*| <= |T|
};

// Maximal order constants in both directions, via the generalized eigenvalue
// lambda_min(P^{-1/2} Q P^{-1/2}).
inline KantorovichDirections kantorovich_m_values(const CMatrix& t) {
  validate_operand(t);
  const PsdSpectrum gram((Hermitian(CMatrix(t.adjoint() * t))));
  const PsdSpectrum gram_adj((Hermitian(CMatrix(t * t.adjoint()))));
  if (!(std::sqrt(gram.lam_min()) > 1e-10 * std::sqrt(gram.lam_max())))
    throw NotInvertible("kantorovich_m_values: operand is numerically singular");
  const CMatrix abs_t = gram.power(0.5);
  const CMatrix abs_ts = gram_adj.power(0.5);
  const CMatrix inv_sqrt_t = gram.power(-0.25);    // |T|^{-1/2}
  const CMatrix inv_sqrt_ts = gram_adj.power(-0.25);
  const double m1 = lambda_min(Hermitian(CMatrix(inv_sqrt_t * abs_ts * inv_sqrt_t)));
  const double m2 = lambda_min(Hermitian(CMatrix(inv_sqrt_ts * abs_t * inv_sqrt_ts)));
  return {m1, m2};
}

// Certificate for the better direction, or absent when neither direction
// clears m > 1 (+1e-9 guard against certifying roundoff).
inline std::optional<KantorovichCert> certify_kantorovich(const CMatrix& t) {
  const KantorovichDirections dirs = kantorovich_m_values(t);
  KantorovichCert cert;
  if (dirs.m_abs_leq_absadj >= dirs.m_absadj_leq_abs) {
    cert.direction = KantorovichCert::Direction::mT_leq_Tstar;
    cert.m_max = dirs.m_abs_leq_absadj;
  } else {
    cert.direction = KantorovichCert::Direction::mTstar_leq_T;
    cert.m_max = dirs.m_absadj_leq_abs;
  }
  if (cert.m_max <= 1.0 + 1e-9) return std::nullopt;
  const Hermitian abs_t = abs_value(t);
  const Hermitian abs_ts = abs_value(CMatrix(t.adjoint()));
  const bool dir1 = cert.direction == KantorovichCert::Direction::mT_leq_Tstar;
  const CMatrix p = dir1 ? abs_t.mat() : abs_ts.mat();
  const CMatrix q = dir1 ? abs_ts.mat() : abs_t.mat();
  cert.residual = lambda_min(Hermitian(CMatrix(q - cert.m_max * p)));
  return cert;
}

struct KantorovichSearchResult {
  std::vector<std::pair<CMatrix, KantorovichCert>> hits;
  long attempts = 0;
  long invertible = 0;
  double hit_rate = 0.0;
};

// Filters the candidate stream through certify_kantorovich. Throws
// NoHitsInBudget (carrying the attempt count) when the budget is exhausted
// with no certified operand, so callers report the zero hit rate instead of
// silently passing.
inline KantorovichSearchResult kantorovich_search(int dim, std::uint64_t seed,
                                                  long budget) {
  if (budget < 1) throw DomainError("kantorovich_search: budget must be >= 1");
  KantorovichSearchResult out;
  for (long i = 0; i < budget; ++i) {
    const CMatrix t =
        generate(Family::kantorovich_search, dim, seed, std::uint64_t(i));
    ++out.attempts;
    if (!is_invertible(t)) continue;
    ++out.invertible;
    if (auto cert = certify_kantorovich(t)) out.hits.emplace_back(t, *cert);
  }
  out.hit_rate = double(out.hits.size()) / double(out.attempts);
  if (out.hits.empty())
    throw NoHitsInBudget("kantorovich_search: no certified operand within budget",
                         out.attempts);
  return out;
}

}  // namespace radlab

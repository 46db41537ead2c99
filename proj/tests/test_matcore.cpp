#include <catch2/catch_amalgamated.hpp>

#include "radlab/genlab.hpp"
#include "radlab/matcore.hpp"
#include "radlab/numrad.hpp"

using namespace radlab;

namespace {

CMatrix random_hermitian(int n, std::uint64_t idx) {
  const CMatrix g = generate(Family::ginibre, n, 77, idx);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("herm_eig on diagonal and symmetry-forced inputs") {
  CMatrix d(2, 2);
  d << 3, 0, 0, 1;
  const HermEig e = herm_eig(Hermitian(d));
  CHECK(e.values(0) == Catch::Approx(3.0).margin(1e-14));
  CHECK(e.values(1) == Catch::Approx(1.0).margin(1e-14));
  // eigenvectors are the standard basis up to phase
  CHECK(std::abs(e.vectors(0, 0)) == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(e.vectors(1, 1)) == Catch::Approx(1.0).margin(1e-12));

  CMatrix s(2, 2);
  s << 0, 1, 1, 0;
  const HermEig es = herm_eig(Hermitian(s));
  CHECK(es.values(0) == Catch::Approx(1.0).margin(1e-14));
  CHECK(es.values(1) == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("herm_eig reconstruction residual on random Hermitian") {
  for (std::uint64_t idx = 0; idx < 10; ++idx) {
    const CMatrix m = random_hermitian(5, idx);
    const HermEig e = herm_eig(Hermitian(m));
    const CMatrix rec = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
    const double scale = std::max(1.0, max_abs(m));
    REQUIRE(max_abs(m - rec) <= 1e-10 * scale);
    // sorted descending
    for (int i = 0; i + 1 < 5; ++i) REQUIRE(e.values(i) >= e.values(i + 1));
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  CMatrix j(2, 2);
  j << 0, 1, 0, 0;
  CHECK_THROWS_AS(Hermitian(j), NotHermitian);
}

TEST_CASE("abs_value anchors") {
  CMatrix j(2, 2);
  j << 0, 1, 0, 0;
  const Hermitian a = abs_value(j);
  CHECK(std::abs(a.mat()(0, 0)) == Catch::Approx(0.0).margin(1e-14));
  CHECK(std::abs(a.mat()(1, 1) - 1.0) == Catch::Approx(0.0).margin(1e-14));

  const CMatrix u = generate(Family::unitary, 4, 5, 0);
  CHECK(max_abs(abs_value(u).mat() - CMatrix::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("abs_value squaring oracle") {
  for (std::uint64_t idx = 0; idx < 8; ++idx) {
    const CMatrix t = generate(Family::ginibre, 4, 11, idx);
    const CMatrix a = abs_value(t).mat();
    REQUIRE(max_abs(a * a - t.adjoint() * t) <= 1e-9);
  }
}

TEST_CASE("mat_power anchors and oracles") {
  CMatrix d(2, 2);
  d << 4, 0, 0, 9;
  const Hermitian h = mat_power(Hermitian(d), 0.5);
  CHECK(h.mat()(0, 0).real() == Catch::Approx(2.0).margin(1e-12));
  CHECK(h.mat()(1, 1).real() == Catch::Approx(3.0).margin(1e-12));

  for (std::uint64_t idx = 0; idx < 6; ++idx) {
    const Hermitian m((generate(Family::psd, 4, 13, idx)));
    // identity case
    CHECK(max_abs(mat_power(m, 1.0).mat() - m.mat()) <= 1e-12 * max_abs(m.mat()));
    // multiplication oracle
    const CMatrix sq = mat_power(m, 2.0).mat();
    REQUIRE(max_abs(sq - m.mat() * m.mat()) <= 1e-9 * std::max(1.0, max_abs(sq)));
  }

  CMatrix neg(2, 2);
  neg << 1, 0, 0, -1;
  CHECK_THROWS_AS(mat_power(Hermitian(neg), 0.5), NegativeEigenvalue);
  CHECK_THROWS_AS(mat_power(Hermitian(d), 0.0), DomainError);
  CHECK_THROWS_AS(mat_power(Hermitian(d), -1.0), DomainError);
}

TEST_CASE("mat_power composition property") {
  const double ps[] = {0.5, 1.0, 2.0};
  for (std::uint64_t idx = 0; idx < 4; ++idx) {
    const Hermitian m((generate(Family::psd, 3, 17, idx)));
    for (double p : ps)
      for (double q : ps) {
        const CMatrix lhs = mat_power(mat_power(m, p), q).mat();
        const CMatrix rhs = mat_power(m, p * q).mat();
        REQUIRE(max_abs(lhs - rhs) <= 1e-9 * std::max(1.0, max_abs(rhs)));
      }
  }
}

TEST_CASE("op_norm anchors") {
  CMatrix d(2, 2);
  d << Complex(2, 0), 0, 0, Complex(0, -3);
  CHECK(op_norm(d) == Catch::Approx(3.0).margin(1e-12));

  CMatrix j(2, 2);
  j << 0, 1, 0, 0;
  CHECK(op_norm(j) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("op_norm sampling oracle") {
  // dim 2: best-of-10^4 random unit vectors gets within 0.1% of the sup
  const CMatrix t = generate(Family::ginibre, 2, 23, 0);
  const double nrm = op_norm(t);
  CounterRng rng(23, 999, 0);
  double best = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const CVector x = detail::random_unit_vector(rng, 2);
    best = std::max(best, CVector(t * x).norm());
  }
  REQUIRE(best <= nrm * (1.0 + 1e-12));
  REQUIRE(nrm <= best * (1.0 + 1e-3));

  // the exact side holds at every dimension
  for (int n = 3; n <= 6; ++n) {
    const CMatrix s = generate(Family::ginibre, n, 23, std::uint64_t(n));
    const double ns = op_norm(s);
    for (int i = 0; i < 200; ++i) {
      const CVector x = detail::random_unit_vector(rng, n);
      REQUIRE(CVector(s * x).norm() <= ns * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("loewner order basics") {
  CMatrix a(2, 2), b(2, 2);
  a << 1, 0, 0, 1;
  b << 2, 0, 0, 3;
  CHECK(loewner_leq(Hermitian(a), Hermitian(b), 1e-12));

  CMatrix c(2, 2), d(2, 2);
  c << 2, 0, 0, 0;
  d << 0, 0, 0, 2;
  CHECK_FALSE(loewner_leq(Hermitian(c), Hermitian(d), 1e-9));

  CMatrix e(3, 3);
  e.setIdentity();
  CHECK_THROWS_AS(loewner_leq(Hermitian(a), Hermitian(e), 1e-9), DimensionMismatch);

  // construction-forced: P <= P + eps I
  const Hermitian p((generate(Family::psd, 3, 29, 0)));
  const Hermitian q(CMatrix(p.mat() + 1e-3 * CMatrix::Identity(3, 3)));
  CHECK(loewner_leq(p, q, 1e-12));
}

TEST_CASE("loewner order is reflexive and transitive on sampled triples") {
  for (std::uint64_t idx = 0; idx < 5; ++idx) {
    const Hermitian a((generate(Family::psd, 3, 31, 3 * idx)));
    CHECK(loewner_leq(a, a, 1e-12));
    const Hermitian b(CMatrix(a.mat() + generate(Family::psd, 3, 31, 3 * idx + 1)));
    const Hermitian c(CMatrix(b.mat() + generate(Family::psd, 3, 31, 3 * idx + 2)));
    REQUIRE(loewner_leq(a, b, 1e-10));
    REQUIRE(loewner_leq(b, c, 1e-10));
    REQUIRE(loewner_leq(a, c, 1e-9));
  }
}

TEST_CASE("singular-value identity || |T| || = ||T|| = || |T*| ||") {
  for (int n = 2; n <= 8; ++n) {
    const CMatrix t = generate(Family::ginibre, n, 37, std::uint64_t(n));
    const double nrm = op_norm(t);
    const double na = hermitian_op_norm(abs_value(t));
    const double nb = hermitian_op_norm(abs_value(CMatrix(t.adjoint())));
    REQUIRE(std::abs(na - nrm) <= 1e-10 * std::max(1.0, nrm));
    REQUIRE(std::abs(nb - nrm) <= 1e-10 * std::max(1.0, nrm));
  }
}

TEST_CASE("eigenvalues of |T|^2 equal squared singular values") {
  const CMatrix t = generate(Family::ginibre, 5, 41, 0);
  const Hermitian at = abs_value(t);
  const HermEig sq = herm_eig(Hermitian(CMatrix(at.mat() * at.mat())));
  const HermEig gram = herm_eig(Hermitian(CMatrix(t.adjoint() * t)));
  for (int i = 0; i < 5; ++i)
    REQUIRE(std::abs(sq.values(i) - gram.values(i)) <=
            1e-9 * std::max(1.0, gram.values(0)));
}

TEST_CASE("dimension cap is enforced") {
  const CMatrix big = CMatrix::Identity(kMaxDim + 1, kMaxDim + 1);
  CHECK_THROWS_AS(op_norm(big), UnsupportedDim);
  CMatrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(validate_operand(rect), DimensionMismatch);
  CMatrix nan2 = CMatrix::Zero(2, 2);
  nan2(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(validate_operand(nan2), DomainError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spdmeans/linalg.hpp"
#include "test_support.hpp"

using namespace spdmeans;
using namespace spdmeans::test;

TEST_CASE("eigendecomposition of diagonal and identity input") {
  const EigenDecomposition d = eig_hermitian(HermitianMatrix(diag2(2.0, 1.0)));
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(d.eigenvalues(1) == doctest::Approx(2.0));

  const EigenDecomposition id3 = eig_hermitian(HermitianMatrix::Identity(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(id3.eigenvalues(i) == doctest::Approx(1.0));
  }
  CHECK((id3.eigenvectors.adjoint() * id3.eigenvectors - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("eigendecomposition of a hand-solved 2x2") {
  // characteristic polynomial of [[2,1],[1,2]]: (2-l)^2 = 1, so l = 1, 3
  // with eigenvectors (1,-1)/sqrt(2) and (1,1)/sqrt(2)
  const HermitianMatrix a(real2(2, 1, 1, 2));
  const EigenDecomposition d = eig_hermitian(a);
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-12));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix v0(2, 1), v1(2, 1);
  v0 << inv_sqrt2, -inv_sqrt2;
  v1 << inv_sqrt2, inv_sqrt2;
  CHECK(std::abs((d.eigenvectors.col(0).adjoint() * v0)(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs((d.eigenvectors.col(1).adjoint() * v1)(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("eigendecomposition invariants on random input") {
  for (Index dim : {2, 4, 6}) {
    const SpdMatrix a = random_spd(dim, 1000.0, 17 + static_cast<std::uint64_t>(dim));
    const EigenDecomposition d = eig_hermitian(a.hermitian());
    CHECK((d.reconstruct() - a.entries()).norm() <= 1e-12 * (1.0 + a.frobenius_norm()));
    CHECK((d.eigenvectors.adjoint() * d.eigenvectors - Matrix::Identity(dim, dim)).norm() <=
          1e-12 * dim);
    for (Index i = 0; i + 1 < dim; ++i) {
      CHECK(d.eigenvalues(i) <= d.eigenvalues(i + 1));
    }
  }
}

TEST_CASE("spectral power on frozen values") {
  CHECK(rel_err(spectral_power(SpdMatrix(diag2(4.0, 9.0)), 0.5).entries(), diag2(2.0, 3.0)) <
        1e-14);
  const SpdMatrix a(real2(2, 1, 1, 2));
  CHECK((spectral_power(a, 0.0).entries() - Matrix::Identity(2, 2)).norm() == 0.0);
  // direct multiply oracle for the square
  const Matrix square = a.entries() * a.entries();
  CHECK(rel_err(spectral_power(a, 2.0).entries(), square) < 1e-14);
  CHECK(rel_err(square, real2(5, 4, 4, 5)) < 1e-15);
}

TEST_CASE("spectral power composition and identity") {
  const SpdMatrix a = random_spd(4, 100.0, 99);
  CHECK((spectral_power(a, 1.0).entries() - a.entries()).norm() == 0.0);
  for (double p : {-1.5, 0.5, 2.0}) {
    for (double q : {-0.5, 2.0}) {
      CHECK(rel_err(spectral_power(spectral_power(a, p), q).entries(),
                    spectral_power(a, p * q).entries()) < 1e-11);
    }
  }
}

TEST_CASE("log and exp invert each other") {
  CHECK(rel_err(spectral_log(SpdMatrix(diag2(1.0, std::exp(1.0)))).entries(), diag2(0.0, 1.0)) <
        1e-14);
  CHECK((spectral_exp(HermitianMatrix::Zero(3)).entries() - Matrix::Identity(3, 3)).norm() <
        1e-15);

  const SpdMatrix a(real2(2, 1, 1, 2));
  CHECK(rel_err(spectral_exp(spectral_log(a)).entries(), a.entries()) < 1e-12);
  // via the eigendecomposition oracle: log eigenvalues are log(1), log(3)
  const EigenDecomposition d = eig_hermitian(spectral_log(a));
  CHECK(d.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(d.eigenvalues(1) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("loewner comparisons") {
  const HermitianMatrix id = HermitianMatrix::Identity(2);
  const HermitianMatrix twice(2.0 * Matrix::Identity(2, 2));
  CHECK(loewner_compare(id, twice) == OrderRelation::Leq);
  CHECK(loewner_compare(twice, id) == OrderRelation::Geq);
  CHECK(loewner_compare(id, id) == OrderRelation::Equal);
  CHECK(loewner_compare(HermitianMatrix(diag2(2, 0)), HermitianMatrix(diag2(0, 2))) ==
        OrderRelation::Incomparable);
  CHECK(order_is_leq(OrderRelation::Equal));
  CHECK(order_is_geq(OrderRelation::Equal));
  CHECK_THROWS_AS(loewner_compare(id, HermitianMatrix::Identity(3)), DimensionMismatch);
}

TEST_CASE("frechet derivative: scalar and identity base") {
  // scalar: d(s^t)/ds at s=4, t=1/2 is 0.25
  Matrix a(1, 1), k(1, 1);
  a(0, 0) = 4.0;
  k(0, 0) = 1.0;
  CHECK(frechet_power_derivative(SpdMatrix(a), 0.5, HermitianMatrix(k)).entries()(0, 0).real() ==
        doctest::Approx(0.25).epsilon(1e-14));

  // at the identity every direction is scaled by p
  const HermitianMatrix dir = random_hermitian(3, 5);
  for (double p : {-1.0, 0.3, 2.0}) {
    CHECK(rel_err(frechet_power_derivative(SpdMatrix::Identity(3), p, dir).entries(),
                  p * dir.entries()) < 1e-13);
  }
}

TEST_CASE("frechet derivative matches central finite differences") {
  for (Index dim : {2, 3, 6}) {
    const SpdMatrix a = random_spd(dim, 1000.0, 31 * static_cast<std::uint64_t>(dim));
    const HermitianMatrix k = random_hermitian(dim, 7 * static_cast<std::uint64_t>(dim) + 1);
    for (double p : {-0.7, 0.5, 1.9}) {
      const double h = 1e-5;
      const Matrix fd = (spectral_power_matrix(SpdMatrix(a.entries() + h * k.entries()), p) -
                         spectral_power_matrix(SpdMatrix(a.entries() - h * k.entries()), p)) /
                        (2.0 * h);
      CHECK(rel_err(frechet_power_derivative(a, p, k).entries(), fd) < 1e-6);
    }
  }
}

TEST_CASE("frechet derivative handles eigenvalue ties") {
  // doubly degenerate spectrum exercises the derivative limit branch
  Matrix a = diag2(2.0, 2.0);
  const HermitianMatrix k = random_hermitian(2, 12);
  const Matrix got = frechet_power_derivative(SpdMatrix(a), 0.5, k).entries();
  // at A = 2I the derivative is p * 2^{p-1} * K
  CHECK(rel_err(got, 0.5 * std::pow(2.0, -0.5) * k.entries()) < 1e-13);
}

TEST_CASE("random spd: determinism, conditioning, trivial cases") {
  CHECK((random_spd(1, 1.0, 123).entries() - Matrix::Identity(1, 1)).norm() == 0.0);

  const SpdMatrix a = random_spd(4, 100.0, 42);
  const SpdMatrix b = random_spd(4, 100.0, 42);
  CHECK((a.entries() - b.entries()).norm() == 0.0);
  CHECK((a.entries() - random_spd(4, 100.0, 43).entries()).norm() > 1e-8);

  CHECK(a.lambda_max() / a.lambda_min() <= 100.0 * (1.0 + 1e-10));
  CHECK(a.lambda_min() > 0.0);
}

TEST_CASE("random spd rejects invalid parameters") {
  CHECK_THROWS_AS(random_spd(0, 10.0, 1), InvalidParameter);
  CHECK_THROWS_AS(random_spd(3, 0.5, 1), InvalidParameter);
}

TEST_CASE("haar unitary is unitary and deterministic") {
  const Matrix u = haar_unitary(5, 77);
  CHECK((u.adjoint() * u - Matrix::Identity(5, 5)).norm() < 1e-13);
  CHECK((u - haar_unitary(5, 77)).norm() == 0.0);
}

TEST_CASE("spd construction rejects indefinite and near-singular input") {
  CHECK_THROWS_AS(SpdMatrix(diag2(1.0, -1.0)), InvalidParameter);
  CHECK_THROWS_AS(SpdMatrix(diag2(1.0, 1e-13)), InvalidParameter);
  CHECK_THROWS_AS(HermitianMatrix(Matrix::Zero(2, 3)), InvalidParameter);
}

TEST_CASE("hermitian construction symmetrizes") {
  Matrix raw(2, 2);
  raw << Complex(1, 0), Complex(2, 1), Complex(2, -1.000001), Complex(3, 0);
  const HermitianMatrix h(raw);
  CHECK((h.entries() - h.entries().adjoint()).norm() == 0.0);
}

TEST_CASE("loewner transitivity with tolerance doubling") {
  const SpdMatrix a = random_spd(3, 50.0, 2024);
  const Matrix p = random_hermitian(3, 1).entries();
  const Matrix q = random_hermitian(3, 2).entries();
  const HermitianMatrix b(a.entries() + p * p.adjoint());
  const HermitianMatrix c(b.entries() + q * q.adjoint());
  REQUIRE(order_is_leq(loewner_compare(a.hermitian(), b)));
  REQUIRE(order_is_leq(loewner_compare(b, c)));
  CHECK(order_is_leq(loewner_compare(a.hermitian(), c, 2.0 * kDefaultOrderTol)));
}

TEST_CASE("kron dimensions and values") {
  const Matrix k = kron(diag2(1.0, 2.0), Matrix::Identity(3, 3));
  CHECK(k.rows() == 6);
  CHECK(k(0, 0) == Complex(1.0, 0.0));
  CHECK(k(5, 5) == Complex(2.0, 0.0));
}

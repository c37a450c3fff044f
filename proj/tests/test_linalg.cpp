// test_linalg.cpp — Jacobi eigensolver and matrix exponential

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "resonet/linalg.hpp"
#include "support.hpp"

using namespace resonet;

TEST_CASE("jacobi eigenpairs reconstruct a random symmetric matrix")
{
    for (int trial = 0; trial < 20; ++trial) {
        const int n = test::uniform_int(1, 12);
        RealMatrix a(n, n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k <= i; ++k) a(i, k) = a(k, i) = test::uniform(-3.0, 3.0);
        }
        const auto eig = linalg::jacobi_eigen(a);
        const RealMatrix rebuilt = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
        CHECK(linalg::max_abs(RealMatrix(rebuilt - a)) < 1e-12);
        CHECK(linalg::max_abs(RealMatrix(eig.vectors.transpose() * eig.vectors - RealMatrix::Identity(n, n))) < 1e-12);
        CHECK(eig.sweeps <= 100);
    }
}

TEST_CASE("expm agrees with an independent Pade implementation")
{
    for (int trial = 0; trial < 20; ++trial) {
        const int n = test::uniform_int(1, 8);
        const double scale = test::uniform(0.01, 20.0);
        ComplexMatrix a(n, n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) a(i, k) = test::random_complex(scale / n);
        }
        const ComplexMatrix ours = linalg::expm(a);
        const ComplexMatrix reference = a.exp();
        CHECK(linalg::max_abs(ComplexMatrix(ours - reference)) <= 1e-10 * std::max(1.0, linalg::max_abs(reference)));
    }
}

TEST_CASE("expm of zero and of a diagonal matrix")
{
    CHECK(linalg::max_abs(ComplexMatrix(linalg::expm(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3))) == 0.0);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = {-0.5, -3.0};
    d(1, 1) = {0.2, 7.0};
    const ComplexMatrix e = linalg::expm(d);
    CHECK(std::abs(e(0, 0) - std::exp(d(0, 0))) < 1e-13);
    CHECK(std::abs(e(1, 1) - std::exp(d(1, 1))) < 1e-12);
    CHECK(std::abs(e(0, 1)) == 0.0);
}

TEST_CASE("expm_minus_identity keeps relative accuracy for tiny arguments")
{
    ComplexMatrix a(2, 2);
    a << cplx{0.0, -1e-7}, cplx{0.0, -2e-8}, cplx{0.0, -2e-8}, cplx{-3e-9, -1e-7};
    const ComplexMatrix e = linalg::expm_minus_identity(a);
    // second-order series is exact to ~1e-21 here
    const ComplexMatrix series = a + 0.5 * a * a + (a * a * a) / 6.0;
    CHECK(linalg::max_abs(ComplexMatrix(e - series)) < 1e-28);
}

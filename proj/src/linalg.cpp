// linalg.cpp — Jacobi eigensolver and matrix exponential

#include "resonet/linalg.hpp"

#include <cmath>

#include "resonet/errors.hpp"

namespace resonet::linalg {

namespace {

constexpr int kTaylorDegree = 16;
constexpr double kScaledNorm = 0.5;

double off_diagonal_norm(const RealMatrix& a)
{
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

int scaling_power(const ComplexMatrix& a)
{
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm > kScaledNorm) {
        s = static_cast<int>(std::ceil(std::log2(norm / kScaledNorm)));
    }
    return s;
}

// sum_{k=1}^{degree} A^k / k!
ComplexMatrix taylor_tail(const ComplexMatrix& a)
{
    ComplexMatrix term = a;
    ComplexMatrix sum = a;
    for (int k = 2; k <= kTaylorDegree; ++k) {
        term = (term * a) / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

} // namespace

SymmetricEigen jacobi_eigen(const RealMatrix& input, int max_sweeps)
{
    if (input.rows() != input.cols()) {
        throw std::invalid_argument("jacobi_eigen: matrix must be square");
    }
    const Eigen::Index n = input.rows();
    RealMatrix a = 0.5 * (input + input.transpose());
    RealMatrix v = RealMatrix::Identity(n, n);
    const double scale = a.norm();
    const double threshold = 1e-13 * scale;

    SymmetricEigen result;
    if (n <= 1 || scale == 0.0) {
        result.values = a.diagonal();
        result.vectors = v;
        return result;
    }

    int sweep = 0;
    while (off_diagonal_norm(a) >= threshold) {
        if (sweep >= max_sweeps) {
            throw NumericalError("jacobi_eigen: no convergence after " +
                                 std::to_string(max_sweeps) + " sweeps");
        }
        ++sweep;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    result.values = a.diagonal();
    result.vectors = v;
    result.sweeps = sweep;
    return result;
}

ComplexMatrix expm(const ComplexMatrix& a)
{
    ComplexMatrix e = expm_minus_identity(a);
    e.diagonal().array() += 1.0;
    return e;
}

ComplexMatrix expm_minus_identity(const ComplexMatrix& a)
{
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("expm: matrix must be square");
    }
    const int s = scaling_power(a);
    ComplexMatrix e = taylor_tail(a / std::ldexp(1.0, s));
    for (int k = 0; k < s; ++k) {
        e = e * e + 2.0 * e;
    }
    return e;
}

double max_abs(const RealMatrix& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

} // namespace resonet::linalg

// netcore.cpp — Network validation, normal modes and drift assembly

#include "resonet/netcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "resonet/errors.hpp"

namespace resonet {

namespace {

constexpr double kClusterTolerance = 1e-9;
constexpr double kNegligible = 1e-12;

void fix_sign(Eigen::Ref<RealVector> v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > kNegligible) {
            if (v(i) < 0.0) v = -v;
            return;
        }
    }
}

// Canonical orthonormal basis of span(block) seeded by e_1, e_2, ...
RealMatrix canonical_cluster_basis(const RealMatrix& block)
{
    const Eigen::Index n = block.rows();
    const Eigen::Index k = block.cols();
    const RealMatrix projector = block * block.transpose();
    std::vector<RealVector> basis;
    for (Eigen::Index i = 0; i < n && static_cast<Eigen::Index>(basis.size()) < k; ++i) {
        RealVector v = projector.col(i);
        for (const auto& b : basis) v -= b.dot(v) * b;
        for (const auto& b : basis) v -= b.dot(v) * b;
        const double norm = v.norm();
        if (norm < 1e-8) continue;
        basis.push_back(v / norm);
    }
    if (static_cast<Eigen::Index>(basis.size()) != k) {
        throw NumericalError("normal_modes: degenerate cluster lost rank during orthonormalization");
    }
    for (auto& b : basis) fix_sign(b);
    std::sort(basis.begin(), basis.end(), [](const RealVector& a, const RealVector& b) {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    RealMatrix out(n, k);
    for (Eigen::Index j = 0; j < k; ++j) out.col(j) = basis[static_cast<std::size_t>(j)];
    return out;
}

} // namespace

RealMatrix NetworkSpec::coupling_matrix() const
{
    RealMatrix w = lambda;
    w.diagonal() = omega;
    return w;
}

NetworkSpec degenerate_network(std::size_t n, double omega0, double lambda0)
{
    const auto dim = static_cast<Eigen::Index>(n);
    NetworkSpec spec;
    spec.omega = RealVector::Constant(dim, omega0);
    spec.lambda = RealMatrix::Constant(dim, dim, lambda0);
    spec.lambda.diagonal().setZero();
    return spec;
}

bool NormalModeDecomposition::is_symmetric(double tol) const
{
    return linalg::max_abs(RealMatrix(C - C.transpose())) <= tol;
}

const NetworkSpec& validate_network(const NetworkSpec& spec)
{
    const Eigen::Index n = spec.omega.size();
    if (n == 0) throw ConfigError("network must contain at least one resonator");
    if (spec.lambda.rows() != n || spec.lambda.cols() != n) {
        throw ConfigError("coupling matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (Eigen::Index m = 0; m < n; ++m) {
        if (!(spec.omega(m) > 0.0) || !std::isfinite(spec.omega(m))) {
            throw ConfigError("nonpositive frequency at resonator " + std::to_string(m + 1));
        }
        if (spec.lambda(m, m) != 0.0) {
            throw ConfigError("nonzero coupling diagonal at resonator " + std::to_string(m + 1));
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            if (!std::isfinite(spec.lambda(m, k))) throw ConfigError("non-finite coupling");
            if (spec.lambda(m, k) != spec.lambda(k, m)) {
                throw ConfigError("asymmetric coupling between resonators " + std::to_string(m + 1) +
                                  " and " + std::to_string(k + 1));
            }
        }
    }
    return spec;
}

NormalModeDecomposition normal_modes(const NetworkSpec& spec)
{
    validate_network(spec);
    const RealMatrix w = spec.coupling_matrix();
    const Eigen::Index n = w.rows();
    const auto eig = linalg::jacobi_eigen(w);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return eig.values(a) < eig.values(b);
    });

    NormalModeDecomposition out;
    out.Omega.resize(n);
    out.C.resize(n, n);
    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());

    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && eig.values(order[static_cast<std::size_t>(end)]) -
                                  eig.values(order[static_cast<std::size_t>(end - 1)]) <=
                              kClusterTolerance * scale) {
            ++end;
        }
        RealMatrix block(n, end - start);
        for (Eigen::Index j = start; j < end; ++j) {
            block.col(j - start) = eig.vectors.col(order[static_cast<std::size_t>(j)]);
            out.Omega(j) = eig.values(order[static_cast<std::size_t>(j)]);
        }
        RealMatrix basis;
        if (end - start == 1) {
            basis = block;
            fix_sign(basis.col(0));
        } else {
            basis = canonical_cluster_basis(block);
        }
        for (Eigen::Index j = start; j < end; ++j) out.C.row(j) = basis.col(j - start).transpose();
        start = end;
    }
    return out;
}

std::pair<double, double> degenerate_modes(std::size_t n, double omega0, double lambda0)
{
    if (n < 2) throw ConfigError("degenerate_modes requires at least two resonators");
    return {omega0 + static_cast<double>(n - 1) * lambda0, omega0 - lambda0};
}

DriftMatrix drift_matrix(const NetworkSpec& spec, const RealMatrix& gamma)
{
    const Eigen::Index n = spec.omega.size();
    if (gamma.rows() != n || gamma.cols() != n) {
        throw ConfigError("decay matrix dimension does not match network size");
    }
    const std::complex<double> i{0.0, 1.0};
    DriftMatrix out;
    out.D = -i * spec.coupling_matrix().cast<std::complex<double>>() -
            0.5 * gamma.cast<std::complex<double>>();
    return out;
}

} // namespace resonet

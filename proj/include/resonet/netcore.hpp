// netcore.hpp — Resonator network Hamiltonian, normal modes and drift matrix

#pragma once

#include <cstddef>
#include <utility>

#include "resonet/linalg.hpp"

namespace resonet {

using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::RealMatrix;
using linalg::RealVector;

// N resonators with natural frequencies omega and RWA hopping lambda.
struct NetworkSpec {
    RealVector omega;   // length n, > 0
    RealMatrix lambda;  // n x n, symmetric, zero diagonal

    std::size_t size() const { return static_cast<std::size_t>(omega.size()); }

    // W_mm = omega_m, W_mn = lambda_mn. H_S = sum_mn W_mn a_m^dag a_n.
    RealMatrix coupling_matrix() const;
};

// All-to-all degenerate network: omega_m = omega0, lambda_mn = lambda0.
NetworkSpec degenerate_network(std::size_t n, double omega0, double lambda0);

struct NormalModeDecomposition {
    RealMatrix C;       // rows are normal-mode coefficients, A_m = sum_n C_mn a_n
    RealVector Omega;   // ascending

    // C = C^T holds for symmetric topologies only; reported, not required.
    bool is_symmetric(double tol = 1e-10) const;
};

struct DriftMatrix {
    ComplexMatrix D;  // -iW - gamma/2

    std::size_t size() const { return static_cast<std::size_t>(D.rows()); }
};

// Throws ConfigError on n = 0, nonpositive frequency, nonzero diagonal
// coupling or asymmetric coupling.
const NetworkSpec& validate_network(const NetworkSpec& spec);

// Ascending Omega; inside each degenerate cluster (relative tolerance 1e-9)
// the eigenvectors are rebuilt by Gram-Schmidt on the projected canonical
// basis e_1, e_2, ..., then ordered lexicographically (descending).
// Every row has its first non-negligible entry positive.
NormalModeDecomposition normal_modes(const NetworkSpec& spec);

// (omega + (n-1) lambda, omega - lambda) for the all-to-all degenerate network.
std::pair<double, double> degenerate_modes(std::size_t n, double omega0, double lambda0);

DriftMatrix drift_matrix(const NetworkSpec& spec, const RealMatrix& gamma);

} // namespace resonet

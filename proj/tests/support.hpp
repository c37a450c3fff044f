// support.hpp — Shared helpers for the unit tests

#pragma once

#include <random>

#include "resonet/netcore.hpp"
#include "resonet/states.hpp"

namespace resonet::test {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20061016);
    return gen;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline NetworkSpec random_network(std::size_t n)
{
    NetworkSpec spec;
    spec.omega.resize(static_cast<Eigen::Index>(n));
    spec.lambda = RealMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index m = 0; m < spec.omega.size(); ++m) {
        spec.omega(m) = uniform(0.5, 5.0);
        for (Eigen::Index k = 0; k < m; ++k) {
            spec.lambda(m, k) = spec.lambda(k, m) = uniform(-0.5, 0.5);
        }
    }
    return spec;
}

inline cplx random_complex(double scale)
{
    return {uniform(-scale, scale), uniform(-scale, scale)};
}

} // namespace resonet::test

// test_evolve.cpp — Analytic propagation, observables and decoherence times

#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "resonet/errors.hpp"
#include "resonet/evolve.hpp"
#include "resonet/reservoir.hpp"
#include "support.hpp"

using namespace resonet;

namespace {

EvolutionParams degenerate(std::size_t n, double Gamma, double eps, double omega, double lambda,
                           std::vector<double> grid)
{
    if (n == 1) return {n, Gamma, eps, omega, omega, std::move(grid)};
    const auto [plus, minus] = degenerate_modes(n, omega, lambda);
    return {n, Gamma, eps, plus, minus, std::move(grid)};
}

// Reference drift built by hand, independent of netcore/reservoir.
ComplexMatrix reference_drift(std::size_t n, double omega, double lambda, double Gamma, double eps)
{
    const auto N = static_cast<Eigen::Index>(n);
    ComplexMatrix d(N, N);
    for (Eigen::Index m = 0; m < N; ++m)
        for (Eigen::Index k = 0; k < N; ++k)
            d(m, k) = m == k ? cplx{-Gamma / 2.0, -omega} : cplx{-eps * Gamma / 2.0, -lambda};
    return d;
}

} // namespace

TEST_CASE("effective_rates")
{
    auto r = effective_rates(4, 2.0, 1.0);
    CHECK(r.gamma_down == 0.0);
    CHECK(r.gamma_up == doctest::Approx(8.0));
    r = effective_rates(3, 0.7, 0.0);
    CHECK(r.gamma_down == doctest::Approx(0.7));
    CHECK(r.gamma_up == doctest::Approx(0.7));
    r = effective_rates(3, 1.0, 0.5);
    CHECK(r.gamma_down == doctest::Approx(0.5));
    CHECK(r.gamma_up == doctest::Approx(2.0));
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(test::uniform_int(1, 16));
        const double Gamma = test::uniform(0.0, 5.0), eps = test::uniform(0.0, 1.0);
        const auto s = effective_rates(n, Gamma, eps);
        CHECK(std::abs(s.gamma_up + (static_cast<double>(n) - 1.0) * s.gamma_down - static_cast<double>(n) * Gamma)
              < 1e-12);
    }
}

TEST_CASE("uniform_grid and parameter validation")
{
    const auto grid = uniform_grid(2.0, 4);
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 2.0);
    CHECK(grid[2] == doctest::Approx(1.0));
    CHECK_THROWS_AS(validate_params({2, 1.0, 1.2, 1.0, 1.0, {0.0}}), ConfigError);
    CHECK_THROWS_AS(validate_params({2, -1.0, 0.5, 1.0, 1.0, {0.0}}), ConfigError);
    CHECK_THROWS_AS(validate_params({2, 1.0, 0.5, 1.0, 1.0, {}}), ConfigError);
    CHECK_THROWS_AS(validate_params({2, 1.0, 0.5, 1.0, 1.0, {0.1, 0.2}}), ConfigError);
    CHECK_THROWS_AS(validate_params({2, 1.0, 0.5, 1.0, 1.0, {0.0, 0.2, 0.2}}), ConfigError);
}

TEST_CASE("theta_closed_form")
{
    const auto p = degenerate(3, 0.4, 0.6, 2.0, 0.3, {0.0});
    CHECK(linalg::max_abs(ComplexMatrix(theta_closed_form(p, 0.0) - ComplexMatrix::Identity(3, 3))) < 1e-15);

    const auto closed = degenerate(4, 0.0, 0.3, 2.0, 0.3, {0.0});
    for (double t : {0.3, 1.7, 25.0, 400.0}) {
        const ComplexMatrix th = theta_closed_form(closed, t);
        CHECK(linalg::max_abs(ComplexMatrix(th.adjoint() * th - ComplexMatrix::Identity(4, 4))) < 1e-12);
    }

    // N=2, eps=1, Gamma=1, Omega = (1.1, 0.9): omega = 1, lambda = 0.1
    EvolutionParams p2{2, 1.0, 1.0, 1.1, 0.9, {0.0}};
    const ComplexMatrix ref = reference_drift(2, 1.0, 0.1, 1.0, 1.0).exp();
    CHECK(linalg::max_abs(ComplexMatrix(theta_closed_form(p2, 1.0) - ref)) < 1e-9);
}

TEST_CASE("theta_general")
{
    const DriftMatrix single{ComplexMatrix::Constant(1, 1, cplx{-0.15, -2.0})};
    CHECK(std::abs(theta_general(single, 3.0)(0, 0) - std::exp(cplx{-0.45, -6.0})) < 1e-14);
    CHECK(linalg::max_abs(ComplexMatrix(theta_general(single, 0.0) - ComplexMatrix::Identity(1, 1))) == 0.0);
    CHECK_THROWS_AS(theta_general(single, -1.0), ConfigError);
}

TEST_CASE("closed form equals matrix exponential on degenerate networks")
{
    for (std::size_t n = 1; n <= 8; ++n) {
        const double Gamma = 0.5, eps = test::uniform(0.0, 1.0), omega = test::uniform(0.5, 3.0);
        const double lambda = n == 1 ? 0.0 : test::uniform(0.0, 0.5);
        const auto p = degenerate(n, Gamma, eps, omega, lambda, {0.0});
        const ComplexMatrix ref = reference_drift(n, omega, lambda, Gamma, eps);
        const auto drift = degenerate_drift(p);
        CHECK(linalg::max_abs(ComplexMatrix(drift.D - ref)) < 1e-12);
        for (int k = 0; k <= 20; ++k) {
            const double t = k * 0.5 / Gamma;
            const ComplexMatrix closed = theta_closed_form(p, t);
            CHECK(linalg::max_abs(ComplexMatrix(closed - theta_general(drift, t))) < 1e-9);
            CHECK(linalg::max_abs(ComplexMatrix(closed - ComplexMatrix(ref * t).exp())) < 1e-9);
        }
    }
}

TEST_CASE("single damped mode")
{
    const cplx alpha{1.1, -0.4};
    const double Gamma = 0.3;
    auto p = degenerate(1, Gamma, 0.0, 2.0, 0.0, uniform_grid(5.0, 10));
    p.Omega_plus = p.Omega_minus = 2.0;
    const auto traj = propagate(make_superposition({{1.0, {ComplexVector::Constant(1, alpha)}}}), p);
    for (const auto& pt : traj.points) {
        const double expected = std::norm(alpha) * std::exp(-Gamma * pt.time);
        CHECK(pt.obs.occupation[0] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(pt.obs.purity == doctest::Approx(1.0).epsilon(1e-12));
        const cplx zeta = alpha * std::exp(cplx{-Gamma / 2.0, -2.0} * pt.time);
        CHECK(std::abs(pt.zeta[0].beta(0) - zeta) < 1e-13);
        // fidelity of coherent states: |<alpha|zeta>|^2 = exp(-|alpha - zeta|^2)
        CHECK(pt.obs.fidelity == doctest::Approx(std::exp(-std::norm(alpha - zeta))).epsilon(1e-12));
    }
}

TEST_CASE("single-mode cat: purity and coherence from the analytic decay factor")
{
    const double a = 0.9, Gamma = 1.0;
    auto p = degenerate(1, Gamma, 0.0, 3.0, 0.0, uniform_grid(2.0, 8));
    p.Omega_plus = p.Omega_minus = 3.0;
    const auto state = make_rs_state({1, 1, 0, {a, 0.0}, {}, BranchSign::Plus});
    const auto traj = propagate(state, p);
    for (const auto& pt : traj.points) {
        const double x = a * std::exp(-Gamma * pt.time / 2.0);
        const double norm2 = 1.0 / (2.0 + 2.0 * std::exp(-2.0 * a * a));
        const double dfac = std::exp(-2.0 * a * a * (1.0 - std::exp(-Gamma * pt.time)));
        // rho = N^2 (|x><x| + |-x><-x| + D(|x><-x| + h.c.)), same decay law as |c_12|
        CHECK(std::abs(pt.coefficients(0, 1)) == doctest::Approx(norm2 * dfac).epsilon(1e-12));
        const double ov = std::exp(-2.0 * x * x);
        // tr rho^2 for the two-dimensional Gram algebra
        const double purity = norm2 * norm2 * (2.0 + 2.0 * ov * ov + 4.0 * dfac * ov + 2.0 * dfac * dfac
                                                + 2.0 * dfac * dfac * ov * ov + 4.0 * dfac * ov);
        CHECK(pt.obs.purity == doctest::Approx(purity).epsilon(1e-11));
        CHECK(pt.obs.trace == doctest::Approx(1.0).epsilon(1e-12));
        // occupation of the damped cat
        const double occ = norm2 * 2.0 * x * x * (1.0 - dfac * ov);
        CHECK(pt.obs.occupation[0] == doctest::Approx(occ).epsilon(1e-11));
    }
}

TEST_CASE("relaxation-free state evolves as if the reservoir were absent")
{
    const std::size_t n = 4;
    const auto state = make_rs_state({n, 2, 2, {0.7, 0.2}, {}, BranchSign::Minus});
    const auto grid = uniform_grid(10.0, 25);
    const auto damped = propagate(state, degenerate(n, 1.0, 1.0, 2.0, 0.2, grid));
    auto free_params = degenerate(n, 0.0, 1.0, 2.0, 0.2, grid);
    const auto free = propagate(state, free_params);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto& a = damped.points[k];
        const auto& b = free.points[k];
        for (std::size_t r = 0; r < a.zeta.size(); ++r) {
            CHECK((a.zeta[r].beta - b.zeta[r].beta).cwiseAbs().maxCoeff() < 1e-9);
            const ComplexVector expected = state.terms[r].label.beta * std::exp(cplx{0.0, -free_params.Omega_minus * grid[k]});
            CHECK((a.zeta[r].beta - expected).cwiseAbs().maxCoeff() < 1e-9);
        }
        CHECK(linalg::max_abs(ComplexMatrix(a.coefficients - b.coefficients)) < 1e-9);
        CHECK(a.obs.purity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(a.obs.total_occupation == doctest::Approx(damped.points[0].obs.total_occupation).epsilon(1e-9));
    }
}

TEST_CASE("uniform product state decays at the enhanced rate")
{
    const std::size_t n = 3;
    const double Gamma = 0.5;
    const cplx eta{0.4, 0.3};
    const auto p = degenerate(n, Gamma, 1.0, 2.0, 0.1, uniform_grid(4.0, 8));
    const auto traj = propagate(make_rs_state({n, 0, 0, {}, eta, BranchSign::Plus}), p);
    for (const auto& pt : traj.points) {
        const cplx expected = eta * std::exp(cplx{-static_cast<double>(n) * Gamma / 2.0, -p.Omega_plus} * pt.time);
        for (Eigen::Index m = 0; m < 3; ++m) CHECK(std::abs(pt.zeta[0].beta(m) - expected) < 1e-12);
    }
}

TEST_CASE("trace invariant over random states and drifts")
{
    for (int trial = 0; trial < 30; ++trial) {
        const int n = test::uniform_int(1, 4), terms = test::uniform_int(1, 4);
        std::vector<SuperpositionTerm> list;
        for (int r = 0; r < terms; ++r) {
            CoherentLabel l;
            l.beta.resize(n);
            for (int m = 0; m < n; ++m) l.beta(m) = test::random_complex(1.5);
            list.push_back({test::random_complex(1.0), l});
        }
        const auto state = make_superposition(list);
        const auto spec = test::random_network(static_cast<std::size_t>(n));
        const auto gamma = decay_matrix_common(static_cast<std::size_t>(n), test::uniform(0.0, 1.0),
                                               test::uniform(0.0, 1.0));
        const auto traj = propagate(state, drift_matrix(spec, gamma.gamma), uniform_grid(5.0, 10));
        for (const auto& pt : traj.points) {
            CHECK(std::abs(pt.obs.trace - 1.0) < 1e-9);
            CHECK(pt.obs.purity <= 1.0 + 1e-9);
            CHECK(pt.obs.purity > 0.0);
            CHECK(pt.obs.fidelity <= 1.0 + 1e-9);
        }
        CHECK(traj.points.front().obs.purity == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(traj.points.front().obs.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("decoherence_time_formula")
{
    CHECK(decoherence_time_formula({1, 1, 0, {1.0, 0.0}, {}, BranchSign::Plus}, 1.0, 0.0) == doctest::Approx(0.5));
    CHECK(decoherence_time_formula({4, 2, 2, {1.0, 0.0}, {}, BranchSign::Plus}, 1.0, 1.0) == kInfinity);
    CHECK(decoherence_time_formula({4, 1, 1, {0.5, 0.0}, {}, BranchSign::Plus}, 1.0, 1.0) == kInfinity);
    CHECK(decoherence_time_formula({3, 2, 1, {1.0, 0.0}, {}, BranchSign::Plus}, 1.0, 0.5) == doctest::Approx(0.25));
    CHECK_THROWS_AS(decoherence_time_formula({3, 2, 1, {0.0, 0.0}, {}, BranchSign::Plus}, 1.0, 0.5), ConfigError);
}

TEST_CASE("decoherence time scales as one over alpha squared")
{
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<std::size_t>(test::uniform_int(1, 8));
        const auto R = static_cast<std::size_t>(test::uniform_int(1, static_cast<int>(n)));
        const auto S = static_cast<std::size_t>(test::uniform_int(0, static_cast<int>(n - R)));
        if (R == S) continue;
        const cplx alpha = test::random_complex(1.0);
        const double Gamma = test::uniform(0.1, 2.0), eps = test::uniform(0.0, 1.0);
        const double t1 = decoherence_time_formula({n, R, S, alpha, {}, BranchSign::Plus}, Gamma, eps);
        const double t2 = decoherence_time_formula({n, R, S, 2.0 * alpha, {}, BranchSign::Plus}, Gamma, eps);
        CHECK(std::abs(t1 / t2 - 4.0) < 1e-9);
    }
}

TEST_CASE("numeric decoherence time of the single-mode cat")
{
    const double a = 0.8, Gamma = 0.6;
    auto p = degenerate(1, Gamma, 0.0, 1.0, 0.0, uniform_grid(1.0, 10));
    p.Omega_plus = p.Omega_minus = 1.0;
    const auto traj = propagate(make_rs_state({1, 1, 0, {a, 0.0}, {}, BranchSign::Plus}), p);
    const double expected = 1.0 / (2.0 * a * a * Gamma);
    CHECK(decoherence_time_numeric(traj, 0, 1) == doctest::Approx(expected).epsilon(1e-5));
    CHECK(decoherence_time_pair(decay_from_drift(traj.drift), traj.initial.terms[0].label, traj.initial.terms[1].label)
          == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(decoherence_time_numeric(traj, 0, 0), ConfigError);
}

TEST_CASE("numeric decoherence time agrees with the closed formula")
{
    int checked = 0;
    while (checked < 25) {
        const auto n = static_cast<std::size_t>(test::uniform_int(1, 6));
        const auto R = static_cast<std::size_t>(test::uniform_int(0, static_cast<int>(n)));
        const auto S = static_cast<std::size_t>(test::uniform_int(0, static_cast<int>(n - R)));
        if (R + S == 0) continue;
        const cplx alpha = test::random_complex(1.2);
        const double Gamma = test::uniform(0.1, 2.0), eps = test::uniform(0.0, 1.0);
        const RSFamilySpec spec{n, R, S, alpha, test::random_complex(0.5), BranchSign::Plus};
        const double formula = decoherence_time_formula(spec, Gamma, eps);
        const auto p = degenerate(n, Gamma, eps, 2.0, 0.1, uniform_grid(1.0, 4));
        const auto traj = propagate(make_rs_state(spec), p);
        const double numeric = decoherence_time_numeric(traj, 0, 1);
        if (std::isinf(formula)) {
            CHECK(std::isinf(numeric));
        } else {
            CHECK(std::abs(numeric - formula) <= 0.01 * formula);
        }
        ++checked;
    }
}

TEST_CASE("exact DFS member has infinite numeric decoherence time")
{
    const auto p = degenerate(4, 1.0, 1.0, 2.0, 0.1, uniform_grid(1.0, 4));
    const auto traj = propagate(make_rs_state({4, 1, 1, {1.3, 0.0}, {0.4, 0.1}, BranchSign::Minus}), p);
    CHECK(std::isinf(decoherence_time_numeric(traj, 0, 1)));
}

TEST_CASE("propagation is deterministic and independent of worker count")
{
    const auto state = make_rs_state({3, 2, 1, {0.6, 0.3}, {0.2, 0.0}, BranchSign::Plus});
    const auto p = degenerate(3, 0.5, 0.4, 2.0, 0.2, uniform_grid(3.0, 30));
    setenv("RESONET_THREADS", "1", 1);
    const auto a = propagate(state, p);
    setenv("RESONET_THREADS", "4", 1);
    const auto b = propagate(state, p);
    unsetenv("RESONET_THREADS");
    for (std::size_t k = 0; k < a.points.size(); ++k) {
        CHECK(a.points[k].coefficients == b.points[k].coefficients);
        CHECK(a.points[k].obs.occupation == b.points[k].obs.occupation);
        CHECK(a.points[k].obs.purity == b.points[k].obs.purity);
    }
}

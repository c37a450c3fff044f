// evolve.hpp — Analytic dissipative evolution of coherent superpositions
//
// Under a linear drift D = -iW - gamma/2 every coherent label flows as
// zeta(t) = Theta(t) beta with Theta(t) = exp(D t), and the density operator
// stays a sum of coherent dyads
//
//     rho(t) = sum_{r,s} c_rs(t) |zeta^r(t)><zeta^s(t)|,
//     c_rs(t) = N^2 w_r conj(w_s) <beta^s|beta^r> / <zeta^s(t)|zeta^r(t)>.
//
// Observables (occupations, purity, fidelity) follow from the Gram matrix of
// the propagated labels without any Fock truncation.

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "resonet/netcore.hpp"
#include "resonet/states.hpp"

namespace resonet {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Degenerate symmetric network with a common white-noise reservoir.
struct EvolutionParams {
    std::size_t n = 1;
    double Gamma = 0.0;
    double epsilon = 0.0;
    double Omega_plus = 0.0;
    double Omega_minus = 0.0;
    std::vector<double> time_grid;  // strictly increasing, starts at 0
};

void validate_params(const EvolutionParams& params);

// Uniform grid of steps + 1 points on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t steps);

struct RateSplit {
    double gamma_down = 0.0;  // (1 - eps) Gamma, antisymmetric collective modes
    double gamma_up = 0.0;    // (1 + (n-1) eps) Gamma, symmetric collective mode
};

RateSplit effective_rates(std::size_t n, double Gamma, double epsilon);

// -iW - gamma/2 of the degenerate network described by params.
DriftMatrix degenerate_drift(const EvolutionParams& params);

ComplexMatrix theta_closed_form(const EvolutionParams& params, double t);
ComplexMatrix theta_general(const DriftMatrix& drift, double t);

struct Observables {
    std::vector<double> occupation;  // <a_m^dag a_m>
    double total_occupation = 0.0;
    double purity = 1.0;
    double fidelity = 1.0;  // <Psi(0)|rho(t)|Psi(0)>
    double trace = 1.0;
};

struct TrajectoryPoint {
    double time = 0.0;
    std::vector<CoherentLabel> zeta;
    ComplexMatrix coefficients;  // c_rs, rho = sum c_rs |zeta^r><zeta^s|
    Observables obs;
};

struct Trajectory {
    SuperpositionState initial;
    DriftMatrix drift;
    std::vector<TrajectoryPoint> points;

    std::size_t modes() const { return initial.modes(); }
    std::size_t terms() const { return initial.terms.size(); }
};

// Closed-form Theta of the degenerate network.
Trajectory propagate(const SuperpositionState& state, const EvolutionParams& params);
// Any network: Theta(t) = exp(D t).
Trajectory propagate(const SuperpositionState& state, const DriftMatrix& drift,
                     const std::vector<double>& times);

// Builds the point at time t given Theta(t). Throws NumericalError when the
// trace leaves 1 by more than 1e-6.
TrajectoryPoint evaluate_point(const SuperpositionState& state, const ComplexMatrix& theta, double t);

Observables observables(const SuperpositionState& initial, const TrajectoryPoint& point);

// Decoherence time of the RS family. +inf when the rate vanishes; throws
// ConfigError for alpha = 0.
double decoherence_time_formula(const RSFamilySpec& spec, double Gamma, double epsilon);

// Initial decay rate of the r-s interference for any PSD gamma:
// -d/dt ln|<beta^r|beta^s>/<zeta^r|zeta^s>| at 0 = (beta^r - beta^s)^dag gamma (beta^r - beta^s) / 2.
// Returns its inverse, +inf when it vanishes.
double decoherence_time_pair(const RealMatrix& gamma, const CoherentLabel& a, const CoherentLabel& b);

// Forward-difference estimate of the same log-slope from the trajectory's
// drift, step h = min(1e-6 / Gamma, first grid step), Gamma = largest
// direct-decay rate. +inf when |slope| < 1e-12 Gamma.
double decoherence_time_numeric(const Trajectory& traj, std::size_t r, std::size_t s);

// gamma recovered from the drift: -(D + D^dag).
RealMatrix decay_from_drift(const DriftMatrix& drift);

} // namespace resonet

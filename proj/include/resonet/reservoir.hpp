// reservoir.hpp — System-reservoir coupling profiles and decay matrices

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "resonet/netcore.hpp"

namespace resonet {

// Gaussian-comb coupling of one resonator to the reservoir modes around
// the normal-mode frequencies (centers).
struct CouplingProfile {
    double amplitude = 0.0;        // V_m
    std::vector<double> centers;   // Omega_j
    std::vector<double> widths;    // xi_j > 0
};

enum class ReservoirKind { CommonWhiteNoise, CommonProfile, DistinctStrongCoupling };

struct ReservoirSpec {
    ReservoirKind kind = ReservoirKind::CommonWhiteNoise;
    double sigma = 1.0;      // flat spectral density
    double Gamma = 0.0;      // direct damping rate (CommonWhiteNoise)
    double epsilon = 0.0;    // cross/direct correlation ratio in [0, 1]
    std::vector<CouplingProfile> profiles;  // CommonProfile, one per resonator
    double gamma_plus = 0.0;   // DistinctStrongCoupling, rate around Omega_+
    double gamma_minus = 0.0;  // DistinctStrongCoupling, rate around Omega_-
};

// Real symmetric PSD matrix of direct (diagonal) and cross-decay rates.
struct DecayMatrix {
    RealMatrix gamma;

    std::size_t size() const { return static_cast<std::size_t>(gamma.rows()); }
};

// Throws InvalidModelError unless gamma is symmetric with nonnegative
// diagonal and smallest eigenvalue >= -1e-12 ||gamma||.
const DecayMatrix& validate_decay_matrix(const DecayMatrix& m);

void validate_profile(const CouplingProfile& profile);
void validate_reservoir(const ReservoirSpec& spec);

// V_m (sum_j exp(-xi_j (freq - Omega_j)^2))^{1/2}
double coupling_value(const CouplingProfile& profile, double freq);

// sigma V_m V_n (sum_{j,j'} exp(-xi_j (f - Omega_j)^2 - xi_j' (f - Omega_j')^2))^{1/2}
// evaluated at f = profile centers[ell].
double correlation_coupled(const ReservoirSpec& spec, std::size_t m, std::size_t n, std::size_t ell);
double correlation_coupled_at(const ReservoirSpec& spec, std::size_t m, std::size_t n, double freq);

// Negligible-hopping limit: each resonator couples only around its own
// natural frequency.
double correlation_negligible(double sigma, double vm, double vn, double xi_m, double xi_n,
                              double omega_mprime, double omega_m, double omega_n);

// gamma_mm = Gamma, gamma_mn = epsilon * Gamma.
DecayMatrix decay_matrix_common(std::size_t n, double Gamma, double epsilon);

// eps(m, m', freq) is the reservoir correlation between the channels of
// resonators m and m' at frequency freq.
using CorrelationFn = std::function<double(std::size_t, std::size_t, double)>;

// gamma_mn = sum_{m', n'} eps(m, m', Omega_n') C_n'm' C_n'n, then symmetrized.
// Relative asymmetry above 1e-8 or a non-PSD result throws InvalidModelError.
DecayMatrix decay_matrix_from_correlations(const NormalModeDecomposition& decomp,
                                           const CorrelationFn& eps);

// Coupling-renormalized bare frequency of the strongly coupled network.
double renormalized_frequency(double omega0, double lambda0, std::size_t n);

// gamma_tilde = Gamma_- I + ((Gamma_+ - Gamma_-) / n) J
DecayMatrix gamma_tilde_distinct(std::size_t n, double gamma_plus, double gamma_minus);

// Width xi giving a Gaussian FWHM of 1% of the smallest gap between
// distinct normal modes (1% of the largest mode when all coincide).
double default_width(const NormalModeDecomposition& decomp);

// Distinct normal-mode frequencies (clusters merged at relative 1e-9).
std::vector<double> distinct_modes(const NormalModeDecomposition& decomp);

} // namespace resonet

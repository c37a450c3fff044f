// reservoir.cpp — Correlation functions and decay-matrix construction

#include "resonet/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "resonet/errors.hpp"

namespace resonet {

namespace {

void check_epsilon(double epsilon)
{
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ConfigError("correlation epsilon must lie in [0, 1], got " + std::to_string(epsilon));
    }
}

void check_rate(double rate, const char* name)
{
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw ConfigError(std::string(name) + " must be a finite nonnegative rate");
    }
}

} // namespace

const DecayMatrix& validate_decay_matrix(const DecayMatrix& m)
{
    const auto& g = m.gamma;
    if (g.rows() != g.cols() || g.rows() == 0) {
        throw InvalidModelError("decay matrix must be square and nonempty");
    }
    if (!g.allFinite()) throw InvalidModelError("decay matrix has non-finite entries");
    if (linalg::max_abs(RealMatrix(g - g.transpose())) > 0.0) {
        throw InvalidModelError("decay matrix is not symmetric");
    }
    if (g.diagonal().minCoeff() < 0.0) {
        throw InvalidModelError("decay matrix has a negative direct-decay rate");
    }
    const double norm = g.norm();
    if (norm == 0.0) return m;
    const auto eig = linalg::jacobi_eigen(g);
    if (eig.values.minCoeff() < -1e-12 * norm) {
        throw InvalidModelError("decay matrix is not positive semidefinite (smallest eigenvalue " +
                                std::to_string(eig.values.minCoeff()) + ")");
    }
    return m;
}

void validate_profile(const CouplingProfile& profile)
{
    if (profile.centers.empty()) throw ConfigError("coupling profile needs at least one center");
    if (profile.centers.size() != profile.widths.size()) {
        throw ConfigError("coupling profile centers and widths differ in length");
    }
    for (double xi : profile.widths) {
        if (!(xi > 0.0)) throw ConfigError("coupling profile widths must be positive");
    }
}

void validate_reservoir(const ReservoirSpec& spec)
{
    if (!(spec.sigma > 0.0)) throw ConfigError("spectral density sigma must be positive");
    switch (spec.kind) {
    case ReservoirKind::CommonWhiteNoise:
        check_epsilon(spec.epsilon);
        check_rate(spec.Gamma, "Gamma");
        break;
    case ReservoirKind::CommonProfile:
        if (spec.profiles.empty()) throw ConfigError("common-profile reservoir needs coupling profiles");
        for (const auto& p : spec.profiles) validate_profile(p);
        break;
    case ReservoirKind::DistinctStrongCoupling:
        check_rate(spec.gamma_plus, "gamma_plus");
        check_rate(spec.gamma_minus, "gamma_minus");
        break;
    }
}

double coupling_value(const CouplingProfile& profile, double freq)
{
    double sum = 0.0;
    for (std::size_t j = 0; j < profile.centers.size(); ++j) {
        const double d = freq - profile.centers[j];
        sum += std::exp(-profile.widths[j] * d * d);
    }
    return profile.amplitude * std::sqrt(sum);
}

double correlation_coupled_at(const ReservoirSpec& spec, std::size_t m, std::size_t n, double freq)
{
    if (m >= spec.profiles.size() || n >= spec.profiles.size()) {
        throw ConfigError("resonator index out of range in correlation_coupled");
    }
    const auto& pm = spec.profiles[m];
    const auto& pn = spec.profiles[n];
    if (pm.centers != pn.centers || pm.widths != pn.widths) {
        throw ConfigError("coupling profiles of correlated resonators must share centers and widths");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < pm.centers.size(); ++j) {
        const double dj = freq - pm.centers[j];
        for (std::size_t jp = 0; jp < pm.centers.size(); ++jp) {
            const double djp = freq - pm.centers[jp];
            sum += std::exp(-pm.widths[j] * dj * dj - pm.widths[jp] * djp * djp);
        }
    }
    return spec.sigma * pm.amplitude * pn.amplitude * std::sqrt(sum);
}

double correlation_coupled(const ReservoirSpec& spec, std::size_t m, std::size_t n, std::size_t ell)
{
    if (m >= spec.profiles.size()) throw ConfigError("resonator index out of range in correlation_coupled");
    const auto& centers = spec.profiles[m].centers;
    if (ell >= centers.size()) throw ConfigError("normal-mode index out of range in correlation_coupled");
    return correlation_coupled_at(spec, m, n, centers[ell]);
}

double correlation_negligible(double sigma, double vm, double vn, double xi_m, double xi_n,
                              double omega_mprime, double omega_m, double omega_n)
{
    const double dm = omega_mprime - omega_m;
    const double dn = omega_mprime - omega_n;
    return sigma * vm * vn * std::exp(-(xi_m * dm * dm + xi_n * dn * dn) / 2.0);
}

DecayMatrix decay_matrix_common(std::size_t n, double Gamma, double epsilon)
{
    check_epsilon(epsilon);
    check_rate(Gamma, "Gamma");
    if (n == 0) throw ConfigError("decay matrix needs at least one resonator");
    const auto dim = static_cast<Eigen::Index>(n);
    DecayMatrix out;
    out.gamma = RealMatrix::Constant(dim, dim, epsilon * Gamma);
    out.gamma.diagonal().setConstant(Gamma);
    return out;
}

DecayMatrix decay_matrix_from_correlations(const NormalModeDecomposition& decomp,
                                           const CorrelationFn& eps)
{
    const Eigen::Index n = decomp.C.rows();
    const auto& c = decomp.C;
    RealMatrix g = RealMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index nn = 0; nn < n; ++nn) {
            double sum = 0.0;
            for (Eigen::Index mp = 0; mp < n; ++mp) {
                for (Eigen::Index np = 0; np < n; ++np) {
                    const double e = eps(static_cast<std::size_t>(m), static_cast<std::size_t>(mp),
                                         decomp.Omega(np));
                    sum += e * c(np, mp) * c(np, nn);
                }
            }
            g(m, nn) = sum;
        }
    }
    const double scale = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
    if (linalg::max_abs(RealMatrix(g - g.transpose())) > 1e-8 * scale) {
        throw InvalidModelError("correlation model produces an asymmetric decay matrix");
    }
    DecayMatrix out;
    out.gamma = 0.5 * (g + g.transpose());
    validate_decay_matrix(out);
    return out;
}

double renormalized_frequency(double omega0, double lambda0, std::size_t n)
{
    if (!(omega0 > 0.0)) throw ConfigError("renormalized_frequency requires omega0 > 0");
    const double x = static_cast<double>(n - 1) * (lambda0 / (2.0 * omega0));
    return omega0 * (1.0 + x * x);
}

DecayMatrix gamma_tilde_distinct(std::size_t n, double gamma_plus, double gamma_minus)
{
    check_rate(gamma_plus, "gamma_plus");
    check_rate(gamma_minus, "gamma_minus");
    if (n == 0) throw ConfigError("decay matrix needs at least one resonator");
    const auto dim = static_cast<Eigen::Index>(n);
    const double nd = static_cast<double>(n);
    DecayMatrix out;
    out.gamma = RealMatrix::Constant(dim, dim, (gamma_plus - gamma_minus) / nd);
    out.gamma.diagonal().setConstant((gamma_plus + (nd - 1.0) * gamma_minus) / nd);
    return out;
}

std::vector<double> distinct_modes(const NormalModeDecomposition& decomp)
{
    std::vector<double> out;
    const double scale = std::max(1.0, decomp.Omega.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < decomp.Omega.size(); ++i) {
        const double w = decomp.Omega(i);
        if (out.empty() || w - out.back() > 1e-9 * scale) out.push_back(w);
    }
    return out;
}

double default_width(const NormalModeDecomposition& decomp)
{
    const auto modes = distinct_modes(decomp);
    double fwhm = 0.0;
    if (modes.size() < 2) {
        fwhm = 0.01 * std::abs(modes.empty() ? 1.0 : modes.back());
    } else {
        double gap = modes[1] - modes[0];
        for (std::size_t i = 2; i < modes.size(); ++i) gap = std::min(gap, modes[i] - modes[i - 1]);
        fwhm = 0.01 * gap;
    }
    return 4.0 * std::numbers::ln2 / (fwhm * fwhm);
}

} // namespace resonet

// dfs.cpp — Collective-lowering eigencheck, state classification, reduction check

#include "resonet/dfs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "resonet/errors.hpp"
#include "resonet/evolve.hpp"
#include "resonet/io.hpp"
#include "resonet/oracle.hpp"
#include "resonet/reservoir.hpp"

namespace resonet {

namespace {

constexpr double kBranchTolerance = 1e-10;
constexpr double kZeroEigenvalue = 1e-12;
constexpr double kEps1Threshold = 1e-6;
constexpr double kDistinctRatio = 1e-3;
constexpr int kReductionCutoff = 3;
constexpr double kReductionTolerance = 1e-10;

bool collective_regime(std::size_t n, const ClassifyParams& p)
{
    switch (p.regime) {
    case Regime::CommonEps1:
        return true;
    case Regime::CommonEpsSmall:
        return false;
    case Regime::DistinctStrong:
        return p.gamma_plus > 0.0 &&
               static_cast<double>(n) * p.gamma_minus / p.gamma_plus < kDistinctRatio;
    }
    return false;
}

// Fastest collective decay rate among the gamma eigenmodes that carry
// amplitude in any branch.
double populated_decay_rate(const SuperpositionState& state, const RealMatrix& gamma)
{
    const auto eig = linalg::jacobi_eigen(gamma);
    double rate = 0.0;
    for (const auto& term : state.terms) {
        const double weight = term.label.beta.squaredNorm();
        if (weight == 0.0) continue;
        for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
            const cplx proj = eig.vectors.col(k).cast<cplx>().dot(term.label.beta);
            if (std::norm(proj) > 1e-12 * weight) rate = std::max(rate, eig.values(k));
        }
    }
    return rate;
}

} // namespace

const char* regime_name(Regime regime)
{
    switch (regime) {
    case Regime::CommonEps1:
        return "CommonEps1";
    case Regime::CommonEpsSmall:
        return "CommonEpsSmall";
    case Regime::DistinctStrong:
        return "DistinctStrong";
    }
    return "unknown";
}

EigencheckResult collective_lowering_eigencheck(const SuperpositionState& state)
{
    if (state.terms.empty()) throw ConfigError("eigencheck needs a nonempty state");
    const double root_n = std::sqrt(static_cast<double>(state.modes()));
    const cplx first = state.terms.front().label.beta.sum() / root_n;
    for (const auto& term : state.terms) {
        if (std::abs(term.label.beta.sum() / root_n - first) > kBranchTolerance) return {false, std::nullopt};
    }
    return {true, first};
}

RealMatrix regime_decay_matrix(std::size_t n, const ClassifyParams& params)
{
    if (params.regime == Regime::DistinctStrong) {
        return gamma_tilde_distinct(n, params.gamma_plus, params.gamma_minus).gamma;
    }
    return decay_matrix_common(n, params.Gamma, params.epsilon).gamma;
}

ClassificationReport classify(const SuperpositionState& state, const std::optional<RSFamilySpec>& spec,
                              const ClassifyParams& params)
{
    const std::size_t n = state.modes();
    if (spec && spec->n != n) throw ConfigError("RS spec size does not match the state");
    switch (params.regime) {
    case Regime::CommonEps1:
        if (params.epsilon < 1.0 - kEps1Threshold) {
            throw ConfigError("regime CommonEps1 requires epsilon within 1e-6 of 1, got " +
                              std::to_string(params.epsilon));
        }
        break;
    case Regime::CommonEpsSmall:
        if (params.epsilon >= 1.0 - kEps1Threshold) {
            throw ConfigError("regime CommonEpsSmall requires epsilon < 1");
        }
        break;
    case Regime::DistinctStrong:
        if (!(params.gamma_plus > 0.0) || params.gamma_minus < 0.0) {
            throw ConfigError("regime DistinctStrong requires gamma_plus > 0 and gamma_minus >= 0");
        }
        break;
    }
    const RealMatrix gamma = regime_decay_matrix(n, params);

    ClassificationReport report;
    report.regime = params.regime;
    const bool single_product = state.terms.size() == 1;
    if (collective_regime(n, params)) {
        const auto check = collective_lowering_eigencheck(state);
        report.lindblad_eigenvalue = check.eigenvalue;
        report.is_dfs = check.is_eigenstate;
        report.is_rfs = check.is_eigenstate && std::abs(*check.eigenvalue) <= kZeroEigenvalue;
    } else {
        // Independent channels: only single products are eigenstates of every
        // Lindblad operator; they lose no energy only in the vacuum.
        report.is_dfs = single_product;
        report.is_rfs = single_product && state.terms.front().label.beta.cwiseAbs().maxCoeff() == 0.0;
    }

    const auto rates = linalg::jacobi_eigen(gamma).values;
    if (report.is_rfs) {
        report.effective_decay_rate = std::max(0.0, rates.minCoeff());
    } else if (report.is_dfs && report.lindblad_eigenvalue) {
        report.effective_decay_rate = rates.maxCoeff();
    } else {
        report.effective_decay_rate = populated_decay_rate(state, gamma);
    }

    const bool common = params.regime != Regime::DistinctStrong;
    if (spec && common && std::abs(spec->alpha) > 0.0) {
        report.tau_d = decoherence_time_formula(*spec, params.Gamma, params.epsilon);
    } else {
        report.tau_d = kInfinity;
        for (std::size_t r = 0; r < state.terms.size(); ++r) {
            for (std::size_t s = r + 1; s < state.terms.size(); ++s) {
                report.tau_d = std::min(report.tau_d,
                                        decoherence_time_pair(gamma, state.terms[r].label, state.terms[s].label));
            }
        }
    }
    return report;
}

double reduction_residual(std::size_t n, const RealMatrix& gamma, double strength, int cutoff)
{
    const NetworkSpec net = degenerate_network(n, 1.0, n > 1 ? 0.1 : 0.0);
    const oracle::FockBasisSpec basis{n, cutoff};
    const auto full = oracle::build_generator(net, gamma, basis);
    const auto collective = oracle::build_collective_generator(net, strength, basis);
    return oracle::superoperator_difference(full, collective);
}

bool master_equation_reduction_check(std::size_t n, double Gamma, double epsilon)
{
    if (n == 0 || n > 3) throw ConfigError("reduction check supports 1 <= n <= 3");
    if (epsilon != 1.0) throw ConfigError("reduction to a single collective operator requires epsilon = 1");
    const RealMatrix gamma = decay_matrix_common(n, Gamma, epsilon).gamma;
    return reduction_residual(n, gamma, static_cast<double>(n) * Gamma / 2.0, kReductionCutoff) <
           kReductionTolerance;
}

bool master_equation_reduction_check_distinct(std::size_t n, double gamma_plus, double gamma_minus)
{
    if (n == 0 || n > 3) throw ConfigError("reduction check supports 1 <= n <= 3");
    if (gamma_minus != 0.0) throw ConfigError("reduction to a single collective operator requires gamma_minus = 0");
    const RealMatrix gamma = gamma_tilde_distinct(n, gamma_plus, gamma_minus).gamma;
    return reduction_residual(n, gamma, gamma_plus / 2.0, kReductionCutoff) < kReductionTolerance;
}

nlohmann::json to_json(const ClassificationReport& report)
{
    nlohmann::json j;
    j["is_dfs"] = report.is_dfs;
    j["is_rfs"] = report.is_rfs;
    if (report.lindblad_eigenvalue) {
        j["lindblad_eigenvalue"] = {io::json_number(report.lindblad_eigenvalue->real()),
                                    io::json_number(report.lindblad_eigenvalue->imag())};
    } else {
        j["lindblad_eigenvalue"] = nullptr;
    }
    j["effective_decay_rate"] = io::json_number(report.effective_decay_rate);
    j["tau_d"] = io::json_number(report.tau_d);
    j["regime"] = regime_name(report.regime);
    return j;
}

} // namespace resonet

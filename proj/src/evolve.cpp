// evolve.cpp — Theta propagator, coherent-dyad density operator, observables

#include "resonet/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "resonet/errors.hpp"
#include "resonet/parallel.hpp"
#include "resonet/reservoir.hpp"

namespace resonet {

namespace {

constexpr double kTraceAbort = 1e-6;
const cplx kI{0.0, 1.0};

} // namespace

void validate_params(const EvolutionParams& params)
{
    if (params.n == 0) throw ConfigError("evolution needs at least one resonator");
    if (!(params.epsilon >= 0.0 && params.epsilon <= 1.0)) {
        throw ConfigError("correlation epsilon must lie in [0, 1]");
    }
    if (!(params.Gamma >= 0.0)) throw ConfigError("Gamma must be nonnegative");
    if (params.time_grid.empty() || params.time_grid.front() != 0.0) {
        throw ConfigError("time grid must be nonempty and start at 0");
    }
    for (std::size_t i = 1; i < params.time_grid.size(); ++i) {
        if (!(params.time_grid[i] > params.time_grid[i - 1])) {
            throw ConfigError("time grid must be strictly increasing");
        }
    }
}

std::vector<double> uniform_grid(double t_max, std::size_t steps)
{
    if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
    if (steps < 2) throw ConfigError("steps must be at least 2");
    std::vector<double> grid(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        grid[i] = t_max * static_cast<double>(i) / static_cast<double>(steps);
    }
    return grid;
}

RateSplit effective_rates(std::size_t n, double Gamma, double epsilon)
{
    if (n == 0) throw ConfigError("effective_rates needs at least one resonator");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("correlation epsilon must lie in [0, 1]");
    if (!(Gamma >= 0.0)) throw ConfigError("Gamma must be nonnegative");
    return {(1.0 - epsilon) * Gamma, (1.0 + static_cast<double>(n - 1) * epsilon) * Gamma};
}

DriftMatrix degenerate_drift(const EvolutionParams& params)
{
    const auto n = static_cast<Eigen::Index>(params.n);
    const double nd = static_cast<double>(params.n);
    RealMatrix w = RealMatrix::Constant(n, n, (params.Omega_plus - params.Omega_minus) / nd);
    w.diagonal().array() += params.Omega_minus;
    const auto gamma = decay_matrix_common(params.n, params.Gamma, params.epsilon).gamma;
    DriftMatrix out;
    out.D = -kI * w.cast<cplx>() - 0.5 * gamma.cast<cplx>();
    return out;
}

ComplexMatrix theta_closed_form(const EvolutionParams& params, double t)
{
    const auto n = static_cast<Eigen::Index>(params.n);
    const double nd = static_cast<double>(params.n);
    const double g = params.Gamma;
    const double eps = params.epsilon;
    const cplx envelope = std::exp(-(1.0 - eps) * g * t / 2.0) / nd;
    const cplx symmetric = std::exp(-(eps * nd * g / 2.0 + kI * params.Omega_plus) * t);
    const cplx antisymmetric = std::exp(-kI * params.Omega_minus * t);
    ComplexMatrix theta(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double kron = (m == k) ? nd - 1.0 : -1.0;
            theta(m, k) = envelope * (symmetric + kron * antisymmetric);
        }
    }
    return theta;
}

ComplexMatrix theta_general(const DriftMatrix& drift, double t)
{
    if (t < 0.0) throw ConfigError("theta_general requires t >= 0");
    return linalg::expm(drift.D * t);
}

TrajectoryPoint evaluate_point(const SuperpositionState& state, const ComplexMatrix& theta, double t)
{
    const std::size_t j = state.terms.size();
    TrajectoryPoint point;
    point.time = t;
    point.zeta.reserve(j);
    for (const auto& term : state.terms) {
        point.zeta.push_back(CoherentLabel{theta * term.label.beta});
    }
    const double n2 = state.norm_factor * state.norm_factor;
    const auto jj = static_cast<Eigen::Index>(j);
    point.coefficients.resize(jj, jj);
    for (std::size_t r = 0; r < j; ++r) {
        for (std::size_t s = 0; s < j; ++s) {
            const cplx log_ratio = log_coherent_overlap(state.terms[s].label.beta, state.terms[r].label.beta) -
                                   log_coherent_overlap(point.zeta[s].beta, point.zeta[r].beta);
            point.coefficients(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) =
                n2 * state.terms[r].weight * std::conj(state.terms[s].weight) * std::exp(log_ratio);
        }
    }
    point.obs = observables(state, point);
    if (!(std::abs(point.obs.trace - 1.0) <= kTraceAbort)) {
        throw NumericalError("trace of the analytic density operator deviates from 1 by " +
                             std::to_string(std::abs(point.obs.trace - 1.0)) + " at t=" + std::to_string(t));
    }
    return point;
}

Observables observables(const SuperpositionState& initial, const TrajectoryPoint& point)
{
    const std::size_t j = point.zeta.size();
    const auto jj = static_cast<Eigen::Index>(j);
    const std::size_t n = initial.modes();
    const auto& c = point.coefficients;

    ComplexMatrix gram(jj, jj);  // <zeta^s|zeta^r> at (s, r)
    for (Eigen::Index s = 0; s < jj; ++s) {
        for (Eigen::Index r = 0; r < jj; ++r) {
            gram(s, r) = coherent_overlap(point.zeta[static_cast<std::size_t>(s)],
                                          point.zeta[static_cast<std::size_t>(r)]);
        }
    }

    Observables obs;
    obs.occupation.assign(n, 0.0);
    cplx trace{0.0, 0.0};
    for (Eigen::Index r = 0; r < jj; ++r) {
        for (Eigen::Index s = 0; s < jj; ++s) {
            const cplx w = c(r, s) * gram(s, r);
            trace += w;
            const auto& zr = point.zeta[static_cast<std::size_t>(r)].beta;
            const auto& zs = point.zeta[static_cast<std::size_t>(s)].beta;
            for (std::size_t m = 0; m < n; ++m) {
                const auto mi = static_cast<Eigen::Index>(m);
                obs.occupation[m] += (w * std::conj(zs(mi)) * zr(mi)).real();
            }
        }
    }
    obs.trace = trace.real();
    obs.total_occupation = 0.0;
    for (double v : obs.occupation) obs.total_occupation += v;

    const ComplexMatrix cg = c * gram;
    obs.purity = (cg * cg).trace().real();

    // <Psi(0)|zeta^r> = N sum_k conj(w_k) <beta^k|zeta^r>
    ComplexVector proj(jj);
    for (Eigen::Index r = 0; r < jj; ++r) {
        cplx sum{0.0, 0.0};
        for (const auto& term : initial.terms) {
            sum += std::conj(term.weight) * coherent_overlap(term.label, point.zeta[static_cast<std::size_t>(r)]);
        }
        proj(r) = initial.norm_factor * sum;
    }
    cplx fid{0.0, 0.0};
    for (Eigen::Index r = 0; r < jj; ++r) {
        for (Eigen::Index s = 0; s < jj; ++s) fid += c(r, s) * proj(r) * std::conj(proj(s));
    }
    obs.fidelity = fid.real();
    return obs;
}

namespace {

template <typename ThetaFn>
Trajectory propagate_with(const SuperpositionState& state, DriftMatrix drift,
                          const std::vector<double>& times, ThetaFn&& theta_at)
{
    if (state.modes() != drift.size()) {
        throw ConfigError("state has " + std::to_string(state.modes()) + " modes but the network has " +
                          std::to_string(drift.size()));
    }
    Trajectory traj;
    traj.initial = state;
    traj.drift = std::move(drift);
    traj.points.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        traj.points[i] = evaluate_point(state, theta_at(times[i]), times[i]);
    });
    return traj;
}

void validate_times(const std::vector<double>& times)
{
    if (times.empty() || times.front() != 0.0) throw ConfigError("time grid must be nonempty and start at 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw ConfigError("time grid must be strictly increasing");
    }
}

} // namespace

Trajectory propagate(const SuperpositionState& state, const EvolutionParams& params)
{
    validate_params(params);
    return propagate_with(state, degenerate_drift(params), params.time_grid,
                          [&](double t) { return theta_closed_form(params, t); });
}

Trajectory propagate(const SuperpositionState& state, const DriftMatrix& drift,
                     const std::vector<double>& times)
{
    validate_times(times);
    return propagate_with(state, drift, times, [&](double t) { return theta_general(drift, t); });
}

double decoherence_time_formula(const RSFamilySpec& spec, double Gamma, double epsilon)
{
    validate_rs_spec(spec);
    if (std::abs(spec.alpha) == 0.0) {
        throw ConfigError("decoherence time undefined for alpha = 0 (no superposition)");
    }
    const double down = effective_rates(spec.n, Gamma, epsilon).gamma_down;
    const double diff = static_cast<double>(spec.R) - static_cast<double>(spec.S);
    const double sum = static_cast<double>(spec.R + spec.S);
    const double denom = diff * diff * Gamma + (sum - diff * diff) * down;
    if (denom == 0.0) return kInfinity;
    return 1.0 / (2.0 * std::norm(spec.alpha) * denom);
}

RealMatrix decay_from_drift(const DriftMatrix& drift)
{
    return -(drift.D + drift.D.adjoint()).real();
}

double decoherence_time_pair(const RealMatrix& gamma, const CoherentLabel& a, const CoherentLabel& b)
{
    const ComplexVector diff = a.beta - b.beta;
    const double rate = 0.5 * (diff.adjoint() * gamma.cast<cplx>() * diff)(0, 0).real();
    if (!(rate > 0.0)) return kInfinity;
    return 1.0 / rate;
}

double decoherence_time_numeric(const Trajectory& traj, std::size_t r, std::size_t s)
{
    if (r == s) throw ConfigError("decoherence_time_numeric needs two distinct terms");
    if (r >= traj.terms() || s >= traj.terms()) throw ConfigError("term index out of range");
    const ComplexVector diff = traj.initial.terms[r].label.beta - traj.initial.terms[s].label.beta;
    if (diff.cwiseAbs().maxCoeff() < 1e-14) throw ConfigError("degenerate pair: identical labels");

    const RealMatrix gamma = decay_from_drift(traj.drift);
    const double scale = gamma.diagonal().maxCoeff();
    if (!(scale > 0.0)) return kInfinity;
    double h = 1e-6 / scale;
    if (traj.points.size() > 1) h = std::min(h, traj.points[1].time - traj.points[0].time);

    // -ln D(h) = (|x|^2 - |Theta(h) x|^2) / 2 with Theta(h) = I + E.
    const ComplexMatrix e = linalg::expm_minus_identity(traj.drift.D * h);
    const ComplexVector ex = e * diff;
    const double neg_log_d = -diff.dot(ex).real() - 0.5 * ex.squaredNorm();
    const double slope = neg_log_d / h;
    if (std::abs(slope) < 1e-12 * scale) return kInfinity;
    return 1.0 / slope;
}

} // namespace resonet

// oracle.cpp — Truncated Fock embedding, Lindblad generator and RK4 integration

#include "resonet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "resonet/errors.hpp"

namespace resonet::oracle {

namespace {

constexpr double kTraceAbort = 1e-6;
constexpr double kStepFactor = 0.01;
const cplx kI{0.0, 1.0};

std::vector<int> occupations(const FockBasisSpec& basis, std::size_t index)
{
    std::vector<int> k(basis.n);
    const auto base = static_cast<std::size_t>(basis.cutoff + 1);
    for (std::size_t m = basis.n; m-- > 0;) {
        k[m] = static_cast<int>(index % base);
        index /= base;
    }
    return k;
}

// e^{-|b|^2/2} b^k / sqrt(k!) for k = 0..cutoff
ComplexVector coherent_amplitudes(cplx beta, int cutoff)
{
    ComplexVector c(cutoff + 1);
    c(0) = std::exp(-0.5 * std::norm(beta));
    for (int k = 1; k <= cutoff; ++k) c(k) = c(k - 1) * beta / std::sqrt(static_cast<double>(k));
    return c;
}

SparseMatrix sparse_from(const RealMatrix& w, const std::vector<SparseMatrix>& lower, cplx scale)
{
    const std::size_t dim = static_cast<std::size_t>(lower.front().rows());
    SparseMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t m = 0; m < lower.size(); ++m) {
        for (std::size_t n = 0; n < lower.size(); ++n) {
            const double v = w(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
            if (v == 0.0) continue;
            SparseMatrix term = SparseMatrix(lower[m].adjoint()) * lower[n];
            out += (scale * v) * term;
        }
    }
    out.makeCompressed();
    return out;
}

double network_scale(const NetworkSpec& spec)
{
    return spec.coupling_matrix().cwiseAbs().rowwise().sum().maxCoeff();
}

} // namespace

std::size_t FockBasisSpec::dimension() const
{
    std::size_t d = 1;
    for (std::size_t m = 0; m < n; ++m) d *= static_cast<std::size_t>(cutoff + 1);
    return d;
}

std::size_t FockBasisSpec::stride(std::size_t mode) const
{
    std::size_t s = 1;
    for (std::size_t m = mode + 1; m < n; ++m) s *= static_cast<std::size_t>(cutoff + 1);
    return s;
}

void validate_basis(const FockBasisSpec& basis)
{
    if (basis.n == 0) throw ConfigError("Fock basis needs at least one mode");
    if (basis.cutoff < 1) throw ConfigError("Fock cutoff must be at least 1");
    double d = 1.0;
    for (std::size_t m = 0; m < basis.n; ++m) d *= static_cast<double>(basis.cutoff + 1);
    if (d > static_cast<double>(kMaxDimension)) {
        throw ConfigError("Fock dimension (cutoff+1)^n = " + std::to_string(static_cast<long long>(d)) +
                          " exceeds the limit " + std::to_string(kMaxDimension));
    }
}

double tail_mass(double amplitude, int cutoff)
{
    const double x = amplitude * amplitude;
    if (x == 0.0) return 0.0;
    double sum = 0.0;
    for (int k = cutoff + 1;; ++k) {
        const double term = std::exp(-x + k * std::log(x) - std::lgamma(k + 1.0));
        sum += term;
        if (k > x && term < 1e-18 * sum) break;
        if (k > cutoff + 100000) break;
    }
    return sum;
}

int required_cutoff(double amplitude)
{
    int cutoff = 1;
    while (tail_mass(amplitude, cutoff) >= kTailBound) ++cutoff;
    return cutoff;
}

double max_amplitude(const SuperpositionState& state)
{
    double amp = 0.0;
    for (const auto& t : state.terms) {
        if (t.label.beta.size() > 0) amp = std::max(amp, t.label.beta.cwiseAbs().maxCoeff());
    }
    return amp;
}

int select_cutoff(const SuperpositionState& state)
{
    const double b = max_amplitude(state);
    int cutoff = static_cast<int>(std::ceil(b * b + 6.0 * b + 8.0));
    return std::max(cutoff, required_cutoff(b));
}

double check_cutoff(const SuperpositionState& state, const FockBasisSpec& basis)
{
    const double b = max_amplitude(state);
    const double tail = tail_mass(b, basis.cutoff);
    if (!(tail < kTailBound)) {
        const int need = required_cutoff(b);
        throw CutoffError("inadequate cutoff " + std::to_string(basis.cutoff) + " for amplitude " +
                              std::to_string(b) + ": tail mass " + std::to_string(tail) +
                              ", required minimum cutoff " + std::to_string(need),
                          need);
    }
    return tail;
}

SparseMatrix lowering_operator(const FockBasisSpec& basis, std::size_t mode)
{
    const std::size_t dim = basis.dimension();
    const std::size_t stride = basis.stride(mode);
    std::vector<Eigen::Triplet<cplx>> entries;
    entries.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const int k = occupations(basis, i)[mode];
        if (k == 0) continue;
        entries.emplace_back(static_cast<Eigen::Index>(i - stride), static_cast<Eigen::Index>(i),
                             std::sqrt(static_cast<double>(k)));
    }
    SparseMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    a.setFromTriplets(entries.begin(), entries.end());
    return a;
}

ComplexVector embed_label(const CoherentLabel& label, const FockBasisSpec& basis)
{
    if (label.size() != basis.n) throw ConfigError("label length does not match the Fock basis");
    ComplexVector psi = ComplexVector::Ones(1);
    for (std::size_t m = 0; m < basis.n; ++m) {
        const ComplexVector c = coherent_amplitudes(label.beta(static_cast<Eigen::Index>(m)), basis.cutoff);
        ComplexVector next(psi.size() * c.size());
        for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(i * c.size(), c.size()) = psi(i) * c;
        psi = std::move(next);
    }
    return psi;
}

ComplexVector embed_ket(const SuperpositionState& state, const FockBasisSpec& basis)
{
    validate_basis(basis);
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(basis.dimension()));
    for (const auto& t : state.terms) psi += t.weight * embed_label(t.label, basis);
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw NumericalError("embedded state vanishes in the truncated basis");
    return psi / norm;
}

FockDensityMatrix embed_state(const SuperpositionState& state, const FockBasisSpec& basis)
{
    const ComplexVector psi = embed_ket(state, basis);
    return FockDensityMatrix{psi * psi.adjoint()};
}

FockDensityMatrix embed_point(const TrajectoryPoint& point, const FockBasisSpec& basis)
{
    validate_basis(basis);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    const auto j = static_cast<Eigen::Index>(point.zeta.size());
    ComplexMatrix kets(dim, j);
    for (Eigen::Index r = 0; r < j; ++r) kets.col(r) = embed_label(point.zeta[static_cast<std::size_t>(r)], basis);
    ComplexMatrix rho = kets * point.coefficients * kets.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) throw NumericalError("embedded analytic density matrix has nonpositive trace");
    return FockDensityMatrix{rho / tr};
}

LindbladGenerator::LindbladGenerator(FockBasisSpec basis, SparseMatrix h_eff, std::vector<Jump> jumps,
                                     double rate_scale)
    : basis_(basis), h_eff_(std::move(h_eff)), jumps_(std::move(jumps)), rate_scale_(rate_scale)
{
    h_eff_adjoint_ = RowMajorSparse(h_eff_.adjoint());
    for (const auto& jump : jumps_) {
        jumps_adjoint_.push_back({RowMajorSparse(jump.left.adjoint()), RowMajorSparse(jump.right_adjoint)});
    }
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& rho) const
{
    const ComplexMatrix left = h_eff_ * rho;
    const ComplexMatrix right = (h_eff_ * rho.adjoint()).adjoint();
    ComplexMatrix out = -kI * (left - right);
    for (const auto& jump : jumps_) {
        const ComplexMatrix ar = jump.left * rho;
        out.noalias() += ar * jump.right_adjoint;
    }
    return out;
}

ComplexMatrix LindbladGenerator::apply_hermitian(const ComplexMatrix& rho) const
{
    ComplexMatrix out, work, work_adjoint;
    apply_hermitian(rho, out, work, work_adjoint);
    return out;
}

void LindbladGenerator::apply_hermitian(const ComplexMatrix& rho, ComplexMatrix& out, ComplexMatrix& work,
                                        ComplexMatrix& work_adjoint) const
{
    // Only dense x sparse products: with rho = rho^dag, H rho = (rho H^dag)^dag
    // and A rho B^dag = ((rho B^dag)^dag A^dag)^dag.
    work.noalias() = rho * h_eff_adjoint_;
    out = work.adjoint();
    out -= work;
    out *= -kI;
    for (const auto& [left_adjoint, right_adjoint] : jumps_adjoint_) {
        work.noalias() = rho * right_adjoint;
        work_adjoint = work.adjoint();
        work.noalias() = work_adjoint * left_adjoint;
        out += work.adjoint();
    }
}

LindbladGenerator build_generator(const NetworkSpec& spec, const RealMatrix& gamma, const FockBasisSpec& basis)
{
    validate_network(spec);
    validate_basis(basis);
    if (basis.n != spec.size()) throw ConfigError("Fock basis mode count does not match the network");
    if (static_cast<std::size_t>(gamma.rows()) != spec.size() || gamma.rows() != gamma.cols()) {
        throw ConfigError("decay matrix dimension does not match the network");
    }
    std::vector<SparseMatrix> lower;
    for (std::size_t m = 0; m < basis.n; ++m) lower.push_back(lowering_operator(basis, m));

    SparseMatrix h_eff = sparse_from(spec.coupling_matrix(), lower, 1.0);
    h_eff += sparse_from(gamma, lower, -0.5 * kI);
    h_eff.makeCompressed();

    // sum_mn gamma_mn a_n rho a_m^dag = sum_n a_n rho (sum_m gamma_mn a_m)^dag
    std::vector<LindbladGenerator::Jump> jumps;
    for (std::size_t n = 0; n < basis.n; ++n) {
        SparseMatrix right(lower[n].rows(), lower[n].cols());
        for (std::size_t m = 0; m < basis.n; ++m) {
            const double g = gamma(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
            if (g != 0.0) right += cplx{g, 0.0} * lower[m];
        }
        if (right.nonZeros() == 0) continue;
        jumps.push_back({lower[n], SparseMatrix(right.adjoint())});
    }
    const double scale = std::max(network_scale(spec),
                                  static_cast<double>(spec.size()) * std::max(0.0, gamma.diagonal().maxCoeff()));
    return LindbladGenerator(basis, std::move(h_eff), std::move(jumps), scale);
}

LindbladGenerator build_collective_generator(const NetworkSpec& spec, double strength, const FockBasisSpec& basis)
{
    validate_network(spec);
    validate_basis(basis);
    if (basis.n != spec.size()) throw ConfigError("Fock basis mode count does not match the network");
    std::vector<SparseMatrix> lower;
    for (std::size_t m = 0; m < basis.n; ++m) lower.push_back(lowering_operator(basis, m));

    SparseMatrix collective = lower.front();
    for (std::size_t m = 1; m < lower.size(); ++m) collective += lower[m];
    collective *= cplx{1.0 / std::sqrt(static_cast<double>(basis.n)), 0.0};

    // strength([L rho, L^dag] + h.c.) = 2 strength (L rho L^dag - {L^dag L, rho}/2)
    SparseMatrix h_eff = sparse_from(spec.coupling_matrix(), lower, 1.0);
    h_eff += (-kI * strength) * SparseMatrix(SparseMatrix(collective.adjoint()) * collective);
    h_eff.makeCompressed();
    std::vector<LindbladGenerator::Jump> jumps;
    jumps.push_back({collective, SparseMatrix((cplx{2.0 * strength, 0.0} * collective).adjoint())});
    const double scale = std::max(network_scale(spec), 2.0 * strength);
    return LindbladGenerator(basis, std::move(h_eff), std::move(jumps), scale);
}

double superoperator_difference(const LindbladGenerator& a, const LindbladGenerator& b)
{
    if (a.dimension() != b.dimension()) throw ConfigError("generators act on different spaces");
    const auto dim = static_cast<Eigen::Index>(a.dimension());
    double worst = 0.0;
    ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            unit(i, j) = 1.0;
            worst = std::max(worst, linalg::max_abs(ComplexMatrix(a.apply(unit) - b.apply(unit))));
            unit(i, j) = 0.0;
        }
    }
    return worst;
}

IntegrationResult integrate(const FockDensityMatrix& rho0, const LindbladGenerator& gen,
                            const std::vector<double>& times, const IntegrateOptions& options)
{
    if (times.empty() || times.front() != 0.0) throw ConfigError("integration grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw ConfigError("integration grid must be strictly increasing");
    }
    const auto dim = static_cast<Eigen::Index>(gen.dimension());
    if (rho0.rho.rows() != dim || rho0.rho.cols() != dim) {
        throw ConfigError("initial density matrix does not match the generator dimension");
    }
    double h_bound = options.step_override > 0.0
                         ? options.step_override
                         : (gen.rate_scale() > 0.0 ? kStepFactor / gen.rate_scale() : std::numeric_limits<double>::infinity());
    IntegrationResult result;
    ComplexMatrix rho = rho0.rho;
    ComplexMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), stage(dim, dim);
    ComplexMatrix work(dim, dim), work_adjoint(dim, dim);
    auto check = [&](double t, std::size_t step) {
        const double drift = std::abs(rho.trace().real() - 1.0);
        if (!(drift <= kTraceAbort)) {
            throw NumericalError("trace drift " + std::to_string(drift) + " at t=" + std::to_string(t) +
                                 " after " + std::to_string(step) + " RK4 steps (h=" +
                                 std::to_string(result.step) + ")");
        }
    };
    result.states.push_back(FockDensityMatrix{rho});
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double span = times[i] - times[i - 1];
        const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / h_bound - 1e-9)));
        const double h = span / static_cast<double>(steps);
        result.step = std::max(result.step, h);
        for (std::size_t k = 0; k < steps; ++k) {
            gen.apply_hermitian(rho, k1, work, work_adjoint);
            stage = rho + (0.5 * h) * k1;
            gen.apply_hermitian(stage, k2, work, work_adjoint);
            stage = rho + (0.5 * h) * k2;
            gen.apply_hermitian(stage, k3, work, work_adjoint);
            stage = rho + h * k3;
            gen.apply_hermitian(stage, k4, work, work_adjoint);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            work_adjoint = rho.adjoint();
            rho += work_adjoint;
            rho *= 0.5;
            ++result.total_steps;
            check(times[i - 1] + static_cast<double>(k + 1) * h, result.total_steps);
        }
        FockDensityMatrix out{rho};
        if (options.check_positivity) {
            const double lowest = min_eigenvalue(out);
            if (lowest < -1e-8) {
                throw NumericalError("density matrix lost positivity (eigenvalue " + std::to_string(lowest) +
                                     ") at t=" + std::to_string(times[i]));
            }
        }
        result.states.push_back(std::move(out));
    }
    return result;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix diff = a - b;
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(diff, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("trace distance: eigensolver failed");
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue(const FockDensityMatrix& rho)
{
    const ComplexMatrix h = 0.5 * (rho.rho + rho.rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("min_eigenvalue: eigensolver failed");
    return solver.eigenvalues().minCoeff();
}

double purity(const FockDensityMatrix& rho)
{
    return (rho.rho * rho.rho).trace().real();
}

cplx mode_expectation(const FockDensityMatrix& rho, const FockBasisSpec& basis, std::size_t mode)
{
    const SparseMatrix a = lowering_operator(basis, mode);
    return ComplexMatrix(a * rho.rho).trace();
}

double occupation(const FockDensityMatrix& rho, const FockBasisSpec& basis, std::size_t mode)
{
    const SparseMatrix a = lowering_operator(basis, mode);
    const SparseMatrix number = SparseMatrix(a.adjoint()) * a;
    return ComplexMatrix(number * rho.rho).trace().real();
}

CompareReport compare(const Trajectory& analytic, const std::vector<FockDensityMatrix>& numeric,
                      const FockBasisSpec& basis)
{
    if (analytic.points.size() != numeric.size()) {
        throw ConfigError("analytic and numeric time grids differ in length");
    }
    CompareReport report;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        const FockDensityMatrix a = embed_point(analytic.points[i], basis);
        const double d = trace_distance(a.rho, numeric[i].rho);
        report.times.push_back(analytic.points[i].time);
        report.distances.push_back(d);
        report.max_distance = std::max(report.max_distance, d);
    }
    return report;
}

} // namespace resonet::oracle

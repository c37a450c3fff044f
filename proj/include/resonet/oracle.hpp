// oracle.hpp — Brute-force truncated-Fock Lindblad integrator
//
// Independent check of the analytic coherent-dyad evolution. Everything here
// works with explicit density matrices in the product Fock basis
// |k_1, ..., k_n>, k_m <= cutoff, mode 1 most significant in the index.

#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "resonet/evolve.hpp"
#include "resonet/netcore.hpp"
#include "resonet/states.hpp"

namespace resonet::oracle {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr std::size_t kMaxDimension = 65536;
inline constexpr double kTailBound = 1e-10;

struct FockBasisSpec {
    std::size_t n = 1;
    int cutoff = 1;  // per-mode n_max

    std::size_t dimension() const;
    std::size_t stride(std::size_t mode) const;
};

// Throws ConfigError when (cutoff+1)^n exceeds kMaxDimension.
void validate_basis(const FockBasisSpec& basis);

struct FockDensityMatrix {
    ComplexMatrix rho;

    double trace() const { return rho.trace().real(); }
};

// Poisson mass above cutoff for a coherent amplitude of modulus |beta|.
double tail_mass(double amplitude, int cutoff);
// Smallest cutoff with tail_mass < kTailBound.
int required_cutoff(double amplitude);
double max_amplitude(const SuperpositionState& state);
// ceil(|b|^2 + 6|b| + 8) for the largest amplitude, raised if the tail
// check still fails.
int select_cutoff(const SuperpositionState& state);
// Largest per-mode tail mass over all labels. Throws CutoffError (with the
// required minimum) when it reaches kTailBound.
double check_cutoff(const SuperpositionState& state, const FockBasisSpec& basis);

SparseMatrix lowering_operator(const FockBasisSpec& basis, std::size_t mode);

ComplexVector embed_label(const CoherentLabel& label, const FockBasisSpec& basis);
// Truncated |Psi>, renormalized.
ComplexVector embed_ket(const SuperpositionState& state, const FockBasisSpec& basis);
// |Psi><Psi| in the truncated basis, trace renormalized to 1.
FockDensityMatrix embed_state(const SuperpositionState& state, const FockBasisSpec& basis);
// sum_rs c_rs |zeta^r><zeta^s| of an analytic trajectory point, trace renormalized to 1.
FockDensityMatrix embed_point(const TrajectoryPoint& point, const FockBasisSpec& basis);

// rho -> -i (H_eff rho - rho H_eff^dag) + sum_k A_k rho B_k^dag
class LindbladGenerator {
public:
    struct Jump {
        SparseMatrix left;
        SparseMatrix right_adjoint;  // B^dag
    };

    LindbladGenerator(FockBasisSpec basis, SparseMatrix h_eff, std::vector<Jump> jumps, double rate_scale);

    ComplexMatrix apply(const ComplexMatrix& rho) const;
    // Same map, valid only for Hermitian rho; faster.
    ComplexMatrix apply_hermitian(const ComplexMatrix& rho) const;
    // Allocation-free variant; work and work_adjoint are scratch buffers.
    void apply_hermitian(const ComplexMatrix& rho, ComplexMatrix& out, ComplexMatrix& work,
                         ComplexMatrix& work_adjoint) const;

    const FockBasisSpec& basis() const { return basis_; }
    std::size_t dimension() const { return basis_.dimension(); }
    // max(||W||_inf, n * max_m gamma_mm), sets the RK4 step.
    double rate_scale() const { return rate_scale_; }

private:
    FockBasisSpec basis_;
    SparseMatrix h_eff_;
    std::vector<Jump> jumps_;
    using RowMajorSparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
    RowMajorSparse h_eff_adjoint_;
    std::vector<std::pair<RowMajorSparse, RowMajorSparse>> jumps_adjoint_;  // (A^dag, B^dag)
    double rate_scale_;
};

// i[rho, H_S] + sum_mn (gamma_mn / 2)([a_n rho, a_m^dag] + h.c.)
LindbladGenerator build_generator(const NetworkSpec& spec, const RealMatrix& gamma, const FockBasisSpec& basis);

// i[rho, H_S] + strength ([L rho, L^dag] + h.c.), L = sum_n a_n / sqrt(n).
LindbladGenerator build_collective_generator(const NetworkSpec& spec, double strength, const FockBasisSpec& basis);

// Max-abs difference of the two superoperator matrices, evaluated column by
// column on the matrix units |i><j|.
double superoperator_difference(const LindbladGenerator& a, const LindbladGenerator& b);

struct IntegrateOptions {
    double step_override = 0.0;  // > 0 replaces the default step bound
    bool check_positivity = false;
};

struct IntegrationResult {
    std::vector<FockDensityMatrix> states;  // one per grid time
    double step = 0.0;                      // largest step used
    std::size_t total_steps = 0;
};

// Fixed-step RK4, h = min(0.01 / rate_scale, grid spacing); the density
// matrix is re-Hermitized after every step and a trace drift beyond 1e-6
// throws NumericalError.
IntegrationResult integrate(const FockDensityMatrix& rho0, const LindbladGenerator& gen,
                            const std::vector<double>& times, const IntegrateOptions& options = {});

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double min_eigenvalue(const FockDensityMatrix& rho);
double purity(const FockDensityMatrix& rho);
cplx mode_expectation(const FockDensityMatrix& rho, const FockBasisSpec& basis, std::size_t mode);
double occupation(const FockDensityMatrix& rho, const FockBasisSpec& basis, std::size_t mode);

struct CompareReport {
    std::vector<double> times;
    std::vector<double> distances;
    double max_distance = 0.0;
};

CompareReport compare(const Trajectory& analytic, const std::vector<FockDensityMatrix>& numeric,
                      const FockBasisSpec& basis);

} // namespace resonet::oracle

// dfs.hpp — Decoherence-free and relaxation-free classification

#pragma once

#include <cstddef>
#include <optional>

#include <json.hpp>

#include "resonet/netcore.hpp"
#include "resonet/states.hpp"

namespace resonet {

enum class Regime { CommonEps1, CommonEpsSmall, DistinctStrong };

struct ClassificationReport {
    bool is_dfs = false;
    bool is_rfs = false;
    std::optional<cplx> lindblad_eigenvalue;
    double effective_decay_rate = 0.0;
    double tau_d = 0.0;
    Regime regime = Regime::CommonEps1;
};

struct EigencheckResult {
    bool is_eigenstate = false;
    std::optional<cplx> eigenvalue;
};

// Every coherent branch is an eigenstate of L = sum_n a_n / sqrt(n) with
// eigenvalue sum_m beta_m / sqrt(n); the superposition is one iff all
// branch eigenvalues agree within 1e-10.
EigencheckResult collective_lowering_eigencheck(const SuperpositionState& state);

struct ClassifyParams {
    Regime regime = Regime::CommonEps1;
    double Gamma = 0.0;
    double epsilon = 1.0;
    double gamma_plus = 0.0;   // DistinctStrong
    double gamma_minus = 0.0;  // DistinctStrong
};

// Decay matrix implied by the regime parameters.
RealMatrix regime_decay_matrix(std::size_t n, const ClassifyParams& params);

// Throws ConfigError when the regime contradicts its parameters (e.g.
// CommonEps1 with epsilon < 1 - 1e-6).
ClassificationReport classify(const SuperpositionState& state, const std::optional<RSFamilySpec>& spec,
                              const ClassifyParams& params);

// The double-sum dissipator with gamma = Gamma J equals the collective one
// at strength n Gamma / 2 (epsilon must be 1).
bool master_equation_reduction_check(std::size_t n, double Gamma, double epsilon);
// gamma_tilde at Gamma_- = 0 equals the collective dissipator at strength Gamma_+ / 2.
bool master_equation_reduction_check_distinct(std::size_t n, double gamma_plus, double gamma_minus);

// Max-abs superoperator difference behind the two checks above.
double reduction_residual(std::size_t n, const RealMatrix& gamma, double strength, int cutoff);

nlohmann::json to_json(const ClassificationReport& report);
const char* regime_name(Regime regime);

} // namespace resonet

// states.hpp — Superpositions of multimode coherent-state products

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "resonet/linalg.hpp"

namespace resonet {

using cplx = std::complex<double>;
using linalg::ComplexVector;

// Per-resonator coherent amplitudes of one product state |beta_1, ..., beta_n>.
struct CoherentLabel {
    ComplexVector beta;

    std::size_t size() const { return static_cast<std::size_t>(beta.size()); }
};

struct SuperpositionTerm {
    cplx weight;
    CoherentLabel label;
};

// |Psi> = norm_factor * sum_r weight_r |label_r>, normalized under the
// coherent-state overlap metric. Build through make_superposition.
struct SuperpositionState {
    std::vector<SuperpositionTerm> terms;
    double norm_factor = 1.0;

    std::size_t modes() const { return terms.empty() ? 0 : terms.front().label.size(); }
};

enum class BranchSign { Plus, Minus };

// N_pm (|alpha x R, -alpha x S> pm |-alpha x R, alpha x S>) (x) |eta x (n-R-S)>
struct RSFamilySpec {
    std::size_t n = 1;
    std::size_t R = 0;
    std::size_t S = 0;
    cplx alpha{0.0, 0.0};
    cplx eta{0.0, 0.0};
    BranchSign sign = BranchSign::Plus;
};

// log <a|b> = sum_m (-|a_m|^2/2 - |b_m|^2/2 + conj(a_m) b_m)
cplx log_coherent_overlap(const ComplexVector& a, const ComplexVector& b);
cplx coherent_overlap(const CoherentLabel& a, const CoherentLabel& b);

// Merges labels closer than 1e-14 per component, drops zero weights and
// normalizes with the Gram matrix. Throws ConfigError on empty input,
// inconsistent lengths or a zero-norm superposition.
SuperpositionState make_superposition(std::vector<SuperpositionTerm> terms);

void validate_rs_spec(const RSFamilySpec& spec);
SuperpositionState make_rs_state(const RSFamilySpec& spec);

SuperpositionState swap_resonators(const SuperpositionState& state, std::size_t m, std::size_t n);

// <Psi|Psi> with the stored norm factor.
double state_norm_squared(const SuperpositionState& state);

} // namespace resonet

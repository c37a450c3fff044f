// states.cpp — Coherent overlaps and superposition construction

#include "resonet/states.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "resonet/errors.hpp"

namespace resonet {

namespace {

constexpr double kMergeTolerance = 1e-14;

bool same_label(const ComplexVector& a, const ComplexVector& b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a(i).real() - b(i).real()) >= kMergeTolerance ||
            std::abs(a(i).imag() - b(i).imag()) >= kMergeTolerance) {
            return false;
        }
    }
    return true;
}

} // namespace

cplx log_coherent_overlap(const ComplexVector& a, const ComplexVector& b)
{
    if (a.size() != b.size()) throw ConfigError("coherent overlap: label lengths differ");
    cplx sum{0.0, 0.0};
    for (Eigen::Index m = 0; m < a.size(); ++m) {
        sum += -0.5 * std::norm(a(m)) - 0.5 * std::norm(b(m)) + std::conj(a(m)) * b(m);
    }
    return sum;
}

cplx coherent_overlap(const CoherentLabel& a, const CoherentLabel& b)
{
    return std::exp(log_coherent_overlap(a.beta, b.beta));
}

double state_norm_squared(const SuperpositionState& state)
{
    cplx sum{0.0, 0.0};
    for (const auto& r : state.terms) {
        for (const auto& s : state.terms) {
            sum += std::conj(r.weight) * s.weight * coherent_overlap(r.label, s.label);
        }
    }
    return state.norm_factor * state.norm_factor * sum.real();
}

SuperpositionState make_superposition(std::vector<SuperpositionTerm> terms)
{
    if (terms.empty()) throw ConfigError("superposition needs at least one term");
    const std::size_t n = terms.front().label.size();
    if (n == 0) throw ConfigError("coherent labels must have at least one mode");

    SuperpositionState state;
    for (auto& t : terms) {
        if (t.label.size() != n) throw ConfigError("coherent labels have inconsistent lengths");
        if (!t.label.beta.allFinite() || !std::isfinite(std::abs(t.weight))) {
            throw ConfigError("non-finite amplitude or weight");
        }
        bool merged = false;
        for (auto& existing : state.terms) {
            if (same_label(existing.label.beta, t.label.beta)) {
                existing.weight += t.weight;
                merged = true;
                break;
            }
        }
        if (!merged) state.terms.push_back(std::move(t));
    }
    std::erase_if(state.terms, [](const SuperpositionTerm& t) { return t.weight == cplx{0.0, 0.0}; });
    if (state.terms.empty()) throw ConfigError("superposition has zero norm");

    state.norm_factor = 1.0;
    const double norm2 = state_norm_squared(state);
    if (!(norm2 > 1e-300)) throw ConfigError("superposition has zero norm");
    state.norm_factor = 1.0 / std::sqrt(norm2);
    return state;
}

void validate_rs_spec(const RSFamilySpec& spec)
{
    if (spec.n == 0) throw ConfigError("RS state needs at least one resonator");
    if (spec.R + spec.S > spec.n) {
        throw ConfigError("RS state requires R + S <= n (R=" + std::to_string(spec.R) +
                          ", S=" + std::to_string(spec.S) + ", n=" + std::to_string(spec.n) + ")");
    }
}

SuperpositionState make_rs_state(const RSFamilySpec& spec)
{
    validate_rs_spec(spec);
    const auto n = static_cast<Eigen::Index>(spec.n);
    const auto r = static_cast<Eigen::Index>(spec.R);
    const auto s = static_cast<Eigen::Index>(spec.S);
    CoherentLabel first{ComplexVector::Constant(n, spec.eta)};
    CoherentLabel second{ComplexVector::Constant(n, spec.eta)};
    first.beta.head(r).setConstant(spec.alpha);
    first.beta.segment(r, s).setConstant(-spec.alpha);
    second.beta.head(r).setConstant(-spec.alpha);
    second.beta.segment(r, s).setConstant(spec.alpha);

    // Coinciding branches (alpha = 0 or R = S = 0) collapse to one product.
    if (same_label(first.beta, second.beta)) {
        return make_superposition({{cplx{1.0, 0.0}, std::move(first)}});
    }
    const cplx second_weight = spec.sign == BranchSign::Plus ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    return make_superposition({{cplx{1.0, 0.0}, std::move(first)}, {second_weight, std::move(second)}});
}

SuperpositionState swap_resonators(const SuperpositionState& state, std::size_t m, std::size_t n)
{
    const std::size_t modes = state.modes();
    if (m >= modes || n >= modes) throw ConfigError("swap_resonators: index out of range");
    SuperpositionState out = state;
    for (auto& t : out.terms) {
        std::swap(t.label.beta(static_cast<Eigen::Index>(m)), t.label.beta(static_cast<Eigen::Index>(n)));
    }
    return out;
}

} // namespace resonet

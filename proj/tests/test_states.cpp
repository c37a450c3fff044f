// test_states.cpp — Coherent superpositions and the RS family

#include <doctest.h>

#include <cmath>

#include "resonet/errors.hpp"
#include "resonet/states.hpp"
#include "support.hpp"

using namespace resonet;

namespace {

CoherentLabel label(std::initializer_list<cplx> values)
{
    CoherentLabel l;
    l.beta.resize(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (cplx v : values) l.beta(i++) = v;
    return l;
}

// Independent norm: sum over Fock amplitudes of a single mode truncated far
// out, for one-mode states only.
double fock_norm_single_mode(const SuperpositionState& state)
{
    double total = 0.0;
    double log_fact = 0.0;
    for (int k = 0; k < 200; ++k) {
        if (k > 0) log_fact += std::log(static_cast<double>(k));
        cplx amp = 0.0;
        for (const auto& term : state.terms) {
            const cplx b = term.label.beta(0);
            if (std::abs(b) == 0.0) {
                if (k == 0) amp += term.weight;
                continue;
            }
            amp += term.weight * std::exp(-0.5 * std::norm(b) + static_cast<double>(k) * std::log(b) - 0.5 * log_fact);
        }
        total += std::norm(state.norm_factor * amp);
    }
    return total;
}

} // namespace

TEST_CASE("coherent_overlap")
{
    const cplx alpha{0.7, -0.4};
    const auto a = label({alpha});
    CHECK(std::abs(coherent_overlap(a, a) - 1.0) < 1e-15);
    CHECK(std::abs(coherent_overlap(a, label({-alpha})) - std::exp(-2.0 * std::norm(alpha))) < 1e-15);
    CHECK(std::abs(coherent_overlap(label({alpha, -alpha}), label({-alpha, alpha})) - std::exp(-4.0 * std::norm(alpha)))
          < 1e-15);
    CHECK_THROWS_AS(coherent_overlap(a, label({alpha, alpha})), ConfigError);

    for (int trial = 0; trial < 100; ++trial) {
        const auto x = label({test::random_complex(2.0), test::random_complex(2.0)});
        const auto y = label({test::random_complex(2.0), test::random_complex(2.0)});
        const cplx xy = coherent_overlap(x, y), yx = coherent_overlap(y, x);
        CHECK(std::abs(xy - std::conj(yx)) < 1e-15);
        CHECK(std::abs(xy) <= 1.0 + 1e-15);
        // |<x|y>|^2 = exp(-|x - y|^2)
        CHECK(std::abs(std::norm(xy) - std::exp(-(x.beta - y.beta).squaredNorm())) < 1e-14);
    }
}

TEST_CASE("make_rs_state examples")
{
    SUBCASE("R = S = 0 collapses to one product")
    {
        const auto s = make_rs_state({3, 0, 0, {1.0, 0.0}, {0.3, 0.2}, BranchSign::Minus});
        REQUIRE(s.terms.size() == 1);
        CHECK(std::abs(s.norm_factor * s.terms[0].weight) == doctest::Approx(1.0));
        CHECK(state_norm_squared(s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("even cat in resonator 1")
    {
        const cplx alpha{1.2, 0.3};
        const auto s = make_rs_state({1, 1, 0, alpha, {0.0, 0.0}, BranchSign::Plus});
        REQUIRE(s.terms.size() == 2);
        const double expected = 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * std::norm(alpha)));
        CHECK(s.norm_factor * std::abs(s.terms[0].weight) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(std::abs(s.terms[0].label.beta(0) - alpha) == 0.0);
        CHECK(std::abs(s.terms[1].label.beta(0) + alpha) == 0.0);
        CHECK(fock_norm_single_mode(s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("odd two-pair state")
    {
        const auto s = make_rs_state({4, 2, 2, {1.0, 0.0}, {0.0, 0.0}, BranchSign::Minus});
        const double expected = 1.0 / std::sqrt(2.0 - 2.0 * std::exp(-8.0));
        CHECK(s.norm_factor * std::abs(s.terms[0].weight) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(state_norm_squared(s) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(s.terms[0].label.beta(1) - 1.0) == 0.0);
        CHECK(std::abs(s.terms[0].label.beta(2) + 1.0) == 0.0);
    }
    CHECK_THROWS_AS(make_rs_state({2, 2, 1, {1.0, 0.0}, {}, BranchSign::Plus}), ConfigError);
    CHECK_THROWS_AS(make_rs_state({0, 0, 0, {1.0, 0.0}, {}, BranchSign::Plus}), ConfigError);
}

TEST_CASE("odd cat matches the Fock-space norm")
{
    const auto s = make_rs_state({1, 1, 0, {0.4, 0.0}, {}, BranchSign::Minus});
    CHECK(fock_norm_single_mode(s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("alpha = 0 gives a single product for any R, S and sign")
{
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t R = 0; R <= n; ++R)
            for (std::size_t S = 0; R + S <= n; ++S)
                for (auto sign : {BranchSign::Plus, BranchSign::Minus}) {
                    const auto s = make_rs_state({n, R, S, {0.0, 0.0}, {0.5, 0.0}, sign});
                    CHECK(s.terms.size() == 1);
                    CHECK(state_norm_squared(s) == doctest::Approx(1.0).epsilon(1e-12));
                }
}

TEST_CASE("normalization holds for random superpositions")
{
    for (int trial = 0; trial < 100; ++trial) {
        const int n = test::uniform_int(1, 5), terms = test::uniform_int(1, 5);
        std::vector<SuperpositionTerm> list;
        for (int r = 0; r < terms; ++r) {
            CoherentLabel l;
            l.beta.resize(n);
            for (int m = 0; m < n; ++m) l.beta(m) = test::random_complex(1.5);
            list.push_back({test::random_complex(1.0), l});
        }
        const auto s = make_superposition(list);
        CHECK(std::abs(state_norm_squared(s) - 1.0) < 1e-12);
        if (n == 1) CHECK(fock_norm_single_mode(s) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("make_superposition merges near-identical labels and rejects empty states")
{
    const auto a = label({cplx{0.5, 0.0}});
    auto b = a;
    b.beta(0) += 1e-16;
    const auto merged = make_superposition({{1.0, a}, {2.0, b}});
    CHECK(merged.terms.size() == 1);
    CHECK_THROWS_AS(make_superposition({}), ConfigError);
    CHECK_THROWS_AS(make_superposition({{1.0, a}, {-1.0, a}}), ConfigError);
    CHECK_THROWS_AS(make_superposition({{1.0, a}, {1.0, label({0.0, 0.0})}}), ConfigError);
}

TEST_CASE("swap_resonators")
{
    const auto s = make_rs_state({3, 1, 1, {0.8, 0.1}, {0.3, 0.0}, BranchSign::Plus});
    const auto same = swap_resonators(s, 1, 1);
    for (std::size_t r = 0; r < s.terms.size(); ++r) CHECK(same.terms[r].label.beta == s.terms[r].label.beta);

    const auto pair = make_superposition({{1.0, label({cplx{0.9, 0.0}, cplx{0.2, 0.1}})}});
    const auto swapped = swap_resonators(pair, 0, 1);
    CHECK(swapped.terms[0].label.beta(0) == cplx{0.2, 0.1});
    CHECK(swapped.terms[0].label.beta(1) == cplx{0.9, 0.0});
    CHECK(state_norm_squared(swapped) == doctest::Approx(1.0));
    CHECK_THROWS_AS(swap_resonators(pair, 0, 2), ConfigError);
}

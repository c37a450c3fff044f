// scenario.cpp — Scenario parsing and validation

#include "resonet/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "resonet/errors.hpp"
#include "resonet/evolve.hpp"

namespace resonet {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

double number(const json& j, const std::string& what)
{
    if (!j.is_number()) throw ConfigError(what + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(what + " must be finite");
    return v;
}

std::size_t count(const json& j, const std::string& what)
{
    if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError(what + " must be an integer");
    const long long v = j.get<long long>();
    if (v < 0) throw ConfigError(what + " must be nonnegative");
    return static_cast<std::size_t>(v);
}

cplx complex_value(const json& j, const std::string& what)
{
    if (j.is_number()) return {number(j, what), 0.0};
    if (!j.is_array() || j.size() != 2) throw ConfigError(what + " must be [re, im]");
    return {number(j[0], what), number(j[1], what)};
}

std::vector<double> number_list(const json& j, const std::string& what)
{
    if (!j.is_array()) throw ConfigError(what + " must be an array");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number(v, what));
    return out;
}

void parse_network(const json& j, ScenarioConfig& cfg)
{
    if (j.contains("n")) {
        DegenerateShorthand d;
        d.n = count(j.at("n"), "network.n");
        d.omega = number(require(j, "omega", "network"), "network.omega");
        d.lambda = number(require(j, "lambda", "network"), "network.lambda");
        if (j.contains("renormalize")) d.renormalize = j.at("renormalize").get<bool>();
        if (d.n == 0) throw ConfigError("network.n must be at least 1");
        if (!(d.omega > 0.0)) throw ConfigError("nonpositive frequency");
        const double bare = d.renormalize ? renormalized_frequency(d.omega, d.lambda, d.n) : d.omega;
        cfg.network = degenerate_network(d.n, bare, d.lambda);
        cfg.degenerate = d;
    } else {
        const auto omega = number_list(require(j, "omega", "network"), "network.omega");
        const auto& lam = require(j, "lambda", "network");
        if (!lam.is_array() || lam.size() != omega.size()) {
            throw ConfigError("network.lambda must be an n x n array");
        }
        const auto n = static_cast<Eigen::Index>(omega.size());
        cfg.network.omega = RealVector::Map(omega.data(), n);
        cfg.network.lambda.resize(n, n);
        for (Eigen::Index m = 0; m < n; ++m) {
            const auto row = number_list(lam[static_cast<std::size_t>(m)], "network.lambda");
            if (static_cast<Eigen::Index>(row.size()) != n) throw ConfigError("network.lambda must be square");
            for (Eigen::Index k = 0; k < n; ++k) cfg.network.lambda(m, k) = row[static_cast<std::size_t>(k)];
        }
    }
    validate_network(cfg.network);
}

void parse_reservoir(const json& j, ScenarioConfig& cfg)
{
    const auto kind = require(j, "kind", "reservoir").get<std::string>();
    auto& r = cfg.reservoir;
    if (j.contains("sigma")) r.sigma = number(j.at("sigma"), "reservoir.sigma");
    if (kind == "common_white_noise") {
        r.kind = ReservoirKind::CommonWhiteNoise;
        r.Gamma = number(require(j, "Gamma", "reservoir"), "reservoir.Gamma");
        r.epsilon = number(require(j, "epsilon", "reservoir"), "reservoir.epsilon");
    } else if (kind == "common_profile") {
        r.kind = ReservoirKind::CommonProfile;
        const auto& profiles = require(j, "profiles", "reservoir");
        if (!profiles.is_array() || profiles.size() != cfg.size()) {
            throw ConfigError("reservoir.profiles needs one entry per resonator");
        }
        const auto decomp = normal_modes(cfg.network);
        const auto modes = distinct_modes(decomp);
        const double xi = default_width(decomp);
        for (const auto& p : profiles) {
            CouplingProfile profile;
            profile.amplitude = number(require(p, "amplitude", "profile"), "profile.amplitude");
            profile.centers = p.contains("centers") ? number_list(p.at("centers"), "profile.centers") : modes;
            profile.widths = p.contains("widths") ? number_list(p.at("widths"), "profile.widths")
                                                  : std::vector<double>(profile.centers.size(), xi);
            r.profiles.push_back(std::move(profile));
        }
    } else if (kind == "distinct_strong") {
        r.kind = ReservoirKind::DistinctStrongCoupling;
        r.gamma_plus = number(require(j, "gamma_plus", "reservoir"), "reservoir.gamma_plus");
        r.gamma_minus = number(require(j, "gamma_minus", "reservoir"), "reservoir.gamma_minus");
    } else {
        throw ConfigError("unknown reservoir kind \"" + kind + "\"");
    }
    validate_reservoir(r);
}

void parse_state(const json& j, ScenarioConfig& cfg)
{
    const auto type = require(j, "type", "state").get<std::string>();
    if (type == "rs") {
        RSFamilySpec spec;
        spec.n = j.contains("n") ? count(j.at("n"), "state.n") : cfg.size();
        if (spec.n != cfg.size()) throw ConfigError("state.n does not match the network size");
        spec.R = count(require(j, "R", "state"), "state.R");
        spec.S = count(require(j, "S", "state"), "state.S");
        spec.alpha = complex_value(require(j, "alpha", "state"), "state.alpha");
        spec.eta = j.contains("eta") ? complex_value(j.at("eta"), "state.eta") : cplx{0.0, 0.0};
        const auto sign = j.contains("sign") ? j.at("sign").get<std::string>() : std::string("plus");
        if (sign == "plus" || sign == "+") {
            spec.sign = BranchSign::Plus;
        } else if (sign == "minus" || sign == "-") {
            spec.sign = BranchSign::Minus;
        } else {
            throw ConfigError("state.sign must be \"plus\" or \"minus\"");
        }
        cfg.state = make_rs_state(spec);
        cfg.rs = spec;
    } else if (type == "explicit") {
        const auto& terms = require(j, "terms", "state");
        if (!terms.is_array() || terms.empty()) throw ConfigError("state.terms must be a nonempty array");
        std::vector<SuperpositionTerm> parsed;
        for (const auto& t : terms) {
            SuperpositionTerm term;
            term.weight = complex_value(require(t, "weight", "state.terms"), "term weight");
            const auto& beta = require(t, "beta", "state.terms");
            if (!beta.is_array() || beta.size() != cfg.size()) {
                throw ConfigError("each term needs one amplitude per resonator");
            }
            term.label.beta.resize(static_cast<Eigen::Index>(beta.size()));
            for (std::size_t m = 0; m < beta.size(); ++m) {
                term.label.beta(static_cast<Eigen::Index>(m)) = complex_value(beta[m], "beta");
            }
            parsed.push_back(std::move(term));
        }
        cfg.state = make_superposition(std::move(parsed));
    } else {
        throw ConfigError("unknown state type \"" + type + "\"");
    }
}

} // namespace

std::vector<double> ScenarioConfig::time_grid() const
{
    return uniform_grid(t_max, steps);
}

ScenarioConfig load_scenario(const json& j)
{
    if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
    try {
        ScenarioConfig cfg;
        cfg.source = j;
        parse_network(require(j, "network", "scenario"), cfg);
        parse_reservoir(require(j, "reservoir", "scenario"), cfg);
        parse_state(require(j, "state", "scenario"), cfg);
        if (j.contains("evolution")) {
            const auto& e = j.at("evolution");
            cfg.t_max = number(require(e, "t_max", "evolution"), "evolution.t_max");
            cfg.steps = count(require(e, "steps", "evolution"), "evolution.steps");
        }
        if (!(cfg.t_max > 0.0)) throw ConfigError("evolution.t_max must be positive");
        if (cfg.steps < 2) throw ConfigError("evolution.steps must be at least 2");
        if (j.contains("oracle")) {
            const auto& o = j.at("oracle");
            if (o.contains("enabled")) cfg.oracle_enabled = o.at("enabled").get<bool>();
            if (o.contains("cutoff_override") && !o.at("cutoff_override").is_null()) {
                cfg.cutoff_override = static_cast<int>(count(o.at("cutoff_override"), "oracle.cutoff_override"));
            }
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            if (o.contains("directory")) cfg.output_directory = o.at("directory").get<std::string>();
            if (o.contains("formats")) {
                cfg.formats.clear();
                for (const auto& f : o.at("formats")) {
                    const auto name = f.get<std::string>();
                    if (name != "csv" && name != "json" && name != "svg") {
                        throw ConfigError("unknown output format \"" + name + "\"");
                    }
                    cfg.formats.insert(name);
                }
            }
        }
        scenario_decay_matrix(cfg);
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed scenario: ") + e.what());
    }
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return load_scenario(j);
}

DecayMatrix scenario_decay_matrix(const ScenarioConfig& cfg)
{
    const auto& r = cfg.reservoir;
    switch (r.kind) {
    case ReservoirKind::CommonWhiteNoise:
        return decay_matrix_common(cfg.size(), r.Gamma, r.epsilon);
    case ReservoirKind::CommonProfile: {
        const auto decomp = normal_modes(cfg.network);
        return decay_matrix_from_correlations(decomp, [&](std::size_t m, std::size_t mp, double freq) {
            return correlation_coupled_at(r, m, mp, freq);
        });
    }
    case ReservoirKind::DistinctStrongCoupling:
        return gamma_tilde_distinct(cfg.size(), r.gamma_plus, r.gamma_minus);
    }
    throw ConfigError("unknown reservoir kind");
}

} // namespace resonet

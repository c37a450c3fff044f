// scenario.hpp — JSON scenario configuration for the command-line tool
//
// {
//   "network":   {"omega": [...], "lambda": [[...]]}
//              | {"n": 3, "omega": 5.0, "lambda": 0.1, "renormalize": false},
//   "reservoir": {"kind": "common_white_noise", "Gamma": 1, "epsilon": 1}
//              | {"kind": "common_profile", "sigma": 1,
//                 "profiles": [{"amplitude": 1, "centers": [...], "widths": [...]}, ...]}
//              | {"kind": "distinct_strong", "gamma_plus": 1, "gamma_minus": 0},
//   "state":     {"type": "rs", "R": 1, "S": 0, "alpha": [re, im], "eta": [re, im], "sign": "plus"}
//              | {"type": "explicit", "terms": [{"weight": [re, im], "beta": [[re, im], ...]}]},
//   "evolution": {"t_max": 3.0, "steps": 60},
//   "oracle":    {"enabled": true, "cutoff_override": 0},
//   "output":    {"directory": "out", "formats": ["csv", "json", "svg"]}
// }

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "resonet/netcore.hpp"
#include "resonet/reservoir.hpp"
#include "resonet/states.hpp"

namespace resonet {

struct DegenerateShorthand {
    std::size_t n = 1;
    double omega = 1.0;
    double lambda = 0.0;
    bool renormalize = false;  // use the coupling-renormalized bare frequency
};

struct ScenarioConfig {
    nlohmann::json source;  // validated input, kept for parameter sweeps
    NetworkSpec network;
    std::optional<DegenerateShorthand> degenerate;
    ReservoirSpec reservoir;
    SuperpositionState state;
    std::optional<RSFamilySpec> rs;
    double t_max = 1.0;
    std::size_t steps = 2;
    bool oracle_enabled = false;
    int cutoff_override = 0;
    std::filesystem::path output_directory = "out";
    std::set<std::string> formats{"csv", "json"};

    std::size_t size() const { return network.size(); }
    std::vector<double> time_grid() const;
};

// Every module invariant is revalidated; violations throw ConfigError.
ScenarioConfig load_scenario(const nlohmann::json& j);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

// Decay matrix of the configured reservoir on the configured network.
DecayMatrix scenario_decay_matrix(const ScenarioConfig& cfg);

} // namespace resonet

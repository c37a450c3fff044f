// commands.cpp — Subcommand implementations and argument parsing

#include "resonet/commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "resonet/dfs.hpp"
#include "resonet/errors.hpp"
#include "resonet/evolve.hpp"
#include "resonet/io.hpp"
#include "resonet/oracle.hpp"
#include "resonet/parallel.hpp"

namespace resonet::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

bool wants(const ScenarioConfig& cfg, const char* format)
{
    return cfg.formats.count(format) > 0;
}

void write_json(const fs::path& path, const json& j)
{
    io::write_file_atomic(path, j.dump(2) + "\n");
}

json matrix_json(const RealMatrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(io::json_number(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

RateSplit scenario_rates(const ScenarioConfig& cfg, const RealMatrix& gamma)
{
    if (cfg.reservoir.kind == ReservoirKind::CommonWhiteNoise) {
        return effective_rates(cfg.size(), cfg.reservoir.Gamma, cfg.reservoir.epsilon);
    }
    const auto values = linalg::jacobi_eigen(gamma).values;
    return {values.minCoeff(), values.maxCoeff()};
}

double tau_formula(const ScenarioConfig& cfg, const RealMatrix& gamma)
{
    if (cfg.rs && cfg.reservoir.kind == ReservoirKind::CommonWhiteNoise && std::abs(cfg.rs->alpha) > 0.0) {
        return decoherence_time_formula(*cfg.rs, cfg.reservoir.Gamma, cfg.reservoir.epsilon);
    }
    double tau = kInfinity;
    const auto& terms = cfg.state.terms;
    for (std::size_t r = 0; r < terms.size(); ++r) {
        for (std::size_t s = r + 1; s < terms.size(); ++s) {
            tau = std::min(tau, decoherence_time_pair(gamma, terms[r].label, terms[s].label));
        }
    }
    return tau;
}

double tau_numeric(const Trajectory& traj)
{
    double tau = kInfinity;
    for (std::size_t r = 0; r < traj.terms(); ++r) {
        for (std::size_t s = r + 1; s < traj.terms(); ++s) tau = std::min(tau, decoherence_time_numeric(traj, r, s));
    }
    return tau;
}

Trajectory scenario_trajectory(const ScenarioConfig& cfg, const std::vector<double>& times)
{
    const auto gamma = scenario_decay_matrix(cfg);
    return propagate(cfg.state, drift_matrix(cfg.network, gamma.gamma), times);
}

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn)
{
    try {
        return fn();
    } catch (const ConfigError& e) {
        log << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalError& e) {
        log << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

std::optional<Regime> scenario_regime(const ScenarioConfig& cfg, ClassifyParams& params)
{
    const auto& r = cfg.reservoir;
    switch (r.kind) {
    case ReservoirKind::CommonWhiteNoise:
        params.Gamma = r.Gamma;
        params.epsilon = r.epsilon;
        return r.epsilon >= 1.0 - 1e-6 ? Regime::CommonEps1 : Regime::CommonEpsSmall;
    case ReservoirKind::DistinctStrongCoupling:
        params.gamma_plus = r.gamma_plus;
        params.gamma_minus = r.gamma_minus;
        return Regime::DistinctStrong;
    case ReservoirKind::CommonProfile:
        break;
    }
    return std::nullopt;
}

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("invalid sweep value \"" + item + "\"");
        }
    }
    if (out.empty()) throw ConfigError("--sweep-values needs at least one value");
    return out;
}

// Applies one sweep value to the scenario source and reloads it.
ScenarioConfig sweep_point(const ScenarioConfig& base, const std::string& parameter, double value)
{
    json j = base.source;
    if (parameter == "epsilon") {
        if (j["reservoir"].value("kind", "") != "common_white_noise") {
            throw ConfigError("epsilon sweep requires a common_white_noise reservoir");
        }
        j["reservoir"]["epsilon"] = value;
    } else if (parameter == "N") {
        if (!j["network"].contains("n")) throw ConfigError("N sweep requires the degenerate network shorthand");
        if (value < 1.0 || value != std::floor(value)) throw ConfigError("N must be a positive integer");
        const auto n = static_cast<long long>(value);
        j["network"]["n"] = n;
        if (j["state"].value("type", "") != "rs") throw ConfigError("N sweep requires an rs state");
        if (j["state"].contains("n")) j["state"]["n"] = n;
        if (j["reservoir"].value("kind", "") == "common_profile") {
            throw ConfigError("N sweep is not supported for per-resonator coupling profiles");
        }
    } else if (parameter == "alpha") {
        if (j["state"].value("type", "") != "rs") throw ConfigError("alpha sweep requires an rs state");
        j["state"]["alpha"] = json::array({value, 0.0});
    } else if (parameter == "lambda") {
        if (!j["network"].contains("n")) throw ConfigError("lambda sweep requires the degenerate network shorthand");
        j["network"]["lambda"] = value;
    } else {
        throw ConfigError("unknown sweep parameter \"" + parameter + "\"");
    }
    return load_scenario(j);
}

} // namespace

int cmd_modes(const ScenarioConfig& cfg, const fs::path& out, std::ostream& log, std::ostream& err)
{
    return guarded(err, [&] {
        fs::create_directories(out);
        const auto decomp = normal_modes(cfg.network);
        json j;
        j["Omega"] = json::array();
        for (Eigen::Index i = 0; i < decomp.Omega.size(); ++i) j["Omega"].push_back(io::json_number(decomp.Omega(i)));
        j["C"] = matrix_json(decomp.C);
        j["C_symmetric"] = decomp.is_symmetric();
        if (wants(cfg, "json")) write_json(out / "modes.json", j);
        log << "Omega:";
        for (Eigen::Index i = 0; i < decomp.Omega.size(); ++i) log << ' ' << io::format_double(decomp.Omega(i));
        log << "\n";
        return int{kOk};
    });
}

int cmd_evolve(const ScenarioConfig& cfg, const fs::path& out, std::ostream& log, std::ostream& err)
{
    return guarded(err, [&] {
        fs::create_directories(out);
        const auto gamma = scenario_decay_matrix(cfg).gamma;
        const auto traj = scenario_trajectory(cfg, cfg.time_grid());
        const auto rates = scenario_rates(cfg, gamma);

        json summary;
        summary["n"] = cfg.size();
        summary["terms"] = traj.terms();
        summary["gamma_down"] = io::json_number(rates.gamma_down);
        summary["gamma_up"] = io::json_number(rates.gamma_up);
        summary["tau_d_formula"] = io::json_number(tau_formula(cfg, gamma));
        summary["tau_d_numeric"] = io::json_number(tau_numeric(traj));
        if (wants(cfg, "csv")) io::write_file_atomic(out / "trajectory.csv", io::trajectory_csv(traj));
        if (wants(cfg, "json")) write_json(out / "summary.json", summary);
        if (wants(cfg, "svg")) {
            std::vector<double> t, occ, pur, coh;
            for (const auto& p : traj.points) {
                t.push_back(p.time);
                occ.push_back(p.obs.total_occupation);
                pur.push_back(p.obs.purity);
                if (traj.terms() > 1) coh.push_back(std::abs(p.coefficients(0, 1)));
            }
            io::write_file_atomic(out / "occupation.svg", io::svg_line_chart("Total occupation", "time", "occ_total", t, occ));
            io::write_file_atomic(out / "purity.svg", io::svg_line_chart("Purity", "time", "purity", t, pur));
            if (!coh.empty()) {
                io::write_file_atomic(out / "coherence.svg", io::svg_line_chart("Coherence |c_12|", "time", "coh_1_2", t, coh));
            }
        }
        log << "gamma_down=" << io::format_double(rates.gamma_down) << " gamma_up=" << io::format_double(rates.gamma_up)
            << " tau_d_formula=" << summary["tau_d_formula"].dump() << " tau_d_numeric=" << summary["tau_d_numeric"].dump()
            << "\n";
        return int{kOk};
    });
}

int cmd_classify(const ScenarioConfig& cfg, const fs::path& out, std::ostream& log, std::ostream& err)
{
    return guarded(err, [&] {
        ClassifyParams params;
        const auto regime = scenario_regime(cfg, params);
        if (!regime) throw ConfigError("classify supports common_white_noise and distinct_strong reservoirs");
        params.regime = *regime;
        const auto report = classify(cfg.state, cfg.rs, params);
        fs::create_directories(out);
        const json j = to_json(report);
        if (wants(cfg, "json")) write_json(out / "classification.json", j);
        log << j.dump() << "\n";
        return int{kOk};
    });
}

int cmd_oracle_compare(const ScenarioConfig& cfg, const fs::path& out, double threshold, std::ostream& log, std::ostream& err)
{
    return guarded(err, [&] {
        if (!cfg.oracle_enabled) throw ConfigError("oracle-compare requires oracle.enabled = true");
        if (!(threshold > 0.0)) throw ConfigError("--threshold must be positive");
        oracle::FockBasisSpec basis{cfg.size(), cfg.cutoff_override > 0 ? cfg.cutoff_override
                                                                         : oracle::select_cutoff(cfg.state)};
        oracle::validate_basis(basis);
        const double tail = oracle::check_cutoff(cfg.state, basis);

        const auto times = cfg.time_grid();
        const auto gamma = scenario_decay_matrix(cfg).gamma;
        const auto traj = propagate(cfg.state, drift_matrix(cfg.network, gamma), times);
        const auto gen = oracle::build_generator(cfg.network, gamma, basis);
        const auto numeric = oracle::integrate(oracle::embed_state(cfg.state, basis), gen, times);
        const auto report = oracle::compare(traj, numeric.states, basis);

        fs::create_directories(out);
        if (wants(cfg, "csv")) {
            std::ostringstream csv;
            csv << "time,trace_distance\n";
            for (std::size_t i = 0; i < report.times.size(); ++i) {
                csv << io::format_double(report.times[i]) << ',' << io::format_double(report.distances[i]) << '\n';
            }
            io::write_file_atomic(out / "oracle.csv", csv.str());
        }
        const bool passed = report.max_distance <= threshold;
        json summary;
        summary["max_distance"] = io::json_number(report.max_distance);
        summary["threshold"] = io::json_number(threshold);
        summary["step_size"] = io::json_number(numeric.step);
        summary["total_steps"] = numeric.total_steps;
        summary["cutoff"] = basis.cutoff;
        summary["dimension"] = basis.dimension();
        summary["tail_mass"] = io::json_number(tail);
        summary["passed"] = passed;
        if (wants(cfg, "json")) write_json(out / "oracle_summary.json", summary);
        if (wants(cfg, "svg")) {
            io::write_file_atomic(out / "oracle.svg", io::svg_line_chart("Trace distance analytic vs oracle", "time",
                                                                         "trace_distance", report.times, report.distances));
        }
        log << "max trace distance " << io::format_double(report.max_distance) << " (threshold "
            << io::format_double(threshold) << ", cutoff " << basis.cutoff << ")\n";
        return passed ? int{kOk} : int{kValidationMismatch};
    });
}

int cmd_sweep(const ScenarioConfig& cfg, const SweepRequest& sweep, const fs::path& out, std::ostream& log,
              std::ostream& err)
{
    return guarded(err, [&] {
        if (sweep.values.empty()) throw ConfigError("sweep needs at least one value");
        if (sweep.parameter != "epsilon" && sweep.parameter != "N" && sweep.parameter != "alpha" &&
            sweep.parameter != "lambda") {
            throw ConfigError("unknown sweep parameter \"" + sweep.parameter + "\"");
        }
        struct Row {
            bool ok = false;
            std::string error;
            RateSplit rates;
            double tau_formula = 0.0;
            double tau_numeric = 0.0;
        };
        std::vector<Row> rows(sweep.values.size());
        parallel_for(rows.size(), [&](std::size_t i) {
            Row& row = rows[i];
            try {
                const auto point = sweep_point(cfg, sweep.parameter, sweep.values[i]);
                const auto gamma = scenario_decay_matrix(point).gamma;
                const auto grid = point.time_grid();
                const auto traj = scenario_trajectory(point, {grid[0], grid[1]});
                row.rates = scenario_rates(point, gamma);
                row.tau_formula = tau_formula(point, gamma);
                row.tau_numeric = tau_numeric(traj);
                row.ok = true;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        });

        fs::create_directories(out);
        std::ostringstream csv;
        csv << sweep.parameter << ",gamma_down,gamma_up,tau_d_formula,tau_d_numeric\n";
        json errors = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            if (!row.ok) {
                errors.push_back({{"value", io::json_number(sweep.values[i])}, {"error", row.error}});
                err << "sweep point " << io::format_double(sweep.values[i]) << " invalid: " << row.error << "\n";
                continue;
            }
            csv << io::format_double(sweep.values[i]) << ',' << io::format_double(row.rates.gamma_down) << ','
                << io::format_double(row.rates.gamma_up) << ',' << io::format_double(row.tau_formula) << ','
                << io::format_double(row.tau_numeric) << '\n';
        }
        if (wants(cfg, "csv")) io::write_file_atomic(out / "sweep.csv", csv.str());
        json summary;
        summary["parameter"] = sweep.parameter;
        summary["points"] = rows.size();
        summary["valid_points"] = rows.size() - errors.size();
        summary["partial"] = !errors.empty();
        summary["errors"] = errors;
        if (wants(cfg, "json")) write_json(out / "sweep_summary.json", summary);
        log << "sweep " << sweep.parameter << ": " << rows.size() - errors.size() << " of " << rows.size()
            << " points valid\n";
        return errors.empty() ? int{kOk} : int{kConfigError};
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"resonet: dissipative dynamics of coupled resonator networks"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir;
    double threshold = 5e-3;
    std::string sweep_param;
    std::string sweep_values;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Scenario JSON file")->required();
        sub->add_option("--out", out_dir, "Output directory (default ./out)");
    };
    auto* modes = app.add_subcommand("modes", "Normal-mode decomposition");
    auto* evolve = app.add_subcommand("evolve", "Analytic trajectory and decoherence times");
    auto* classify_cmd = app.add_subcommand("classify", "Decoherence-/relaxation-free classification");
    auto* oracle_cmd = app.add_subcommand("oracle-compare", "Validate against the truncated-Fock integrator");
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep of rates and decoherence times");
    for (auto* sub : {modes, evolve, classify_cmd, oracle_cmd, sweep}) add_common(sub);
    oracle_cmd->add_option("--threshold", threshold, "Maximum accepted trace distance");
    sweep->add_option("--sweep-param", sweep_param, "epsilon | N | alpha | lambda")->required();
    sweep->add_option("--sweep-values", sweep_values, "Comma-separated values")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kConfigError;
    }

    ScenarioConfig cfg;
    try {
        cfg = load_scenario_file(config_path);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }
    const fs::path dir = !out_dir.empty() ? fs::path(out_dir)
                         : cfg.source.contains("output") && cfg.source["output"].contains("directory")
                             ? cfg.output_directory
                             : fs::path("out");

    if (modes->parsed()) return cmd_modes(cfg, dir, out, err);
    if (evolve->parsed()) return cmd_evolve(cfg, dir, out, err);
    if (classify_cmd->parsed()) return cmd_classify(cfg, dir, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle_compare(cfg, dir, threshold, out, err);
    SweepRequest request;
    request.parameter = sweep_param;
    try {
        request.values = parse_values(sweep_values);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }
    return cmd_sweep(cfg, request, dir, out, err);
}

} // namespace resonet::cli

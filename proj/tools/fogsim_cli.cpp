// Copyright 2026 The fogsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fogsim/generator.hpp"
#include "fogsim/market.hpp"
#include "fogsim/scenario.hpp"
#include "fogsim/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void add_generator_options(CLI::App* cmd, fogsim::GeneratorParams& params)
{
    cmd->add_option("--n-dss", params.n_dss, "Number of subscribers");
    cmd->add_option("--n-dso", params.n_dso, "Number of operators");
    cmd->add_option("--n-fn", params.n_fn, "Number of fog nodes");
    cmd->add_option("--diameter", params.district_diameter,
                    "District diameter in km");
    cmd->add_option("--mu", params.mu, "Service rate per CRB (1/ms)");
    cmd->add_option("--t-th", params.t_th, "Delay tolerance (ms)");
    cmd->add_option("--lambda-mean", params.lambda_mean,
                    "Mean workload arrival rate (jobs/ms)");
    cmd->add_option("--rent-lo", params.rent_lo, "Lower rent bound");
    cmd->add_option("--rent-hi", params.rent_hi, "Upper rent bound");
    cmd->add_option("--capacity-lo", params.capacity_lo, "Lower capacity bound");
    cmd->add_option("--capacity-hi", params.capacity_hi, "Upper capacity bound");
    cmd->add_option("--alpha", params.alpha, "Revenue weight");
    cmd->add_option("--beta", params.beta, "Payment weight");
    cmd->add_option("--gamma", params.gamma, "Delay-cost weight");
    cmd->add_option("--theta", params.theta, "Network delay per km (ms/km)");
    cmd->add_option("--kappa", params.kappa, "Transmission cost per CRB*km");
    cmd->add_option("--cloud-distance", params.cloud_distance,
                    "Distance to the data center (km)");
    cmd->add_option("--cloud-unit-cost", params.cloud_unit_cost,
                    "Data-center cost per CRB");
    cmd->add_option("--seed", params.seed, "RNG seed");
}

// Grid syntax: "lo:hi:step" (inclusive) or a comma list "a,b,c".
std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream iss(text);
        if (!(iss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
            step <= 0 || hi < lo) {
            throw CLI::ValidationError("--grid", "expected lo:hi:step");
        }
        for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::abs(hi));
             v += step) {
            grid.push_back(v);
        }
    } else {
        std::istringstream iss(text);
        std::string tok;
        while (std::getline(iss, tok, ',')) {
            try {
                grid.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--grid", "cannot parse value: " + tok);
            }
        }
    }
    if (grid.empty()) {
        throw CLI::ValidationError("--grid", "empty grid");
    }
    return grid;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream ofs(path);
    if (!ofs) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    ofs << text;
}

int cmd_run(const std::string& scenario_path, const fogsim::GeneratorParams& params,
            const std::string& out_path, bool baseline,
            const std::string& trace_path, const std::string& save_path)
{
    fogsim::Scenario scenario = scenario_path.empty()
                                    ? fogsim::generate_scenario(params)
                                    : fogsim::load_scenario(scenario_path);
    if (!save_path.empty()) {
        fogsim::save_scenario(scenario, save_path);
    }

    fogsim::MarketTrace trace;
    const bool want_trace = !trace_path.empty() && !baseline;
    const fogsim::MarketOutcome outcome =
        baseline ? fogsim::cloud_only_baseline(scenario)
                 : fogsim::run_market(scenario, want_trace ? &trace : nullptr);

    if (want_trace) {
        nlohmann::json t;
        t["dso_fn"] = fogsim::trace_to_json(trace.dso_fn);
        t["fn_dss"] = nlohmann::json::object();
        for (const auto& [dso_id, rows] : trace.fn_dss) {
            t["fn_dss"][std::to_string(dso_id)] = fogsim::trace_to_json(rows);
        }
        write_text(trace_path, t.dump(2) + "\n");
    }

    for (std::size_t i = 0; i < outcome.utilities.dso.size(); ++i) {
        if (outcome.utilities.dso[i] < 0.0) {
            std::cerr << "note: DSO " << i
                      << " runs at a loss (utility "
                      << fogsim::format_double(outcome.utilities.dso[i])
                      << "); demand is served regardless\n";
        }
    }

    write_text(out_path, fogsim::outcome_to_json(outcome).dump(2) + "\n");
    return kExitOk;
}

int cmd_validate(const std::string& scenario_path)
{
    std::ifstream ifs(scenario_path);
    if (!ifs) {
        std::cerr << "cannot open scenario file: " << scenario_path << "\n";
        return kExitFailure;
    }
    nlohmann::json j;
    try {
        ifs >> j;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "cannot parse scenario file: " << e.what() << "\n";
        return kExitFailure;
    }

    fogsim::Scenario s;
    try {
        s = fogsim::scenario_from_json(j);
    } catch (const fogsim::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitFailure;
    }
    std::cout << "ok: " << s.dsss.size() << " DSSs, " << s.dsos.size()
              << " DSOs, " << s.fns.size() << " FNs\n";
    return kExitOk;
}

int cmd_sweep(const fogsim::SweepSpec& spec, const std::string& out_path,
              const std::string& format)
{
    const std::vector<fogsim::SweepRow> rows = fogsim::run_sweep(spec);

    int failed = 0;
    for (const auto& row : rows) {
        if (row.failed) {
            ++failed;
            std::cerr << "point " << fogsim::variable_name(spec.variable) << "="
                      << fogsim::format_double(row.value) << " rep "
                      << row.replicate << " failed: " << row.error << "\n";
        }
    }

    if (format == "json") {
        write_text(out_path, fogsim::sweep_to_json(spec, rows).dump(2) + "\n");
    } else {
        write_text(out_path, fogsim::sweep_to_csv(spec, rows));
    }
    return failed == 0 ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Three-tier fog computing market simulator"};
    app.require_subcommand(1);

    fogsim::GeneratorParams run_params;
    std::string run_scenario;
    std::string run_out;
    std::string run_trace;
    std::string run_save;
    bool run_baseline = false;
    CLI::App* run = app.add_subcommand(
        "run", "Run one market and emit the outcome as JSON");
    run->add_option("--scenario", run_scenario,
                    "Scenario file (otherwise a scenario is generated)");
    run->add_option("--out", run_out, "Output file (default: stdout)");
    run->add_option("--trace", run_trace,
                    "Write the matching proposal log to this file");
    run->add_option("--save-scenario", run_save,
                    "Write the scenario (generated or loaded) to this file");
    run->add_flag("--baseline", run_baseline,
                  "Serve everything from the data center (no matching)");
    add_generator_options(run, run_params);

    fogsim::GeneratorParams sweep_params;
    std::string sweep_var = "n_dss";
    std::string sweep_grid;
    std::string sweep_out;
    std::string sweep_format = "csv";
    int sweep_reps = 30;
    int sweep_workers = 1;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Sweep one generator parameter and tabulate tier utilities");
    sweep->add_option("--var", sweep_var,
                      "Swept variable: n_dss, lambda_mean, mu, t_th, n_fn")
        ->required();
    sweep->add_option("--grid", sweep_grid, "Grid: lo:hi:step or a,b,c")
        ->required();
    sweep->add_option("--reps", sweep_reps, "Replicates per grid point");
    sweep->add_option("--out", sweep_out, "Output file (default: stdout)");
    sweep->add_option("--format", sweep_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--workers", sweep_workers, "Worker threads");
    add_generator_options(sweep, sweep_params);

    std::string validate_scenario_path;
    CLI::App* validate = app.add_subcommand(
        "validate", "Check a scenario file against every invariant");
    validate->add_option("--scenario", validate_scenario_path, "Scenario file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_scenario, run_params, run_out, run_baseline,
                           run_trace, run_save);
        }
        if (validate->parsed()) {
            return cmd_validate(validate_scenario_path);
        }
        if (sweep->parsed()) {
            const auto var = fogsim::parse_variable(sweep_var);
            if (!var) {
                std::cerr << "unknown sweep variable: " << sweep_var << "\n";
                return kExitUsage;
            }
            fogsim::SweepSpec spec;
            spec.variable = *var;
            spec.grid = parse_grid(sweep_grid);
            spec.replications = sweep_reps;
            spec.base = sweep_params;
            spec.workers = sweep_workers;
            return cmd_sweep(spec, sweep_out, sweep_format);
        }
    } catch (const fogsim::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

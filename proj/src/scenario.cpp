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

#include "fogsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fogsim {

namespace {

std::string agent_tag(const char* kind, int id)
{
    std::ostringstream oss;
    oss << kind << " " << id;
    return oss.str();
}

bool is_permutation_of_dsos(const PreferenceList& pref, std::size_t n_dso)
{
    if (pref.size() != n_dso) {
        return false;
    }
    std::vector<bool> seen(n_dso, false);
    for (int id : pref) {
        if (id < 0 || static_cast<std::size_t>(id) >= n_dso || seen[id]) {
            return false;
        }
        seen[id] = true;
    }
    return true;
}

} // namespace

std::vector<std::string> validate_scenario(const Scenario& s)
{
    std::vector<std::string> violations;
    auto flag = [&violations](const std::string& msg) { violations.push_back(msg); };

    if (!(s.mu > 0.0)) {
        flag("mu must be positive");
    }
    if (!(s.t_th > 0.0)) {
        flag("t_th must be positive");
    }
    if (!(s.theta >= 0.0)) {
        flag("theta must be non-negative");
    }
    if (!(s.kappa >= 0.0)) {
        flag("kappa must be non-negative");
    }
    if (!(s.cloud_distance >= 0.0)) {
        flag("cloud_distance must be non-negative");
    }

    const std::size_t n_dso = s.dsos.size();

    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        const DssAgent& dss = s.dsss[j];
        const std::string tag = agent_tag("DSS", dss.id);
        if (dss.id != static_cast<int>(j)) {
            flag(tag + ": id must equal its index " + std::to_string(j));
        }
        if (!std::isfinite(dss.position.x) || !std::isfinite(dss.position.y)) {
            flag(tag + ": position must be finite");
        }
        if (!(dss.arrival_rate > 0.0)) {
            flag(tag + ": arrival_rate must be positive");
        }
        if (!(dss.alpha > 0.0) || !(dss.beta > 0.0) || !(dss.gamma > 0.0)) {
            flag(tag + ": alpha, beta, gamma must be positive");
        }
        if (!is_permutation_of_dsos(dss.dso_pref, n_dso)) {
            flag(tag + ": dso_pref must be a permutation of all DSO ids");
        }
        // The delay bound is unsatisfiable at any finite purchase once
        // lambda reaches mu * t_th.
        if (s.mu > 0.0 && s.t_th > 0.0 && !(s.mu * s.t_th > dss.arrival_rate)) {
            flag(tag + ": delay bound unsatisfiable (arrival_rate >= mu * t_th)");
        }
    }

    for (std::size_t i = 0; i < s.dsos.size(); ++i) {
        const DsoAgent& dso = s.dsos[i];
        const std::string tag = agent_tag("DSO", dso.id);
        if (dso.id != static_cast<int>(i)) {
            flag(tag + ": id must equal its index " + std::to_string(i));
        }
        if (!(dso.cloud_unit_cost >= 0.0)) {
            flag(tag + ": cloud_unit_cost must be non-negative");
        }
    }

    for (std::size_t k = 0; k < s.fns.size(); ++k) {
        const FogNodeAgent& fn = s.fns[k];
        const std::string tag = agent_tag("FN", fn.id);
        if (fn.id != static_cast<int>(k)) {
            flag(tag + ": id must equal its index " + std::to_string(k));
        }
        if (!std::isfinite(fn.position.x) || !std::isfinite(fn.position.y)) {
            flag(tag + ": position must be finite");
        }
        if (!(fn.rent >= 0.0)) {
            flag(tag + ": rent must be non-negative");
        }
        if (!(fn.capacity >= 0.0)) {
            flag(tag + ": capacity must be non-negative");
        }
        if (fn.dso_weights.size() != n_dso) {
            flag(tag + ": dso_weights must have one entry per DSO");
        } else {
            for (std::size_t i = 0; i < n_dso; ++i) {
                if (!(fn.dso_weights[i] >= 0.0) || !(fn.dso_weights[i] <= 1.0)) {
                    flag(tag + ": dso_weights[" + std::to_string(i) +
                         "] must lie in [0,1]");
                    break;
                }
            }
        }
    }

    return violations;
}

nlohmann::json scenario_to_json(const Scenario& s)
{
    nlohmann::json j;
    j["mu"] = s.mu;
    j["t_th"] = s.t_th;
    j["theta"] = s.theta;
    j["kappa"] = s.kappa;
    j["cloud_distance"] = s.cloud_distance;
    j["seed"] = s.seed;

    j["dsss"] = nlohmann::json::array();
    for (const DssAgent& dss : s.dsss) {
        j["dsss"].push_back({
            {"id", dss.id},
            {"position", {{"x", dss.position.x}, {"y", dss.position.y}}},
            {"arrival_rate", dss.arrival_rate},
            {"alpha", dss.alpha},
            {"beta", dss.beta},
            {"gamma", dss.gamma},
            {"dso_pref", dss.dso_pref},
        });
    }

    j["dsos"] = nlohmann::json::array();
    for (const DsoAgent& dso : s.dsos) {
        j["dsos"].push_back({
            {"id", dso.id},
            {"cloud_unit_cost", dso.cloud_unit_cost},
        });
    }

    j["fns"] = nlohmann::json::array();
    for (const FogNodeAgent& fn : s.fns) {
        j["fns"].push_back({
            {"id", fn.id},
            {"position", {{"x", fn.position.x}, {"y", fn.position.y}}},
            {"rent", fn.rent},
            {"capacity", fn.capacity},
            {"dso_weights", fn.dso_weights},
        });
    }

    return j;
}

Scenario scenario_from_json(const nlohmann::json& j)
{
    Scenario s;
    try {
        s.mu = j.at("mu").get<double>();
        s.t_th = j.at("t_th").get<double>();
        s.theta = j.at("theta").get<double>();
        s.kappa = j.at("kappa").get<double>();
        s.cloud_distance = j.at("cloud_distance").get<double>();
        s.seed = j.at("seed").get<std::uint64_t>();

        for (const auto& dj : j.at("dsss")) {
            DssAgent dss;
            dss.id = dj.at("id").get<int>();
            dss.position.x = dj.at("position").at("x").get<double>();
            dss.position.y = dj.at("position").at("y").get<double>();
            dss.arrival_rate = dj.at("arrival_rate").get<double>();
            dss.alpha = dj.at("alpha").get<double>();
            dss.beta = dj.at("beta").get<double>();
            dss.gamma = dj.at("gamma").get<double>();
            dss.dso_pref = dj.at("dso_pref").get<PreferenceList>();
            s.dsss.push_back(std::move(dss));
        }
        for (const auto& dj : j.at("dsos")) {
            DsoAgent dso;
            dso.id = dj.at("id").get<int>();
            dso.cloud_unit_cost = dj.at("cloud_unit_cost").get<double>();
            s.dsos.push_back(dso);
        }
        for (const auto& fj : j.at("fns")) {
            FogNodeAgent fn;
            fn.id = fj.at("id").get<int>();
            fn.position.x = fj.at("position").at("x").get<double>();
            fn.position.y = fj.at("position").at("y").get<double>();
            fn.rent = fj.at("rent").get<double>();
            fn.capacity = fj.at("capacity").get<double>();
            fn.dso_weights = fj.at("dso_weights").get<std::vector<double>>();
            s.fns.push_back(std::move(fn));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("malformed scenario document: ") + e.what());
    }

    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& v : violations) {
            msg += "\n  " + v;
        }
        throw ScenarioError(msg);
    }
    return s;
}

void save_scenario(const Scenario& s, const std::string& path)
{
    std::ofstream ofs(path);
    if (!ofs) {
        throw ScenarioError("cannot open scenario file for writing: " + path);
    }
    ofs << scenario_to_json(s).dump(2) << "\n";
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream ifs(path);
    if (!ifs) {
        throw ScenarioError("cannot open scenario file: " + path);
    }
    nlohmann::json j;
    try {
        ifs >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("cannot parse scenario file: ") + e.what());
    }
    return scenario_from_json(j);
}

} // namespace fogsim

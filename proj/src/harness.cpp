// SPDX-License-Identifier: Apache-2.0

#include "irsmec/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "irsmec/oracle.hpp"
#include "irsmec/selection.hpp"

namespace irsmec {

namespace {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Vec3 vec3_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("expected a 3-element position array");
    return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

nlohmann::json vec3_to_json(const Vec3& v) { return nlohmann::json::array({v[0], v[1], v[2]}); }

}  // namespace

int Scenario::device_count() const {
    int n = 0;
    for (const DeviceTemplate& t : devices)
        n += t.count;
    return n;
}

Scenario default_scenario() {
    Scenario s;
    s.name = "default";
    s.params = SystemParams{};
    s.geometry = GeometryConfig{};
    s.devices = {DeviceTemplate{10, 10.0, 1000.0, 2.3e8}};
    return s;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s = default_scenario();
    s.devices.clear();
    if (j.contains("name"))
        s.name = j.at("name").get<std::string>();

    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (p.contains("bandwidth_hz")) s.params.bandwidth_hz = p.at("bandwidth_hz").get<double>();
        if (p.contains("frame_s")) s.params.frame_s = p.at("frame_s").get<double>();
        if (p.contains("noise_dbm")) s.params.noise_w = dbm_to_watts(p.at("noise_dbm").get<double>());
        if (p.contains("n_elements")) s.params.n_elements = p.at("n_elements").get<int>();
        if (p.contains("q_budget")) s.params.q_budget = p.at("q_budget").get<int>();
        if (p.contains("gamma_c")) s.params.gamma_c = p.at("gamma_c").get<double>();
    }
    if (j.contains("geometry")) {
        const auto& g = j.at("geometry");
        if (g.contains("ap_pos_m")) s.geometry.ap_pos_m = vec3_from_json(g.at("ap_pos_m"));
        if (g.contains("irs_pos_m")) s.geometry.irs_pos_m = vec3_from_json(g.at("irs_pos_m"));
        if (g.contains("cluster_center_m")) s.geometry.cluster_center_m = vec3_from_json(g.at("cluster_center_m"));
        if (g.contains("cluster_radius_m")) s.geometry.cluster_radius_m = g.at("cluster_radius_m").get<double>();
        if (g.contains("pathloss_ref_db")) s.geometry.pathloss_ref_db = g.at("pathloss_ref_db").get<double>();
        if (g.contains("ref_distance_m")) s.geometry.ref_distance_m = g.at("ref_distance_m").get<double>();
        if (g.contains("alpha_ap_irs")) s.geometry.alpha_ap_irs = g.at("alpha_ap_irs").get<double>();
        if (g.contains("alpha_irs_dev")) s.geometry.alpha_irs_dev = g.at("alpha_irs_dev").get<double>();
        if (g.contains("alpha_ap_dev")) s.geometry.alpha_ap_dev = g.at("alpha_ap_dev").get<double>();
        if (g.contains("rician_k_db")) s.geometry.rician_k_db = g.at("rician_k_db").get<double>();
    }
    if (j.contains("devices")) {
        for (const auto& d : j.at("devices")) {
            DeviceTemplate t;
            if (d.contains("count")) t.count = d.at("count").get<int>();
            if (d.contains("energy_dbm")) t.energy_dbm = d.at("energy_dbm").get<double>();
            if (d.contains("cycles_per_bit")) t.cycles_per_bit = d.at("cycles_per_bit").get<double>();
            if (d.contains("f_max_hz")) t.f_max_hz = d.at("f_max_hz").get<double>();
            s.devices.push_back(t);
        }
    }
    if (s.devices.empty())
        s.devices = default_scenario().devices;
    return s;
}

nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["params"] = {
        {"bandwidth_hz", s.params.bandwidth_hz}, {"frame_s", s.params.frame_s},
        {"noise_dbm", watts_to_dbm(s.params.noise_w)}, {"n_elements", s.params.n_elements},
        {"q_budget", s.params.q_budget}, {"gamma_c", s.params.gamma_c}};
    j["geometry"] = {
        {"ap_pos_m", vec3_to_json(s.geometry.ap_pos_m)},
        {"irs_pos_m", vec3_to_json(s.geometry.irs_pos_m)},
        {"cluster_center_m", vec3_to_json(s.geometry.cluster_center_m)},
        {"cluster_radius_m", s.geometry.cluster_radius_m},
        {"pathloss_ref_db", s.geometry.pathloss_ref_db},
        {"ref_distance_m", s.geometry.ref_distance_m},
        {"alpha_ap_irs", s.geometry.alpha_ap_irs},
        {"alpha_irs_dev", s.geometry.alpha_irs_dev},
        {"alpha_ap_dev", s.geometry.alpha_ap_dev},
        {"rician_k_db", s.geometry.rician_k_db}};
    j["devices"] = nlohmann::json::array();
    for (const DeviceTemplate& t : s.devices) {
        j["devices"].push_back({{"count", t.count},
                                {"energy_dbm", t.energy_dbm},
                                {"cycles_per_bit", t.cycles_per_bit},
                                {"f_max_hz", t.f_max_hz}});
    }
    return j;
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
    ExperimentSpec spec;
    spec.scenario = j.contains("scenario") ? scenario_from_json(j.at("scenario")) : scenario_from_json(j);
    if (j.contains("sweep")) {
        spec.sweep_name = j.at("sweep").at("name").get<std::string>();
        spec.sweep_values.clear();
        for (const auto& v : j.at("sweep").at("values"))
            spec.sweep_values.push_back(v.get<double>());
    } else {
        spec.sweep_name = "q_budget";
        spec.sweep_values = {static_cast<double>(spec.scenario.params.q_budget)};
    }
    if (j.contains("trials")) spec.trials = j.at("trials").get<int>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("solver")) spec.solver = j.at("solver").get<std::string>();
    return spec;
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["scenario"] = scenario_to_json(spec.scenario);
    j["sweep"] = {{"name", spec.sweep_name}, {"values", spec.sweep_values}};
    j["trials"] = spec.trials;
    j["seed"] = spec.seed;
    j["solver"] = spec.solver;
    return j;
}

ExperimentSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open spec file: " + path);
    nlohmann::json j;
    in >> j;
    return spec_from_json(j);
}

Scenario apply_sweep(const Scenario& base, const std::string& name, double value) {
    Scenario s = base;
    if (name == "q_budget") {
        s.params.q_budget = static_cast<int>(std::lround(value));
    } else if (name == "n_elements") {
        s.params.n_elements = static_cast<int>(std::lround(value));
    } else if (name == "cycles_per_bit") {
        for (DeviceTemplate& t : s.devices)
            t.cycles_per_bit = value;
    } else if (name == "energy_dbm") {
        for (DeviceTemplate& t : s.devices)
            t.energy_dbm = value;
    } else if (name == "distance_m") {
        const Vec3 old_center = s.geometry.cluster_center_m;
        const Vec3 offset{s.geometry.irs_pos_m[0] - old_center[0],
                          s.geometry.irs_pos_m[1] - old_center[1],
                          s.geometry.irs_pos_m[2] - old_center[2]};
        s.geometry.cluster_center_m[0] = s.geometry.ap_pos_m[0] + value;
        s.geometry.irs_pos_m = Vec3{s.geometry.cluster_center_m[0] + offset[0],
                                    s.geometry.cluster_center_m[1] + offset[1],
                                    s.geometry.cluster_center_m[2] + offset[2]};
    } else {
        throw std::invalid_argument("unknown sweep parameter: " + name);
    }
    return s;
}

std::vector<Device> instantiate_devices(const Scenario& scenario, Rng& rng) {
    std::vector<Device> devices;
    devices.reserve(static_cast<std::size_t>(scenario.device_count()));
    for (const DeviceTemplate& t : scenario.devices) {
        for (int i = 0; i < t.count; ++i) {
            Device d;
            d.energy_j = dbm_to_watts(t.energy_dbm);
            d.cycles_per_bit = t.cycles_per_bit;
            d.f_max_hz = t.f_max_hz;
            devices.push_back(d);
        }
    }
    const std::vector<Vec3> pos =
        sample_device_positions(scenario.geometry, static_cast<int>(devices.size()), rng);
    for (std::size_t k = 0; k < devices.size(); ++k)
        devices[k].position_m = pos[k];
    return devices;
}

const std::vector<std::string> kSolverNames = {
    "infinite_q", "finite_q", "oracle_subset", "oracle_grouping",
    "random_beam", "offload_only", "local_only", "no_irs"};

bool is_solver_name(const std::string& name) {
    return std::find(kSolverNames.begin(), kSolverNames.end(), name) != kSolverNames.end();
}

namespace {

ChannelSet zeroed_channels(const ChannelSet& channels) {
    ChannelSet ch = channels;
    for (cvec& q : ch.q)
        std::fill(q.begin(), q.end(), cxd{0.0, 0.0});
    return ch;
}

std::vector<BeamVector> random_beams(int count, int n_elements, Rng& rng) {
    std::vector<BeamVector> beams(static_cast<std::size_t>(count));
    for (BeamVector& b : beams) {
        b.v.resize(static_cast<std::size_t>(n_elements));
        for (cxd& z : b.v) {
            const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            z = {std::cos(phase), std::sin(phase)};
        }
    }
    return beams;
}

}  // namespace

Solution run_solver(const std::string& name, const Scenario& scenario,
                    const std::vector<Device>& devices, const ChannelSet& channels, Rng& rng) {
    const SystemParams& params = scenario.params;
    if (name == "infinite_q")
        return solve_infinite_q(devices, channels, params);
    if (name == "finite_q")
        return solve_finite_q(devices, channels, params);
    if (name == "oracle_subset")
        return oracle_to_solution(subset_oracle(devices, channels, params), devices, channels, params);
    if (name == "oracle_grouping")
        return oracle_to_solution(grouping_oracle(devices, channels, params), devices, channels, params);
    if (name == "random_beam")
        return solve_with_fixed_beams(devices, channels, params,
                                      random_beams(params.q_budget, params.n_elements, rng));
    if (name == "offload_only") {
        SolveOptions opts;
        opts.skip_activation = true;
        return solve_finite_q(devices, channels, params, opts);
    }
    if (name == "local_only")
        return solve_local_only(devices, params);
    if (name == "no_irs")
        return solve_finite_q(devices, zeroed_channels(channels), params);
    throw std::invalid_argument("unknown solver: " + name);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (spec.sweep_values.empty())
        throw std::invalid_argument("sweep values must be nonempty");
    if (!is_solver_name(spec.solver))
        throw std::invalid_argument("unknown solver: " + spec.solver);

    ExperimentResult result;
    for (double value : spec.sweep_values) {
        const Scenario scn = apply_sweep(spec.scenario, spec.sweep_name, value);

        double sum_rate = 0.0, sum_rate_sq = 0.0, sum_off = 0.0, sum_ms = 0.0;
        for (int trial = 0; trial < spec.trials; ++trial) {
            Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(trial));
            std::vector<Device> devices = instantiate_devices(scn, rng);
            validate_scenario(scn.params, devices);
            ChannelSet channels = realize_channels(scn.params, scn.geometry, devices, rng);

            const auto t0 = std::chrono::steady_clock::now();
            Solution sol;
            try {
                sol = run_solver(spec.solver, scn, devices, channels, rng);
            } catch (const std::exception& e) {
                throw std::runtime_error("solver failed at sweep value " + fmt_g17(value) +
                                         ", trial " + std::to_string(trial) + ": " + e.what());
            }
            const auto t1 = std::chrono::steady_clock::now();

            sum_rate += sol.sum_rate_bits;
            sum_rate_sq += sol.sum_rate_bits * sol.sum_rate_bits;
            sum_off += static_cast<double>(sol.offload_set.size());
            sum_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
        }

        const double n = static_cast<double>(spec.trials);
        SweepRow row;
        row.sweep_name = spec.sweep_name;
        row.sweep_value = value;
        row.solver = spec.solver;
        row.trials = spec.trials;
        row.mean_rate_bits = sum_rate / n;
        const double var = std::max(0.0, (sum_rate_sq - sum_rate * sum_rate / n) / std::max(1.0, n - 1.0));
        row.std_rate_bits = std::sqrt(var);
        row.mean_offloaders = sum_off / n;
        row.mean_runtime_ms = sum_ms / n;
        result.rows.push_back(row);
    }
    return result;
}

void write_csv(std::ostream& os, const ExperimentResult& result, bool include_timing) {
    os << "sweep_name,sweep_value,solver,trials,mean_rate_bits,std_rate_bits,mean_offloaders,mean_runtime_ms\n";
    for (const SweepRow& r : result.rows) {
        os << r.sweep_name << ',' << fmt_g17(r.sweep_value) << ',' << r.solver << ',' << r.trials
           << ',' << fmt_g17(r.mean_rate_bits) << ',' << fmt_g17(r.std_rate_bits) << ','
           << fmt_g17(r.mean_offloaders) << ',' << (include_timing ? fmt_g17(r.mean_runtime_ms) : "0")
           << '\n';
    }
}

std::string to_csv(const ExperimentResult& result, bool include_timing) {
    std::ostringstream os;
    write_csv(os, result, include_timing);
    return os.str();
}

void dump_channels_csv(std::ostream& os, int trial, const ChannelSet& channels, bool header) {
    if (header) {
        os << "trial,device,h_d_re,h_d_im";
        const std::size_t n = channels.q.empty() ? 0 : channels.q.front().size();
        for (std::size_t i = 0; i < n; ++i)
            os << ",q" << i << "_re,q" << i << "_im";
        os << '\n';
    }
    for (std::size_t k = 0; k < channels.h_d.size(); ++k) {
        os << trial << ',' << k << ',' << fmt_g17(channels.h_d[k].real()) << ','
           << fmt_g17(channels.h_d[k].imag());
        for (const cxd& z : channels.q[k])
            os << ',' << fmt_g17(z.real()) << ',' << fmt_g17(z.imag());
        os << '\n';
    }
}

nlohmann::json solution_to_json(const Solution& s) {
    nlohmann::json j;
    j["sum_rate_bits"] = s.sum_rate_bits;
    j["offload_set"] = s.offload_set;
    j["tau_s"] = nlohmann::json::object();
    for (const auto& [k, tau] : s.tau_s)
        j["tau_s"][std::to_string(k)] = tau;
    j["rate_offload_bits"] = s.rate_offload_bits;
    j["rate_local_bits"] = s.rate_local_bits;
    j["beam_assignment"] = nlohmann::json::object();
    for (const auto& [k, b] : s.beam_assignment)
        j["beam_assignment"][std::to_string(k)] = b;
    j["beams_phases"] = nlohmann::json::array();
    for (const BeamVector& b : s.beams) {
        nlohmann::json phases = nlohmann::json::array();
        for (const cxd& z : b.v)
            phases.push_back(std::arg(z));
        j["beams_phases"].push_back(phases);
    }
    return j;
}

}  // namespace irsmec

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "irsmec/channel.hpp"
#include "irsmec/model.hpp"
#include "irsmec/rng.hpp"

namespace irsmec {

// Device template expanded into `count` devices; positions are sampled per
// trial. Powers are dBm at this boundary and converted on load (energy uses
// the frame-long-transmission convention, so 10 dBm -> 0.01 J at T = 1 s).
struct DeviceTemplate {
    int count = 1;
    double energy_dbm = 10.0;
    double cycles_per_bit = 1000.0;
    double f_max_hz = 2.3e8;
};

struct Scenario {
    std::string name = "default";
    SystemParams params;
    GeometryConfig geometry;
    std::vector<DeviceTemplate> devices;

    int device_count() const;
};

struct ExperimentSpec {
    Scenario scenario;
    std::string sweep_name = "q_budget";
    std::vector<double> sweep_values{5};
    int trials = 200;
    std::uint64_t seed = 1;
    std::string solver = "finite_q";
};

Scenario default_scenario();

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ExperimentSpec& spec);
ExperimentSpec load_spec_file(const std::string& path);

// Known sweep parameters: q_budget, n_elements, cycles_per_bit, energy_dbm,
// distance_m (moves the device cluster, keeping the surface's relative
// offset). Throws std::invalid_argument for unknown names.
Scenario apply_sweep(const Scenario& base, const std::string& name, double value);

// Positions sampled from the trial stream; two uniform draws per device.
std::vector<Device> instantiate_devices(const Scenario& scenario, Rng& rng);

extern const std::vector<std::string> kSolverNames;
bool is_solver_name(const std::string& name);

// Runs the named solver on one realization. The rng continues the trial
// stream and is consumed only by solvers that draw randomness themselves
// (random_beam).
Solution run_solver(const std::string& name, const Scenario& scenario,
                    const std::vector<Device>& devices, const ChannelSet& channels, Rng& rng);

struct SweepRow {
    std::string sweep_name;
    double sweep_value = 0.0;
    std::string solver;
    int trials = 0;
    double mean_rate_bits = 0.0;
    double std_rate_bits = 0.0;
    double mean_offloaders = 0.0;
    double mean_runtime_ms = 0.0;
};

struct ExperimentResult {
    std::vector<SweepRow> rows;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// Fixed schema: sweep_name,sweep_value,solver,trials,mean_rate_bits,
// std_rate_bits,mean_offloaders,mean_runtime_ms. Without include_timing the
// runtime column is written as 0 so repeated runs are byte-identical.
void write_csv(std::ostream& os, const ExperimentResult& result, bool include_timing = false);
std::string to_csv(const ExperimentResult& result, bool include_timing = false);

// Regression fixture rows: trial,device,h_d_re,h_d_im,q0_re,q0_im,...
void dump_channels_csv(std::ostream& os, int trial, const ChannelSet& channels, bool header);

nlohmann::json solution_to_json(const Solution& s);

}  // namespace irsmec

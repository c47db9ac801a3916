// SPDX-License-Identifier: Apache-2.0
//
// Experiment CLI: solve one realization, run Monte Carlo sweeps to CSV,
// compare a solver against the exhaustive oracles, or validate a scenario.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "irsmec/harness.hpp"
#include "irsmec/oracle.hpp"
#include "irsmec/selection.hpp"

namespace {

using namespace irsmec;

ExperimentSpec load_or_default(const std::string& path) {
    if (path.empty()) {
        ExperimentSpec spec;
        spec.scenario = default_scenario();
        return spec;
    }
    return load_spec_file(path);
}

struct TrialData {
    std::vector<Device> devices;
    ChannelSet channels;
    Rng rng;
};

TrialData make_trial(const Scenario& scn, std::uint64_t seed, int trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    std::vector<Device> devices = instantiate_devices(scn, rng);
    validate_scenario(scn.params, devices);
    ChannelSet channels = realize_channels(scn.params, scn.geometry, devices, rng);
    return {std::move(devices), std::move(channels), rng};
}

void print_solution(std::ostream& os, const Solution& sol, const Scenario& scn) {
    os << "sum rate        : " << sol.sum_rate_bits << " bits/frame\n";
    os << "offloaders      : " << sol.offload_set.size() << " of " << sol.rate_local_bits.size() << " [";
    for (std::size_t i = 0; i < sol.offload_set.size(); ++i)
        os << (i ? " " : "") << sol.offload_set[i];
    os << "]\n";
    os << "beams used      : " << sol.beams.size() << " (budget " << scn.params.q_budget << ")\n";
    for (int k : sol.offload_set) {
        os << "  device " << k << ": tau = " << sol.tau_s.at(k)
           << " s, rate = " << sol.rate_offload_bits[static_cast<std::size_t>(k)]
           << " bits, beam " << sol.beam_assignment.at(k) << "\n";
    }
    double local_total = 0.0;
    for (double r : sol.rate_local_bits)
        local_total += r;
    os << "local rate total: " << local_total << " bits\n";
}

int cmd_solve(const std::string& spec_path, std::uint64_t seed, bool seed_set, int trial,
              const std::string& solver, const std::string& out_path,
              const std::string& dump_path) {
    ExperimentSpec spec = load_or_default(spec_path);
    if (seed_set)
        spec.seed = seed;
    if (!solver.empty())
        spec.solver = solver;
    if (!is_solver_name(spec.solver)) {
        std::cerr << "error: unknown solver '" << spec.solver << "'\n";
        return 1;
    }

    TrialData t = make_trial(spec.scenario, spec.seed, trial);
    if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        dump_channels_csv(dump, trial, t.channels, true);
    }
    const Solution sol = run_solver(spec.solver, spec.scenario, t.devices, t.channels, t.rng);
    check_solution(sol, spec.scenario.params);

    std::cout << "scenario '" << spec.scenario.name << "', solver " << spec.solver << ", seed "
              << spec.seed << ", trial " << trial << "\n";
    print_solution(std::cout, sol, spec.scenario);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << solution_to_json(sol).dump(2) << "\n";
    }
    return 0;
}

int cmd_sweep(const std::string& spec_path, std::uint64_t seed, bool seed_set, int trials,
              const std::string& solver, const std::string& out_path, bool timing,
              const std::string& dump_path) {
    ExperimentSpec spec = load_or_default(spec_path);
    if (seed_set)
        spec.seed = seed;
    if (trials > 0)
        spec.trials = trials;
    if (!solver.empty())
        spec.solver = solver;

    if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        for (int trial = 0; trial < spec.trials; ++trial) {
            TrialData t = make_trial(spec.scenario, spec.seed, trial);
            dump_channels_csv(dump, trial, t.channels, trial == 0);
        }
    }

    const ExperimentResult result = run_experiment(spec);
    if (out_path.empty()) {
        write_csv(std::cout, result, timing);
    } else {
        std::ofstream out(out_path);
        write_csv(out, result, timing);
        std::cerr << "wrote " << result.rows.size() << " rows to " << out_path << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string& spec_path, std::uint64_t seed, bool seed_set, int trial,
               const std::string& which, int phase_levels) {
    ExperimentSpec spec = load_or_default(spec_path);
    if (seed_set)
        spec.seed = seed;

    TrialData t = make_trial(spec.scenario, spec.seed, trial);
    const SystemParams& params = spec.scenario.params;

    OracleResult oracle;
    Solution heuristic;
    std::string heuristic_name;
    if (which == "subset") {
        oracle = subset_oracle(t.devices, t.channels, params);
        heuristic = solve_infinite_q(t.devices, t.channels, params);
        heuristic_name = "infinite_q";
    } else if (which == "grouping") {
        oracle = grouping_oracle(t.devices, t.channels, params, phase_levels);
        heuristic = solve_finite_q(t.devices, t.channels, params);
        heuristic_name = "finite_q";
    } else {
        std::cerr << "error: --which must be 'subset' or 'grouping'\n";
        return 1;
    }

    const double gap = oracle.best_rate_bits > 0.0
                           ? (oracle.best_rate_bits - heuristic.sum_rate_bits) / oracle.best_rate_bits
                           : 0.0;
    std::cout << "oracle (" << which << "): " << oracle.best_rate_bits << " bits over "
              << oracle.enumerated_count << " cases\n";
    std::cout << heuristic_name << "        : " << heuristic.sum_rate_bits << " bits\n";
    std::cout << "gap             : " << gap * 100.0 << " %\n";
    return 0;
}

int cmd_validate(const std::string& spec_path, std::uint64_t seed, bool seed_set) {
    ExperimentSpec spec = load_or_default(spec_path);
    if (seed_set)
        spec.seed = seed;

    TrialData t = make_trial(spec.scenario, spec.seed, 0);
    for (const std::string& name : {std::string("finite_q"), std::string("infinite_q")}) {
        Rng rng = t.rng;
        const Solution sol = run_solver(name, spec.scenario, t.devices, t.channels, rng);
        check_solution(sol, spec.scenario.params);
    }
    std::cout << "ok: scenario '" << spec.scenario.name << "' valid, " << t.devices.size()
              << " devices, solution invariants hold\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computation-rate solver and experiment runner for reflecting-surface-assisted edge computing"};
    app.require_subcommand(1);

    std::string spec_path, out_path, dump_path, solver, which = "subset", kernels_choice = "auto";
    std::uint64_t seed = 0;
    int trials = 0, trial = 0, phase_levels = 16;
    bool timing = false;

    app.add_option("--kernels", kernels_choice, "Kernel backend: auto|scalar|avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    auto* solve = app.add_subcommand("solve", "Solve one channel realization and print the solution");
    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and emit CSV");
    auto* oracle = app.add_subcommand("oracle", "Run an exhaustive oracle and report the heuristic gap");
    auto* validate = app.add_subcommand("validate", "Validate a scenario and the solver invariants");

    for (CLI::App* sub : {solve, sweep, oracle, validate}) {
        sub->add_option("--spec", spec_path, "Scenario/experiment JSON file");
        sub->add_option("--seed", seed, "Random seed (64-bit)");
    }
    solve->add_option("--trial", trial, "Trial index within the seed's stream family");
    solve->add_option("--solver", solver, "Solver name");
    solve->add_option("--out", out_path, "Write the solution as JSON");
    solve->add_option("--dump-channels", dump_path, "Write the realized channels as CSV");
    sweep->add_option("--trials", trials, "Monte Carlo trials per sweep value");
    sweep->add_option("--solver", solver, "Solver name");
    sweep->add_option("--out", out_path, "CSV output path (default stdout)");
    sweep->add_flag("--timing", timing, "Fill mean_runtime_ms with measured wall time");
    sweep->add_option("--dump-channels", dump_path, "Write per-trial channels as CSV");
    oracle->add_option("--trial", trial, "Trial index");
    oracle->add_option("--which", which, "Oracle: subset|grouping");
    oracle->add_option("--phase-levels", phase_levels, "Quantized phase levels for the grouping oracle");

    CLI11_PARSE(app, argc, argv);

    if (kernels_choice == "scalar")
        irsmec::kernels::set_backend(irsmec::kernels::Backend::scalar);
    else if (kernels_choice == "avx2" && !irsmec::kernels::set_backend(irsmec::kernels::Backend::avx2)) {
        std::cerr << "error: avx2 kernels not supported on this host\n";
        return 1;
    }

    try {
        const bool seed_set = solve->count("--seed") || sweep->count("--seed") ||
                              oracle->count("--seed") || validate->count("--seed");
        if (solve->parsed())
            return cmd_solve(spec_path, seed, seed_set, trial, solver, out_path, dump_path);
        if (sweep->parsed())
            return cmd_sweep(spec_path, seed, seed_set, trials, solver, out_path, timing, dump_path);
        if (oracle->parsed())
            return cmd_oracle(spec_path, seed, seed_set, trial, which, phase_levels);
        if (validate->parsed())
            return cmd_validate(spec_path, seed, seed_set);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

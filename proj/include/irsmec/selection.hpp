// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "irsmec/allocation.hpp"
#include "irsmec/beamforming.hpp"
#include "irsmec/channel.hpp"
#include "irsmec/model.hpp"

namespace irsmec {

// Offloading-minus-local computation rate with the device's ideal dedicated
// gain; the greedy sort key.
double trading_rate(const Device& dev, double ideal_gain, const SystemParams& params);

struct TradingOrder {
    std::vector<double> lambda;  // per device
    std::vector<int> order;      // device indices, lambda descending, ties by index
};

TradingOrder trading_order(const std::vector<Device>& devices,
                           const std::vector<double>& ideal_gains, const SystemParams& params);

// Activation condition: admitting the candidate raises the sum computation
// rate iff the offload-rate increment is at least its local rate. Ties pass.
bool activation_test(const OffloadProfile& current, const Device& candidate, double candidate_eg,
                     const SystemParams& params);
bool activation_test_total(double current_total_eg, const Device& candidate, double candidate_eg,
                           const SystemParams& params);

struct SolveOptions {
    bool skip_activation = false;  // admit every device in trading order
    double sca_eps = 1e-6;
    int sca_max_iter = 200;
};

// Successive refinement with unlimited reflection vectors: every admitted
// device gets its dedicated aligned beam. Serves as the finite-budget upper
// bound.
Solution solve_infinite_q(const std::vector<Device>& devices, const ChannelSet& channels,
                          const SystemParams& params, const SolveOptions& opts = {});

// Successive refinement with a budget of Q vectors: the first Q-1 admitted
// devices get dedicated aligned beams; later candidates share the Q-th beam,
// which is re-optimized over the shared group plus the candidate before each
// activation test (already-admitted members' products are recomputed under
// the new beam). A rejected candidate leaves the shared beam unchanged.
Solution solve_finite_q(const std::vector<Device>& devices, const ChannelSet& channels,
                        const SystemParams& params, const SolveOptions& opts = {});

// Selection and allocation over a fixed beam set: each device is scored with
// its best gain among the given beams, then the usual trading-order greedy
// admission runs. Used by the random-reflection baseline.
Solution solve_with_fixed_beams(const std::vector<Device>& devices, const ChannelSet& channels,
                                const SystemParams& params, const std::vector<BeamVector>& beams,
                                const SolveOptions& opts = {});

// Every device computes locally.
Solution solve_local_only(const std::vector<Device>& devices, const SystemParams& params);

}  // namespace irsmec

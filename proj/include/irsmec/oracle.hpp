// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "irsmec/channel.hpp"
#include "irsmec/model.hpp"

namespace irsmec {

struct OracleResult {
    double best_rate_bits = 0.0;
    std::vector<int> best_offload_set;        // ascending
    std::map<int, int> best_grouping;         // device -> beam group (finite-Q only)
    std::vector<BeamVector> best_beams;       // per group (finite-Q only)
    std::uint64_t enumerated_count = 0;
};

// Enumerates all 2^K offloading subsets with ideal per-device aligned gains
// and the closed-form allocation; ties resolved toward the lexicographically
// smallest subset. Throws TooLarge for K > 16.
OracleResult subset_oracle(const std::vector<Device>& devices, const ChannelSet& channels,
                           const SystemParams& params);

// Enumerates every subset, every assignment of its members to Q beam groups,
// and every group beam over phase_levels^N quantized unit-modulus vectors
// (each group beam maximizes the group's energy-weighted gain sum).
// Limits: K <= 6, Q <= 3, N <= 4, phase_levels <= 16.
OracleResult grouping_oracle(const std::vector<Device>& devices, const ChannelSet& channels,
                             const SystemParams& params, int phase_levels = 16);

// Expands an oracle result into a full Solution (aligned dedicated beams for
// the subset oracle; the quantized group beams for the grouping oracle).
Solution oracle_to_solution(const OracleResult& res, const std::vector<Device>& devices,
                            const ChannelSet& channels, const SystemParams& params);

}  // namespace irsmec

// SPDX-License-Identifier: Apache-2.0

#include "irsmec/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "irsmec/allocation.hpp"
#include "irsmec/beamforming.hpp"

namespace irsmec {

namespace {

std::vector<int> mask_to_set(std::uint32_t mask, int K) {
    std::vector<int> s;
    for (int k = 0; k < K; ++k) {
        if (mask & (1u << k))
            s.push_back(k);
    }
    return s;
}

double subset_rate(const std::vector<int>& set, const std::vector<double>& eg,
                   const std::vector<double>& local_bits, const SystemParams& params) {
    double total_eg = 0.0;
    for (int k : set)
        total_eg += eg[static_cast<std::size_t>(k)];
    double rate = set.empty() ? 0.0 : offload_sum_rate(total_eg, params);
    std::size_t i = 0;
    for (int k = 0; k < static_cast<int>(eg.size()); ++k) {
        if (i < set.size() && set[i] == k) {
            ++i;
            continue;
        }
        rate += local_bits[static_cast<std::size_t>(k)];
    }
    return rate;
}

}  // namespace

OracleResult subset_oracle(const std::vector<Device>& devices, const ChannelSet& channels,
                           const SystemParams& params) {
    const int K = static_cast<int>(devices.size());
    if (K > 16)
        throw TooLarge("subset oracle supports K <= 16, got K = " + std::to_string(K));
    if (channels.h_d.size() != devices.size() || channels.q.size() != devices.size())
        throw DimensionMismatch("channel set does not cover the device list");

    std::vector<double> eg(devices.size());
    std::vector<double> local_bits(devices.size());
    for (std::size_t k = 0; k < devices.size(); ++k) {
        const double g = effective_gain(channels.h_d[k], channels.q[k],
                                        align_phase(channels.h_d[k], channels.q[k]));
        eg[k] = devices[k].energy_j * g;
        local_bits[k] = local_rate_bits(devices[k], params);
    }

    OracleResult res;
    res.enumerated_count = 1ull << K;

    bool first = true;
    for (std::uint32_t mask = 0; mask < (1u << K); ++mask) {
        const std::vector<int> set = mask_to_set(mask, K);
        const double rate = subset_rate(set, eg, local_bits, params);
        const bool better =
            first || rate > res.best_rate_bits ||
            (rate == res.best_rate_bits &&
             std::lexicographical_compare(set.begin(), set.end(), res.best_offload_set.begin(),
                                          res.best_offload_set.end()));
        if (better) {
            res.best_rate_bits = rate;
            res.best_offload_set = set;
            first = false;
        }
    }
    return res;
}

namespace {

// All phase_levels^N quantized unit-modulus vectors, digit n selecting the
// phase 2*pi*digit/levels of element n.
std::vector<BeamVector> quantized_beams(int n_elements, int levels) {
    std::uint64_t count = 1;
    for (int n = 0; n < n_elements; ++n)
        count *= static_cast<std::uint64_t>(levels);

    std::vector<cxd> phase_table(static_cast<std::size_t>(levels));
    for (int d = 0; d < levels; ++d) {
        const double ang = 2.0 * std::numbers::pi * d / levels;
        phase_table[static_cast<std::size_t>(d)] = {std::cos(ang), std::sin(ang)};
    }

    std::vector<BeamVector> beams(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        BeamVector& b = beams[idx];
        b.v.resize(static_cast<std::size_t>(n_elements));
        std::uint64_t rem = idx;
        for (int n = 0; n < n_elements; ++n) {
            b.v[static_cast<std::size_t>(n)] = phase_table[rem % levels];
            rem /= static_cast<std::uint64_t>(levels);
        }
    }
    return beams;
}

}  // namespace

OracleResult grouping_oracle(const std::vector<Device>& devices, const ChannelSet& channels,
                             const SystemParams& params, int phase_levels) {
    const int K = static_cast<int>(devices.size());
    const int Q = params.q_budget;
    const int N = params.n_elements;
    if (Q < 1)
        throw InvalidBudget();
    if (K > 6 || Q > 3 || N > 4 || phase_levels > 16 || phase_levels < 2)
        throw TooLarge("grouping oracle supports K <= 6, Q <= 3, N <= 4, 2 <= phase_levels <= 16");
    if (channels.h_d.size() != devices.size() || channels.q.size() != devices.size())
        throw DimensionMismatch("channel set does not cover the device list");

    const std::vector<BeamVector> beams = quantized_beams(N, phase_levels);

    // weighted[k][vidx] = E_k * gain of device k under candidate beam vidx
    std::vector<std::vector<double>> weighted(devices.size());
    std::vector<double> local_bits(devices.size());
    for (std::size_t k = 0; k < devices.size(); ++k) {
        weighted[k].resize(beams.size());
        for (std::size_t b = 0; b < beams.size(); ++b)
            weighted[k][b] = devices[k].energy_j * effective_gain(channels.h_d[k], channels.q[k], beams[b]);
        local_bits[k] = local_rate_bits(devices[k], params);
    }

    // Best candidate beam per nonempty group mask (value and argmax index).
    const std::uint32_t n_masks = 1u << K;
    std::vector<double> group_best_val(n_masks, 0.0);
    std::vector<std::uint32_t> group_best_idx(n_masks, 0);
    for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
        double best = -1.0;
        std::uint32_t best_idx = 0;
        for (std::size_t b = 0; b < beams.size(); ++b) {
            double val = 0.0;
            for (int k = 0; k < K; ++k) {
                if (mask & (1u << k))
                    val += weighted[static_cast<std::size_t>(k)][b];
            }
            if (val > best) {
                best = val;
                best_idx = static_cast<std::uint32_t>(b);
            }
        }
        group_best_val[mask] = best;
        group_best_idx[mask] = best_idx;
    }

    OracleResult res;
    bool first = true;

    for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
        const std::vector<int> set = mask_to_set(mask, K);
        const int m = static_cast<int>(set.size());

        std::uint64_t n_assignments = 1;
        for (int i = 0; i < m; ++i)
            n_assignments *= static_cast<std::uint64_t>(Q);
        res.enumerated_count += n_assignments;

        double local_sum = 0.0;
        std::size_t i = 0;
        for (int k = 0; k < K; ++k) {
            if (i < set.size() && set[i] == k) {
                ++i;
                continue;
            }
            local_sum += local_bits[static_cast<std::size_t>(k)];
        }

        for (std::uint64_t a = 0; a < n_assignments; ++a) {
            std::vector<int> assign(static_cast<std::size_t>(m));
            std::uint64_t rem = a;
            std::array<std::uint32_t, 3> group_mask{0, 0, 0};
            for (int j = 0; j < m; ++j) {
                const int grp = static_cast<int>(rem % Q);
                rem /= static_cast<std::uint64_t>(Q);
                assign[static_cast<std::size_t>(j)] = grp;
                group_mask[static_cast<std::size_t>(grp)] |= 1u << set[static_cast<std::size_t>(j)];
            }

            double total_eg = 0.0;
            for (int grp = 0; grp < Q; ++grp) {
                if (group_mask[static_cast<std::size_t>(grp)] != 0)
                    total_eg += group_best_val[group_mask[static_cast<std::size_t>(grp)]];
            }
            const double rate = (m == 0 ? 0.0 : offload_sum_rate(total_eg, params)) + local_sum;

            bool better = first || rate > res.best_rate_bits;
            if (!better && rate == res.best_rate_bits) {
                if (std::lexicographical_compare(set.begin(), set.end(), res.best_offload_set.begin(),
                                                 res.best_offload_set.end()))
                    better = true;
            }
            if (!better)
                continue;
            first = false;
            res.best_rate_bits = rate;
            res.best_offload_set = set;
            res.best_grouping.clear();
            res.best_beams.clear();
            std::array<int, 3> beam_index_of_group{-1, -1, -1};
            for (int j = 0; j < m; ++j) {
                const int grp = assign[static_cast<std::size_t>(j)];
                if (beam_index_of_group[static_cast<std::size_t>(grp)] < 0) {
                    beam_index_of_group[static_cast<std::size_t>(grp)] = static_cast<int>(res.best_beams.size());
                    res.best_beams.push_back(beams[group_best_idx[group_mask[static_cast<std::size_t>(grp)]]]);
                }
                res.best_grouping[set[static_cast<std::size_t>(j)]] =
                    beam_index_of_group[static_cast<std::size_t>(grp)];
            }
        }
    }
    return res;
}

Solution oracle_to_solution(const OracleResult& res, const std::vector<Device>& devices,
                            const ChannelSet& channels, const SystemParams& params) {
    Solution s;
    s.rate_offload_bits.assign(devices.size(), 0.0);
    s.rate_local_bits.assign(devices.size(), 0.0);
    s.offload_set = res.best_offload_set;

    OffloadProfile profile;
    if (res.best_grouping.empty()) {
        // Subset oracle: dedicated aligned beam per offloader.
        for (int k : res.best_offload_set) {
            const std::size_t ks = static_cast<std::size_t>(k);
            const BeamVector beam = align_phase(channels.h_d[ks], channels.q[ks]);
            s.beam_assignment[k] = static_cast<int>(s.beams.size());
            s.beams.push_back(beam);
            profile.e_g[k] = devices[ks].energy_j * effective_gain(channels.h_d[ks], channels.q[ks], s.beams.back());
        }
    } else {
        s.beams = res.best_beams;
        s.beam_assignment = res.best_grouping;
        for (int k : res.best_offload_set) {
            const std::size_t ks = static_cast<std::size_t>(k);
            const BeamVector& beam = s.beams[static_cast<std::size_t>(res.best_grouping.at(k))];
            profile.e_g[k] = devices[ks].energy_j * effective_gain(channels.h_d[ks], channels.q[ks], beam);
        }
    }

    double offload_sum = 0.0;
    if (!profile.e_g.empty()) {
        const OffloadAllocation alloc = offload_allocation(profile, params);
        s.tau_s = alloc.tau_s;
        for (const auto& [k, rate] : alloc.rate_bits)
            s.rate_offload_bits[static_cast<std::size_t>(k)] = rate;
        offload_sum = alloc.sum_rate_bits;
    }
    double local_sum = 0.0;
    for (std::size_t k = 0; k < devices.size(); ++k) {
        if (std::binary_search(s.offload_set.begin(), s.offload_set.end(), static_cast<int>(k)))
            continue;
        s.rate_local_bits[k] = local_rate_bits(devices[k], params);
        local_sum += s.rate_local_bits[k];
    }
    s.sum_rate_bits = offload_sum + local_sum;
    return s;
}

}  // namespace irsmec

// SPDX-License-Identifier: Apache-2.0

#include "irsmec/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace irsmec {

double trading_rate(const Device& dev, double ideal_gain, const SystemParams& params) {
    const double T = params.frame_s;
    const double off = params.bandwidth_hz * T *
                       std::log2(1.0 + dev.energy_j * ideal_gain / (T * params.noise_w));
    return off - local_rate_bits(dev, params);
}

TradingOrder trading_order(const std::vector<Device>& devices,
                           const std::vector<double>& ideal_gains, const SystemParams& params) {
    if (devices.size() != ideal_gains.size())
        throw DimensionMismatch("gain list length differs from device count");
    TradingOrder out;
    out.lambda.resize(devices.size());
    for (std::size_t k = 0; k < devices.size(); ++k)
        out.lambda[k] = trading_rate(devices[k], ideal_gains[k], params);
    out.order.resize(devices.size());
    std::iota(out.order.begin(), out.order.end(), 0);
    std::sort(out.order.begin(), out.order.end(), [&](int a, int b) {
        if (out.lambda[a] != out.lambda[b])
            return out.lambda[a] > out.lambda[b];
        return a < b;
    });
    return out;
}

bool activation_test_total(double current_total_eg, const Device& candidate, double candidate_eg,
                           const SystemParams& params) {
    const double T = params.frame_s;
    const double base = T * params.noise_w + current_total_eg;
    // B T log2((base + candidate) / base), evaluated via log1p so tiny
    // increments are not lost to cancellation.
    const double gain_bits =
        params.bandwidth_hz * T * std::log1p(candidate_eg / base) / std::numbers::ln2;
    return gain_bits >= local_rate_bits(candidate, params);
}

bool activation_test(const OffloadProfile& current, const Device& candidate, double candidate_eg,
                     const SystemParams& params) {
    return activation_test_total(current.total(), candidate, candidate_eg, params);
}

namespace {

std::vector<double> ideal_gains(const std::vector<Device>& devices, const ChannelSet& channels) {
    std::vector<double> gains(devices.size());
    for (std::size_t k = 0; k < devices.size(); ++k)
        gains[k] = effective_gain(channels.h_d[k], channels.q[k], align_phase(channels.h_d[k], channels.q[k]));
    return gains;
}

void require_channel_shape(const std::vector<Device>& devices, const ChannelSet& channels) {
    if (channels.h_d.size() != devices.size() || channels.q.size() != devices.size())
        throw DimensionMismatch("channel set does not cover the device list");
}

// Assembles a Solution from per-device admissions; beam_of maps each admitted
// device to an index into `beams`.
Solution finish_solution(const std::vector<Device>& devices, const SystemParams& params,
                         const std::vector<std::pair<int, double>>& admitted_eg,
                         std::vector<BeamVector> beams, const std::map<int, int>& beam_of) {
    Solution s;
    const std::size_t K = devices.size();
    s.rate_offload_bits.assign(K, 0.0);
    s.rate_local_bits.assign(K, 0.0);
    s.beams = std::move(beams);
    s.beam_assignment = beam_of;

    for (const auto& [k, eg] : admitted_eg)
        s.offload_set.push_back(k);
    std::sort(s.offload_set.begin(), s.offload_set.end());

    double offload_sum = 0.0;
    if (!admitted_eg.empty()) {
        OffloadProfile profile;
        for (const auto& [k, eg] : admitted_eg)
            profile.e_g[k] = eg;
        const OffloadAllocation alloc = offload_allocation(profile, params);
        s.tau_s = alloc.tau_s;
        for (const auto& [k, rate] : alloc.rate_bits)
            s.rate_offload_bits[static_cast<std::size_t>(k)] = rate;
        offload_sum = alloc.sum_rate_bits;
    }

    double local_sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        if (std::binary_search(s.offload_set.begin(), s.offload_set.end(), static_cast<int>(k)))
            continue;
        s.rate_local_bits[k] = local_rate_bits(devices[k], params);
        local_sum += s.rate_local_bits[k];
    }
    s.sum_rate_bits = offload_sum + local_sum;
    return s;
}

}  // namespace

Solution solve_infinite_q(const std::vector<Device>& devices, const ChannelSet& channels,
                          const SystemParams& params, const SolveOptions& opts) {
    require_channel_shape(devices, channels);
    const std::vector<double> gains = ideal_gains(devices, channels);
    const TradingOrder ord = trading_order(devices, gains, params);

    std::vector<std::pair<int, double>> admitted;
    double total_eg = 0.0;
    for (int k : ord.order) {
        const double eg = devices[static_cast<std::size_t>(k)].energy_j * gains[static_cast<std::size_t>(k)];
        const bool admit =
            opts.skip_activation ||
            (eg > 0.0 && activation_test_total(total_eg, devices[static_cast<std::size_t>(k)], eg, params));
        if (!admit)
            break;
        admitted.emplace_back(k, eg);
        total_eg += eg;
    }

    std::vector<int> sorted;
    for (const auto& [k, eg] : admitted)
        sorted.push_back(k);
    std::sort(sorted.begin(), sorted.end());

    std::vector<BeamVector> beams;
    std::map<int, int> beam_of;
    for (int k : sorted) {
        beam_of[k] = static_cast<int>(beams.size());
        beams.push_back(align_phase(channels.h_d[static_cast<std::size_t>(k)], channels.q[static_cast<std::size_t>(k)]));
    }
    return finish_solution(devices, params, admitted, std::move(beams), beam_of);
}

Solution solve_finite_q(const std::vector<Device>& devices, const ChannelSet& channels,
                        const SystemParams& params, const SolveOptions& opts) {
    if (params.q_budget < 1)
        throw InvalidBudget();
    require_channel_shape(devices, channels);

    const std::vector<double> gains = ideal_gains(devices, channels);
    const TradingOrder ord = trading_order(devices, gains, params);
    const int dedicated_slots = params.q_budget - 1;

    struct Admitted {
        int device;
        double eg;
    };
    std::vector<Admitted> admitted;
    std::vector<BeamVector> dedicated_beams;
    std::map<int, int> beam_of;

    std::vector<int> shared_members;
    BeamVector shared_beam;
    double dedicated_total = 0.0;
    double shared_total = 0.0;

    const auto view_of = [&](int k) {
        return DeviceChannelView{devices[static_cast<std::size_t>(k)].energy_j,
                                 channels.h_d[static_cast<std::size_t>(k)],
                                 channels.q[static_cast<std::size_t>(k)]};
    };

    int position = 0;
    for (int k : ord.order) {
        ++position;
        const Device& dev = devices[static_cast<std::size_t>(k)];

        if (position <= dedicated_slots) {
            const double eg = dev.energy_j * gains[static_cast<std::size_t>(k)];
            const bool admit = opts.skip_activation ||
                               (eg > 0.0 && activation_test_total(dedicated_total + shared_total, dev, eg, params));
            if (!admit)
                break;
            beam_of[k] = static_cast<int>(dedicated_beams.size());
            dedicated_beams.push_back(align_phase(channels.h_d[static_cast<std::size_t>(k)],
                                                  channels.q[static_cast<std::size_t>(k)]));
            admitted.push_back({k, eg});
            dedicated_total += eg;
            continue;
        }

        // Shared slot: re-optimize the common beam over current members plus
        // the candidate, recompute the members' products under it, then test.
        std::vector<DeviceChannelView> views;
        views.reserve(shared_members.size() + 1);
        for (int m : shared_members)
            views.push_back(view_of(m));
        views.push_back(view_of(k));
        const ScaResult sca = shared_beam_sca(views, opts.sca_eps, opts.sca_max_iter);

        double members_total = 0.0;
        std::vector<double> member_eg(shared_members.size());
        for (std::size_t i = 0; i < shared_members.size(); ++i) {
            const int m = shared_members[i];
            member_eg[i] = devices[static_cast<std::size_t>(m)].energy_j *
                           effective_gain(channels.h_d[static_cast<std::size_t>(m)],
                                          channels.q[static_cast<std::size_t>(m)], sca.beam);
            members_total += member_eg[i];
        }
        const double cand_eg = dev.energy_j * effective_gain(channels.h_d[static_cast<std::size_t>(k)],
                                                             channels.q[static_cast<std::size_t>(k)], sca.beam);

        const bool admit = opts.skip_activation ||
                           (cand_eg > 0.0 &&
                            activation_test_total(dedicated_total + members_total, dev, cand_eg, params));
        if (!admit)
            break;  // shared beam stays as last accepted

        shared_beam = sca.beam;
        for (std::size_t i = 0; i < shared_members.size(); ++i) {
            for (Admitted& a : admitted) {
                if (a.device == shared_members[i])
                    a.eg = member_eg[i];
            }
        }
        admitted.push_back({k, cand_eg});
        shared_members.push_back(k);
        shared_total = members_total + cand_eg;
    }

    std::vector<BeamVector> beams = std::move(dedicated_beams);
    if (!shared_members.empty()) {
        const int shared_idx = static_cast<int>(beams.size());
        beams.push_back(shared_beam);
        for (int m : shared_members)
            beam_of[m] = shared_idx;
    }

    std::vector<std::pair<int, double>> admitted_eg;
    for (const Admitted& a : admitted)
        admitted_eg.emplace_back(a.device, a.eg);
    return finish_solution(devices, params, admitted_eg, std::move(beams), beam_of);
}

Solution solve_with_fixed_beams(const std::vector<Device>& devices, const ChannelSet& channels,
                                const SystemParams& params, const std::vector<BeamVector>& beams,
                                const SolveOptions& opts) {
    require_channel_shape(devices, channels);
    if (beams.empty())
        throw InvalidBudget();

    std::vector<double> best_gain(devices.size(), 0.0);
    std::vector<int> best_beam(devices.size(), 0);
    for (std::size_t k = 0; k < devices.size(); ++k) {
        double best = -1.0;
        for (std::size_t b = 0; b < beams.size(); ++b) {
            const double g = effective_gain(channels.h_d[k], channels.q[k], beams[b]);
            if (g > best) {
                best = g;
                best_beam[k] = static_cast<int>(b);
            }
        }
        best_gain[k] = std::max(best, 0.0);
    }

    const TradingOrder ord = trading_order(devices, best_gain, params);
    std::vector<std::pair<int, double>> admitted;
    std::map<int, int> beam_of;
    double total_eg = 0.0;
    for (int k : ord.order) {
        const double eg = devices[static_cast<std::size_t>(k)].energy_j * best_gain[static_cast<std::size_t>(k)];
        const bool admit =
            opts.skip_activation ||
            (eg > 0.0 && activation_test_total(total_eg, devices[static_cast<std::size_t>(k)], eg, params));
        if (!admit)
            break;
        admitted.emplace_back(k, eg);
        beam_of[k] = best_beam[static_cast<std::size_t>(k)];
        total_eg += eg;
    }
    return finish_solution(devices, params, admitted, beams, beam_of);
}

Solution solve_local_only(const std::vector<Device>& devices, const SystemParams& params) {
    Solution s;
    s.rate_offload_bits.assign(devices.size(), 0.0);
    s.rate_local_bits.assign(devices.size(), 0.0);
    for (std::size_t k = 0; k < devices.size(); ++k) {
        s.rate_local_bits[k] = local_rate_bits(devices[k], params);
        s.sum_rate_bits += s.rate_local_bits[k];
    }
    return s;
}

}  // namespace irsmec

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>

#include "irsmec/model.hpp"

namespace irsmec {

// Per-device effective energy-gain products E_k * g_k (W*s) for the devices
// currently scheduled to offload.
struct OffloadProfile {
    std::map<int, double> e_g;

    double total() const;
};

struct LocalRateResult {
    double rate_bits = 0.0;
    double f_star_hz = 0.0;
};

// Optimal local computing over the whole frame: f* = min((E/(T gamma_c))^(1/3),
// f_max), t* = T, rate = T f* / C.
LocalRateResult local_rate(const Device& dev, const SystemParams& params);
double local_rate_bits(const Device& dev, const SystemParams& params);

struct OffloadAllocation {
    std::map<int, double> tau_s;
    std::map<int, double> rate_bits;
    double gamma_star = 0.0;
    double sum_rate_bits = 0.0;
};

// Equal-received-SNR time split: gamma* = sum e_g / (T sigma^2),
// tau_k = T e_g_k / sum e_g (equal split when every e_g is zero), and
// sum rate = B T log2(1 + gamma*). Throws EmptyProfile.
OffloadAllocation offload_allocation(const OffloadProfile& profile, const SystemParams& params);

// B T log2(1 + total_eg / (T sigma^2)) — the offload sum rate a given total
// energy-gain mass supports.
double offload_sum_rate(double total_eg, const SystemParams& params);

// Sum offload rate after adding a candidate with product candidate_eg.
double offload_rate_if_added(const OffloadProfile& current, double candidate_eg,
                             const SystemParams& params);

}  // namespace irsmec

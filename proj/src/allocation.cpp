// SPDX-License-Identifier: Apache-2.0

#include "irsmec/allocation.hpp"

#include <cmath>

namespace irsmec {

double OffloadProfile::total() const {
    double s = 0.0;
    for (const auto& [k, eg] : e_g)
        s += eg;
    return s;
}

LocalRateResult local_rate(const Device& dev, const SystemParams& params) {
    const double f_energy = std::cbrt(dev.energy_j / (params.frame_s * params.gamma_c));
    const double f_star = std::min(f_energy, dev.f_max_hz);
    return {params.frame_s * f_star / dev.cycles_per_bit, f_star};
}

double local_rate_bits(const Device& dev, const SystemParams& params) {
    return local_rate(dev, params).rate_bits;
}

OffloadAllocation offload_allocation(const OffloadProfile& profile, const SystemParams& params) {
    if (profile.e_g.empty())
        throw EmptyProfile();
    for (const auto& [k, eg] : profile.e_g) {
        if (eg < 0.0)
            throw NonPositiveParameter("e_g[" + std::to_string(k) + "]");
    }

    const double T = params.frame_s;
    const double total = profile.total();

    OffloadAllocation out;
    out.gamma_star = total / (T * params.noise_w);
    out.sum_rate_bits = params.bandwidth_hz * T * std::log2(1.0 + out.gamma_star);

    const double rate_per_second = params.bandwidth_hz * std::log2(1.0 + out.gamma_star);
    if (total > 0.0) {
        for (const auto& [k, eg] : profile.e_g) {
            const double tau = T * eg / total;
            out.tau_s[k] = tau;
            out.rate_bits[k] = rate_per_second * tau;
        }
    } else {
        const double tau = T / static_cast<double>(profile.e_g.size());
        for (const auto& [k, eg] : profile.e_g) {
            out.tau_s[k] = tau;
            out.rate_bits[k] = 0.0;
        }
    }
    return out;
}

double offload_sum_rate(double total_eg, const SystemParams& params) {
    const double T = params.frame_s;
    return params.bandwidth_hz * T * std::log2(1.0 + total_eg / (T * params.noise_w));
}

double offload_rate_if_added(const OffloadProfile& current, double candidate_eg,
                             const SystemParams& params) {
    return offload_sum_rate(current.total() + candidate_eg, params);
}

}  // namespace irsmec

// SPDX-License-Identifier: Apache-2.0

#include "irsmec/model.hpp"

#include <algorithm>
#include <cmath>

namespace irsmec {

bool BeamVector::is_unit_modulus(double tol) const {
    for (const cxd& z : v) {
        if (std::fabs(std::abs(z) - 1.0) > tol)
            return false;
    }
    return true;
}

double dbm_to_watts(double p_dbm) {
    return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

double watts_to_dbm(double p_w) {
    return 10.0 * std::log10(p_w) + 30.0;
}

namespace {

void require_positive(double value, const std::string& field) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw NonPositiveParameter(field);
}

}  // namespace

void validate_scenario(const SystemParams& params, const std::vector<Device>& devices) {
    require_positive(params.bandwidth_hz, "bandwidth_hz");
    require_positive(params.frame_s, "frame_s");
    require_positive(params.noise_w, "noise_w");
    if (params.n_elements < 1)
        throw NonPositiveParameter("n_elements");
    if (params.q_budget < 1)
        throw NonPositiveParameter("q_budget");
    require_positive(params.gamma_c, "gamma_c");

    if (devices.empty())
        throw EmptyDeviceList();

    for (std::size_t k = 0; k < devices.size(); ++k) {
        const Device& d = devices[k];
        const std::string prefix = "devices[" + std::to_string(k) + "].";
        if (!(d.energy_j >= 0.0) || !std::isfinite(d.energy_j))
            throw NonPositiveParameter(prefix + "energy_j");
        require_positive(d.cycles_per_bit, prefix + "cycles_per_bit");
        require_positive(d.f_max_hz, prefix + "f_max_hz");
        for (double c : d.position_m) {
            if (!std::isfinite(c))
                throw NonPositiveParameter(prefix + "position_m");
        }
    }
}

void check_solution(const Solution& s, const SystemParams& params, double rel_tol) {
    const auto fail = [](const std::string& what) { throw std::logic_error("solution invariant violated: " + what); };

    if (s.rate_offload_bits.size() != s.rate_local_bits.size())
        fail("rate vector sizes differ");
    const int K = static_cast<int>(s.rate_offload_bits.size());

    if (!std::is_sorted(s.offload_set.begin(), s.offload_set.end()))
        fail("offload_set not sorted");
    for (int k : s.offload_set) {
        if (k < 0 || k >= K)
            fail("offload_set index out of range");
    }

    double tau_total = 0.0;
    for (const auto& [k, tau] : s.tau_s) {
        if (!std::binary_search(s.offload_set.begin(), s.offload_set.end(), k))
            fail("tau_s key not in offload_set");
        if (tau < 0.0)
            fail("negative tau");
        tau_total += tau;
    }
    if (s.tau_s.size() != s.offload_set.size())
        fail("tau_s keys != offload_set");
    if (tau_total > params.frame_s * (1.0 + rel_tol))
        fail("time budget exceeded");

    for (int k = 0; k < K; ++k) {
        const bool off = std::binary_search(s.offload_set.begin(), s.offload_set.end(), k);
        if (!off && s.rate_offload_bits[k] != 0.0)
            fail("local device with nonzero offload rate");
        if (off && s.rate_local_bits[k] != 0.0)
            fail("offloading device with nonzero local rate");
    }

    double total = 0.0;
    for (int k = 0; k < K; ++k)
        total += s.rate_offload_bits[k] + s.rate_local_bits[k];
    const double scale = std::max(std::fabs(total), std::fabs(s.sum_rate_bits));
    if (std::fabs(total - s.sum_rate_bits) > rel_tol * std::max(scale, 1.0))
        fail("sum_rate_bits != sum of per-device rates");

    for (const BeamVector& b : s.beams) {
        if (!b.is_unit_modulus())
            fail("beam not unit-modulus");
    }
    for (const auto& [k, idx] : s.beam_assignment) {
        if (!std::binary_search(s.offload_set.begin(), s.offload_set.end(), k))
            fail("beam assigned to local device");
        if (idx < 0 || static_cast<std::size_t>(idx) >= s.beams.size())
            fail("beam index out of range");
    }
}

}  // namespace irsmec

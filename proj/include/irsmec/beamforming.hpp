// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "irsmec/model.hpp"

namespace irsmec {

// One device's channel plus its energy weight, as seen by the shared-beam
// refinement. The span must outlive the call.
struct DeviceChannelView {
    double energy_j = 0.0;
    cxd h_d{0.0, 0.0};
    std::span<const cxd> q;
};

// Closed-form per-device reflection: entry n is exp(-j(arg(conj(q_n)) -
// arg(h_d))), with arg(0) taken as 0. The result satisfies
// |h_d + conj(q)^T v| = |h_d| + sum |q_n|. An all-zero q returns all-ones.
BeamVector align_phase(cxd h_d, std::span<const cxd> q);

// |h_d + conj(q)^T v|^2; throws DimensionMismatch.
double effective_gain(cxd h_d, std::span<const cxd> q, const BeamVector& v);

// sum_k E_k |h_k + conj(q_k)^T v|^2
double weighted_gain_sum(std::span<const DeviceChannelView> members, const BeamVector& v);

struct ScaResult {
    BeamVector beam;
    std::vector<double> objective_trace;  // objective at v_init, then per update
    std::vector<BeamVector> iterates;     // populated only when recording
};

// Maximizes sum_k E_k |h_k + conj(q_k)^T v|^2 over unit-modulus v by
// iterating the closed-form ascent step
//   v <- exp(j arg(sum_k E_k (q_k (conj(q_k)^T v) + q_k h_k))),
// each step maximizing a first-order lower bound that is tight at the
// current iterate, so the objective trace is nondecreasing. Stops when the
// relative objective increase drops below eps or after max_iter updates.
ScaResult shared_beam_sca(std::span<const DeviceChannelView> members, const BeamVector& v_init,
                          double eps = 1e-6, int max_iter = 200, bool record_iterates = false);

// Warm start: the aligned beam of the member with the largest
// E_k (|h_k| + sum |q_n|)^2.
BeamVector default_sca_init(std::span<const DeviceChannelView> members);

// Convenience overload using default_sca_init.
ScaResult shared_beam_sca(std::span<const DeviceChannelView> members, double eps = 1e-6,
                          int max_iter = 200, bool record_iterates = false);

}  // namespace irsmec

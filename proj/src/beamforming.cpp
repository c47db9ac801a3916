// SPDX-License-Identifier: Apache-2.0

#include "irsmec/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irsmec/kernels.hpp"

namespace irsmec {

namespace {

double arg_or_zero(cxd z) {
    if (z.real() == 0.0 && z.imag() == 0.0)
        return 0.0;
    return std::arg(z);
}

}  // namespace

BeamVector align_phase(cxd h_d, std::span<const cxd> q) {
    BeamVector out;
    out.v.resize(q.size());

    const bool q_all_zero =
        std::all_of(q.begin(), q.end(), [](cxd z) { return z.real() == 0.0 && z.imag() == 0.0; });
    if (q_all_zero) {
        std::fill(out.v.begin(), out.v.end(), cxd{1.0, 0.0});
        return out;
    }

    const double ah = arg_or_zero(h_d);
    for (std::size_t n = 0; n < q.size(); ++n) {
        // -(arg(conj(q_n)) - arg(h_d)) == arg(q_n) + arg(h_d)
        const double phase = arg_or_zero(q[n]) + ah;
        out.v[n] = cxd{std::cos(phase), std::sin(phase)};
    }
    return out;
}

double effective_gain(cxd h_d, std::span<const cxd> q, const BeamVector& v) {
    if (q.size() != v.v.size())
        throw DimensionMismatch("channel has " + std::to_string(q.size()) + " elements, beam has " +
                                std::to_string(v.v.size()));
    return kernels::channel_gain(h_d, q, v.v);
}

double weighted_gain_sum(std::span<const DeviceChannelView> members, const BeamVector& v) {
    double sum = 0.0;
    for (const DeviceChannelView& m : members)
        sum += m.energy_j * kernels::channel_gain(m.h_d, m.q, v.v);
    return sum;
}

BeamVector default_sca_init(std::span<const DeviceChannelView> members) {
    if (members.empty())
        throw EmptySubset();
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double amp = std::abs(members[i].h_d) + kernels::abs_sum(members[i].q);
        const double val = members[i].energy_j * amp * amp;
        if (val > best_val) {
            best_val = val;
            best = i;
        }
    }
    return align_phase(members[best].h_d, members[best].q);
}

ScaResult shared_beam_sca(std::span<const DeviceChannelView> members, const BeamVector& v_init,
                          double eps, int max_iter, bool record_iterates) {
    if (members.empty())
        throw EmptySubset();
    if (!(eps > 0.0))
        throw NonPositiveParameter("eps");
    const std::size_t n_el = v_init.v.size();
    for (const DeviceChannelView& m : members) {
        if (m.q.size() != n_el)
            throw DimensionMismatch("member channel length differs from beam length");
    }

    ScaResult res;
    res.beam = v_init;
    res.objective_trace.push_back(weighted_gain_sum(members, res.beam));
    if (record_iterates)
        res.iterates.push_back(res.beam);

    cvec coeff(n_el);
    BeamVector next;
    next.v.resize(n_el);

    for (int iter = 0; iter < max_iter; ++iter) {
        std::fill(coeff.begin(), coeff.end(), cxd{0.0, 0.0});
        for (const DeviceChannelView& m : members) {
            const cxd s = kernels::dot_conj(m.q, res.beam.v);
            kernels::axpy(m.energy_j * (s + m.h_d), m.q, coeff);
        }
        for (std::size_t n = 0; n < n_el; ++n) {
            const double phase = arg_or_zero(coeff[n]);
            next.v[n] = cxd{std::cos(phase), std::sin(phase)};
        }

        const double f_old = res.objective_trace.back();
        const double f_new = weighted_gain_sum(members, next);
        res.beam = next;
        res.objective_trace.push_back(f_new);
        if (record_iterates)
            res.iterates.push_back(res.beam);
        if (f_new - f_old <= eps * f_old)
            break;
    }
    return res;
}

ScaResult shared_beam_sca(std::span<const DeviceChannelView> members, double eps, int max_iter,
                          bool record_iterates) {
    return shared_beam_sca(members, default_sca_init(members), eps, max_iter, record_iterates);
}

}  // namespace irsmec

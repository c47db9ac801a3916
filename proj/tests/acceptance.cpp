// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "irsmec/allocation.hpp"
#include "irsmec/beamforming.hpp"
#include "irsmec/harness.hpp"
#include "irsmec/kernels.hpp"
#include "irsmec/oracle.hpp"
#include "irsmec/rng.hpp"
#include "irsmec/selection.hpp"

using namespace irsmec;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

int g_failures = 0;

void report(int index, const std::string& name, const Check& c, double elapsed_s) {
    std::printf("[%s] %d: %s (%.1f s)%s%s\n", c.ok ? "PASS" : "FAIL", index, name.c_str(), elapsed_s,
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok)
        ++g_failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

ExperimentSpec base_spec() {
    ExperimentSpec spec;
    spec.scenario = default_scenario();  // evaluation constants, K = 10
    spec.trials = 200;
    spec.seed = 2026;
    return spec;
}

// ---------------------------------------------------------------------------
// 1. Saturation of the offloader count and of the finite-budget rate in Q.

void criterion_saturation() {
    const double t0 = now_s();
    Check c;

    const std::vector<double> cpb{500.0, 1000.0, 1500.0};
    const std::vector<int> expected{3, 5, 7};

    ExperimentSpec count_spec = base_spec();
    count_spec.sweep_name = "cycles_per_bit";
    count_spec.sweep_values = cpb;
    count_spec.solver = "infinite_q";
    const ExperimentResult counts = run_experiment(count_spec);

    std::string counts_txt;
    for (std::size_t i = 0; i < cpb.size(); ++i) {
        const double mean_off = counts.rows[i].mean_offloaders;
        const long rounded = std::lround(mean_off);
        counts_txt += (i ? ", " : "") + std::to_string(expected[i]) + "->" + fmt(mean_off);
        c.require(std::labs(rounded - expected[i]) <= 1,
                  "mean offloaders " + fmt(mean_off) + " rounds outside " +
                      std::to_string(expected[i]) + "+-1 at C=" + fmt(cpb[i]));

        ExperimentSpec rate_spec = base_spec();
        rate_spec.scenario.devices[0].cycles_per_bit = cpb[i];
        rate_spec.sweep_name = "q_budget";
        rate_spec.sweep_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        rate_spec.solver = "finite_q";
        const ExperimentResult rates = run_experiment(rate_spec);

        const double ref = rates.rows.back().mean_rate_bits;
        for (std::size_t qi = static_cast<std::size_t>(rounded) - 1; qi < rates.rows.size(); ++qi) {
            const double r = rates.rows[qi].mean_rate_bits;
            c.require(std::fabs(r - ref) <= 0.01 * ref,
                      "rate not flat at C=" + fmt(cpb[i]) + ", Q=" + fmt(rates.rows[qi].sweep_value));
        }
    }
    c.detail = "mean offloaders (target->measured): " + counts_txt +
               (c.detail.empty() ? "" : "; " + c.detail);

    const double elapsed = now_s() - t0;
    c.require(elapsed < 60.0, "runtime exceeded 60 s");
    report(1, "offloader count saturates at the expected beam budget", c, elapsed);
}

// ---------------------------------------------------------------------------
// 2. Greedy selection is exact against the subset oracle when devices are
// homogeneous.

void criterion_homogeneous_exactness() {
    const double t0 = now_s();
    Check c;

    GeometryConfig cfg;
    SystemParams params;
    params.n_elements = 8;

    double worst = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        Rng rng = Rng::stream(777, static_cast<std::uint64_t>(inst));
        const std::vector<Vec3> pos = sample_device_positions(cfg, 6, rng);
        std::vector<Device> devices(6);
        for (std::size_t k = 0; k < devices.size(); ++k)
            devices[k].position_m = pos[k];
        const ChannelSet channels = realize_channels(params, cfg, devices, rng);

        const Solution s = solve_infinite_q(devices, channels, params);
        const OracleResult o = subset_oracle(devices, channels, params);
        const double rel = std::fabs(s.sum_rate_bits - o.best_rate_bits) /
                           std::max(o.best_rate_bits, 1e-30);
        worst = std::max(worst, rel);
    }
    c.require(worst <= 1e-9, "worst relative gap " + fmt(worst));
    c.detail = "worst relative gap " + fmt(worst);

    const double elapsed = now_s() - t0;
    c.require(elapsed < 10.0, "runtime exceeded 10 s");
    report(2, "greedy selection matches the exhaustive subset search (homogeneous)", c, elapsed);
}

// ---------------------------------------------------------------------------
// 3. Finite-budget heuristic vs. the exhaustive grouping oracle at toy scale.

void criterion_grouping_quality() {
    const double t0 = now_s();
    Check c;

    GeometryConfig cfg;
    SystemParams params;
    params.n_elements = 3;
    params.q_budget = 2;

    double worst_ratio = 1.0;
    for (int inst = 0; inst < 50; ++inst) {
        Rng rng = Rng::stream(888, static_cast<std::uint64_t>(inst));
        const std::vector<Vec3> pos = sample_device_positions(cfg, 4, rng);
        std::vector<Device> devices(4);
        for (std::size_t k = 0; k < devices.size(); ++k) {
            devices[k].position_m = pos[k];
            devices[k].cycles_per_bit = (inst % 2 == 0) ? 1000.0 : 500.0;
        }
        const ChannelSet channels = realize_channels(params, cfg, devices, rng);

        const Solution s = solve_finite_q(devices, channels, params);
        const OracleResult o = grouping_oracle(devices, channels, params, 16);
        if (o.best_rate_bits > 0.0)
            worst_ratio = std::min(worst_ratio, s.sum_rate_bits / o.best_rate_bits);
    }
    c.require(worst_ratio >= 0.98, "worst heuristic/oracle ratio " + fmt(worst_ratio));
    c.detail = "worst heuristic/oracle ratio " + fmt(worst_ratio);

    const double elapsed = now_s() - t0;
    c.require(elapsed < 300.0, "runtime exceeded 5 min");
    report(3, "budgeted heuristic keeps 98% of the grouping-oracle rate", c, elapsed);
}

// ---------------------------------------------------------------------------
// 4. Closed-form time allocation: KKT invariants and dominance.

void criterion_allocation() {
    const double t0 = now_s();
    Check c;

    SystemParams params;
    Rng rng(9090);
    for (int inst = 0; inst < 1000 && c.ok; ++inst) {
        OffloadProfile profile;
        const int n = 1 + static_cast<int>(rng.uniform01() * 7);
        for (int k = 0; k < n; ++k)
            profile.e_g[k] = rng.uniform01() < 0.05
                                 ? 0.0
                                 : 1e-11 * std::pow(10.0, rng.uniform(-1.0, 2.5));
        const OffloadAllocation a = offload_allocation(profile, params);

        double tau_total = 0.0;
        double per_device_sum = 0.0;
        for (const auto& [k, eg] : profile.e_g) {
            const double tau = a.tau_s.at(k);
            tau_total += tau;
            if (eg > 0.0) {
                const double snr = eg / (tau * params.noise_w);
                c.require(std::fabs(snr - a.gamma_star) <= 1e-9 * a.gamma_star,
                          "unequal SNR at instance " + std::to_string(inst));
                per_device_sum += params.bandwidth_hz * tau * std::log2(1.0 + snr);
            }
        }
        c.require(std::fabs(tau_total - params.frame_s) <= 1e-12 * params.frame_s,
                  "time budget at instance " + std::to_string(inst));
        c.require(std::fabs(per_device_sum - a.sum_rate_bits) <=
                      1e-9 * std::max(a.sum_rate_bits, 1e-30),
                  "per-device sum mismatch at instance " + std::to_string(inst));

        for (int s = 0; s < 1000; ++s) {
            double expo_sum = 0.0;
            std::vector<double> expo;
            for (int k = 0; k < n; ++k) {
                expo.push_back(-std::log(1.0 - rng.uniform01()));
                expo_sum += expo.back();
            }
            double rate = 0.0;
            int k = 0;
            for (const auto& [key, eg] : profile.e_g) {
                const double tau = params.frame_s * expo[static_cast<std::size_t>(k++)] / expo_sum;
                if (tau > 0.0 && eg > 0.0)
                    rate += params.bandwidth_hz * tau * std::log2(1.0 + eg / (tau * params.noise_w));
            }
            c.require(rate <= a.sum_rate_bits * (1.0 + 1e-9),
                      "random split beat the closed form at instance " + std::to_string(inst));
            if (!c.ok)
                break;
        }
    }
    report(4, "equal-SNR closed form: invariants and dominance over random splits", c, now_s() - t0);
}

// ---------------------------------------------------------------------------
// 5. Closed-form reflection alignment is optimal.

void criterion_alignment() {
    const double t0 = now_s();
    Check c;

    Rng rng(555);
    for (int inst = 0; inst < 100 && c.ok; ++inst) {
        const double scale = std::pow(10.0, rng.uniform(-6.0, 0.0));
        const cxd h = 10.0 * scale * rng.cgaussian();
        cvec q(60);
        for (cxd& z : q)
            z = scale * rng.cgaussian();

        const BeamVector v = align_phase(h, q);
        const double gain = effective_gain(h, q, v);
        const double amp = std::abs(h) + kernels::abs_sum(q);
        c.require(std::fabs(gain - amp * amp) <= 1e-10 * amp * amp,
                  "closed form mismatch at instance " + std::to_string(inst));

        BeamVector probe;
        probe.v.resize(q.size());
        for (int s = 0; s < 10000; ++s) {
            for (cxd& z : probe.v) {
                const double phase = rng.uniform(0.0, 6.283185307179586);
                z = {std::cos(phase), std::sin(phase)};
            }
            if (effective_gain(h, q, probe) > gain + 1e-12) {
                c.require(false, "random reflection beat alignment at instance " + std::to_string(inst));
                break;
            }
        }
    }
    report(5, "phase alignment attains (|h|+sum|q|)^2 and dominates random reflections", c,
           now_s() - t0);
}

// ---------------------------------------------------------------------------
// 6. Shared-beam ascent contract.

double sca_lower_bound(const std::vector<DeviceChannelView>& members, const BeamVector& vhat,
                       const BeamVector& v) {
    double lb = 0.0;
    for (const DeviceChannelView& m : members) {
        cxd e_hat = m.h_d;
        cxd e = m.h_d;
        for (std::size_t n = 0; n < m.q.size(); ++n) {
            e_hat += std::conj(m.q[n]) * vhat.v[n];
            e += std::conj(m.q[n]) * v.v[n];
        }
        lb += m.energy_j * (-std::norm(e_hat) + 2.0 * std::real(std::conj(e_hat) * e));
    }
    return lb;
}

void criterion_sca() {
    const double t0 = now_s();
    Check c;

    Rng rng(666);
    for (int inst = 0; inst < 100 && c.ok; ++inst) {
        std::vector<cvec> qs;
        std::vector<cxd> hs;
        for (int k = 0; k < 3; ++k) {
            hs.push_back(1e-4 * rng.cgaussian());
            cvec q(16);
            for (cxd& z : q)
                z = 1e-5 * rng.cgaussian();
            qs.push_back(std::move(q));
        }
        std::vector<DeviceChannelView> members;
        for (int k = 0; k < 3; ++k)
            members.push_back({0.001 + 0.02 * rng.uniform01(), hs[static_cast<std::size_t>(k)],
                               qs[static_cast<std::size_t>(k)]});

        const ScaResult res = shared_beam_sca(members, 1e-6, 200, true);
        for (std::size_t i = 0; i + 1 < res.objective_trace.size() && c.ok; ++i) {
            const double f0 = res.objective_trace[i];
            const double f1 = res.objective_trace[i + 1];
            c.require(f1 >= f0 * (1.0 - 1e-10), "trace decreased at instance " + std::to_string(inst));
            const double tight = sca_lower_bound(members, res.iterates[i], res.iterates[i]);
            c.require(std::fabs(tight - f0) <= 1e-10 * std::max(f0, 1e-300),
                      "lower bound not tight at instance " + std::to_string(inst));
        }
        for (const BeamVector& it : res.iterates)
            c.require(it.is_unit_modulus(1e-12), "unit modulus lost at instance " + std::to_string(inst));
    }
    report(6, "shared-beam ascent: monotone trace, tight bound, unit modulus", c, now_s() - t0);
}

// ---------------------------------------------------------------------------
// 7. Simulation trends: element scaling, coverage, and scheme ordering.

void criterion_trends() {
    const double t0 = now_s();
    Check c;

    const auto mean_rates = [](ExperimentSpec spec, const std::string& solver) {
        spec.solver = solver;
        const ExperimentResult res = run_experiment(spec);
        std::vector<double> means;
        for (const SweepRow& row : res.rows)
            means.push_back(row.mean_rate_bits);
        return means;
    };

    // Element sweep: optimized rate grows with N and the gap over the
    // surface-free system widens.
    {
        ExperimentSpec spec = base_spec();
        spec.sweep_name = "n_elements";
        spec.sweep_values = {20, 60, 100};
        const std::vector<double> fin = mean_rates(spec, "finite_q");
        const std::vector<double> none = mean_rates(spec, "no_irs");
        c.require(fin[0] < fin[1] && fin[1] < fin[2], "rate not increasing in N");
        c.require(fin[0] - none[0] < fin[1] - none[1] && fin[1] - none[1] < fin[2] - none[2],
                  "gain over the surface-free system not widening in N");
    }

    // Coverage: moving the cluster (surface tracking it) from 30 m to 90 m
    // hurts the surface-free system much faster.
    {
        ExperimentSpec spec = base_spec();
        spec.sweep_name = "distance_m";
        spec.sweep_values = {30, 90};
        const std::vector<double> fin = mean_rates(spec, "finite_q");
        const std::vector<double> none = mean_rates(spec, "no_irs");
        c.require(fin[1] < fin[0] && none[1] < none[0], "rates did not decay with distance");
        c.require(none[1] / none[0] < fin[1] / fin[0],
                  "surface-free decay not faster than the assisted system");
    }

    // Scheme ordering at the default energy budget.
    {
        ExperimentSpec spec = base_spec();
        spec.sweep_name = "q_budget";
        spec.sweep_values = {5};
        const double fin = mean_rates(spec, "finite_q")[0];
        const double inf = mean_rates(spec, "infinite_q")[0];
        const double rnd = mean_rates(spec, "random_beam")[0];
        const double off = mean_rates(spec, "offload_only")[0];
        const double none = mean_rates(spec, "no_irs")[0];
        const double loc = mean_rates(spec, "local_only")[0];

        c.require(inf >= fin, "unlimited budget below the finite budget");
        c.require(fin >= rnd && fin >= off && fin >= none && fin >= loc,
                  "optimized design not dominant");
        c.require(rnd > none, "random reflection below the surface-free system");
        c.require(rnd - none < fin - none, "random reflection not a marginal gain");
        c.detail = "mean rates: finite=" + fmt(fin) + " inf=" + fmt(inf) + " random=" + fmt(rnd) +
                   " offload_only=" + fmt(off) + " no_irs=" + fmt(none) + " local=" + fmt(loc);
    }

    report(7, "simulation trends: element scaling, coverage, scheme ordering", c, now_s() - t0);
}

// ---------------------------------------------------------------------------
// 8. Byte-identical sweeps.

void criterion_determinism() {
    const double t0 = now_s();
    Check c;

    ExperimentSpec spec = base_spec();
    spec.scenario.params.n_elements = 16;
    spec.sweep_name = "q_budget";
    spec.sweep_values = {1, 3, 5};
    spec.trials = 25;
    spec.solver = "finite_q";

    const std::string a = to_csv(run_experiment(spec));
    const std::string b = to_csv(run_experiment(spec));
    c.require(a == b, "repeated sweep differed");
    c.require(!a.empty() && a.find("q_budget") != std::string::npos, "CSV missing content");
    report(8, "repeated sweeps produce byte-identical CSV", c, now_s() - t0);
}

}  // namespace

int main() {
    std::printf("kernel backend: %s\n", std::string(kernels::name(kernels::active())).c_str());
    const double t0 = now_s();

    criterion_saturation();
    criterion_homogeneous_exactness();
    criterion_grouping_quality();
    criterion_allocation();
    criterion_alignment();
    criterion_sca();
    criterion_trends();
    criterion_determinism();

    std::printf("%d of 8 criteria passed (%.1f s total)\n", 8 - g_failures, now_s() - t0);
    return g_failures == 0 ? 0 : 1;
}

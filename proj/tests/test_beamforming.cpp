// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "irsmec/beamforming.hpp"
#include "irsmec/kernels.hpp"
#include "irsmec/rng.hpp"

using namespace irsmec;

namespace {

BeamVector random_unit_beam(std::size_t n, Rng& rng) {
    BeamVector b;
    b.v.resize(n);
    for (cxd& z : b.v) {
        const double phase = rng.uniform(0.0, 6.283185307179586);
        z = {std::cos(phase), std::sin(phase)};
    }
    return b;
}

cvec random_cvec(std::size_t n, Rng& rng, double scale = 1.0) {
    cvec out(n);
    for (cxd& z : out)
        z = scale * rng.cgaussian();
    return out;
}

// First-order lower bound of the weighted gain sum at expansion point vhat,
// evaluated at v. Written independently of the solver's update step.
double sca_lower_bound(std::span<const DeviceChannelView> members, const BeamVector& vhat,
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

}  // namespace

TEST_SUITE_BEGIN("beamforming");

TEST_CASE("align_phase reaches the amplitude-sum gain") {
    const cxd h{0.3, 0.4};
    const cvec q{cxd{3.0, 4.0}};
    const BeamVector v = align_phase(h, q);
    CHECK(v.is_unit_modulus());
    const double gain = effective_gain(h, q, v);
    CHECK(gain == doctest::Approx(30.25).epsilon(1e-10));

    // No random unit-modulus reflection may exceed the closed form.
    Rng rng(21);
    for (int i = 0; i < 1000000; ++i) {
        const BeamVector r = random_unit_beam(1, rng);
        CHECK(effective_gain(h, q, r) <= gain + 1e-12);
    }
}

TEST_CASE("align_phase on a zero cascade returns all-ones") {
    const cxd h{0.6, -0.8};
    const cvec q(4, cxd{0.0, 0.0});
    const BeamVector v = align_phase(h, q);
    for (const cxd& z : v.v)
        CHECK(z == cxd{1.0, 0.0});
    CHECK(effective_gain(h, q, v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("align_phase with no direct link adds magnitudes") {
    const cvec q{cxd{1.0, 0.0}, cxd{0.0, 1.0}};
    const BeamVector v = align_phase(cxd{0.0, 0.0}, q);
    CHECK(effective_gain(cxd{0.0, 0.0}, q, v) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("align_phase matches |h| + sum|q| for random channels") {
    Rng rng(22);
    for (int i = 0; i < 50; ++i) {
        const cxd h = rng.cgaussian();
        const cvec q = random_cvec(1 + static_cast<std::size_t>(rng.uniform01() * 8), rng);
        const BeamVector v = align_phase(h, q);
        const double amp = std::abs(h) + kernels::abs_sum(q);
        CHECK(effective_gain(h, q, v) == doctest::Approx(amp * amp).epsilon(1e-10));
        for (int s = 0; s < 10000; ++s) {
            const BeamVector r = random_unit_beam(q.size(), rng);
            CHECK(effective_gain(h, q, r) <= amp * amp + 1e-12);
        }
    }
}

TEST_CASE("effective_gain basics") {
    CHECK(effective_gain(cxd{1.0, 0.0}, cvec{cxd{0.0, 0.0}, cxd{0.0, 0.0}},
                         BeamVector{cvec{cxd{1.0, 0.0}, cxd{0.0, 1.0}}}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Destructive: h = 1, q = [1], v = [-1] -> conj(q)v = -1 cancels h.
    CHECK(effective_gain(cxd{1.0, 0.0}, cvec{cxd{1.0, 0.0}}, BeamVector{cvec{cxd{-1.0, 0.0}}}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(effective_gain(cxd{1.0, 0.0}, cvec{cxd{1.0, 0.0}}, BeamVector{cvec{}}),
                    DimensionMismatch);
}

TEST_CASE("shared_beam_sca: single member converges immediately to alignment") {
    Rng rng(23);
    const cxd h = rng.cgaussian();
    const cvec q = random_cvec(6, rng);
    const DeviceChannelView member{0.01, h, q};
    const ScaResult res = shared_beam_sca(std::span(&member, 1));

    const double aligned = 0.01 * effective_gain(h, q, align_phase(h, q));
    CHECK(res.objective_trace.back() == doctest::Approx(aligned).epsilon(1e-9));
    CHECK(res.objective_trace.size() == 2);  // init objective + one exact step
}

TEST_CASE("shared_beam_sca: identical members behave like one") {
    Rng rng(24);
    const cxd h = rng.cgaussian();
    const cvec q = random_cvec(5, rng);
    const double energy = 0.01;
    const std::vector<DeviceChannelView> members{{energy, h, q}, {energy, h, q}};
    const ScaResult res = shared_beam_sca(members);
    const double amp = std::abs(h) + kernels::abs_sum(q);
    CHECK(res.objective_trace.back() == doctest::Approx(2.0 * energy * amp * amp).epsilon(1e-9));
}

TEST_CASE("shared_beam_sca tracks the quantized exhaustive optimum") {
    Rng rng(7);
    const int n_el = 4;
    std::vector<cvec> qs;
    std::vector<cxd> hs;
    std::vector<DeviceChannelView> members;
    for (int k = 0; k < 3; ++k) {
        hs.push_back(rng.cgaussian());
        qs.push_back(random_cvec(n_el, rng));
    }
    for (int k = 0; k < 3; ++k)
        members.push_back({0.01, hs[static_cast<std::size_t>(k)], qs[static_cast<std::size_t>(k)]});

    const ScaResult res = shared_beam_sca(members);
    CHECK(res.objective_trace.back() >= res.objective_trace.front() - 1e-12);

    // Each member's aligned beam evaluated on the weighted sum cannot beat it.
    for (int k = 0; k < 3; ++k) {
        const BeamVector aligned = align_phase(hs[static_cast<std::size_t>(k)], qs[static_cast<std::size_t>(k)]);
        CHECK(weighted_gain_sum(members, aligned) <= res.objective_trace.back() * (1.0 + 1e-9));
    }

    // Exhaustive grid over 16 phase levels per element (16^4 = 65536 beams).
    double grid_best = 0.0;
    BeamVector probe;
    probe.v.resize(n_el);
    for (int idx = 0; idx < 65536; ++idx) {
        int rem = idx;
        for (int n = 0; n < n_el; ++n) {
            const double ang = 2.0 * 3.141592653589793 * (rem % 16) / 16.0;
            probe.v[static_cast<std::size_t>(n)] = {std::cos(ang), std::sin(ang)};
            rem /= 16;
        }
        grid_best = std::max(grid_best, weighted_gain_sum(members, probe));
    }
    CHECK(std::fabs(res.objective_trace.back() - grid_best) <= 0.02 * grid_best);
}

TEST_CASE("shared_beam_sca contract: monotone, tight bound, unit modulus") {
    Rng rng(25);
    for (int inst = 0; inst < 20; ++inst) {
        std::vector<cvec> qs;
        std::vector<cxd> hs;
        std::vector<DeviceChannelView> members;
        for (int k = 0; k < 3; ++k) {
            hs.push_back(rng.cgaussian());
            qs.push_back(random_cvec(8, rng, 0.3 + rng.uniform01()));
        }
        for (int k = 0; k < 3; ++k)
            members.push_back({0.005 + 0.01 * rng.uniform01(), hs[static_cast<std::size_t>(k)],
                               qs[static_cast<std::size_t>(k)]});

        const ScaResult res = shared_beam_sca(members, 1e-6, 200, true);
        REQUIRE(res.iterates.size() == res.objective_trace.size());
        for (std::size_t i = 0; i + 1 < res.objective_trace.size(); ++i) {
            CHECK(res.objective_trace[i + 1] >=
                  res.objective_trace[i] * (1.0 - 1e-12) - 1e-300);
            // Tight at the expansion point, and a true lower bound at the next iterate.
            const double f_here = res.objective_trace[i];
            const double tight = sca_lower_bound(members, res.iterates[i], res.iterates[i]);
            CHECK(std::fabs(tight - f_here) <= 1e-10 * std::max(f_here, 1e-30));
            const double lb_next = sca_lower_bound(members, res.iterates[i], res.iterates[i + 1]);
            CHECK(lb_next <= res.objective_trace[i + 1] * (1.0 + 1e-10) + 1e-300);
            CHECK(lb_next >= tight - 1e-10 * std::max(f_here, 1e-30));
        }
        for (const BeamVector& it : res.iterates)
            CHECK(it.is_unit_modulus());
    }
}

TEST_CASE("shared_beam_sca rejects bad input") {
    CHECK_THROWS_AS(shared_beam_sca({}), EmptySubset);
    Rng rng(26);
    const cvec q = random_cvec(3, rng);
    const DeviceChannelView m{0.01, cxd{1.0, 0.0}, q};
    BeamVector wrong;
    wrong.v.resize(2, cxd{1.0, 0.0});
    CHECK_THROWS_AS(shared_beam_sca(std::span(&m, 1), wrong), DimensionMismatch);
    CHECK_THROWS_AS(shared_beam_sca(std::span(&m, 1), align_phase(m.h_d, m.q), 0.0),
                    NonPositiveParameter);
}

TEST_SUITE_END();

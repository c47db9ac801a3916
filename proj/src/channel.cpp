// SPDX-License-Identifier: Apache-2.0

#include "irsmec/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsmec {

double path_loss(double d_m, double alpha, const GeometryConfig& cfg) {
    if (!(d_m > 0.0))
        throw NonPositiveDistance();
    const double c0 = std::pow(10.0, cfg.pathloss_ref_db / 10.0);
    return c0 * std::pow(d_m / cfg.ref_distance_m, -alpha);
}

double distance(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

cvec rician_vector(int dim, double k_factor_db, Rng& rng) {
    const double kappa = std::pow(10.0, k_factor_db / 10.0);
    const double los_w = std::sqrt(kappa / (1.0 + kappa));
    const double nlos_w = std::sqrt(1.0 / (1.0 + kappa));

    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double step = std::numbers::pi * std::sin(phi);

    cvec out(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n) {
        const cxd los{std::cos(step * n), std::sin(step * n)};
        out[n] = los_w * los + nlos_w * rng.cgaussian();
    }
    return out;
}

std::vector<Vec3> sample_device_positions(const GeometryConfig& cfg, int count, Rng& rng) {
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double rho = cfg.cluster_radius_m * std::sqrt(rng.uniform01());
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        out.push_back(Vec3{cfg.cluster_center_m[0] + rho * std::cos(theta),
                           cfg.cluster_center_m[1] + rho * std::sin(theta),
                           cfg.cluster_center_m[2]});
    }
    return out;
}

namespace {

// Verifies, while the link factors are still in scope, that the stored
// cascade satisfies sum_n conj(q_n) v_n == sum_n conj(h_r_n) g_n v_n for a
// fixed probe v.
void check_cascade(const cvec& q, const cvec& h_r, const cvec& g) {
    const std::size_t n_el = q.size();
    cxd via_q{0.0, 0.0};
    cxd via_factors{0.0, 0.0};
    double scale = 0.0;
    for (std::size_t n = 0; n < n_el; ++n) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(n_el);
        const cxd v{std::cos(ang), std::sin(ang)};
        via_q += std::conj(q[n]) * v;
        via_factors += std::conj(h_r[n]) * g[n] * v;
        scale += std::abs(h_r[n]) * std::abs(g[n]);
    }
    if (std::abs(via_q - via_factors) > 1e-12 * std::max(scale, 1e-300))
        throw std::logic_error("cascaded channel inconsistent with its factors");
}

}  // namespace

ChannelSet realize_channels(const SystemParams& params, const GeometryConfig& cfg,
                            const std::vector<Device>& devices, Rng& rng) {
    const int n_el = params.n_elements;
    const std::size_t K = devices.size();

    const double d_ap_irs = distance(cfg.ap_pos_m, cfg.irs_pos_m);
    const double amp_ap_irs = std::sqrt(path_loss(d_ap_irs, cfg.alpha_ap_irs, cfg));

    cvec g = rician_vector(n_el, cfg.rician_k_db, rng);
    for (cxd& z : g)
        z *= amp_ap_irs;

    ChannelSet ch;
    ch.h_d.resize(K);
    ch.q.resize(K);

    for (std::size_t k = 0; k < K; ++k) {
        const double d_irs = distance(cfg.irs_pos_m, devices[k].position_m);
        const double d_ap = distance(cfg.ap_pos_m, devices[k].position_m);
        const double amp_irs_dev = std::sqrt(path_loss(d_irs, cfg.alpha_irs_dev, cfg));
        const double amp_ap_dev = std::sqrt(path_loss(d_ap, cfg.alpha_ap_dev, cfg));

        cvec h_r = rician_vector(n_el, cfg.rician_k_db, rng);
        for (cxd& z : h_r)
            z *= amp_irs_dev;

        const cxd rho = rician_vector(1, cfg.rician_k_db, rng)[0];
        ch.h_d[k] = amp_ap_dev * rho;

        // q_n = h_r_n * conj(g_n), so conj(q)^T v reproduces the composite
        // surface path h_r^H diag(g) v exactly.
        cvec& q = ch.q[k];
        q.resize(static_cast<std::size_t>(n_el));
        for (int n = 0; n < n_el; ++n)
            q[static_cast<std::size_t>(n)] = h_r[static_cast<std::size_t>(n)] * std::conj(g[static_cast<std::size_t>(n)]);

        check_cascade(q, h_r, g);
    }
    return ch;
}

}  // namespace irsmec

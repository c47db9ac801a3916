// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "irsmec/model.hpp"
#include "irsmec/rng.hpp"

namespace irsmec {

struct GeometryConfig {
    Vec3 ap_pos_m{0.0, 0.0, 0.0};
    Vec3 irs_pos_m{30.0, 0.0, 4.0};
    Vec3 cluster_center_m{30.0, 0.0, 0.0};
    double cluster_radius_m = 4.0;
    double pathloss_ref_db = -30.0;  // c0 at d0
    double ref_distance_m = 1.0;     // d0
    double alpha_ap_irs = 2.2;
    double alpha_irs_dev = 2.2;
    double alpha_ap_dev = 3.4;
    double rician_k_db = 3.0;
};

// Per-trial channel realization. h_d[k] is the direct AP-device coefficient;
// q[k] is the cascaded surface vector stored so that for any reflection
// vector v, sum_n conj(q[k][n]) * v[n] equals the reflected-path coefficient.
struct ChannelSet {
    std::vector<cxd> h_d;
    std::vector<cvec> q;

    std::size_t device_count() const { return h_d.size(); }
};

// c0_linear * (d / d0)^(-alpha); throws NonPositiveDistance for d <= 0.
double path_loss(double d_m, double alpha, const GeometryConfig& cfg);

double distance(const Vec3& a, const Vec3& b);

// Rician small-scale vector with unit average entry power:
// sqrt(kappa/(1+kappa)) * a + sqrt(1/(1+kappa)) * w, where a is a ULA steering
// vector with angle drawn uniformly from [0, 2pi) and w is i.i.d. CN(0, 1).
// Draw order: angle first, then the diffuse entries in index order.
cvec rician_vector(int dim, double k_factor_db, Rng& rng);

// Uniform placement over a disk of cluster_radius_m around the cluster
// center, at the center's height. Two uniform draws per position.
std::vector<Vec3> sample_device_positions(const GeometryConfig& cfg, int count, Rng& rng);

// Draw order: AP-IRS vector first, then per device (ascending index) the
// IRS-device vector followed by the direct scalar.
ChannelSet realize_channels(const SystemParams& params, const GeometryConfig& cfg,
                            const std::vector<Device>& devices, Rng& rng);

}  // namespace irsmec

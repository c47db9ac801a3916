// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsmec/kernels.hpp"

namespace irsmec {

using Vec3 = std::array<double, 3>;

// Global system constants. All values are SI (W, J, Hz, s); dBm/dB appear
// only at configuration boundaries (see harness).
struct SystemParams {
    double bandwidth_hz = 1.0e6;  // B
    double frame_s = 1.0;         // T
    double noise_w = 1.0e-11;     // sigma^2
    int n_elements = 60;          // N, reflecting elements
    int q_budget = 5;             // Q, reflection vectors per frame
    double gamma_c = 1.0e-28;     // compute energy-efficiency constant, J*s^2/cycle^3
};

struct Device {
    double energy_j = 0.01;          // E_k, energy budget for the frame
    double cycles_per_bit = 1000.0;  // C_k
    double f_max_hz = 2.3e8;         // CPU frequency cap
    Vec3 position_m{0.0, 0.0, 0.0};
};

// Unit-modulus reflection vector, one phase per element.
struct BeamVector {
    cvec v;

    std::size_t size() const { return v.size(); }
    bool is_unit_modulus(double tol = 1e-12) const;
};

// Joint mode-selection / beam / time-allocation result.
// rate vectors are indexed by device; tau_s keys equal offload_set.
struct Solution {
    std::vector<int> offload_set;       // ascending device indices
    std::map<int, int> beam_assignment; // device -> index into beams
    std::vector<BeamVector> beams;
    std::map<int, double> tau_s;
    std::vector<double> rate_offload_bits;
    std::vector<double> rate_local_bits;
    double sum_rate_bits = 0.0;
};

struct EmptyDeviceList : std::invalid_argument {
    EmptyDeviceList() : std::invalid_argument("device list is empty") {}
};

struct NonPositiveParameter : std::invalid_argument {
    explicit NonPositiveParameter(const std::string& f)
        : std::invalid_argument(f + " must be positive"), field(f) {}
    std::string field;
};

struct NonPositiveDistance : std::invalid_argument {
    NonPositiveDistance() : std::invalid_argument("distance must be positive") {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what)
        : std::invalid_argument("dimension mismatch: " + what) {}
};

struct EmptySubset : std::invalid_argument {
    EmptySubset() : std::invalid_argument("device subset is empty") {}
};

struct EmptyProfile : std::invalid_argument {
    EmptyProfile() : std::invalid_argument("offload profile is empty") {}
};

struct InvalidBudget : std::invalid_argument {
    InvalidBudget() : std::invalid_argument("beam budget must be at least 1") {}
};

struct TooLarge : std::invalid_argument {
    explicit TooLarge(const std::string& what)
        : std::invalid_argument("instance too large for exhaustive search: " + what) {}
};

// 10^((p_dbm - 30) / 10)
double dbm_to_watts(double p_dbm);
double watts_to_dbm(double p_w);

// Throws EmptyDeviceList or NonPositiveParameter (naming the first violated
// field); returns normally when every type invariant holds.
void validate_scenario(const SystemParams& params, const std::vector<Device>& devices);

// Checks the Solution invariants (time budget, rate bookkeeping, unit-modulus
// beams, assignment consistency); throws std::logic_error naming the first
// violation.
void check_solution(const Solution& s, const SystemParams& params, double rel_tol = 1e-9);

}  // namespace irsmec

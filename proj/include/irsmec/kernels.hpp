// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace irsmec {

using cxd = std::complex<double>;
using cvec = std::vector<cxd>;

// Complex arithmetic kernels used by the inner loops of channel-gain
// evaluation and beam refinement. A scalar reference implementation is
// always available; on x86-64 an AVX2/FMA variant is selected at runtime
// when the CPU supports it. Both variants are equivalence-tested; results
// may differ in the last bits due to FMA contraction and reduction order.
namespace kernels {

enum class Backend { scalar, avx2 };

Backend active();
bool supported(Backend b);
// Returns false (and leaves the active backend unchanged) if `b` is not
// supported on this host.
bool set_backend(Backend b);
std::string_view name(Backend b);

// sum_n conj(q[n]) * v[n]; spans must have equal length.
cxd dot_conj(std::span<const cxd> q, std::span<const cxd> v);

// sum_n |q[n]|
double abs_sum(std::span<const cxd> q);

// y[n] += alpha * x[n]; spans must have equal length.
void axpy(cxd alpha, std::span<const cxd> x, std::span<cxd> y);

// |h + sum_n conj(q[n]) * v[n]|^2
double channel_gain(cxd h, std::span<const cxd> q, std::span<const cxd> v);

}  // namespace kernels
}  // namespace irsmec

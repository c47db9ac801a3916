// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "irsmec/kernels.hpp"

namespace irsmec::kernels {

namespace scalar_impl {
cxd dot_conj(std::span<const cxd> q, std::span<const cxd> v);
double abs_sum(std::span<const cxd> q);
void axpy(cxd alpha, std::span<const cxd> x, std::span<cxd> y);
}  // namespace scalar_impl

#if defined(IRSMEC_HAVE_AVX2)
namespace avx2_impl {
cxd dot_conj(std::span<const cxd> q, std::span<const cxd> v);
double abs_sum(std::span<const cxd> q);
void axpy(cxd alpha, std::span<const cxd> x, std::span<cxd> y);
}  // namespace avx2_impl
#endif

}  // namespace irsmec::kernels

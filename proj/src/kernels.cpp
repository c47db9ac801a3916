// SPDX-License-Identifier: Apache-2.0

#include "irsmec/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>

#include "kernels_detail.hpp"

namespace irsmec::kernels {

namespace scalar_impl {

cxd dot_conj(std::span<const cxd> q, std::span<const cxd> v) {
    assert(q.size() == v.size());
    double re = 0.0;
    double im = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n) {
        const double qr = q[n].real(), qi = q[n].imag();
        const double vr = v[n].real(), vi = v[n].imag();
        re += qr * vr + qi * vi;
        im += qr * vi - qi * vr;
    }
    return {re, im};
}

double abs_sum(std::span<const cxd> q) {
    double s = 0.0;
    for (const cxd& z : q)
        s += std::sqrt(z.real() * z.real() + z.imag() * z.imag());
    return s;
}

void axpy(cxd alpha, std::span<const cxd> x, std::span<cxd> y) {
    assert(x.size() == y.size());
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double xr = x[n].real(), xi = x[n].imag();
        y[n] += cxd{ar * xr - ai * xi, ar * xi + ai * xr};
    }
}

}  // namespace scalar_impl

namespace {

Backend detect() {
    // IRSMEC_KERNELS=scalar forces the reference path (useful for CI).
    if (const char* env = std::getenv("IRSMEC_KERNELS"); env && std::string_view(env) == "scalar")
        return Backend::scalar;
#if defined(IRSMEC_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Backend::avx2;
#endif
    return Backend::scalar;
}

Backend g_active = detect();

}  // namespace

Backend active() { return g_active; }

bool supported(Backend b) {
    if (b == Backend::scalar)
        return true;
#if defined(IRSMEC_HAVE_AVX2)
    if (b == Backend::avx2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#endif
    return false;
}

bool set_backend(Backend b) {
    if (!supported(b))
        return false;
    g_active = b;
    return true;
}

std::string_view name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

cxd dot_conj(std::span<const cxd> q, std::span<const cxd> v) {
#if defined(IRSMEC_HAVE_AVX2)
    if (g_active == Backend::avx2)
        return avx2_impl::dot_conj(q, v);
#endif
    return scalar_impl::dot_conj(q, v);
}

double abs_sum(std::span<const cxd> q) {
#if defined(IRSMEC_HAVE_AVX2)
    if (g_active == Backend::avx2)
        return avx2_impl::abs_sum(q);
#endif
    return scalar_impl::abs_sum(q);
}

void axpy(cxd alpha, std::span<const cxd> x, std::span<cxd> y) {
#if defined(IRSMEC_HAVE_AVX2)
    if (g_active == Backend::avx2)
        return avx2_impl::axpy(alpha, x, y);
#endif
    return scalar_impl::axpy(alpha, x, y);
}

double channel_gain(cxd h, std::span<const cxd> q, std::span<const cxd> v) {
    const cxd e = h + dot_conj(q, v);
    return e.real() * e.real() + e.imag() * e.imag();
}

}  // namespace irsmec::kernels

// SPDX-License-Identifier: Apache-2.0
//
// AVX2/FMA variants of the complex kernels. Complex numbers are processed
// as interleaved (re, im) doubles, two complex values per 256-bit lane.

#include <immintrin.h>

#include <cassert>
#include <cmath>

#include "kernels_detail.hpp"

namespace irsmec::kernels::avx2_impl {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

cxd dot_conj(std::span<const cxd> q, std::span<const cxd> v) {
    assert(q.size() == v.size());
    const double* qa = reinterpret_cast<const double*>(q.data());
    const double* va = reinterpret_cast<const double*>(v.data());
    const std::size_t n2 = 2 * q.size();

    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const __m256d conj_sign = _mm256_setr_pd(-0.0, 0.0, -0.0, 0.0);

    std::size_t i = 0;
    for (; i + 4 <= n2; i += 4) {
        const __m256d qv = _mm256_loadu_pd(qa + i);
        const __m256d vv = _mm256_loadu_pd(va + i);
        // lanes (qr*vr, qi*vi): summed they give the real part of conj(q)*v
        acc_re = _mm256_fmadd_pd(qv, vv, acc_re);
        // lanes (-qi*vr, qr*vi): summed they give the imaginary part
        __m256d qsw = _mm256_permute_pd(qv, 0b0101);
        qsw = _mm256_xor_pd(qsw, conj_sign);
        acc_im = _mm256_fmadd_pd(qsw, vv, acc_im);
    }
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; i + 2 <= n2; i += 2) {
        re += qa[i] * va[i] + qa[i + 1] * va[i + 1];
        im += qa[i] * va[i + 1] - qa[i + 1] * va[i];
    }
    return {re, im};
}

double abs_sum(std::span<const cxd> q) {
    const double* qa = reinterpret_cast<const double*>(q.data());
    const std::size_t n2 = 2 * q.size();

    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n2; i += 8) {
        const __m256d a = _mm256_loadu_pd(qa + i);
        const __m256d b = _mm256_loadu_pd(qa + i + 4);
        const __m256d a2 = _mm256_mul_pd(a, a);
        const __m256d b2 = _mm256_mul_pd(b, b);
        // (|z0|^2, |z2|^2, |z1|^2, |z3|^2); permuted order does not matter
        const __m256d norms = _mm256_hadd_pd(a2, b2);
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(norms));
    }
    double s = hsum(acc);
    for (; i + 2 <= n2; i += 2)
        s += std::sqrt(qa[i] * qa[i] + qa[i + 1] * qa[i + 1]);
    return s;
}

void axpy(cxd alpha, std::span<const cxd> x, std::span<cxd> y) {
    assert(x.size() == y.size());
    const double* xa = reinterpret_cast<const double*>(x.data());
    double* ya = reinterpret_cast<double*>(y.data());
    const std::size_t n2 = 2 * x.size();

    const double ar = alpha.real(), ai = alpha.imag();
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_setr_pd(-ai, ai, -ai, ai);

    std::size_t i = 0;
    for (; i + 4 <= n2; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xa + i);
        __m256d yv = _mm256_loadu_pd(ya + i);
        yv = _mm256_fmadd_pd(var, xv, yv);
        const __m256d xsw = _mm256_permute_pd(xv, 0b0101);
        yv = _mm256_fmadd_pd(vai, xsw, yv);
        _mm256_storeu_pd(ya + i, yv);
    }
    for (; i + 2 <= n2; i += 2) {
        const double xr = xa[i], xi = xa[i + 1];
        ya[i] += ar * xr - ai * xi;
        ya[i + 1] += ar * xi + ai * xr;
    }
}

}  // namespace irsmec::kernels::avx2_impl

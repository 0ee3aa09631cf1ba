// AVX2+FMA kernel variants.  Compiled with -mavx2 -mfma for this translation
// unit only; the dispatcher never calls into here unless cpuid reports both.
//
// sincos uses a Cody-Waite three-part reduction by pi/2 followed by the
// usual minimax polynomials on [-pi/4, pi/4].  The split constants carry 33
// significant bits each, so q * PIO2_HI is exact for quadrant indices below
// 2^20; lanes with |x| above the matching range limit (or non-finite) take
// the libm path.  Reductions mirror the scalar backend's Neumaier
// compensation per lane and collapse lanes in a fixed order.

#include "kernels_impl.hpp"

#if IDC_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace idc::kernels {
namespace {

constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050650619224932e-11;
constexpr double kPio2Lo = 2.02226624879595063154e-21;
constexpr double kRangeLimit = 1.0e6;

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// sin(r) = r + r z P(z), z = r^2, |r| <= pi/4
inline __m256d sin_poly(__m256d r, __m256d z) {
    __m256d p = _mm256_set1_pd(1.58962301576546568060e-10);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-2.50507477628578072866e-8));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(2.75573136213857245213e-6));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.98412698295895385996e-4));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(8.33333333332211858878e-3));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.66666666666666307295e-1));
    return _mm256_fmadd_pd(_mm256_mul_pd(r, z), p, r);
}

// cos(r) = 1 - z/2 + z^2 Q(z)
inline __m256d cos_poly(__m256d z) {
    __m256d q = _mm256_set1_pd(-1.13585365213876817300e-11);
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.08757008419747316778e-9));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(-2.75573141792967388112e-7));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.48015872888517179954e-5));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(-1.38888888888730564116e-3));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(4.16666666666665929218e-2));
    __m256d c = _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0));
    return _mm256_fmadd_pd(_mm256_mul_pd(z, z), q, c);
}

inline void sincos4(__m256d x, __m256d* s_out, __m256d* c_out) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

    const __m256d z = _mm256_mul_pd(r, r);
    const __m256d ps = sin_poly(r, z);
    const __m256d pc = cos_poly(z);

    // Quadrant j = q mod 4: bit 0 swaps sin/cos, bit 1 negates sin,
    // bit 1 of (q+1) negates cos.
    const __m256i q64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d swap =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, one), one));
    const __m256d neg_s =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, two), two));
    const __m256d neg_c = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(q64, one), two), two));

    const __m256d signbit = _mm256_set1_pd(-0.0);
    __m256d sv = _mm256_blendv_pd(ps, pc, swap);
    __m256d cv = _mm256_blendv_pd(pc, ps, swap);
    sv = _mm256_xor_pd(sv, _mm256_and_pd(neg_s, signbit));
    cv = _mm256_xor_pd(cv, _mm256_and_pd(neg_c, signbit));
    *s_out = sv;
    *c_out = cv;
}

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d in_range =
            _mm256_cmp_pd(abs_pd(vx), _mm256_set1_pd(kRangeLimit), _CMP_LE_OQ);
        if (_mm256_movemask_pd(in_range) != 0xF) {
            for (int l = 0; l < 4; ++l) {
                s[i + l] = std::sin(x[i + l]);
                c[i + l] = std::cos(x[i + l]);
            }
            continue;
        }
        __m256d vs, vc;
        sincos4(vx, &vs, &vc);
        _mm256_storeu_pd(s + i, vs);
        _mm256_storeu_pd(c + i, vc);
    }
    for (; i < n; ++i) {
        if (std::abs(x[i]) <= kRangeLimit) {
            alignas(32) double xin[4] = {x[i], 0.0, 0.0, 0.0};
            alignas(32) double so[4], co[4];
            __m256d vs, vc;
            sincos4(_mm256_load_pd(xin), &vs, &vc);
            _mm256_store_pd(so, vs);
            _mm256_store_pd(co, vc);
            s[i] = so[0];
            c[i] = co[0];
        } else {
            s[i] = std::sin(x[i]);
            c[i] = std::cos(x[i]);
        }
    }
}

void rabi_phases_avx2(double xi, double delta, double t, double* out, std::size_t n) {
    const __m256d vxi = _mm256_set1_pd(xi);
    const __m256d vdelta = _mm256_set1_pd(delta);
    const __m256d vt = _mm256_set1_pd(t);
    __m256d k = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // mul+add kept separate to round exactly like the scalar reference
        const __m256d inner = _mm256_add_pd(_mm256_mul_pd(vxi, k), vdelta);
        const __m256d a = _mm256_mul_pd(k, inner);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vt, _mm256_sqrt_pd(a)));
        k = _mm256_add_pd(k, four);
    }
    for (; i < n; ++i) {
        const double kk = static_cast<double>(i);
        const double inner = xi * kk + delta;
        out[i] = t * std::sqrt(kk * inner);
    }
}

void evolve_branches_avx2(const std::complex<double>* c,
                          const double* sin_x, const double* cos_x,
                          std::complex<double>* g, std::complex<double>* e,
                          std::size_t n) {
    if (n == 0)
        return;
    const double* cd = reinterpret_cast<const double*>(c);
    double* gd = reinterpret_cast<double*>(g);
    double* ed = reinterpret_cast<double*>(e);

    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d amp = _mm256_loadu_pd(cd + 2 * k);
        const __m256d cs2 = _mm256_castpd128_pd256(_mm_loadu_pd(cos_x + k));
        const __m256d cs = _mm256_permute4x64_pd(cs2, _MM_SHUFFLE(1, 1, 0, 0));
        _mm256_storeu_pd(gd + 2 * k, _mm256_mul_pd(amp, cs));
    }
    for (; k < n; ++k)
        g[k] = {c[k].real() * cos_x[k], c[k].imag() * cos_x[k]};

    const __m256d flip_im = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
    k = 1;
    for (; k + 2 <= n; k += 2) {
        const __m256d amp = _mm256_loadu_pd(cd + 2 * k);
        const __m256d sn2 = _mm256_castpd128_pd256(_mm_loadu_pd(sin_x + k));
        const __m256d sn = _mm256_permute4x64_pd(sn2, _MM_SHUFFLE(1, 1, 0, 0));
        const __m256d prod = _mm256_mul_pd(amp, sn);
        // -i (a + ib) s = b s - i a s: swap re/im, flip the new imaginary part
        const __m256d swapped = _mm256_permute_pd(prod, 0b0101);
        _mm256_storeu_pd(ed + 2 * (k - 1), _mm256_xor_pd(swapped, flip_im));
    }
    for (; k < n; ++k)
        e[k - 1] = {c[k].imag() * sin_x[k], -(c[k].real() * sin_x[k])};
    e[n - 1] = {0.0, 0.0};
}

struct CompensatedSum4 {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();

    inline void add(__m256d v) {
        const __m256d t = _mm256_add_pd(sum, v);
        const __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(v), _CMP_GE_OQ);
        const __m256d e1 = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
        const __m256d e2 = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
        comp = _mm256_add_pd(comp, _mm256_blendv_pd(e2, e1, big_sum));
        sum = t;
    }
    // Collapse lanes 0..3 of sum, then of comp, in that order.
    inline double value() const {
        alignas(32) double s[4], e[4];
        _mm256_store_pd(s, sum);
        _mm256_store_pd(e, comp);
        return ((s[0] + s[1]) + (s[2] + s[3])) + ((e[0] + e[1]) + (e[2] + e[3]));
    }
};

double norm_squared_avx2(const std::complex<double>* a, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(a);
    const std::size_t total = 2 * n;
    CompensatedSum4 acc;
    std::size_t i = 0;
    for (; i + 4 <= total; i += 4) {
        const __m256d v = _mm256_loadu_pd(d + i);
        acc.add(_mm256_mul_pd(v, v));
    }
    double result = acc.value();
    for (; i < total; ++i)
        result += d[i] * d[i];
    return result;
}

void power_sums_avx2(const std::complex<double>* a, std::size_t n, double* out) {
    const double* d = reinterpret_cast<const double*>(a);
    CompensatedSum4 acc[6];
    // hadd pairs within 128-bit lanes, so weights come out in the order
    // [w_k, w_k+2, w_k+1, w_k+3]; the index vector is permuted to match.
    __m256d idx = _mm256_setr_pd(0.0, 2.0, 1.0, 3.0);
    const __m256d step = _mm256_set1_pd(4.0);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d lo = _mm256_loadu_pd(d + 2 * k);
        const __m256d hi = _mm256_loadu_pd(d + 2 * k + 4);
        __m256d w = _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
        for (int p = 0; p < 6; ++p) {
            acc[p].add(w);
            w = _mm256_mul_pd(w, idx);
        }
        idx = _mm256_add_pd(idx, step);
    }
    double tail[6] = {0, 0, 0, 0, 0, 0};
    for (; k < n; ++k) {
        const double w = a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
        const double kk = static_cast<double>(k);
        double term = w;
        for (int p = 0; p < 6; ++p) {
            tail[p] += term;
            term *= kk;
        }
    }
    for (int p = 0; p < 6; ++p)
        out[p] = acc[p].value() + tail[p];
}

std::complex<double> inner_product_avx2(const std::complex<double>* a,
                                        const std::complex<double>* b,
                                        std::size_t n) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    const __m256d flip_odd = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    __m256d acc = _mm256_setzero_pd(); // [re, im, re, im]
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d va = _mm256_loadu_pd(ad + 2 * k);
        const __m256d vb = _mm256_loadu_pd(bd + 2 * k);
        const __m256d t0 = _mm256_mul_pd(va, vb);                      // ar br, ai bi
        const __m256d t1 = _mm256_mul_pd(
            _mm256_mul_pd(va, _mm256_permute_pd(vb, 0b0101)), flip_odd); // ar bi, -ai br
        acc = _mm256_add_pd(acc, _mm256_hadd_pd(t0, t1));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    for (; k < n; ++k) {
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

} // namespace

const dispatch_table avx2_table = {
    sincos_avx2,
    rabi_phases_avx2,
    evolve_branches_avx2,
    norm_squared_avx2,
    power_sums_avx2,
    inner_product_avx2,
};

} // namespace idc::kernels

#endif // IDC_HAVE_AVX2

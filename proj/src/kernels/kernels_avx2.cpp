// AVX2 backend. Mirrors src/kernels/scalar_ref.hpp operation for operation;
// see that header for why the sequences must not be "improved" independently.

#include "backend_detail.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace ppde::kernels::detail {

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

// Unsigned 32x32 -> high 32 bits, 8 lanes.
inline __m256i mulhi_epu32(__m256i a, __m256i b) {
    const __m256i even = _mm256_mul_epu32(a, b);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
    return _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

struct Lanes8 {
    __m256i x0, x1, x2, x3;
};

inline Lanes8 philox8(const Counter* c, Key key) {
    __m256i x0 = _mm256_setr_epi32(static_cast<int>(c[0].c0), static_cast<int>(c[1].c0), static_cast<int>(c[2].c0),
                                   static_cast<int>(c[3].c0), static_cast<int>(c[4].c0), static_cast<int>(c[5].c0),
                                   static_cast<int>(c[6].c0), static_cast<int>(c[7].c0));
    __m256i x1 = _mm256_setr_epi32(static_cast<int>(c[0].c1), static_cast<int>(c[1].c1), static_cast<int>(c[2].c1),
                                   static_cast<int>(c[3].c1), static_cast<int>(c[4].c1), static_cast<int>(c[5].c1),
                                   static_cast<int>(c[6].c1), static_cast<int>(c[7].c1));
    __m256i x2 = _mm256_setr_epi32(static_cast<int>(c[0].c2), static_cast<int>(c[1].c2), static_cast<int>(c[2].c2),
                                   static_cast<int>(c[3].c2), static_cast<int>(c[4].c2), static_cast<int>(c[5].c2),
                                   static_cast<int>(c[6].c2), static_cast<int>(c[7].c2));
    __m256i x3 = _mm256_setr_epi32(static_cast<int>(c[0].c3), static_cast<int>(c[1].c3), static_cast<int>(c[2].c3),
                                   static_cast<int>(c[3].c3), static_cast<int>(c[4].c3), static_cast<int>(c[5].c3),
                                   static_cast<int>(c[6].c3), static_cast<int>(c[7].c3));
    const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kM0));
    const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kM1));
    __m256i k0 = _mm256_set1_epi32(static_cast<int>(key.k0));
    __m256i k1 = _mm256_set1_epi32(static_cast<int>(key.k1));
    const __m256i w0 = _mm256_set1_epi32(static_cast<int>(kW0));
    const __m256i w1 = _mm256_set1_epi32(static_cast<int>(kW1));

    for (int round = 0; round < 10; ++round) {
        const __m256i hi0 = mulhi_epu32(x0, m0);
        const __m256i lo0 = _mm256_mullo_epi32(x0, m0);
        const __m256i hi1 = mulhi_epu32(x2, m1);
        const __m256i lo1 = _mm256_mullo_epi32(x2, m1);
        x0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), k0);
        x1 = lo1;
        x2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), k1);
        x3 = lo0;
        if (round != 9) {
            k0 = _mm256_add_epi32(k0, w0);
            k1 = _mm256_add_epi32(k1, w1);
        }
    }
    return Lanes8{x0, x1, x2, x3};
}

// Exact u64 -> double for v <= 2^53 (split in 32-bit halves, both exact).
inline __m256d u64_to_double(__m256i v) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    const __m256d c52 = _mm256_set1_pd(0x1.0p52);
    const __m256i lo = _mm256_and_si256(v, _mm256_set1_epi64x(0xffffffffLL));
    const __m256i hi = _mm256_srli_epi64(v, 32);
    const __m256d dlo = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(lo, magic)), c52);
    const __m256d dhi = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(hi, magic)), c52);
    return _mm256_fmadd_pd(dhi, _mm256_set1_pd(0x1.0p32), dlo);
}

inline __m256d log_unit(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i eb = _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7ff));
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    __m256d e = _mm256_sub_pd(_mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(eb, magic)), _mm256_set1_pd(0x1.0p52)),
                              _mm256_set1_pd(1023.0));
    __m256d f = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0xfffffffffffffLL)),
                                                    _mm256_set1_epi64x(0x3ff0000000000000LL)));
    const __m256d big = _mm256_cmp_pd(f, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    f = _mm256_blendv_pd(f, _mm256_mul_pd(f, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d r = _mm256_div_pd(_mm256_sub_pd(f, one), _mm256_add_pd(f, one));
    const __m256d s = _mm256_mul_pd(r, r);
    __m256d p = _mm256_set1_pd(1.0 / 17.0);
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 3.0));
    p = _mm256_fmadd_pd(p, s, one);
    const __m256d lf = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), r), p);
    return _mm256_fmadd_pd(e, _mm256_set1_pd(6.93147180369123816490e-01),
                           _mm256_fmadd_pd(e, _mm256_set1_pd(1.90821492927058770002e-10), lf));
}

inline void sincos_2pi(__m256d u, __m256d& sin_out, __m256d& cos_out) {
    const __m256d q =
        _mm256_round_pd(_mm256_mul_pd(_mm256_set1_pd(4.0), u), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d r = _mm256_sub_pd(u, _mm256_mul_pd(q, _mm256_set1_pd(0.25)));
    const __m256d s = _mm256_mul_pd(r, _mm256_set1_pd(6.283185307179586476925287));
    const __m256d x = _mm256_mul_pd(s, s);

    __m256d ps = _mm256_set1_pd(-1.0 / 1307674368000.0);
    ps = _mm256_fmadd_pd(ps, x, _mm256_set1_pd(1.0 / 6227020800.0));
    ps = _mm256_fmadd_pd(ps, x, _mm256_set1_pd(-1.0 / 39916800.0));
    ps = _mm256_fmadd_pd(ps, x, _mm256_set1_pd(1.0 / 362880.0));
    ps = _mm256_fmadd_pd(ps, x, _mm256_set1_pd(-1.0 / 5040.0));
    ps = _mm256_fmadd_pd(ps, x, _mm256_set1_pd(1.0 / 120.0));
    ps = _mm256_fmadd_pd(ps, x, _mm256_set1_pd(-1.0 / 6.0));
    const __m256d sin_s = _mm256_fmadd_pd(_mm256_mul_pd(ps, x), s, s);

    __m256d pc = _mm256_set1_pd(-1.0 / 87178291200.0);
    pc = _mm256_fmadd_pd(pc, x, _mm256_set1_pd(1.0 / 479001600.0));
    pc = _mm256_fmadd_pd(pc, x, _mm256_set1_pd(-1.0 / 3628800.0));
    pc = _mm256_fmadd_pd(pc, x, _mm256_set1_pd(1.0 / 40320.0));
    pc = _mm256_fmadd_pd(pc, x, _mm256_set1_pd(-1.0 / 720.0));
    pc = _mm256_fmadd_pd(pc, x, _mm256_set1_pd(1.0 / 24.0));
    pc = _mm256_fmadd_pd(pc, x, _mm256_set1_pd(-1.0 / 2.0));
    const __m256d cos_s = _mm256_fmadd_pd(pc, x, _mm256_set1_pd(1.0));

    const __m128i k32 = _mm256_cvtpd_epi32(q);
    const __m256i k = _mm256_cvtepi32_epi64(k32);
    const __m256i one64 = _mm256_set1_epi64x(1);
    const __m256i two64 = _mm256_set1_epi64x(2);
    const __m256d swap_mask = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(k, one64), one64));
    const __m256d sign_sin = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(k, two64), two64));
    const __m256d sign_cos =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(k, one64), two64), two64));
    const __m256d neg0 = _mm256_set1_pd(-0.0);

    __m256d s_sel = _mm256_blendv_pd(sin_s, cos_s, swap_mask);
    __m256d c_sel = _mm256_blendv_pd(cos_s, sin_s, swap_mask);
    sin_out = _mm256_xor_pd(s_sel, _mm256_and_pd(sign_sin, neg0));
    cos_out = _mm256_xor_pd(c_sel, _mm256_and_pd(sign_cos, neg0));
}

// 4 blocks (u64 halves a,b) -> 8 gaussians laid out as consecutive pairs.
inline void box_muller4(__m256i a, __m256i b, __m256d& z0, __m256d& z1) {
    const __m256d scale = _mm256_set1_pd(0x1.0p-53);
    const __m256d u1 =
        _mm256_mul_pd(u64_to_double(_mm256_add_epi64(_mm256_srli_epi64(a, 11), _mm256_set1_epi64x(1))), scale);
    const __m256d u2 = _mm256_mul_pd(u64_to_double(_mm256_srli_epi64(b, 11)), scale);
    const __m256d rad = _mm256_sqrt_pd(_mm256_mul_pd(_mm256_set1_pd(-2.0), log_unit(u1)));
    __m256d sn, cs;
    sincos_2pi(u2, sn, cs);
    z0 = _mm256_mul_pd(rad, cs);
    z1 = _mm256_mul_pd(rad, sn);
}

}  // namespace

void philox_batch_avx2(const Counter* ctrs, std::size_t n, Key key, Block* out) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const Lanes8 v = philox8(ctrs + i, key);
        const __m256i s0 = _mm256_unpacklo_epi32(v.x0, v.x1);  // b0,b1 | b4,b5 halves
        const __m256i s1 = _mm256_unpacklo_epi32(v.x2, v.x3);
        const __m256i s2 = _mm256_unpackhi_epi32(v.x0, v.x1);  // b2,b3 | b6,b7
        const __m256i s3 = _mm256_unpackhi_epi32(v.x2, v.x3);
        const __m256i q0 = _mm256_unpacklo_epi64(s0, s1);  // b0 | b4
        const __m256i q1 = _mm256_unpackhi_epi64(s0, s1);  // b1 | b5
        const __m256i q2 = _mm256_unpacklo_epi64(s2, s3);  // b2 | b6
        const __m256i q3 = _mm256_unpackhi_epi64(s2, s3);  // b3 | b7
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i + 0), _mm256_castsi256_si128(q0));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i + 1), _mm256_castsi256_si128(q1));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i + 2), _mm256_castsi256_si128(q2));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i + 3), _mm256_castsi256_si128(q3));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i + 4), _mm256_extracti128_si256(q0, 1));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i + 5), _mm256_extracti128_si256(q1, 1));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i + 6), _mm256_extracti128_si256(q2, 1));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i + 7), _mm256_extracti128_si256(q3, 1));
    }
    if (i < n) philox_batch_scalar(ctrs + i, n - i, key, out + i);
}

void gaussians_avx2(const Counter* ctrs, std::size_t n, Key key, double* out) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const Lanes8 v = philox8(ctrs + i, key);
        // 64-bit words a = x0|x1<<32, b = x2|x3<<32, grouped A={0,1,4,5}, B={2,3,6,7}.
        const __m256i aA = _mm256_unpacklo_epi32(v.x0, v.x1);
        const __m256i aB = _mm256_unpackhi_epi32(v.x0, v.x1);
        const __m256i bA = _mm256_unpacklo_epi32(v.x2, v.x3);
        const __m256i bB = _mm256_unpackhi_epi32(v.x2, v.x3);
        __m256d z0A, z1A, z0B, z1B;
        box_muller4(aA, bA, z0A, z1A);
        box_muller4(aB, bB, z0B, z1B);
        const __m256d tAlo = _mm256_unpacklo_pd(z0A, z1A);  // blk0 pair | blk4 pair
        const __m256d tAhi = _mm256_unpackhi_pd(z0A, z1A);  // blk1 | blk5
        const __m256d tBlo = _mm256_unpacklo_pd(z0B, z1B);  // blk2 | blk6
        const __m256d tBhi = _mm256_unpackhi_pd(z0B, z1B);  // blk3 | blk7
        _mm256_storeu_pd(out + 2 * i + 0, _mm256_permute2f128_pd(tAlo, tAhi, 0x20));
        _mm256_storeu_pd(out + 2 * i + 4, _mm256_permute2f128_pd(tBlo, tBhi, 0x20));
        _mm256_storeu_pd(out + 2 * i + 8, _mm256_permute2f128_pd(tAlo, tAhi, 0x31));
        _mm256_storeu_pd(out + 2 * i + 12, _mm256_permute2f128_pd(tBlo, tBhi, 0x31));
    }
    if (i < n) gaussians_scalar(ctrs + i, n - i, key, out + 2 * i);
}

double max_abs_avx2(const double* v, std::size_t n) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(v + i), absmask));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = lanes[0];
    m = m < lanes[1] ? lanes[1] : m;
    m = m < lanes[2] ? lanes[2] : m;
    m = m < lanes[3] ? lanes[3] : m;
    for (; i < n; ++i) {
        const double av = v[i] < 0 ? -v[i] : v[i];
        if (m < av) m = av;
    }
    return m;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double sum_avx2(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) r += v[i];
    return r;
}

}  // namespace ppde::kernels::detail

#else  // non-x86: scalar fallback only

namespace ppde::kernels::detail {

bool cpu_has_avx2() { return false; }
void philox_batch_avx2(const Counter* c, std::size_t n, Key k, Block* o) { philox_batch_scalar(c, n, k, o); }
void gaussians_avx2(const Counter* c, std::size_t n, Key k, double* o) { gaussians_scalar(c, n, k, o); }
double max_abs_avx2(const double* v, std::size_t n) { return max_abs_scalar(v, n); }
double dot_avx2(const double* a, const double* b, std::size_t n) { return dot_scalar(a, b, n); }
double sum_avx2(const double* v, std::size_t n) { return sum_scalar(v, n); }

}  // namespace ppde::kernels::detail

#endif

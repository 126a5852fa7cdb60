#pragma once

// Scalar reference for the Box-Muller elementwise math. The AVX2 variant in
// kernels_avx2.cpp mirrors this operation sequence instruction for
// instruction (same polynomial, same fma placement, same rounding), which is
// what makes the backends bit-exact. Only kernels_scalar.cpp may include
// this header; that translation unit is compiled with -ffp-contract=off so
// the compiler cannot fuse multiplies and adds that the vector code keeps
// separate.

#include <bit>
#include <cmath>
#include <cstdint>

namespace ppde::kernels::detail {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kTwoPi = 6.283185307179586476925287;
inline constexpr double kScale53 = 0x1.0p-53;

// log(x) for x in (0,1], atanh-series after range reduction to [sqrt2/2, sqrt2).
// Relative accuracy ~1e-14, plenty for sampling; not a libm replacement.
inline double ref_log_unit(double x) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    const std::uint32_t eb = static_cast<std::uint32_t>((bits >> 52) & 0x7ffu);
    double f = std::bit_cast<double>((bits & 0xfffffffffffffULL) | 0x3ff0000000000000ULL);
    double e = static_cast<double>(eb) - 1023.0;
    if (f > kSqrt2) {
        f = f * 0.5;
        e = e + 1.0;
    }
    const double r = (f - 1.0) / (f + 1.0);
    const double s = r * r;
    double p = 1.0 / 17.0;
    p = std::fma(p, s, 1.0 / 15.0);
    p = std::fma(p, s, 1.0 / 13.0);
    p = std::fma(p, s, 1.0 / 11.0);
    p = std::fma(p, s, 1.0 / 9.0);
    p = std::fma(p, s, 1.0 / 7.0);
    p = std::fma(p, s, 1.0 / 5.0);
    p = std::fma(p, s, 1.0 / 3.0);
    p = std::fma(p, s, 1.0);
    const double lf = (2.0 * r) * p;
    return std::fma(e, kLn2Hi, std::fma(e, kLn2Lo, lf));
}

// sin/cos of 2*pi*u for u in [0,1), quadrant reduction + odd/even series.
inline void ref_sincos_2pi(double u, double& sin_out, double& cos_out) {
    const double q = std::nearbyint(4.0 * u);  // 0..4, ties to even
    const double r = u - q * 0.25;             // |r| <= 0.125
    const double s = r * kTwoPi;               // |s| <= pi/4
    const double x = s * s;

    double ps = -1.0 / 1307674368000.0;  // s^15 term
    ps = std::fma(ps, x, 1.0 / 6227020800.0);
    ps = std::fma(ps, x, -1.0 / 39916800.0);
    ps = std::fma(ps, x, 1.0 / 362880.0);
    ps = std::fma(ps, x, -1.0 / 5040.0);
    ps = std::fma(ps, x, 1.0 / 120.0);
    ps = std::fma(ps, x, -1.0 / 6.0);
    const double sin_s = std::fma(ps * x, s, s);

    double pc = -1.0 / 87178291200.0;  // s^14 term
    pc = std::fma(pc, x, 1.0 / 479001600.0);
    pc = std::fma(pc, x, -1.0 / 3628800.0);
    pc = std::fma(pc, x, 1.0 / 40320.0);
    pc = std::fma(pc, x, -1.0 / 720.0);
    pc = std::fma(pc, x, 1.0 / 24.0);
    pc = std::fma(pc, x, -1.0 / 2.0);
    const double cos_s = std::fma(pc, x, 1.0);

    const int k = static_cast<int>(q) & 3;
    switch (k) {
        case 0:
            sin_out = sin_s;
            cos_out = cos_s;
            break;
        case 1:
            sin_out = cos_s;
            cos_out = -sin_s;
            break;
        case 2:
            sin_out = -sin_s;
            cos_out = -cos_s;
            break;
        default:
            sin_out = -cos_s;
            cos_out = sin_s;
            break;
    }
}

// One Philox block -> two N(0,1) draws.
inline void ref_box_muller(std::uint32_t x0, std::uint32_t x1, std::uint32_t x2, std::uint32_t x3,
                           double& z0, double& z1) {
    const std::uint64_t a = static_cast<std::uint64_t>(x0) | (static_cast<std::uint64_t>(x1) << 32);
    const std::uint64_t b = static_cast<std::uint64_t>(x2) | (static_cast<std::uint64_t>(x3) << 32);
    const double u1 = static_cast<double>((a >> 11) + 1) * kScale53;  // (0,1]
    const double u2 = static_cast<double>(b >> 11) * kScale53;        // [0,1)
    const double rad = std::sqrt(-2.0 * ref_log_unit(u1));
    double sn, cs;
    ref_sincos_2pi(u2, sn, cs);
    z0 = rad * cs;
    z1 = rad * sn;
}

}  // namespace ppde::kernels::detail

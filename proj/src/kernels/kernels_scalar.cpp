#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ppde/kernels/kernels.hpp"
#include "scalar_ref.hpp"

namespace ppde::kernels {

namespace {
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t& c0, std::uint32_t& c1, std::uint32_t& c2, std::uint32_t& c3,
                         std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
}
}  // namespace

Block philox4x32(Counter ctr, Key key) {
    std::uint32_t c0 = ctr.c0, c1 = ctr.c1, c2 = ctr.c2, c3 = ctr.c3;
    std::uint32_t k0 = key.k0, k1 = key.k1;
    for (int round = 0; round < 9; ++round) {
        philox_round(c0, c1, c2, c3, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    philox_round(c0, c1, c2, c3, k0, k1);
    return Block{c0, c1, c2, c3};
}

namespace detail {

void philox_batch_scalar(const Counter* ctrs, std::size_t n, Key key, Block* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = philox4x32(ctrs[i], key);
}

void gaussians_scalar(const Counter* ctrs, std::size_t n, Key key, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const Block b = philox4x32(ctrs[i], key);
        ref_box_muller(b.x0, b.x1, b.x2, b.x3, out[2 * i], out[2 * i + 1]);
    }
}

double max_abs_scalar(const double* v, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(v[i]));
    return m;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
}

}  // namespace detail

}  // namespace ppde::kernels

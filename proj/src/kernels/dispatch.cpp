#include <cstdlib>
#include <vector>

#include "backend_detail.hpp"
#include "ppde/kernels/kernels.hpp"

namespace ppde::kernels {

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("PPDE_FORCE_SCALAR"); env && env[0] == '1') return Backend::scalar;
    return detail::cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_slot() {
    static Backend b = detect_backend();
    return b;
}

}  // namespace

bool avx2_supported() { return detail::cpu_has_avx2(); }

Backend active_backend() { return backend_slot(); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !detail::cpu_has_avx2()) b = Backend::scalar;
    backend_slot() = b;
}

const char* backend_name() { return backend_slot() == Backend::avx2 ? "avx2" : "scalar"; }

void philox4x32_batch(const Counter* ctrs, std::size_t n, Key key, Block* out) {
    if (backend_slot() == Backend::avx2)
        detail::philox_batch_avx2(ctrs, n, key, out);
    else
        detail::philox_batch_scalar(ctrs, n, key, out);
}

void gaussians_from_blocks(const Counter* ctrs, std::size_t n, Key key, double* out) {
    if (backend_slot() == Backend::avx2)
        detail::gaussians_avx2(ctrs, n, key, out);
    else
        detail::gaussians_scalar(ctrs, n, key, out);
}

void fill_gaussians(std::uint64_t seed, std::uint32_t tag, std::uint64_t id, std::uint32_t node0,
                    std::size_t n_nodes, std::size_t per_node, double* out) {
    if (per_node == 0 || n_nodes == 0) return;
    const std::size_t bpn = (per_node + 1) / 2;
    const std::size_t total = n_nodes * bpn;
    const Key key = key_from_seed(seed);
    const std::uint32_t idlo = static_cast<std::uint32_t>(id);
    const std::uint32_t idhi = static_cast<std::uint32_t>(id >> 32);

    // Fixed-size stack batches: counters are cheap to rebuild and the
    // backend consumes them 8 at a time anyway.
    constexpr std::size_t kChunk = 512;
    Counter ctrs[kChunk];
    double pairs[2 * kChunk];
    std::size_t done = 0;
    while (done < total) {
        const std::size_t m = std::min(kChunk, total - done);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t lin = done + j;
            const std::uint32_t node = node0 + static_cast<std::uint32_t>(lin / bpn);
            const std::uint32_t blk = static_cast<std::uint32_t>(lin % bpn);
            ctrs[j] = Counter{idlo, idhi, node, (tag << 16) | blk};
        }
        gaussians_from_blocks(ctrs, m, key, pairs);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t lin = done + j;
            const std::size_t node_rel = lin / bpn;
            const std::size_t blk = lin % bpn;
            double* dst = out + node_rel * per_node;
            dst[2 * blk] = pairs[2 * j];
            if (2 * blk + 1 < per_node) dst[2 * blk + 1] = pairs[2 * j + 1];
        }
        done += m;
    }
}

void fill_uniforms(std::uint64_t seed, std::uint32_t tag, std::uint64_t id, std::uint32_t node,
                   std::size_t count, double* out) {
    if (count == 0) return;
    const std::size_t blocks = (count + 1) / 2;
    const Key key = key_from_seed(seed);
    std::vector<Counter> ctrs(blocks);
    std::vector<Block> blks(blocks);
    for (std::size_t j = 0; j < blocks; ++j)
        ctrs[j] = Counter{static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32), node,
                          (tag << 16) | static_cast<std::uint32_t>(j)};
    philox4x32_batch(ctrs.data(), blocks, key, blks.data());
    for (std::size_t j = 0; j < blocks; ++j) {
        const std::uint64_t a = static_cast<std::uint64_t>(blks[j].x0) | (static_cast<std::uint64_t>(blks[j].x1) << 32);
        const std::uint64_t b = static_cast<std::uint64_t>(blks[j].x2) | (static_cast<std::uint64_t>(blks[j].x3) << 32);
        out[2 * j] = static_cast<double>(a >> 11) * 0x1.0p-53;
        if (2 * j + 1 < count) out[2 * j + 1] = static_cast<double>(b >> 11) * 0x1.0p-53;
    }
}

double max_abs(std::span<const double> v) {
    return backend_slot() == Backend::avx2 ? detail::max_abs_avx2(v.data(), v.size())
                                           : detail::max_abs_scalar(v.data(), v.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
    return backend_slot() == Backend::avx2 ? detail::dot_avx2(a.data(), b.data(), a.size())
                                           : detail::dot_scalar(a.data(), b.data(), a.size());
}

double sum(std::span<const double> v) {
    return backend_slot() == Backend::avx2 ? detail::sum_avx2(v.data(), v.size())
                                           : detail::sum_scalar(v.data(), v.size());
}

}  // namespace ppde::kernels

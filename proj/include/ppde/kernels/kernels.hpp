#pragma once

// Data-parallel arithmetic kernels: counter-based RNG (Philox4x32-10),
// Box-Muller normal generation, and reductions. Each kernel has a scalar
// reference implementation and an AVX2 variant selected at runtime; the
// RNG, normal and max kernels are bit-exact across backends (the normal
// path uses hand-mirrored log/sincos polynomials on both sides), dot/sum
// differ only in accumulation order.

#include <cstddef>
#include <cstdint>
#include <span>

namespace ppde::kernels {

enum class Backend { scalar, avx2 };

bool avx2_supported();
Backend active_backend();
void set_backend(Backend b);  // avx2 request falls back to scalar if unsupported
const char* backend_name();

struct Counter {
    std::uint32_t c0, c1, c2, c3;
};
struct Key {
    std::uint32_t k0, k1;
};
struct Block {
    std::uint32_t x0, x1, x2, x3;
};

// Single-block reference (always scalar). Exposed for known-answer tests.
Block philox4x32(Counter ctr, Key key);

// Dispatch: out[i] = philox4x32(ctrs[i], key).
void philox4x32_batch(const Counter* ctrs, std::size_t n, Key key, Block* out);

// Two gaussians per block via Box-Muller: u1 in (0,1], u2 in [0,1).
void gaussians_from_blocks(const Counter* ctrs, std::size_t n, Key key, double* out /* 2n */);

// Stream shapes used across the artifact. Counter layout:
//   c0/c1 = low/high words of a 64-bit stream id (sample index, tree node id, ...)
//   c2    = grid node index
//   c3    = (tag << 16) | intra-node block index
// Key = low/high words of the user seed. Identical (seed, id, node) always
// reproduce the same numbers regardless of batch shape or backend.
inline Key key_from_seed(std::uint64_t seed) {
    return Key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

// Fills out[node][c], c < per_node, for nodes node0 .. node0+n_nodes-1.
// Odd per_node discards the trailing gaussian of each node's last block, so
// streams for different per_node never alias.
void fill_gaussians(std::uint64_t seed, std::uint32_t tag, std::uint64_t id, std::uint32_t node0,
                    std::size_t n_nodes, std::size_t per_node, double* out);

// count uniforms in [0,1) from the same counter layout (2 per block).
void fill_uniforms(std::uint64_t seed, std::uint32_t tag, std::uint64_t id, std::uint32_t node,
                   std::size_t count, double* out);

// Reductions (dispatched). max_abs is bit-exact across backends; dot/sum are
// order-sensitive and agree to rounding.
double max_abs(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> v);

// Stream tags (16-bit). One tag per independent consumer of randomness.
enum StreamTag : std::uint32_t {
    kTagForward = 1,
    kTagNested = 2,
    kTagAssumption = 3,
    kTagItoCheck = 4,
    kTagQuerySampler = 5,
    kTagDpp = 6,
    kTagLatticeRandom = 7,
    kTagTest = 15,
};

}  // namespace ppde::kernels

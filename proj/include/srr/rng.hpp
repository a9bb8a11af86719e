#pragma once
#include <cmath>
#include <cstdint>
#include <numbers>

namespace srr {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// Every output is a pure function of (key, counter), which is what makes
// per-path streams reproducible independent of thread scheduling.
namespace philox {

struct Block { std::uint32_t v[4]; };

inline void bump_key(std::uint32_t& k0, std::uint32_t& k1) {
    k0 += 0x9E3779B9u;
    k1 += 0xBB67AE85u;
}

inline Block round10(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2, std::uint32_t c3,
                     std::uint32_t k0, std::uint32_t k1) {
    for (int r = 0; r < 10; ++r) {
        const std::uint64_t p0 = std::uint64_t(0xD2511F53u) * c0;
        const std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * c2;
        const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        bump_key(k0, k1);
    }
    return Block{{c0, c1, c2, c3}};
}

}  // namespace philox

/// Stream roles share one key but live in disjoint counter subspaces, so the
/// forward and backward Wiener increments are independent by construction.
enum class StreamRole : std::uint32_t {
    WienerForward  = 0,
    WienerBackward = 1,
    InitialState   = 2,
};

/// Deterministic per-path stream of N(0,1) and U[0,1) numbers addressed by
/// index: value i of path p under seed s is a fixed function of (s, p, i).
class CounterRng {
public:
    CounterRng(std::uint64_t master_seed, std::uint32_t path_index, StreamRole role)
        : key0_(std::uint32_t(master_seed)),
          key1_(std::uint32_t(master_seed >> 32)),
          path_(path_index),
          role_(std::uint32_t(role)) {}

    /// i-th standard normal of this stream (random access, cached per block).
    double normal(std::uint64_t i) {
        const std::uint64_t block = i >> 1;
        if (block != cached_block_ || !cache_valid_) fill_block(block);
        return (i & 1) ? cache_[1] : cache_[0];
    }

    /// i-th uniform in [0,1).
    double uniform(std::uint64_t i) {
        const std::uint64_t block = i >> 1;
        const philox::Block b =
            philox::round10(std::uint32_t(block), std::uint32_t(block >> 32), path_,
                            role_ ^ 0x80000000u, key0_, key1_);
        return (i & 1) ? to_unit(b.v[2], b.v[3]) : to_unit(b.v[0], b.v[1]);
    }

private:
    static double to_unit(std::uint32_t a, std::uint32_t b) {
        // 53 random bits -> [0,1)
        const std::uint64_t m = (std::uint64_t(a >> 6) << 27) | std::uint64_t(b >> 5);
        return double(m) * 0x1.0p-53;
    }

    void fill_block(std::uint64_t block) {
        const philox::Block b =
            philox::round10(std::uint32_t(block), std::uint32_t(block >> 32), path_, role_,
                            key0_, key1_);
        // Box-Muller; u1 in (0,1] avoids log(0)
        const double u1 = 1.0 - to_unit(b.v[0], b.v[1]);
        const double u2 = to_unit(b.v[2], b.v[3]);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cache_[0] = r * std::cos(a);
        cache_[1] = r * std::sin(a);
        cached_block_ = block;
        cache_valid_ = true;
    }

    std::uint32_t key0_, key1_, path_, role_;
    std::uint64_t cached_block_ = 0;
    bool cache_valid_ = false;
    double cache_[2] = {0.0, 0.0};
};

}  // namespace srr

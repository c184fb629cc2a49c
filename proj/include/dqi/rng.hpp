// Deterministic counter-based random streams.
//
// Every random choice in the workbench flows from a single user seed through
// named sub-streams, so runs are bit-reproducible across platforms and across
// serial/parallel execution (each trial owns an independent stream derived
// from (seed, component name, trial index), never a shared generator).
//
// The generator is SplitMix64 (Steele, Lea, Vigna): a fixed-increment counter
// passed through a 64-bit finalizer. All sampling helpers are hand-specified
// rather than delegated to <random> distributions, whose outputs are
// implementation-defined.
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace dqi {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// FNV-1a, used only to fold stream names into seed material.
inline uint64_t hash_name(std::string_view name) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {
        // Decorrelate trivially related seeds before first use.
        (void)splitmix64(state_);
        (void)splitmix64(state_);
    }

    // Independent stream for one component/trial pair under a run-level seed.
    static Rng substream(uint64_t seed, std::string_view component, uint64_t index) {
        uint64_t s = seed;
        s = splitmix64(s) ^ hash_name(component);
        s = splitmix64(s) ^ index;
        return Rng(splitmix64(s));
    }

    uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound), bias-free by rejection. bound must be > 0.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Fisher-Yates. Deterministic for a given stream state.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), order unspecified but deterministic.
    std::vector<size_t> sample_without_replacement(size_t n, size_t k);

  private:
    uint64_t state_;
};

inline std::vector<size_t> Rng::sample_without_replacement(size_t n, size_t k) {
    // Partial Fisher-Yates over an index map; O(k) memory via sparse swaps
    // is not needed at workbench sizes, so use the dense map.
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    std::vector<size_t> out;
    out.reserve(k);
    for (size_t i = 0; i < k && i < n; ++i) {
        size_t j = i + static_cast<size_t>(below(n - i));
        std::swap(idx[i], idx[j]);
        out.push_back(idx[i]);
    }
    return out;
}

} // namespace dqi

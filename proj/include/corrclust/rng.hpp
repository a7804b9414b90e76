#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace corrclust {

// Counter-based splittable RNG (splitmix64 finalizer over key+counter).
// Draws are a pure function of (key, counter), so child streams forked via
// fork() are independent of draws made on the parent and results are
// bit-stable across platforms and thread schedules.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : key_(mix(seed ^ kGolden)) {}

    // Child stream identified by tag; unaffected by draws made on *this.
    SplitRng fork(std::uint64_t tag) const {
        return SplitRng(mix(key_ ^ mix(tag * kGolden + 0x632be59bd9b4e019ULL)));
    }

    std::uint64_t next() { return mix(key_ + (++counter_) * kGolden); }

    // Unbiased integer in [0, n), n >= 1, by rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // k distinct elements of [0, n), ascending order (partial Fisher-Yates).
    std::vector<std::uint32_t> sample_indices(std::size_t n, std::size_t k) {
        if (k > n) k = n;
        std::vector<std::uint32_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace corrclust

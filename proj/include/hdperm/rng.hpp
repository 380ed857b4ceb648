#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hdp {

// Seedable RNG with deterministic substreams. Every randomized component of
// the library takes one of these (or a config holding its seed), so a run is
// reproducible from the master seed no matter how work is scheduled: stream i
// draws the same values whether or not streams j != i were consumed.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : seed_(seed), gen_(mix(seed + 0x9E3779B97F4A7C15ull)) {}

    // Independent substream; derived from the constructor seed only.
    SplitRng stream(std::uint64_t index) const {
        return SplitRng(mix(seed_ ^ mix(index + 0x6A09E667F3BCC909ull)));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, bound), unbiased via rejection. bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return (next_u64() & 1) != 0; }

    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Random permutation of {1, ..., n} (1-based values).
    std::vector<std::int32_t> permutation(int n) {
        std::vector<std::int32_t> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
        shuffle(p);
        return p;
    }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace hdp

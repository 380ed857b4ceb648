#pragma once

#include "hdperm/core.hpp"
#include "hdperm/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace hdp {

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::int64_t burn_in = -1;   // negative: default 10 * n^3
    std::int64_t thinning = -1;  // negative: default n^3
};

std::int64_t default_burn_in(int n);
std::int64_t default_thinning(int n);

// Markov chain state for Latin square sampling: an [n]^3 array over {-1,0,1}
// in which every line sums to 1 and at most one cell is negative. With no
// negative cell the state is a proper order-n Latin square.
class ImproperCube {
public:
    explicit ImproperCube(const PermutationArray& latin);  // requires k = 2
    static ImproperCube cyclic(int n);                     // from the cyclic square

    int n() const { return n_; }
    std::int8_t at(int x, int y, int z) const { return g_[idx(x, y, z)]; }
    bool proper() const { return !neg_.has_value(); }
    const std::optional<std::array<Coord, 3>>& negative_cell() const { return neg_; }

    PermutationArray to_latin() const;  // requires proper()
    void check_invariants() const;      // throws std::logic_error on violation

    friend void jm_step(ImproperCube& cube, SplitRng& rng);
    friend bool operator==(const ImproperCube&, const ImproperCube&) = default;

private:
    std::size_t idx(int x, int y, int z) const {
        return (static_cast<std::size_t>(x - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y - 1)) *
                   static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(z - 1);
    }

    int n_ = 0;
    std::vector<std::int8_t> g_;
    std::optional<std::array<Coord, 3>> neg_;
};

// One +-1 move of the Jacobson-Matthews chain, in place. From a proper state
// the move activates a uniformly random 0-cell; from an improper state it
// starts at the negative cell, choosing uniformly between the two 1-cells in
// each of the three lines through it.
void jm_step(ImproperCube& cube, SplitRng& rng);

// Burn-in once, then emit one square per next() call, with `thinning` steps
// between retained samples. Progress is counted on the chain watched at its
// proper states: one unit runs the raw chain through any improper excursion
// to its next proper visit. The watched chain's stationary law is exactly
// uniform over proper squares, which returning the first proper state after
// a raw-step count is not (squares adjacent to long improper excursions get
// overweighted; the skew is already visible at n = 4). Deterministic given
// the config.
class JmSampler {
public:
    JmSampler(int n, const SamplerConfig& cfg);

    PermutationArray next();

    std::int64_t burn_in() const { return burn_in_; }
    std::int64_t thinning() const { return thinning_; }
    std::uint64_t raw_steps() const { return steps_; }

private:
    void advance_watched(std::int64_t count);

    ImproperCube cube_;
    SplitRng rng_;
    std::int64_t burn_in_ = 0;
    std::int64_t thinning_ = 0;
    std::uint64_t steps_ = 0;
    bool primed_ = false;
};

// f(i, j) = ((i + j - 2) mod n) + 1, the canonical chain start.
PermutationArray cyclic_square(int n);

// Valid for every k: f(alpha) = (sum(alpha_i - 1) mod n) + 1.
PermutationArray cyclic_base(int n, int k);

// One Jacobson-Matthews sample: burn in from the cyclic square and return
// the proper state the burn-in lands on.
PermutationArray sample_latin(int n, const SamplerConfig& cfg);

// Uniform draw from the isotopy orbit of `base`: independent uniform value
// relabelings of each of the k+1 coordinates.
PermutationArray sample_isotopy(const PermutationArray& base, SplitRng& rng);
PermutationArray sample_isotopy(const PermutationArray& base, const SamplerConfig& cfg);

}  // namespace hdp

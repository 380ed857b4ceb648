#pragma once

#include "hdperm/core.hpp"

#include <span>

namespace hdp {

struct ChainWitness {
    std::vector<SupportPoint> points;  // in chain order
    OrderType order_type;

    // Consecutive points strictly increase on coordinates with bit 1 and
    // strictly decrease on coordinates with bit 0.
    bool consistent() const;
};

struct LongestMonotoneResult {
    int length = 0;
    ChainWitness witness;
};

// Exact longest <_c-monotone subsequence over the support of p, with one
// witness attaining it. Dominance DP over lexicographically sorted support
// points; quadratic baseline, with a Fenwick-tree path for large
// three-coordinate instances (k = 2).
LongestMonotoneResult longest_monotone(const PermutationArray& p, const OrderType& c);

class LengthProfile {
public:
    LengthProfile(int coords, std::vector<int> lengths);

    int coords() const { return coords_; }               // k+1
    std::size_t count() const { return lengths_.size(); }  // 2^(k+1)
    int at(const OrderType& c) const;
    int at_mask(std::uint32_t mask) const { return lengths_.at(mask); }
    int max_length() const;

    friend bool operator==(const LengthProfile&, const LengthProfile&) = default;

private:
    int coords_ = 0;
    std::vector<int> lengths_;
};

// ell_c for every order type c, each computed independently (the complement
// symmetry ell_c = ell_{complement c} is a checked property, not a shortcut).
LengthProfile length_profile(const PermutationArray& p);

// Partition of a distinct point set into anti-chains by longest-chain-ending-
// here rank. The number of layers equals the poset height under <_c, and the
// largest layer has at least |points|/height elements.
std::vector<std::vector<SupportPoint>> mirsky_layers(std::span<const SupportPoint> points, const OrderType& c);

struct BoxMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> entries;  // row-major

    int at(int r, int c) const { return entries[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
};

// Maximum size of a position set S such that X_a = X_b whenever a is strictly
// above and strictly left of b. Exhaustive over subsets; requires rows*cols
// <= 16 and no repeated entry within a column.
int max_box_set_oracle(const BoxMatrix& x);

// Maximum size of S in [n]^k such that strict dominance a < b implies
// f(a) = f(b). Exhaustive over subsets; requires n^k <= 16.
int max_flat_set_oracle(const PermutationArray& p);

namespace detail {
// Both strategies exposed for equivalence testing.
LongestMonotoneResult longest_monotone_quadratic(const PermutationArray& p, const OrderType& c);
LongestMonotoneResult longest_monotone_fenwick(const PermutationArray& p, const OrderType& c);
}  // namespace detail

}  // namespace hdp

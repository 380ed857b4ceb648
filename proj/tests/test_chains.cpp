#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdperm/chains.hpp"
#include "hdperm/construct.hpp"
#include "hdperm/rng.hpp"
#include "hdperm/sample.hpp"
#include "support/test_oracles.hpp"

#include <algorithm>
#include <set>

using namespace hdp;
using namespace hdp::test;

namespace {

bool witness_in_support(const ChainWitness& w, const PermutationArray& p) {
    const auto pts = support(p);
    const std::set<SupportPoint> lookup(pts.begin(), pts.end());
    return std::all_of(w.points.begin(), w.points.end(),
                       [&](const SupportPoint& pt) { return lookup.count(pt) > 0; });
}

PermutationArray random_square(int n, std::uint64_t seed) {
    SamplerConfig cfg;
    cfg.seed = seed;
    return sample_latin(n, cfg);
}

}  // namespace

TEST_CASE("longest_monotone: one-dimensional known answers") {
    const PermutationArray identity5 = perm_1d({1, 2, 3, 4, 5});
    CHECK(longest_monotone(identity5, OrderType{1, 1}).length == 5);
    CHECK(longest_monotone(identity5, OrderType{1, 0}).length == 1);

    const PermutationArray zigzag = perm_1d({2, 1, 4, 3});
    CHECK(longest_monotone(zigzag, OrderType{1, 1}).length == 2);

    CHECK_THROWS_AS(longest_monotone(identity5, OrderType{1, 1, 1}), std::invalid_argument);
}

TEST_CASE("longest_monotone matches the exhaustive oracle on extremal_prime(3,2)") {
    const PermutationArray p = extremal_prime(3, 2);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        const OrderType c = OrderType::from_mask(mask, 3);
        const LongestMonotoneResult got = longest_monotone(p, c);
        CHECK(got.length == oracle_longest_monotone(p, c));
        CHECK(got.witness.consistent());
        CHECK(static_cast<int>(got.witness.points.size()) == got.length);
        CHECK(witness_in_support(got.witness, p));
    }
}

TEST_CASE("longest_monotone matches the oracle on random small instances") {
    SplitRng rng(1234);
    // k = 1: all permutations of S_n for n <= 5, every order type
    for (int n = 1; n <= 5; ++n)
        for (const auto& values : all_permutations(n)) {
            const PermutationArray p = perm_1d(values);
            for (std::uint32_t mask = 0; mask < 4; ++mask) {
                const OrderType c = OrderType::from_mask(mask, 2);
                CHECK(longest_monotone(p, c).length == oracle_longest_monotone(p, c));
            }
        }
    // k = 2: random order-3 Latin squares, every order type
    for (int t = 0; t < 100; ++t) {
        const PermutationArray p = random_square(3, rng.next_u64());
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            const OrderType c = OrderType::from_mask(mask, 3);
            CAPTURE(t);
            CAPTURE(c.to_string());
            CHECK(longest_monotone(p, c).length == oracle_longest_monotone(p, c));
        }
    }
}

TEST_CASE("witnesses are valid chains drawn from the support") {
    SplitRng rng(88);
    for (int t = 0; t < 20; ++t) {
        const PermutationArray p = random_square(5, rng.next_u64());
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            const LongestMonotoneResult res = longest_monotone(p, OrderType::from_mask(mask, 3));
            CHECK(res.witness.consistent());
            CHECK(static_cast<int>(res.witness.points.size()) == res.length);
            CHECK(witness_in_support(res.witness, p));
        }
    }
}

TEST_CASE("quadratic and fenwick strategies agree") {
    SplitRng rng(321);
    for (int n : {6, 9, 12}) {
        for (int t = 0; t < 8; ++t) {
            const PermutationArray p = random_square(n, rng.next_u64());
            for (std::uint32_t mask = 0; mask < 8; ++mask) {
                const OrderType c = OrderType::from_mask(mask, 3);
                const LongestMonotoneResult a = detail::longest_monotone_quadratic(p, c);
                const LongestMonotoneResult b = detail::longest_monotone_fenwick(p, c);
                CHECK(a.length == b.length);
                CHECK(b.witness.consistent());
                CHECK(witness_in_support(b.witness, p));
            }
        }
    }
    // one deterministic mid-size instance
    const PermutationArray p = extremal_prime(31, 2);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        const OrderType c = OrderType::from_mask(mask, 3);
        CHECK(detail::longest_monotone_quadratic(p, c).length ==
              detail::longest_monotone_fenwick(p, c).length);
    }
}

TEST_CASE("length_profile: identity permutation and complement symmetry") {
    const PermutationArray identity = perm_1d({1, 2, 3, 4});
    const LengthProfile prof = length_profile(identity);
    CHECK(prof.at(OrderType{1, 1}) == 4);
    CHECK(prof.at(OrderType{0, 0}) == 4);
    CHECK(prof.at(OrderType{1, 0}) == 1);
    CHECK(prof.at(OrderType{0, 1}) == 1);
    CHECK(prof.max_length() == 4);

    SplitRng rng(42);
    for (int t = 0; t < 10; ++t) {
        const PermutationArray p = random_square(4, rng.next_u64());
        const LengthProfile lp = length_profile(p);
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            const OrderType c = OrderType::from_mask(mask, 3);
            CHECK(lp.at(c) == lp.at(c.complement()));
            CHECK(lp.at(c) == oracle_longest_monotone(p, c));  // full-profile oracle check
        }
    }
}

TEST_CASE("length_profile covariance under the symmetry actions") {
    SplitRng rng(4242);
    for (int t = 0; t < 10; ++t) {
        const PermutationArray p = random_square(4, rng.next_u64());
        const LengthProfile base = length_profile(p);

        // reversal of coordinate i flips bit i
        for (int i = 1; i <= 3; ++i) {
            const LengthProfile rev = length_profile(reverse_coordinate(p, i));
            for (std::uint32_t mask = 0; mask < 8; ++mask) {
                const OrderType c = OrderType::from_mask(mask, 3);
                CHECK(rev.at(c.with_flipped(i)) == base.at(c));
            }
        }

        // coordinate permutation sigma maps ell_c to ell at the composed type
        for (const auto& sigma_vals : all_permutations(3)) {
            const std::vector<int> sigma(sigma_vals.begin(), sigma_vals.end());
            const LengthProfile img = length_profile(permute_coordinates(p, sigma));
            for (std::uint32_t mask = 0; mask < 8; ++mask) {
                const OrderType c = OrderType::from_mask(mask, 3);
                CHECK(img.at(c.composed(sigma)) == base.at(c));
            }
        }
    }
}

TEST_CASE("monotone floor: every tested array has a long enough subsequence") {
    // k = 1: ceil(sqrt(n)); k >= 2: floor(sqrt(n / 3(k-1)))
    SplitRng rng(31337);
    for (int t = 0; t < 20; ++t) {
        const PermutationArray p = perm_1d(rng.permutation(12));
        CHECK(length_profile(p).max_length() >= 4);  // ceil(sqrt(12)) = 4
    }
    for (int n : {8, 16}) {
        for (int t = 0; t < 5; ++t) {
            const PermutationArray p = random_square(n, rng.next_u64());
            int floor_bound = 0;
            while ((floor_bound + 1) * (floor_bound + 1) <= n / 3) ++floor_bound;
            CHECK(length_profile(p).max_length() >= floor_bound);
        }
    }
}

TEST_CASE("mirsky_layers: chains, anti-chains, and consistency with the solver") {
    const OrderType inc = OrderType::ones(3);

    // a single chain of 5 points -> 5 singleton layers
    std::vector<SupportPoint> chain;
    for (Coord i = 1; i <= 5; ++i) chain.push_back({i, i, i});
    const auto chain_layers = mirsky_layers(chain, inc);
    REQUIRE(chain_layers.size() == 5);
    for (const auto& layer : chain_layers) CHECK(layer.size() == 1);

    // a single anti-chain of 5 points -> 1 layer of size 5
    std::vector<SupportPoint> anti;
    for (Coord i = 1; i <= 5; ++i) anti.push_back({i, static_cast<Coord>(6 - i), i});
    const auto anti_layers = mirsky_layers(anti, inc);
    REQUIRE(anti_layers.size() == 1);
    CHECK(anti_layers[0].size() == 5);

    CHECK_THROWS_AS(mirsky_layers(std::vector<SupportPoint>{{1, 1, 1}, {1, 1, 1}}, inc),
                    std::invalid_argument);

    // random 4x4 squares: layer count equals the longest chain, the largest
    // layer is at least |points|/height, every layer is an anti-chain, and
    // the layers partition the input
    SplitRng rng(777);
    for (int t = 0; t < 10; ++t) {
        const PermutationArray p = random_square(4, rng.next_u64());
        const auto pts = support(p);
        const auto layers = mirsky_layers(pts, inc);
        const int h = longest_monotone(p, inc).length;
        CHECK(static_cast<int>(layers.size()) == h);

        std::size_t total = 0, largest = 0;
        for (const auto& layer : layers) {
            total += layer.size();
            largest = std::max(largest, layer.size());
            for (std::size_t a = 0; a < layer.size(); ++a)
                for (std::size_t b = a + 1; b < layer.size(); ++b) {
                    const int pair_len =
                        oracle_longest_monotone(std::vector<SupportPoint>{layer[a], layer[b]}, inc);
                    CHECK(pair_len == 1);  // incomparable
                }
        }
        CHECK(total == pts.size());
        CHECK(static_cast<int>(layers.size() * largest) >= static_cast<int>(pts.size()));
    }
}

TEST_CASE("max_box_set_oracle: known answers and frozen enumeration values") {
    CHECK(max_box_set_oracle(BoxMatrix{1, 1, {7}}) == 1);

    // 2x2, all entries distinct: only the corner pair conflicts
    CHECK(max_box_set_oracle(BoxMatrix{2, 2, {1, 2, 3, 4}}) == 3);

    // all 3x3 matrices with column-distinct entries over {1,2,3}:
    // bound M+2N = 9, observed maximum (full enumeration) = 7
    const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    int observed = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            for (int c = 0; c < 6; ++c) {
                BoxMatrix x{3, 3, std::vector<int>(9)};
                for (int r = 0; r < 3; ++r) {
                    x.entries[static_cast<std::size_t>(3 * r + 0)] = perms[a][r];
                    x.entries[static_cast<std::size_t>(3 * r + 1)] = perms[b][r];
                    x.entries[static_cast<std::size_t>(3 * r + 2)] = perms[c][r];
                }
                const int v = max_box_set_oracle(x);
                CHECK(v <= 9);
                observed = std::max(observed, v);
            }
    CHECK(observed == 7);

    CHECK_THROWS_AS(max_box_set_oracle(BoxMatrix{2, 1, {1, 1}}), std::invalid_argument);  // column repeat
    CHECK_THROWS_AS(max_box_set_oracle(BoxMatrix{5, 4, std::vector<int>(20, 0)}), std::invalid_argument);
}

TEST_CASE("max_flat_set_oracle: bounds on small squares") {
    // k=2, n=2: bound 3(k-1)n^(k-1) = 6 is bigger than the whole grid
    SplitRng rng(2024);
    const PermutationArray tiny = random_square(2, 1);
    CHECK(max_flat_set_oracle(tiny) <= 4);

    CHECK(max_flat_set_oracle(extremal_prime(3, 2)) <= 9);

    for (int t = 0; t < 5; ++t) {
        const PermutationArray p = random_square(4, rng.next_u64());
        CHECK(max_flat_set_oracle(p) <= 12);  // 3 * 1 * 4
    }

    // refuses instances beyond the exhaustive cap
    CHECK_THROWS_AS(max_flat_set_oracle(random_square(5, 9)), std::invalid_argument);
}

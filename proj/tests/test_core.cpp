#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdperm/core.hpp"
#include "hdperm/rng.hpp"
#include "hdperm/sample.hpp"
#include "support/test_oracles.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace hdp;
using namespace hdp::test;

TEST_CASE("order type basics") {
    const OrderType c{1, 0, 1};
    CHECK(c.length() == 3);
    CHECK(c.increasing(1));
    CHECK_FALSE(c.increasing(2));
    CHECK(c.to_string() == "101");
    CHECK(c.complement() == OrderType{0, 1, 0});
    CHECK(c.with_flipped(2) == OrderType{1, 1, 1});
    CHECK(OrderType::ones(3) == OrderType{1, 1, 1});
    CHECK(OrderType::ones_except_last(3) == OrderType{1, 1, 0});
    CHECK(OrderType::parse("101") == c);
    CHECK(OrderType::from_mask(c.mask(), 3) == c);
    CHECK_THROWS_AS(OrderType::parse("102"), std::invalid_argument);
    CHECK_THROWS_AS((OrderType{1, 2}), std::invalid_argument);

    const std::vector<int> swap12{2, 1, 3};
    CHECK(c.composed(swap12) == OrderType{0, 1, 1});
}

TEST_CASE("construction enforces the structural contract") {
    CHECK_NOTHROW(PermutationArray(1, 3, {2, 3, 1}));
    CHECK_THROWS_AS(PermutationArray(2, 2, {1, 2, 2}), std::invalid_argument);      // wrong size
    CHECK_THROWS_AS(PermutationArray(1, 3, {2, 3, 4}), std::invalid_argument);      // out of range
    CHECK_THROWS_AS(PermutationArray(1, 3, {2, 3, 0}), std::invalid_argument);      // out of range
    CHECK_THROWS_AS(PermutationArray(0, 3, {}), std::invalid_argument);
}

TEST_CASE("validate: known-answer cases") {
    CHECK(validate(perm_1d({2, 3, 1})).ok);
    CHECK(validate(square_from_rows({{1, 2}, {2, 1}})).ok);

    const ValidationReport bad = validate(square_from_rows({{1, 2}, {1, 2}}));
    CHECK_FALSE(bad.ok);
    REQUIRE(!bad.violations.empty());
    // repeated value down the first column: axis 1 (row index varies), column 1
    CHECK(bad.violations[0].axis == 1);
    REQUIRE(bad.violations[0].anchor.size() == 2);
    CHECK(bad.violations[0].anchor[1] == 1);
    CHECK(bad.describe().find("axis 1") != std::string::npos);
}

TEST_CASE("validate reports the first offending line per axis") {
    // both rows and columns broken
    const ValidationReport r = validate(square_from_rows({{1, 1}, {1, 1}}));
    CHECK_FALSE(r.ok);
    CHECK(r.violations.size() == 2);
    CHECK(r.violations[0].axis == 1);
    CHECK(r.violations[1].axis == 2);
}

TEST_CASE("validate agrees with the induced zero-one array formulation") {
    // random valid squares, then random corruptions; the two formulations
    // must agree on every instance
    SplitRng rng(20240811);
    int checked = 0;
    for (int t = 0; t < 200; ++t) {
        SamplerConfig cfg;
        cfg.seed = rng.next_u64();
        cfg.burn_in = 300;
        PermutationArray p = sample_latin(4, cfg);
        if (t % 2 == 1) {  // corrupt one entry
            std::vector<Coord> f = p.table();
            const std::size_t at = static_cast<std::size_t>(rng.below(f.size()));
            f[at] = static_cast<Coord>(1 + rng.below(4));
            p = PermutationArray(2, 4, std::move(f));
        }
        CHECK(validate(p).ok == zero_one_array_valid(p));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("validate agrees with a direct Latin-square checker on 5x5 tables") {
    SplitRng rng(7);
    for (int t = 0; t < 100; ++t) {
        SamplerConfig cfg;
        cfg.seed = rng.next_u64();
        cfg.burn_in = 600;
        PermutationArray p = sample_latin(5, cfg);
        if (t % 3 == 0) {
            std::vector<Coord> f = p.table();
            f[static_cast<std::size_t>(rng.below(f.size()))] = static_cast<Coord>(1 + rng.below(5));
            p = PermutationArray(2, 5, std::move(f));
        }
        CHECK(validate(p).ok == latin_square_direct_check(p));
    }
}

TEST_CASE("support: small cases and bijection property") {
    CHECK(support(perm_1d({1, 2})) == std::vector<SupportPoint>{{1, 1}, {2, 2}});
    CHECK(support(perm_1d({2, 1})) == std::vector<SupportPoint>{{1, 2}, {2, 1}});

    const PermutationArray sq = square_from_rows({{1, 2}, {2, 1}});
    const auto pts = support(sq);
    REQUIRE(pts.size() == 4);
    std::set<std::pair<Coord, Coord>> positions;
    for (const auto& pt : pts) {
        REQUIRE(pt.size() == 3);
        positions.insert({pt[0], pt[1]});
        CHECK(sq(std::span<const Coord>(pt.data(), 2)) == pt[2]);
    }
    CHECK(positions.size() == 4);  // projection onto [n]^k is a bijection
}

TEST_CASE("support size and projection on a sampled square") {
    SamplerConfig cfg;
    cfg.seed = 99;
    const PermutationArray p = sample_latin(6, cfg);
    const auto pts = support(p);
    CHECK(pts.size() == p.size());
    std::set<std::vector<Coord>> proj;
    for (const auto& pt : pts) proj.insert(std::vector<Coord>(pt.begin(), pt.end() - 1));
    CHECK(proj.size() == p.size());
}

TEST_CASE("permute_coordinates: identity, inverse, validity over all of S_3") {
    const PermutationArray p = perm_1d({2, 3, 1});
    const std::vector<int> id{1, 2};
    CHECK(permute_coordinates(p, id) == p);

    const std::vector<int> swap12{2, 1};
    CHECK(permute_coordinates(p, swap12) == perm_1d({3, 1, 2}));  // transpose = inverse

    // exhaustive over all sigma in S_3 for one fixed square
    const PermutationArray sq = square_from_rows({{1, 2, 3}, {2, 3, 1}, {3, 1, 2}});
    for (const auto& sigma_vals : all_permutations(3)) {
        std::vector<int> sigma(sigma_vals.begin(), sigma_vals.end());
        CHECK(validate(permute_coordinates(sq, sigma)).ok);
    }

    CHECK_THROWS_AS(permute_coordinates(p, std::vector<int>{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(permute_coordinates(p, std::vector<int>{1}), std::invalid_argument);
}

TEST_CASE("permute_values: identity, relabeling, random property") {
    const PermutationArray p = perm_1d({1, 2, 3});
    std::vector<Coord> id{1, 2, 3};
    CHECK(permute_values(p, 1, id) == p);
    CHECK(permute_values(p, 2, id) == p);

    const std::vector<Coord> cyc{2, 3, 1};  // 1->2, 2->3, 3->1
    CHECK(permute_values(p, 2, cyc) == perm_1d({2, 3, 1}));

    CHECK_THROWS_AS(permute_values(p, 0, id), std::invalid_argument);
    CHECK_THROWS_AS(permute_values(p, 3, id), std::invalid_argument);
    CHECK_THROWS_AS(permute_values(p, 1, std::vector<Coord>{1, 1, 2}), std::invalid_argument);

    // property: any valid p, any coordinate, random pi -> still valid
    SplitRng rng(5150);
    for (int t = 0; t < 100; ++t) {
        SamplerConfig cfg;
        cfg.seed = rng.next_u64();
        cfg.burn_in = 300;
        const PermutationArray sq = sample_latin(4, cfg);
        const int coordinate = rng.uniform_int(1, 3);
        const std::vector<Coord> pi = rng.permutation(4);
        CHECK(validate(permute_values(sq, coordinate, pi)).ok);
    }
}

TEST_CASE("reverse_coordinate: involution and edge cases") {
    CHECK(reverse_coordinate(perm_1d({1}), 1) == perm_1d({1}));  // n = 1 identity action
    CHECK(reverse_coordinate(perm_1d({1, 2, 3}), 1) == perm_1d({3, 2, 1}));

    SamplerConfig cfg;
    cfg.seed = 3;
    const PermutationArray sq = sample_latin(5, cfg);
    for (int i = 1; i <= 3; ++i) {
        const PermutationArray once = reverse_coordinate(sq, i);
        CHECK(validate(once).ok);
        CHECK(reverse_coordinate(once, i) == sq);  // double reversal = identity
    }
    CHECK_THROWS_AS(reverse_coordinate(sq, 4), std::invalid_argument);
}

TEST_CASE("coordinate permutation applied twice with involutive sigma returns the original") {
    SamplerConfig cfg;
    cfg.seed = 17;
    const PermutationArray sq = sample_latin(4, cfg);
    const std::vector<int> invol{3, 2, 1};  // swaps coordinates 1 and 3
    CHECK(permute_coordinates(permute_coordinates(sq, invol), invol) == sq);
}

TEST_CASE("file format round trip is byte identical") {
    const PermutationArray sq = square_from_rows({{1, 2}, {2, 1}});
    std::ostringstream first;
    write_array(first, sq);
    CHECK(first.str() == "hdperm v1 k=2 n=2\n1 2\n2 1\n");

    std::istringstream in(first.str());
    const PermutationArray back = read_array(in);
    CHECK(back == sq);
    std::ostringstream second;
    write_array(second, back);
    CHECK(second.str() == first.str());
}

TEST_CASE("reader accepts arbitrary whitespace") {
    std::istringstream in("hdperm v1 k=2 n=2\n  1\t2\n\n2    1   ");
    CHECK(read_array(in) == square_from_rows({{1, 2}, {2, 1}}));
}

TEST_CASE("reader rejects malformed input with the right error kind") {
    const auto kind_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_array(in);
        } catch (const FormatError& e) {
            return e.kind();
        }
        throw std::runtime_error("expected FormatError");
    };
    CHECK(kind_of("latin v1 k=2 n=2\n1 2\n2 1\n") == FormatError::Kind::Header);
    CHECK(kind_of("hdperm v2 k=2 n=2\n1 2\n2 1\n") == FormatError::Kind::Header);
    CHECK(kind_of("hdperm v1 k=x n=2\n1 2\n2 1\n") == FormatError::Kind::Header);
    CHECK(kind_of("hdperm v1 k=2 n=2 extra\n1 2\n2 1\n") == FormatError::Kind::Header);
    CHECK(kind_of("hdperm v1 k=2 n=2\n1 2 2\n") == FormatError::Kind::Count);      // n^k - 1 entries
    CHECK(kind_of("hdperm v1 k=2 n=2\n1 2\n2 1 1\n") == FormatError::Kind::Count);  // trailing entry
    CHECK(kind_of("hdperm v1 k=2 n=2\n1 2\n2 x\n") == FormatError::Kind::Count);
    CHECK(kind_of("hdperm v1 k=2 n=2\n1 2\n2 0\n") == FormatError::Kind::Range);   // entry 0
    CHECK(kind_of("hdperm v1 k=2 n=2\n1 2\n2 3\n") == FormatError::Kind::Range);
}

TEST_CASE("reader does not require the Latin property") {
    // structural errors are caught before Latin validation; a non-Latin table
    // with well-formed structure parses and then fails validate()
    std::istringstream in("hdperm v1 k=2 n=2\n1 2\n1 2\n");
    const PermutationArray p = read_array(in);
    CHECK_FALSE(validate(p).ok);
}

#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdp {

using Coord = std::int32_t;

// A position in [n]^(k+1) (or [n]^k, depending on context), 1-based coordinates.
using SupportPoint = std::vector<Coord>;

// One of the 2^(k+1) coordinatewise monotonicity patterns. Bit i-1 set means
// coordinate i must strictly increase along a chain; clear means strictly
// decrease.
class OrderType {
public:
    OrderType() = default;
    OrderType(std::initializer_list<int> bits);
    explicit OrderType(std::span<const int> bits);

    static OrderType from_mask(std::uint32_t mask, int length);
    // All coordinates increasing ("<_1" in the two-order shorthand).
    static OrderType ones(int length);
    // All increasing except the last coordinate ("<_2").
    static OrderType ones_except_last(int length);
    // Parse "110"-style strings, leftmost char = coordinate 1.
    static OrderType parse(const std::string& bits);

    int length() const { return length_; }
    bool increasing(int coordinate) const;  // 1-based
    std::uint32_t mask() const { return mask_; }

    OrderType complement() const;
    OrderType with_flipped(int coordinate) const;
    // Order type of the image chain when coordinates are permuted by sigma
    // (new coordinate i reads old coordinate sigma[i-1]).
    OrderType composed(std::span<const int> sigma) const;

    std::string to_string() const;

    friend bool operator==(const OrderType&, const OrderType&) = default;

private:
    std::uint32_t mask_ = 0;
    int length_ = 0;
};

struct LineViolation {
    int axis = 0;                // the varied coordinate, 1-based in [1, k]
    std::vector<Coord> anchor;   // first position of the offending line (coordinate `axis` is 1)
};

struct ValidationReport {
    bool ok = false;
    std::vector<LineViolation> violations;  // first offending line per axis
    std::string describe() const;
};

// An order-n k-dimensional permutation stored as its value table
// f : [n]^k -> [n] in lexicographic position order (coordinate 1 most
// significant). Construction enforces the structural contract (table size
// n^k, entries in [1, n]); the Latin line property is checked by validate().
// Instances are immutable and safe to share across threads.
class PermutationArray {
public:
    PermutationArray(int k, int n, std::vector<Coord> table);

    int k() const { return k_; }
    int n() const { return n_; }
    std::size_t size() const { return f_.size(); }  // n^k
    const std::vector<Coord>& table() const { return f_; }

    Coord value_at(std::size_t index) const { return f_[index]; }
    Coord operator()(std::span<const Coord> position) const { return f_[index_of(position)]; }

    std::size_t index_of(std::span<const Coord> position) const;
    void position_at(std::size_t index, std::span<Coord> out) const;
    std::vector<Coord> position_at(std::size_t index) const;

    friend bool operator==(const PermutationArray&, const PermutationArray&) = default;

private:
    int k_ = 0;
    int n_ = 0;
    std::vector<Coord> f_;
};

// n^k as a table size; throws std::invalid_argument on k < 1, n < 1 or overflow.
std::size_t table_cells(int k, int n);

// Latin property: every line of the value table (fix all position coordinates
// but one) is a permutation of [n]. Reports the first offending line per axis.
ValidationReport validate(const PermutationArray& p);

// The n^k points (alpha, f(alpha)) in lexicographic order of alpha.
std::vector<SupportPoint> support(const PermutationArray& p);

// Coordinate re-ordering by sigma, a permutation of {1, ..., k+1}: support
// point beta has beta_i = alpha_{sigma[i-1]}.
PermutationArray permute_coordinates(const PermutationArray& p, std::span<const int> sigma);

// Relabel coordinate i (1-based, in [1, k+1]) by the permutation pi of [n].
PermutationArray permute_values(const PermutationArray& p, int coordinate, std::span<const Coord> pi);

// permute_values with a -> 1+n-a.
PermutationArray reverse_coordinate(const PermutationArray& p, int coordinate);

class FormatError : public std::runtime_error {
public:
    enum class Kind { Header, Count, Range };
    FormatError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Text format: line 1 is `hdperm v1 k=<k> n=<n>`, then the n^k table entries.
// write_array emits n entries per line; read_array accepts any whitespace.
PermutationArray read_array(std::istream& in);
void write_array(std::ostream& out, const PermutationArray& p);
PermutationArray load_array(const std::string& path);
void save_array(const std::string& path, const PermutationArray& p);

}  // namespace hdp

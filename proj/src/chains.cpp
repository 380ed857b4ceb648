#include "hdperm/chains.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace hdp {

namespace {

// dir[i] = +1 for coordinates that must increase, -1 for decrease
std::vector<int> directions(const OrderType& c) {
    std::vector<int> dir(static_cast<std::size_t>(c.length()));
    for (int i = 1; i <= c.length(); ++i) dir[static_cast<std::size_t>(i - 1)] = c.increasing(i) ? 1 : -1;
    return dir;
}

bool dominates(const SupportPoint& a, const SupportPoint& b, std::span<const int> dir) {
    // a <_c b
    for (std::size_t i = 0; i < dir.size(); ++i) {
        const Coord d = b[i] - a[i];
        if (dir[i] > 0 ? d <= 0 : d >= 0) return false;
    }
    return true;
}

// directional lexicographic order: if a <_c b then a sorts before b
bool dir_lex_less(const SupportPoint& a, const SupportPoint& b, std::span<const int> dir) {
    for (std::size_t i = 0; i < dir.size(); ++i) {
        if (a[i] != b[i]) return dir[i] > 0 ? a[i] < b[i] : a[i] > b[i];
    }
    return false;
}

// ranks[i] = longest <_c chain ending at points[i]; preds[i] = predecessor
// index into `points` (-1 at chain starts), first-found among maximizers in
// the sorted processing order.
void chain_ranks(std::span<const SupportPoint> points, const OrderType& c,
                 std::vector<int>& ranks, std::vector<int>& preds) {
    const std::size_t count = points.size();
    if (count == 0) {
        ranks.clear();
        preds.clear();
        return;
    }
    const int d = static_cast<int>(points[0].size());
    if (d != c.length()) throw std::invalid_argument("order type length does not match point arity");
    for (const SupportPoint& pt : points)
        if (static_cast<int>(pt.size()) != d) throw std::invalid_argument("points of mixed arity");

    const std::vector<int> dir = directions(c);
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dir_lex_less(points[a], points[b], dir)) return true;
        if (dir_lex_less(points[b], points[a], dir)) return false;
        return a < b;
    });

    ranks.assign(count, 1);
    preds.assign(count, -1);
    for (std::size_t a = 0; a < count; ++a) {
        const std::size_t i = order[a];
        int best = 0;
        int best_pred = -1;
        for (std::size_t b = 0; b < a; ++b) {
            const std::size_t j = order[b];
            if (ranks[j] > best && dominates(points[j], points[i], dir)) {
                best = ranks[j];
                best_pred = static_cast<int>(j);
            }
        }
        ranks[i] = best + 1;
        preds[i] = best_pred;
    }
}

ChainWitness recover_witness(std::span<const SupportPoint> points, const OrderType& c,
                             std::span<const int> ranks, std::span<const int> preds) {
    ChainWitness w;
    w.order_type = c;
    if (points.empty()) return w;
    std::size_t at = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (ranks[i] > ranks[at]) at = i;
    std::vector<SupportPoint> rev;
    for (int i = static_cast<int>(at); i >= 0; i = preds[static_cast<std::size_t>(i)])
        rev.push_back(points[static_cast<std::size_t>(i)]);
    w.points.assign(rev.rbegin(), rev.rend());
    return w;
}

// --- Fenwick path for three-coordinate instances --------------------------

struct MaxCell {
    int len = 0;
    std::int32_t idx = -1;
};

// 2D Fenwick tree over [1,n]^2 supporting prefix max with point updates.
// Values only grow; ties keep the earliest inserted index.
class PrefixMax2D {
public:
    explicit PrefixMax2D(int n) : n_(n), cells_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1)) {}

    void update(int y, int z, MaxCell v) {
        for (int i = y; i <= n_; i += i & -i)
            for (int j = z; j <= n_; j += j & -j) {
                MaxCell& c = at(i, j);
                if (v.len > c.len) c = v;
            }
    }

    MaxCell query(int y, int z) const {
        MaxCell best;
        for (int i = y; i > 0; i -= i & -i)
            for (int j = z; j > 0; j -= j & -j) {
                const MaxCell& c = at(i, j);
                if (c.len > best.len) best = c;
            }
        return best;
    }

private:
    MaxCell& at(int i, int j) { return cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(j)]; }
    const MaxCell& at(int i, int j) const { return cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(j)]; }

    int n_;
    std::vector<MaxCell> cells_;
};

constexpr std::size_t kFenwickThreshold = 4000;

}  // namespace

bool ChainWitness::consistent() const {
    if (points.empty()) return false;
    const std::vector<int> dir = directions(order_type);
    for (const SupportPoint& pt : points)
        if (pt.size() != dir.size()) return false;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!dominates(points[i - 1], points[i], dir)) return false;
    return true;
}

LongestMonotoneResult detail::longest_monotone_quadratic(const PermutationArray& p, const OrderType& c) {
    if (c.length() != p.k() + 1) throw std::invalid_argument("order type length must be k+1");
    const std::vector<SupportPoint> pts = support(p);
    std::vector<int> ranks, preds;
    chain_ranks(pts, c, ranks, preds);
    LongestMonotoneResult res;
    res.witness = recover_witness(pts, c, ranks, preds);
    res.length = static_cast<int>(res.witness.points.size());
    return res;
}

LongestMonotoneResult detail::longest_monotone_fenwick(const PermutationArray& p, const OrderType& c) {
    if (p.k() != 2) throw std::invalid_argument("fenwick path requires k = 2");
    if (c.length() != 3) throw std::invalid_argument("order type length must be k+1");
    const int n = p.n();
    const std::size_t count = p.size();

    // Flip decreasing coordinates so the chain condition becomes strict
    // dominance, then sort by x and sweep blocks of equal x.
    const bool fx = !c.increasing(1), fy = !c.increasing(2), fz = !c.increasing(3);
    std::vector<Coord> xs(count), ys(count), zs(count);
    {
        std::size_t idx = 0;
        for (Coord x = 1; x <= n; ++x)
            for (Coord y = 1; y <= n; ++y, ++idx) {
                const Coord z = p.value_at(idx);
                xs[idx] = fx ? static_cast<Coord>(n + 1 - x) : x;
                ys[idx] = fy ? static_cast<Coord>(n + 1 - y) : y;
                zs[idx] = fz ? static_cast<Coord>(n + 1 - z) : z;
            }
    }
    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (xs[a] != xs[b]) return xs[a] < xs[b];
        if (ys[a] != ys[b]) return ys[a] < ys[b];
        if (zs[a] != zs[b]) return zs[a] < zs[b];
        return a < b;
    });

    PrefixMax2D tree(n);
    std::vector<int> ranks(count, 1);
    std::vector<std::int32_t> preds(count, -1);
    std::size_t block = 0;
    while (block < count) {
        std::size_t end = block;
        while (end < count && xs[order[end]] == xs[order[block]]) ++end;
        for (std::size_t a = block; a < end; ++a) {
            const std::uint32_t i = order[a];
            if (ys[i] > 1 && zs[i] > 1) {
                const MaxCell best = tree.query(ys[i] - 1, zs[i] - 1);
                if (best.len > 0) {
                    ranks[i] = best.len + 1;
                    preds[i] = best.idx;
                }
            }
        }
        for (std::size_t a = block; a < end; ++a) {
            const std::uint32_t i = order[a];
            tree.update(ys[i], zs[i], MaxCell{ranks[i], static_cast<std::int32_t>(i)});
        }
        block = end;
    }

    std::size_t at = 0;
    for (std::size_t i = 1; i < count; ++i)
        if (ranks[i] > ranks[at]) at = i;

    LongestMonotoneResult res;
    res.witness.order_type = c;
    std::vector<std::size_t> chain;
    for (std::int32_t i = static_cast<std::int32_t>(at); i >= 0; i = preds[static_cast<std::size_t>(i)])
        chain.push_back(static_cast<std::size_t>(i));
    std::reverse(chain.begin(), chain.end());
    for (std::size_t idx : chain) {
        std::vector<Coord> pos = p.position_at(idx);
        SupportPoint pt{pos[0], pos[1], p.value_at(idx)};
        res.witness.points.push_back(std::move(pt));
    }
    res.length = static_cast<int>(res.witness.points.size());
    return res;
}

LongestMonotoneResult longest_monotone(const PermutationArray& p, const OrderType& c) {
    if (p.k() == 2 && p.size() > kFenwickThreshold) return detail::longest_monotone_fenwick(p, c);
    return detail::longest_monotone_quadratic(p, c);
}

// ----------------------------------------------------------- LengthProfile

LengthProfile::LengthProfile(int coords, std::vector<int> lengths) : coords_(coords), lengths_(std::move(lengths)) {
    if (coords_ < 1 || lengths_.size() != (std::size_t{1} << coords_))
        throw std::invalid_argument("length profile needs 2^(k+1) entries");
}

int LengthProfile::at(const OrderType& c) const {
    if (c.length() != coords_) throw std::invalid_argument("order type length does not match profile");
    return lengths_[c.mask()];
}

int LengthProfile::max_length() const {
    return *std::max_element(lengths_.begin(), lengths_.end());
}

LengthProfile length_profile(const PermutationArray& p) {
    const int coords = p.k() + 1;
    std::vector<int> lengths(std::size_t{1} << coords);
    for (std::uint32_t mask = 0; mask < lengths.size(); ++mask)
        lengths[mask] = longest_monotone(p, OrderType::from_mask(mask, coords)).length;
    return LengthProfile(coords, std::move(lengths));
}

// ------------------------------------------------------------ Mirsky layers

std::vector<std::vector<SupportPoint>> mirsky_layers(std::span<const SupportPoint> points, const OrderType& c) {
    {
        std::vector<SupportPoint> sorted(points.begin(), points.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("mirsky_layers requires distinct points");
    }
    std::vector<int> ranks, preds;
    chain_ranks(points, c, ranks, preds);
    const int height = ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end());
    std::vector<std::vector<SupportPoint>> layers(static_cast<std::size_t>(height));
    for (std::size_t i = 0; i < points.size(); ++i)
        layers[static_cast<std::size_t>(ranks[i] - 1)].push_back(points[i]);
    return layers;
}

// ------------------------------------------------------------- lemma oracles

namespace {

// maximum subset avoiding all conflict pairs, by masked enumeration
int max_conflict_free_subset(int count, std::span<const std::uint32_t> conflict) {
    int best = 0;
    const std::uint32_t limit = static_cast<std::uint32_t>((std::uint64_t{1} << count) - 1);
    for (std::uint32_t mask = 1;; ++mask) {
        bool ok = true;
        for (std::uint32_t rest = mask; rest;) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            if (mask & conflict[static_cast<std::size_t>(i)]) {
                ok = false;
                break;
            }
        }
        if (ok) best = std::max(best, std::popcount(mask));
        if (mask == limit) break;
    }
    return best;
}

}  // namespace

int max_box_set_oracle(const BoxMatrix& x) {
    const int cells = x.rows * x.cols;
    if (x.rows < 1 || x.cols < 1) throw std::invalid_argument("box matrix must be non-empty");
    if (cells > 16) throw std::invalid_argument("box oracle is exhaustive; requires rows*cols <= 16");
    if (static_cast<int>(x.entries.size()) != cells) throw std::invalid_argument("box matrix entry count mismatch");
    for (int c = 0; c < x.cols; ++c)
        for (int r1 = 0; r1 < x.rows; ++r1)
            for (int r2 = r1 + 1; r2 < x.rows; ++r2)
                if (x.at(r1, c) == x.at(r2, c))
                    throw std::invalid_argument("box matrix has a repeated entry within a column");

    std::vector<std::uint32_t> conflict(static_cast<std::size_t>(cells), 0);
    for (int a = 0; a < cells; ++a)
        for (int b = 0; b < cells; ++b) {
            const int ra = a / x.cols, ca = a % x.cols;
            const int rb = b / x.cols, cb = b % x.cols;
            // a strictly above and strictly left of b, values must agree
            if (ra < rb && ca < cb && x.entries[static_cast<std::size_t>(a)] != x.entries[static_cast<std::size_t>(b)]) {
                conflict[static_cast<std::size_t>(a)] |= 1u << b;
                conflict[static_cast<std::size_t>(b)] |= 1u << a;
            }
        }
    return max_conflict_free_subset(cells, conflict);
}

int max_flat_set_oracle(const PermutationArray& p) {
    const std::size_t cells = p.size();
    if (cells > 16) throw std::invalid_argument("flat oracle is exhaustive; requires n^k <= 16");
    const int k = p.k();

    std::vector<std::vector<Coord>> pos(cells);
    for (std::size_t i = 0; i < cells; ++i) pos[i] = p.position_at(i);

    auto strictly_below = [&](std::size_t a, std::size_t b) {
        for (int i = 0; i < k; ++i)
            if (pos[a][static_cast<std::size_t>(i)] >= pos[b][static_cast<std::size_t>(i)]) return false;
        return true;
    };

    std::vector<std::uint32_t> conflict(cells, 0);
    for (std::size_t a = 0; a < cells; ++a)
        for (std::size_t b = 0; b < cells; ++b)
            if (strictly_below(a, b) && p.value_at(a) != p.value_at(b)) {
                conflict[a] |= 1u << b;
                conflict[b] |= 1u << a;
            }
    return max_conflict_free_subset(static_cast<int>(cells), conflict);
}

}  // namespace hdp

#include "hdperm/sample.hpp"

#include <cassert>
#include <stdexcept>

namespace hdp {

std::int64_t default_burn_in(int n) {
    return 10ll * n * n * n;
}

std::int64_t default_thinning(int n) {
    return static_cast<std::int64_t>(n) * n * n;
}

// ------------------------------------------------------------- ImproperCube

ImproperCube::ImproperCube(const PermutationArray& latin) {
    if (latin.k() != 2) throw std::invalid_argument("ImproperCube requires a Latin square (k = 2)");
    n_ = latin.n();
    g_.assign(static_cast<std::size_t>(n_) * n_ * n_, 0);
    std::size_t pos = 0;
    for (int x = 1; x <= n_; ++x)
        for (int y = 1; y <= n_; ++y, ++pos) g_[idx(x, y, latin.value_at(pos))] = 1;
}

ImproperCube ImproperCube::cyclic(int n) {
    return ImproperCube(cyclic_square(n));
}

PermutationArray ImproperCube::to_latin() const {
    if (!proper()) throw std::logic_error("cube is improper; no Latin square to extract");
    std::vector<Coord> f(static_cast<std::size_t>(n_) * n_);
    std::size_t pos = 0;
    for (int x = 1; x <= n_; ++x)
        for (int y = 1; y <= n_; ++y, ++pos)
            for (int z = 1; z <= n_; ++z)
                if (g_[idx(x, y, z)] == 1) {
                    f[pos] = z;
                    break;
                }
    return PermutationArray(2, n_, std::move(f));
}

void ImproperCube::check_invariants() const {
    int negatives = 0;
    std::optional<std::array<Coord, 3>> neg_found;
    for (int x = 1; x <= n_; ++x)
        for (int y = 1; y <= n_; ++y)
            for (int z = 1; z <= n_; ++z) {
                const std::int8_t v = g_[idx(x, y, z)];
                if (v < -1 || v > 1) throw std::logic_error("cube cell outside {-1,0,1}");
                if (v == -1) {
                    ++negatives;
                    neg_found = {x, y, z};
                }
            }
    if (negatives > 1) throw std::logic_error("more than one negative cell");
    if (neg_found != neg_) throw std::logic_error("negative-cell bookkeeping out of sync");

    for (int a = 1; a <= n_; ++a)
        for (int b = 1; b <= n_; ++b) {
            int sx = 0, sy = 0, sz = 0;
            for (int t = 1; t <= n_; ++t) {
                sx += g_[idx(t, a, b)];
                sy += g_[idx(a, t, b)];
                sz += g_[idx(a, b, t)];
            }
            if (sx != 1 || sy != 1 || sz != 1) throw std::logic_error("line sum != 1");
        }
}

// ------------------------------------------------------------------ jm_step

namespace {

struct LineOnes {
    int first = 0;
    int second = 0;
    int count = 0;

    void add(int t) {
        if (count == 0)
            first = t;
        else if (count == 1)
            second = t;
        ++count;
    }
};

}  // namespace

void jm_step(ImproperCube& cube, SplitRng& rng) {
    const int n = cube.n_;
    if (n == 1) return;  // the unique cube is a fixed point
    auto& g = cube.g_;
    const auto cell = [&](int x, int y, int z) -> std::int8_t& { return g[cube.idx(x, y, z)]; };

    int r, c, s;    // pivot cell: a 0-cell (proper) or the negative cell
    int rr, cc, ss; // the 1-cells paired with it along each axis
    if (cube.proper()) {
        do {
            r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            c = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        } while (cell(r, c, s) != 0);
        rr = cc = ss = 0;
        for (int t = 1; t <= n; ++t) {
            if (cell(t, c, s) == 1) rr = t;
            if (cell(r, t, s) == 1) cc = t;
            if (cell(r, c, t) == 1) ss = t;
        }
    } else {
        const auto& neg = *cube.neg_;
        r = neg[0];
        c = neg[1];
        s = neg[2];
        LineOnes lx, ly, lz;
        for (int t = 1; t <= n; ++t) {
            if (cell(t, c, s) == 1) lx.add(t);
            if (cell(r, t, s) == 1) ly.add(t);
            if (cell(r, c, t) == 1) lz.add(t);
        }
        assert(lx.count == 2 && ly.count == 2 && lz.count == 2);
        rr = rng.coin() ? lx.first : lx.second;
        cc = rng.coin() ? ly.first : ly.second;
        ss = rng.coin() ? lz.first : lz.second;
    }

    cell(r, c, s) += 1;
    cell(rr, cc, s) += 1;
    cell(rr, c, ss) += 1;
    cell(r, cc, ss) += 1;
    cell(rr, c, s) -= 1;
    cell(r, cc, s) -= 1;
    cell(r, c, ss) -= 1;
    cell(rr, cc, ss) -= 1;

    if (cell(rr, cc, ss) == -1)
        cube.neg_ = {rr, cc, ss};
    else
        cube.neg_.reset();

#ifndef NDEBUG
    cube.check_invariants();
#endif
}

// ---------------------------------------------------------------- JmSampler

JmSampler::JmSampler(int n, const SamplerConfig& cfg)
    : cube_(ImproperCube::cyclic(n)),
      rng_(cfg.seed),
      burn_in_(cfg.burn_in >= 0 ? cfg.burn_in : default_burn_in(n)),
      thinning_(cfg.thinning >= 0 ? cfg.thinning : default_thinning(n)) {
    advance_watched(burn_in_);
}

void JmSampler::advance_watched(std::int64_t count) {
    for (std::int64_t i = 0; i < count; ++i) {
        do {
            jm_step(cube_, rng_);
            ++steps_;
        } while (!cube_.proper());
    }
}

PermutationArray JmSampler::next() {
    if (primed_) advance_watched(thinning_);
    primed_ = true;
    return cube_.to_latin();
}

// ------------------------------------------------------------ constructions

PermutationArray cyclic_square(int n) {
    return cyclic_base(n, 2);
}

PermutationArray cyclic_base(int n, int k) {
    const std::size_t cells = table_cells(k, n);
    std::vector<Coord> f(cells);
    std::vector<Coord> pos(static_cast<std::size_t>(k), 1);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        long long sum = 0;
        for (Coord c : pos) sum += c - 1;
        f[idx] = static_cast<Coord>(sum % n) + 1;
        for (int i = k - 1; i >= 0; --i) {
            if (++pos[static_cast<std::size_t>(i)] <= n) break;
            pos[static_cast<std::size_t>(i)] = 1;
        }
    }
    return PermutationArray(k, n, std::move(f));
}

PermutationArray sample_latin(int n, const SamplerConfig& cfg) {
    return JmSampler(n, cfg).next();
}

PermutationArray sample_isotopy(const PermutationArray& base, SplitRng& rng) {
    PermutationArray out = base;
    for (int i = 1; i <= base.k() + 1; ++i) {
        const std::vector<Coord> pi = rng.permutation(base.n());
        out = permute_values(out, i, pi);
    }
    return out;
}

PermutationArray sample_isotopy(const PermutationArray& base, const SamplerConfig& cfg) {
    SplitRng rng(cfg.seed);
    return sample_isotopy(base, rng);
}

}  // namespace hdp

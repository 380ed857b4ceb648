#include "hdperm/construct.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace hdp {

namespace {

// residue of v mod n mapped into [1, n] (0 -> n); v may be negative
Coord to_range(long long v, int n) {
    long long r = v % n;
    if (r <= 0) r += n;
    return static_cast<Coord>(r);
}

PermutationArray from_value_permutation(int n, int k, const std::vector<Coord>& pi) {
    // f(alpha) = -pi(sum alpha_i mod n), all residues in [1, n]
    const std::size_t cells = table_cells(k, n);
    std::vector<Coord> f(cells);
    std::vector<Coord> pos(static_cast<std::size_t>(k), 1);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        long long sum = 0;
        for (Coord c : pos) sum += c;
        const Coord s = to_range(sum, n);
        f[idx] = to_range(-static_cast<long long>(pi[static_cast<std::size_t>(s - 1)]), n);
        for (int i = k - 1; i >= 0; --i) {
            if (++pos[static_cast<std::size_t>(i)] <= n) break;
            pos[static_cast<std::size_t>(i)] = 1;
        }
    }
    return PermutationArray(k, n, std::move(f));
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int balanced_modulus_step(int n, int k) {
    const int q = n / (k + 1);
    int m = 0;
    while ((m + 1) * (m + 1) <= q) ++m;
    return m;
}

PermutationArray extremal_prime(int n, int k) {
    if (k < 1) throw std::invalid_argument("dimension k must be >= 1");
    if (!is_prime(n)) throw std::invalid_argument("n = " + std::to_string(n) + " is not prime");
    if (n < k + 1) throw std::invalid_argument("need n >= k+1 for a positive modulus step");
    const int M = balanced_modulus_step(n, k);

    const std::size_t cells = table_cells(k, n);
    std::vector<Coord> f(cells);
    std::vector<Coord> pos(static_cast<std::size_t>(k), 1);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        long long sum = 0;
        for (Coord c : pos) sum += c;
        f[idx] = to_range(-static_cast<long long>(M) * sum, n);
        for (int i = k - 1; i >= 0; --i) {
            if (++pos[static_cast<std::size_t>(i)] <= n) break;
            pos[static_cast<std::size_t>(i)] = 1;
        }
    }
    return PermutationArray(k, n, std::move(f));
}

CoprimeConstruction extremal_coprime(int n, int k) {
    if (k < 1) throw std::invalid_argument("dimension k must be >= 1");
    if (n < k + 1) throw std::invalid_argument("need n >= k+1 for a positive modulus step");
    int M = balanced_modulus_step(n, k);
    while (std::gcd(M, n) != 1) ++M;
    return CoprimeConstruction{extremal_general(n, k, M), M};
}

std::vector<Coord> block_permutation(int n, int M) {
    if (n < 1) throw std::invalid_argument("order n must be >= 1");
    if (M < 1 || M > n) throw std::invalid_argument("modulus step M must lie in [1, n]");
    const int g = std::gcd(M, n);
    const int block = n / g;
    std::vector<Coord> pi;
    pi.reserve(static_cast<std::size_t>(n));
    for (int offset = 0; offset < g; ++offset)
        for (int t = 1; t <= block; ++t)
            pi.push_back(to_range(offset + static_cast<long long>(t) * M, n));

    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (Coord v : pi) {
        if (seen[static_cast<std::size_t>(v)])
            throw std::logic_error("block sequence failed to be a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
    return pi;
}

PermutationArray extremal_general(int n, int k, int M) {
    if (k < 1) throw std::invalid_argument("dimension k must be >= 1");
    return from_value_permutation(n, k, block_permutation(n, M));
}

AsymmetricConstruction extremal_asymmetric(int n, int k, int r, int s) {
    if (k < 1) throw std::invalid_argument("dimension k must be >= 1");
    if (r < s || s < 1) throw std::invalid_argument("need r >= s >= 1");
    int M = s / (2 * k);
    if (M < 1) throw std::invalid_argument("need s >= 2k so the modulus step is positive");
    // The array depends on M only through residues mod n, so an oversized
    // step (possible only when s exceeds every realizable chain length) is
    // reduced into [1, n].
    if (M > n) M = (M - 1) % n + 1;
    const bool hypothesis = r >= 9 * (k + 10) && s >= 9 * (k + 10) &&
                            static_cast<long long>(r) * s > 5LL * k * n;
    return AsymmetricConstruction{extremal_general(n, k, M), M, hypothesis};
}

}  // namespace hdp

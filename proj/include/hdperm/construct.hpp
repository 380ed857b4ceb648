#pragma once

#include "hdperm/core.hpp"

namespace hdp {

bool is_prime(int n);

// floor(sqrt(n / (k+1))), the modulus step used by the balanced constructions.
int balanced_modulus_step(int n, int k);

// f(alpha) = -M * sum(alpha_i) mod n, residues mapped into [1, n] with 0 -> n.
// Requires n prime and n >= k+1 (so the step M is at least 1).
PermutationArray extremal_prime(int n, int k);

struct CoprimeConstruction {
    PermutationArray array;
    int modulus_step;  // the chosen M, gcd(M, n) = 1
};

// Scans M upward from floor(sqrt(n/(k+1))) until gcd(M, n) = 1, then applies
// the prime-style formula. Requires n >= k+1.
CoprimeConstruction extremal_coprime(int n, int k);

// The block permutation pi of [n] built from M: with g = gcd(M, n), the value
// sequence (M, 2M, ..., (n/g)M, 1+M, ..., 1+(n/g)M, ..., g-1+M, ..., g-1+(n/g)M),
// every entry reduced mod n into [1, n]. pi[j-1] is the image of j.
std::vector<Coord> block_permutation(int n, int M);

// f(alpha) = -pi(sum(alpha_i)) mod n for the block permutation above; valid for
// every M in [1, n], and equal to the prime-style formula when gcd(M, n) = 1.
PermutationArray extremal_general(int n, int k, int M);

struct AsymmetricConstruction {
    PermutationArray array;
    int modulus_step;       // floor(s / 2k)
    bool hypothesis_holds;  // r,s >= 9(k+10) and rs > 5kn
};

// extremal_general with M = floor(s / 2k). Requires r >= s >= 2k. The length
// guarantees (no <_1-chain of length r, no <_2-chain of length s) apply when
// hypothesis_holds; the flag is recorded, not enforced.
AsymmetricConstruction extremal_asymmetric(int n, int k, int r, int s);

}  // namespace hdp

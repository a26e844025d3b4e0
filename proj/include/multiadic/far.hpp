#pragma once

#include "multiadic/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace multiadic {

struct FarHit {
    std::uint64_t m = 0;
    Integer k;
    bool operator==(const FarHit&) const = default;
};

struct FarConstantResult {
    Rational delta;
    std::uint64_t n = 2;
    std::uint64_t M = 0;
    Rational inf_value;
    FarHit argmin;
    std::vector<FarHit> sharp_hits;
    std::vector<Rational> per_m;  // min_k |delta n^m - k| for m = 0..M
};

// min over 0 <= m <= M, k in Z of |delta - k/n^m| n^m.
FarConstantResult far_constant(const Rational& delta, std::uint64_t n, std::uint64_t M);

struct SharpWitness {
    Integer j;
    std::uint64_t m = 0;
    bool operator==(const SharpWitness&) const = default;
};

// (j, m), 1 <= m <= M, with k q^m - j p^n1 = 1.
std::vector<SharpWitness> sharpness_witnesses(std::uint64_t p, std::uint64_t n1, const Integer& k, std::uint64_t q,
                                              std::uint64_t M);

struct KrantzReport {
    unsigned m = 0;
    Rational C_m;
    std::uint64_t pairs_examined = 0;   // (p, n) in the window
    Integer lattice_points;             // beta values with |1/2^m - beta/p^n| <= 1
    std::uint64_t argmin_p = 0;
    std::uint64_t argmin_n = 0;
    Integer argmin_beta;
    Rational epsilon;                   // C_m / 2
    Integer k = 1;
};

// Odd primes only: p = 2 with n = m makes the distance vanish.
KrantzReport krantz_scan(unsigned m);

// Odd primes up to `limit`.
std::vector<std::uint64_t> odd_primes_upto(std::uint64_t limit);

std::string far_csv(const FarConstantResult& r);

}  // namespace multiadic

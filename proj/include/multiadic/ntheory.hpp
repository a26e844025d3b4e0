#pragma once

#include "multiadic/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace multiadic {

struct NtLimits {
    unsigned bit_budget = 4096;     // cap on any modulus p^(m1(q-1))
    unsigned verify_extra = 12;     // stabilization checked on [m_pq+1, m_pq+verify_extra]
    std::uint64_t m2_cap = 1u << 20;
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Two distinct primes, stored with p > q.
class PrimePair {
public:
    PrimePair(std::uint64_t a, std::uint64_t b);
    std::uint64_t p() const { return p_; }
    std::uint64_t q() const { return q_; }
    bool operator==(const PrimePair&) const = default;

private:
    std::uint64_t p_;
    std::uint64_t q_;
};

// O_m(p,q): order of q^(p-1) in (Z/p^m)^*.
Integer order_of_base(const PrimePair& pair, unsigned m, const NtLimits& limits = {});

struct StabilizationProfile {
    unsigned m_pq = 0;
    unsigned n0 = 0;
    unsigned c_pq = 0;
    unsigned verified_through = 0;   // last m checked
    unsigned observed_threshold = 0; // least m from which O_m p^c = p^(m-1) held through the cap
};

StabilizationProfile stabilization_profile(const PrimePair& pair, const NtLimits& limits = {});

// { a in [1, p^(m1(q-1))] : a = 1 mod p^(c+1) }, increasing.
class AdmissibleSet {
public:
    AdmissibleSet(Integer modulus, Integer step);
    const Integer& modulus() const { return modulus_; }
    const Integer& step() const { return step_; }
    Integer size() const;
    bool contains(const Integer& a) const;
    Integer at(const Integer& i) const;  // 0-based
    // Materialize; throws ResourceError above `limit` elements.
    std::vector<Integer> enumerate(std::size_t limit = 1u << 20) const;

private:
    Integer modulus_;
    Integer step_;
};

AdmissibleSet admissible_k(const PrimePair& pair, unsigned m1, const NtLimits& limits = {});

struct PairSolution {
    unsigned m1 = 0;
    Integer k;
    std::uint64_t m2 = 0;
    Integer j;
    Integer stride;
};

// Least m2 >= max(min_m2, 1) with k q^(m2(p-1)) = 1 mod p^(m1(q-1)); j exact.
PairSolution solve_pair(const PrimePair& pair, unsigned m1, const Integer& k, std::uint64_t min_m2,
                        const NtLimits& limits = {});

// Exact re-check of every PairSolution invariant.
bool check_solution(const PrimePair& pair, const PairSolution& s, unsigned c_pq);

struct MultiPrimeProfile {
    std::uint64_t base_prime = 0;
    std::vector<std::uint64_t> others;
    std::vector<StabilizationProfile> profiles;  // one per entry of `others`
    unsigned c_max = 0;
    unsigned m_max = 0;
};

MultiPrimeProfile multi_prime_profile(std::uint64_t p1, const std::vector<std::uint64_t>& others,
                                      const NtLimits& limits = {});

}  // namespace multiadic

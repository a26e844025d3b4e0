#pragma once

#include "multiadic/adic.hpp"
#include "multiadic/ntheory.hpp"

#include <optional>
#include <vector>

namespace multiadic {

struct SelectionOptions {
    bool enforce_guards = true;        // m1 > m(p,q)/(q-1), m1 > m1', Q > 10 q P
    unsigned m1_retries = 24;
    std::uint64_t m2_search_cap = 200000;
    NtLimits limits;
};

struct SelectionResult {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    AdicInterval target_cell;  // largest q-adic interval inside the target
    AdicInterval I;            // q-adic
    AdicInterval J;            // p-adic, smallest containing I
    Rational upsilon;
    Rational zeta;
    Rational gap;
    Rational epsilon;
    PairSolution solution;
};

SelectionResult select_pair(std::uint64_t p, std::uint64_t q, const Rational& left, const Rational& right,
                            const Rational& epsilon, const SelectionOptions& opts = {});

// Throws InvariantViolation naming the failed assertion.
void check_selection(const SelectionResult& s);

struct MultiSelection {
    std::uint64_t q = 0;
    std::vector<std::uint64_t> primes;
    AdicInterval I;
    Rational zeta;
    std::vector<AdicInterval> J;      // one per prime
    std::vector<Rational> upsilon;
    std::vector<Rational> gaps;
    Rational epsilon;
    std::uint64_t tries = 0;          // depths tried
};

// I q-adic inside [left,right]; for every p_i, J_i = smallest p_i-adic cover of I
// inside [left,right) with 0 < upsilon(J_i) - zeta(I) <= epsilon |I|.
MultiSelection select_multi(std::uint64_t q, const std::vector<std::uint64_t>& primes, const Rational& left,
                            const Rational& right, const Rational& epsilon, const SelectionOptions& opts = {});

struct FamilyBlock {
    AdicInterval host;             // (prod p_i)-adic
    AdicInterval I;
    std::vector<AdicInterval> J;   // per prime
    std::vector<Rational> gaps;    // per prime
    unsigned alpha = 1;
    Rational epsilon;              // q^(-s alpha)
    std::optional<PairSolution> solution;  // single-prime blocks only
};

struct SelectionFamily {
    std::uint64_t q = 2;
    std::vector<std::uint64_t> primes;
    unsigned gap_exponent = 4;
    unsigned guard = 2;
    std::vector<FamilyBlock> blocks;
};

struct FamilyOptions {
    unsigned gap_exponent = 4;
    unsigned guard = 2;
    unsigned workers = 1;
    SelectionOptions selection;
};

SelectionFamily select_family(std::uint64_t q, const std::vector<std::uint64_t>& primes,
                              const std::vector<unsigned>& alphas, const FamilyOptions& opts = {});

// Exact recheck of every family invariant; throws InvariantViolation.
void validate_family(const SelectionFamily& fam);

// host_l = [1 - N^-l, 1 - N^-l + N^-(l+1)), l >= 1.
AdicInterval host_interval(std::uint64_t N, unsigned ell);

}  // namespace multiadic

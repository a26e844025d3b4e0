#include "multiadic/errors.hpp"
#include "multiadic/ntheory.hpp"

#include <doctest.h>

#include <random>

using namespace multiadic;

namespace {

// multiplicative order of g mod n by repeated multiplication
std::uint64_t brute_order(std::uint64_t g, std::uint64_t n) {
    g %= n;
    std::uint64_t x = g, k = 1;
    while (x != 1) {
        x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * g) % n);
        ++k;
    }
    return k;
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// least m2 >= lo with k q^(m2(p-1)) = 1 mod P, by stepping
std::uint64_t brute_m2(std::uint64_t p, std::uint64_t q, std::uint64_t P, std::uint64_t k, std::uint64_t lo) {
    std::uint64_t g = 1;
    for (std::uint64_t i = 0; i < p - 1; ++i) g = g * q % P;
    std::uint64_t x = k % P;
    for (std::uint64_t i = 0; i < lo; ++i) x = x * g % P;
    for (std::uint64_t m2 = lo;; ++m2, x = x * g % P)
        if (x == 1 && m2 >= 1) return m2;
}

}  // namespace

TEST_CASE("primality agrees with trial division") {
    for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == trial_prime(n));
    CHECK(is_prime(2305843009213693951ull));      // 2^61 - 1
    CHECK_FALSE(is_prime(3215031751ull));         // strong pseudoprime to 2,3,5,7
}

TEST_CASE("prime pair ordering and rejection") {
    PrimePair a(2, 3);
    CHECK(a.p() == 3);
    CHECK(a.q() == 2);
    CHECK_THROWS_AS(PrimePair(4, 3), DomainError);
    CHECK_THROWS_AS(PrimePair(5, 5), DomainError);
}

TEST_CASE("order of q^(p-1) matches brute force") {
    const std::pair<std::uint64_t, std::uint64_t> pairs[] = {{3, 2}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {7, 5}, {11, 2}, {11, 3}, {13, 2}};
    for (auto [p, q] : pairs) {
        PrimePair pair(p, q);
        std::uint64_t g = upow(q, static_cast<unsigned>(p - 1));
        for (unsigned m = 1; upow(p, m) < (1u << 18); ++m) {
            std::uint64_t n = upow(p, m);
            CHECK(order_of_base(pair, m) == brute_order(g % n, n));
        }
    }
    CHECK(order_of_base(PrimePair(3, 2), 2) == 3);
    CHECK(order_of_base(PrimePair(7, 2), 2) == 7);
}

TEST_CASE("stabilization profiles") {
    StabilizationProfile s = stabilization_profile(PrimePair(3, 2));
    CHECK(s.m_pq == 1);
    CHECK(s.c_pq == 0);
    // 3^10 - 1 = 59048 = 2^3 * 11^2 * 61
    StabilizationProfile t = stabilization_profile(PrimePair(11, 3));
    CHECK(t.m_pq == 2);
    CHECK(t.c_pq == 1);
    for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{5, 2}, {7, 3}, {13, 2}}) {
        StabilizationProfile u = stabilization_profile(PrimePair(p, q));
        Integer pc = ipow(p, u.c_pq);
        for (unsigned m = u.m_pq + 1; m <= u.m_pq + 12; ++m) CHECK(order_of_base(PrimePair(p, q), m) * pc == ipow(p, m - 1));
    }
}

TEST_CASE("admissible set is the progression 1 mod p^(C+1)") {
    AdmissibleSet a = admissible_k(PrimePair(11, 3), 2);  // P = 11^4, step 121
    CHECK(a.modulus() == 14641);
    CHECK(a.step() == 121);
    CHECK(a.size() == 121);
    CHECK(a.contains(1));
    CHECK(a.contains(122));
    CHECK_FALSE(a.contains(2));
    CHECK(a.at(3) == 364);
    CHECK(a.enumerate().size() == 121);
    CHECK_THROWS_AS(a.enumerate(4), ResourceError);
}

TEST_CASE("solve_pair worked examples") {
    PrimePair pair(3, 2);
    PairSolution s = solve_pair(pair, 1, 1, 0);
    CHECK(s.m2 == 1);
    CHECK(s.j == 1);  // 1/3 - 1/4 = 1/12
    PairSolution t = solve_pair(pair, 1, 1, 2);
    CHECK(t.m2 == 2);
    CHECK(t.j == 5);  // 1/3 - 5/16 = 1/48
    CHECK(check_solution(pair, t, 0));
    CHECK_THROWS_AS(solve_pair(PrimePair(11, 3), 2, 2, 0), DomainError);
}

TEST_CASE("solve_pair agrees with stepping and has the stated stride") {
    std::mt19937_64 rng(20240611);
    const std::pair<std::uint64_t, std::uint64_t> pairs[] = {{3, 2}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {11, 3}, {13, 2}};
    for (auto [p, q] : pairs) {
        PrimePair pair(p, q);
        unsigned c = stabilization_profile(pair).c_pq;
        for (unsigned m1 = 1; upow(p, m1 * static_cast<unsigned>(q - 1)) < (1u << 20); ++m1) {
            AdmissibleSet adm = admissible_k(pair, m1);
            std::uint64_t P = to_u64(adm.modulus());
            for (int rep = 0; rep < 5; ++rep) {
                Integer idx = Integer(static_cast<unsigned long>(rng() % to_u64(adm.size())));
                Integer k = adm.at(idx);
                std::uint64_t lo = rng() % 40;
                PairSolution s = solve_pair(pair, m1, k, lo);
                CHECK(s.m2 == brute_m2(p, q, P, to_u64(k), lo));
                CHECK(check_solution(pair, s, c));
                for (unsigned t = 1; t <= 3; ++t) {
                    PairSolution u = solve_pair(pair, m1, k, s.m2 + 1 + (t - 1) * to_u64(s.stride));
                    CHECK(u.m2 == s.m2 + t * to_u64(s.stride));
                }
            }
        }
    }
}

TEST_CASE("bit budget is enforced") {
    NtLimits tight;
    tight.bit_budget = 64;
    CHECK_THROWS_AS(admissible_k(PrimePair(3, 2), 80, tight), ResourceError);
}

TEST_CASE("multi-prime profile") {
    MultiPrimeProfile m = multi_prime_profile(2, {3, 5, 7});
    CHECK(m.profiles.size() == 3);
    CHECK(m.c_max == 0);
    CHECK(m.m_max == 1);
    CHECK_THROWS_AS(multi_prime_profile(5, {3}), DomainError);
}

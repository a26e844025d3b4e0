#include "multiadic/errors.hpp"
#include "multiadic/far.hpp"
#include "multiadic/ntheory.hpp"

#include <doctest.h>

using namespace multiadic;

namespace {

// min over m <= M and every k in a window around delta n^m
Rational brute_far(const Rational& delta, std::uint64_t n, std::uint64_t M) {
    Rational best = -1;
    for (std::uint64_t m = 0; m <= M; ++m) {
        Integer nm = ipow(n, m);
        Integer c = floor_of(delta * Rational(nm));
        for (Integer k = c - 3; k <= c + 3; ++k) {
            Rational v = abs(delta * Rational(nm) - Rational(k));
            if (best < 0 || v < best) best = v;
        }
    }
    return best;
}

struct Brute {
    Rational C = 1;
    std::uint64_t pairs = 0;
    Integer lattice = 0;
};

Brute brute_krantz(unsigned m) {
    Brute b;
    const long two_m = 1l << m;
    for (long p = 3; p <= 10 * two_m; p += 2) {
        bool prime = true;
        for (long d = 3; d * d <= p; d += 2)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        for (long pn = p; pn <= 10 * two_m; pn *= p) {
            if (10 * pn < two_m) continue;
            ++b.pairs;
            // every beta with |1/2^m - beta/p^n| <= 1
            for (long beta = -2 * pn; beta <= 2 * pn; ++beta) {
                Rational d = abs(Rational(1, two_m) - Rational(beta, pn));
                if (d > 1) continue;
                b.lattice += 1;
                if (beta != 0) b.C = std::min(b.C, Rational(d * two_m));
            }
        }
    }
    return b;
}

}  // namespace

TEST_CASE("far constant examples") {
    CHECK(far_constant(Rational(1, 2), 2, 10).inf_value == 0);
    CHECK(far_constant(Rational(1, 3), 3, 5).inf_value == 0);
    FarConstantResult r = far_constant(Rational(1, 3), 2, 30);
    CHECK(r.inf_value == Rational(1, 3));
    CHECK(r.sharp_hits.size() == 31);  // every m, one nearest k each
    for (const FarHit& h : r.sharp_hits) {
        Integer nm = ipow(2, h.m);
        CHECK(abs(Rational(nm) / 3 - Rational(h.k)) == Rational(1, 3));
    }
}

TEST_CASE("far constant matches a windowed brute force") {
    for (auto [d, n] : {std::pair<Rational, std::uint64_t>{Rational(2, 7), 2}, {Rational(5, 11), 3}, {Rational(3, 10), 2},
                        {Rational(13, 17), 5}, {Rational(1, 6), 3}}) {
        for (std::uint64_t M : {0u, 4u, 12u}) {
            FarConstantResult r = far_constant(d, n, M);
            CHECK(r.inf_value == brute_far(d, n, M));
            REQUIRE(r.per_m.size() == M + 1);
            for (std::size_t i = 1; i < r.per_m.size(); ++i) CHECK(r.inf_value <= r.per_m[i]);
        }
    }
    // non-increasing in M
    Rational prev = 2;
    for (std::uint64_t M = 0; M < 15; ++M) {
        Rational v = far_constant(Rational(7, 13), 2, M).inf_value;
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("sharpness witnesses") {
    auto w = sharpness_witnesses(3, 1, 1, 2, 6);
    CHECK(std::find(w.begin(), w.end(), SharpWitness{1, 2}) != w.end());
    CHECK(std::find(w.begin(), w.end(), SharpWitness{5, 4}) != w.end());
    auto v = sharpness_witnesses(3, 1, 2, 2, 6);
    CHECK(std::find(v.begin(), v.end(), SharpWitness{1, 1}) != v.end());
    for (const auto& s : w) {
        CHECK(Rational(1, 3) - Rational(s.j) / Rational(ipow(2, s.m)) == 1 / Rational(ipow(2, s.m) * 3));
        CHECK((s.j + 1) % 2 == 0);
    }
    CHECK_THROWS(sharpness_witnesses(3, 1, 3, 2, 6));
}

TEST_CASE("witness m values step by the solver stride") {
    // k = 1 mod p^(C+1); m runs over m2 (p-1) with m2 in solve_pair's progression
    PrimePair pair(5, 3);
    PairSolution s = solve_pair(pair, 1, 1, 0);
    auto w = sharpness_witnesses(5, 2, 1, 3, 40);
    REQUIRE(w.size() >= 2);
    std::uint64_t step = to_u64(s.stride) * 4;
    CHECK(w[0].m == s.m2 * 4);
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i].m - w[i - 1].m == step);
}

TEST_CASE("Krantz constants agree with a full recount") {
    for (unsigned m = 5; m <= 8; ++m) {
        KrantzReport k = krantz_scan(m);
        Brute b = brute_krantz(m);
        CHECK(k.C_m == b.C);
        CHECK(k.pairs_examined == b.pairs);
        CHECK(k.lattice_points == b.lattice);
        CHECK(k.C_m > 0);
        CHECK(k.C_m <= 1);
        CHECK(k.epsilon == k.C_m / 2);
        CHECK(abs(Rational(1, 1l << m) - Rational(k.argmin_beta) / Rational(ipow(k.argmin_p, k.argmin_n))) * (1l << m) ==
              k.C_m);
    }
}

TEST_CASE("odd primes") {
    auto ps = odd_primes_upto(30);
    CHECK(ps == std::vector<std::uint64_t>{3, 5, 7, 11, 13, 17, 19, 23, 29});
}

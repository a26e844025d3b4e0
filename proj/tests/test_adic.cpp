#include "multiadic/adic.hpp"
#include "multiadic/errors.hpp"

#include <doctest.h>

#include <random>

using namespace multiadic;

namespace {

// walk depth upward from 0 while some cell still holds [l, r)
AdicInterval brute_smallest(std::uint64_t base, const Rational& l, const Rational& r) {
    AdicInterval best = AdicInterval::unit(base);
    for (std::uint64_t d = 1; d < 200; ++d) {
        Integer s = ipow(base, d);
        Integer k = floor_of(l * Rational(s)) + 1;
        AdicInterval c(base, d, k);
        if (!c.contains(l, r)) break;
        best = c;
    }
    return best;
}

Rational random_point(std::mt19937_64& rng, unsigned long den) {
    return make_rational(static_cast<unsigned long>(rng() % den), den);
}

}  // namespace

TEST_CASE("interval endpoints and lengths") {
    AdicInterval I(3, 2, 5);  // [4/9, 5/9)
    CHECK(I.left() == Rational(4, 9));
    CHECK(I.right() == Rational(5, 9));
    CHECK(I.length() == Rational(1, 9));
    CHECK(I.parent() == AdicInterval(3, 1, 2));
    CHECK(I.child(1) == AdicInterval(3, 3, 13));
    CHECK_THROWS(AdicInterval(3, 2, 10));
    CHECK_THROWS(AdicInterval(3, 2, 0));
}

TEST_CASE("children partition the parent") {
    for (std::uint64_t base : {2u, 3u, 5u, 7u}) {
        AdicInterval I(base, 3, 2);
        auto kids = I.children();
        CHECK(kids.size() == base);
        CHECK(kids.front().left() == I.left());
        CHECK(kids.back().right() == I.right());
        Rational total = 0;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            total += kids[i].length();
            CHECK(kids[i].parent() == I);
            if (i) CHECK(kids[i - 1].right() == kids[i].left());
        }
        CHECK(total == I.length());
    }
}

TEST_CASE("distinguished points") {
    DistinguishedPoints d = distinguished_points(AdicInterval(2, 1, 1));  // [0, 1/2)
    CHECK(d.upsilon == Rational(1, 4));
    CHECK(d.zeta == Rational(1, 4));
    DistinguishedPoints e = distinguished_points(AdicInterval(5, 1, 3));  // [2/5, 3/5)
    CHECK(e.upsilon == Rational(11, 25));
    CHECK(e.zeta == Rational(14, 25));
}

TEST_CASE("containment and disjointness") {
    AdicInterval J(3, 1, 2);
    CHECK(J.contains(Rational(1, 3)));
    CHECK_FALSE(J.contains(Rational(2, 3)));
    CHECK(J.contains(AdicInterval(3, 2, 5)));
    CHECK(J.disjoint(AdicInterval(3, 1, 1)));
    CHECK_FALSE(J.disjoint(AdicInterval(2, 1, 1)));  // [0,1/2) meets [1/3,2/3)
}

TEST_CASE("smallest containing interval matches a depth walk") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 400; ++rep) {
        std::uint64_t base = std::vector<std::uint64_t>{2, 3, 5, 7, 11}[rng() % 5];
        unsigned long den = std::vector<unsigned long>{64, 81, 1000, 3125, 1u << 20}[rng() % 5];
        Rational a = random_point(rng, den), b = random_point(rng, den);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        AdicInterval s = smallest_containing(base, a, b);
        CHECK(s == brute_smallest(base, a, b));
        CHECK(s.contains(a, b));
    }
    // an interval that is itself adic
    AdicInterval I(3, 7, 100);
    CHECK(smallest_containing(3, I) == I);
    CHECK(smallest_containing(9, I).contains(I));
}

TEST_CASE("largest inside") {
    AdicInterval L = largest_inside(2, Rational(1, 3), Rational(2, 3));
    CHECK(L == AdicInterval(2, 3, 4));  // [3/8, 1/2); nothing dyadic of length 1/4 fits
    CHECK(largest_inside(3, Rational(1, 3), Rational(2, 3)) == AdicInterval(3, 1, 2));
}

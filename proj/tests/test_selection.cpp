#include "multiadic/errors.hpp"
#include "multiadic/lattice.hpp"
#include "multiadic/selection.hpp"

#include <doctest.h>

#include <random>

using namespace multiadic;

namespace {

bool is_smallest(const AdicInterval& J, const AdicInterval& I) {
    if (!J.contains(I)) return false;
    for (const AdicInterval& c : J.children())
        if (c.contains(I)) return false;
    return true;
}

void check_invariants(const SelectionResult& s, const Rational& l, const Rational& r, const Rational& eps) {
    Integer P = ipow(s.p, static_cast<unsigned long>(s.solution.m1) * (s.q - 1));
    Integer Q = ipow(s.q, s.solution.m2 * (s.p - 1));
    Rational ups = distinguished_points(s.J).upsilon;
    Rational zet = distinguished_points(s.I).zeta;
    CHECK(ups == s.upsilon);
    CHECK(zet == s.zeta);
    CHECK(ups - zet == make_rational(1, P * Q));
    CHECK(s.gap == ups - zet);
    CHECK(s.gap <= eps * s.I.length());
    CHECK(s.I.base() == s.q);
    CHECK(s.J.base() == s.p);
    CHECK(is_smallest(s.J, s.I));
    CHECK(l <= s.J.left());
    CHECK(s.J.right() <= r);
}

}  // namespace

TEST_CASE("unguarded selection on [0,1)") {
    SelectionOptions o;
    o.enforce_guards = false;
    SelectionResult s = select_pair(3, 2, 0, 1, 1, o);
    CHECK(s.I == AdicInterval(2, 1, 1));
    CHECK(s.J == AdicInterval(3, 0, 1));
    CHECK(s.gap == Rational(1, 12));
}

TEST_CASE("selection invariants on random targets") {
    std::mt19937_64 rng(99);
    const std::pair<std::uint64_t, std::uint64_t> pairs[] = {{3, 2}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {11, 3}};
    for (auto [p, q] : pairs) {
        for (int rep = 0; rep < 6; ++rep) {
            unsigned long den = 1000;
            unsigned long a = rng() % 900, w = 20 + rng() % (1000 - a - 20 + 1);
            Rational l = make_rational(a, den), r = make_rational(a + w, den);
            if (r > 1) r = 1;
            Rational eps = make_rational(1, 1ul << (rng() % 10));
            SelectionResult s = select_pair(p, q, l, r, eps);
            check_invariants(s, l, r, eps);
            CHECK_NOTHROW(check_selection(s));
        }
    }
}

TEST_CASE("selection rejects bad requests") {
    CHECK_THROWS_AS(select_pair(3, 3, 0, 1, Rational(1, 2)), DomainError);
    CHECK_THROWS_AS(select_pair(3, 2, Rational(1, 2), Rational(1, 4), Rational(1, 2)), DomainError);
    CHECK_THROWS_AS(select_pair(3, 2, 0, 1, 0), DomainError);
}

TEST_CASE("multi-prime selection") {
    MultiSelection m = select_multi(2, {3, 5}, Rational(1, 2), Rational(3, 4), Rational(1, 16));
    REQUIRE(m.J.size() == 2);
    Rational zet = distinguished_points(m.I).zeta;
    for (std::size_t i = 0; i < 2; ++i) {
        Rational gap = distinguished_points(m.J[i]).upsilon - zet;
        CHECK(gap == m.gaps[i]);
        CHECK(gap > 0);
        CHECK(gap <= m.epsilon * m.I.length());
        CHECK(is_smallest(m.J[i], m.I));
        CHECK(Rational(1, 2) <= m.J[i].left());
        CHECK(m.J[i].right() <= Rational(3, 4));
    }
}

TEST_CASE("family blocks are disjoint and gaps are small") {
    FamilyOptions o;
    SelectionFamily f = select_family(2, {3}, {1, 2, 3}, o);
    REQUIRE(f.blocks.size() == 3);
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const FamilyBlock& b = f.blocks[i];
        CHECK(b.alpha == i + 1);
        CHECK(b.epsilon == rpow(Rational(2), -4 * static_cast<long>(b.alpha)));
        CHECK(b.host.contains(b.J[0]));
        CHECK(b.gaps[0] == distinguished_points(b.J[0]).upsilon - distinguished_points(b.I).zeta);
        CHECK(b.gaps[0] > 0);
        CHECK(b.gaps[0] <= b.epsilon * b.I.length());
        for (std::size_t j = 0; j < i; ++j) CHECK(b.J[0].disjoint(f.blocks[j].J[0]));
    }
    CHECK_NOTHROW(validate_family(f));

    SelectionFamily g = select_family(3, {5, 7}, {1, 2, 3}, o);
    CHECK_NOTHROW(validate_family(g));
    CHECK(g.blocks[0].J.size() == 2);
    CHECK_FALSE(g.blocks[0].solution);
    SelectionFamily h = select_family(2, {3, 5, 7}, {1, 2}, o);
    CHECK_NOTHROW(validate_family(h));
    for (const FamilyBlock& b : h.blocks)
        for (const Rational& gap : b.gaps) CHECK((gap > 0 && gap <= b.epsilon * b.I.length()));
}

TEST_CASE("lll reduces a knapsack-style basis") {
    std::vector<IntRow> b = {{1, 0, 0, 631}, {0, 1, 0, 1000}, {0, 0, 1, 2021}};
    lll_reduce(b);
    // every reduced row stays in the lattice: last coord = 631 x + 1000 y + 2021 z
    for (const IntRow& r : b) CHECK(r[3] == 631 * r[0] + 1000 * r[1] + 2021 * r[2]);
    Integer n0 = 0;
    for (const Integer& x : b[0]) n0 += x * x;
    long best = -1;
    for (long x = -9; x <= 9; ++x)
        for (long y = -9; y <= 9; ++y)
            for (long z = -9; z <= 9; ++z) {
                if (!x && !y && !z) continue;
                long t = 631 * x + 1000 * y + 2021 * z, n = x * x + y * y + z * z + t * t;
                if (best < 0 || n < best) best = n;
            }
    CHECK(n0 <= 4 * best);  // delta = 3/4: |b1|^2 <= 2^(n-1) lambda1^2
}

TEST_CASE("worker count does not change the family") {
    FamilyOptions a, b;
    b.workers = 4;
    SelectionFamily f = select_family(3, {5}, {1, 2, 4}, a), g = select_family(3, {5}, {1, 2, 4}, b);
    REQUIRE(f.blocks.size() == g.blocks.size());
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        CHECK(f.blocks[i].I == g.blocks[i].I);
        CHECK(f.blocks[i].J == g.blocks[i].J);
    }
}

TEST_CASE("gap exponent must clear the guard") {
    FamilyOptions o;
    o.gap_exponent = 2;
    CHECK_THROWS_AS(select_family(2, {3}, {1}, o), DomainError);
}

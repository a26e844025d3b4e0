#include "multiadic/errors.hpp"
#include "multiadic/measure.hpp"

#include <doctest.h>

#include <random>

using namespace multiadic;

namespace {

Rational qq(std::uint64_t q) { return Rational(static_cast<unsigned long>(q)); }

// sum of density * overlap over every piece, no prefix sums
Rational atom_oracle(const DoublingMeasure& mu, const Rational& l, const Rational& r) {
    Rational s = 0;
    for (const Piece& p : mu.pieces()) {
        Rational lo = std::max(Rational(l), p.left), hi = std::min(Rational(r), p.right);
        if (lo < hi) s += (hi - lo) * mu.value(p.w);
    }
    return s;
}

}  // namespace

TEST_CASE("a,b validation reports the exact residual") {
    CHECK_NOTHROW(validate_ab(3, Rational(3, 4), Rational(3, 2)));
    try {
        validate_ab(3, Rational(3, 4), Rational(2));
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("(q-1)a + b - q = 1/2") != std::string::npos);
    }
    CHECK_THROWS_AS(validate_ab(2, Rational(1), Rational(1)), DomainError);
    auto [a, b] = default_ab(2);
    CHECK(a == Rational(3, 4));
    CHECK(b == Rational(5, 4));
}

TEST_CASE("q=3 alpha=1 block on [0,1) by hand") {
    Rational a(3, 4), b(3, 2);
    RegionMap m = build_block(BlockSpec{AdicInterval::unit(3), 1, a, b});
    DoublingMeasure mu = assemble_blocks(3, a, b, {BlockSpec{AdicInterval::unit(3), 1, a, b}});
    auto dens = [&](const Rational& x) { return mu.value(mu.density_at(x)); };
    CHECK(dens(Rational(1, 6)) == Rational(3, 4));
    CHECK(dens(Rational(1, 3) + Rational(1, 18)) == Rational(9, 16));
    CHECK(dens(Rational(1, 3) + Rational(3, 18)) == Rational(9, 16));
    CHECK(dens(Rational(1, 3) + Rational(5, 18)) == Rational(9, 8));
    CHECK(dens(Rational(2, 3) + Rational(1, 18)) == Rational(9, 8));
    CHECK(dens(Rational(2, 3) + Rational(3, 18)) == Rational(9, 8));
    CHECK(dens(Rational(99, 100)) == Rational(9, 4));
    CHECK(mu.density_at(Rational(99, 100)) == WeightMonomial{0, 2});
    // zeta = 8/9 belongs to the piece on its right
    CHECK(dens(Rational(8, 9)) == Rational(9, 4));
    CHECK(dens(Rational(8, 9) - Rational(1, 1000)) == Rational(9, 8));
    CHECK(mu.measure_of(0, 1) == 1);
    CHECK(m.measure(Span{0, 1}) == 1);
    CHECK_THROWS_AS(mu.density_at(1), DomainError);
    CHECK_THROWS_AS(mu.measure_of(Rational(1, 2), Rational(1, 3)), DomainError);
}

TEST_CASE("region measures match the closed forms") {
    for (std::uint64_t q : {2u, 3u, 5u}) {
        auto [a, b] = default_ab(q);
        for (unsigned alpha : {1u, 2u, 4u}) {
            AdicInterval I(q, 2, 2);
            RegionMap m = build_block(BlockSpec{I, alpha, a, b});
            const Rational L = I.length();
            const Rational Q = qq(q);
            Rational total = 0;
            for (const Piece& p : m.pieces()) total += (p.right - p.left) * m.value(p.w);
            CHECK(total == L);
            for (unsigned k = 1; k + 1 <= 2 * alpha; ++k) {
                Span E = m.region(Region::E, k), F = m.region(Region::F, k);
                Rational den = rpow(Q, static_cast<long>(k) + 1);
                CHECK(E.length() == (Q - 1) * L / den);
                CHECK(F.length() == (Q - 1) * L / den);
                Rational muE = k < alpha ? Rational((Q - a) * rpow(a, k) * L / den) : Rational((Q - b) * rpow(b, k - alpha) * rpow(a, alpha) * L / den);
                Rational muF = k < alpha ? Rational((Q - b) * rpow(b, k) * L / den) : Rational((Q - a) * rpow(a, k - alpha) * rpow(b, alpha) * L / den);
                CHECK(m.measure(E) == muE);
                CHECK(m.measure(F) == muF);
                CHECK(m.measure(m.region(Region::H, k)) == m.measure(m.region(Region::H, k + 1)) + muE);
                CHECK(m.measure(m.region(Region::G, k)) == m.measure(m.region(Region::G, k + 1)) + muF);
            }
            Span E0 = m.region(Region::E, 0);
            CHECK(E0.length() == (Q - 2) * L / Q);
            CHECK(m.measure(E0) == a * (Q - 2) * L / Q);
            Span H = m.region(Region::H, 2 * alpha), G = m.region(Region::G, 2 * alpha);
            CHECK(H.right == G.left);
            CHECK(G.left == m.zeta());
            CHECK(m.measure(H) / H.length() == rpow(a, alpha) * rpow(b, alpha));
            CHECK(m.measure(G) / G.length() == rpow(a, alpha) * rpow(b, alpha));
            // nondoubling ratio at level alpha
            CHECK(m.measure(m.region(Region::H, alpha)) / m.measure(m.region(Region::G, alpha)) == rpow(a / b, alpha));
            for (const Piece& p : m.pieces()) CHECK(p.w.x + p.w.y <= 2 * alpha);
        }
    }
}

TEST_CASE("measure_of agrees with the atom oracle and is additive") {
    std::mt19937_64 rng(5);
    for (std::uint64_t q : {2u, 3u, 5u}) {
        auto [a, b] = default_ab(q);
        std::vector<BlockSpec> specs{{AdicInterval(q, 1, 1), 2, a, b}, {AdicInterval(q, 2, ipow(q, 2) - 1), 3, a, b}};
        DoublingMeasure mu = assemble_blocks(q, a, b, specs);
        CHECK(mu.measure_of(0, 1) == 1);
        for (const BlockSpec& s : specs) CHECK(mu.measure_of(s.I) == s.I.length());
        const unsigned long den = 1ul << 40;
        for (int rep = 0; rep < 300; ++rep) {
            Rational x = make_rational(static_cast<unsigned long>(rng() % den), den);
            Rational y = make_rational(static_cast<unsigned long>(rng() % den), den);
            Rational z = make_rational(static_cast<unsigned long>(rng() % den), den);
            std::vector<Rational> v{x, y, z};
            std::sort(v.begin(), v.end());
            CHECK(mu.measure_of(v[0], v[2]) == atom_oracle(mu, v[0], v[2]));
            CHECK(mu.measure_of(v[0], v[2]) == mu.measure_of(v[0], v[1]) + mu.measure_of(v[1], v[2]));
            CHECK(mu.cdf(v[1]) == mu.measure_of(0, v[1]));
        }
    }
}

TEST_CASE("background is Lebesgue") {
    auto [a, b] = default_ab(2);
    DoublingMeasure mu = assemble_blocks(2, a, b, {BlockSpec{AdicInterval(2, 2, 4), 1, a, b}});
    CHECK(mu.density_at(Rational(1, 10)).is_unit());
    CHECK(mu.measure_of(0, Rational(3, 4)) == Rational(3, 4));
}

TEST_CASE("regions csv header") {
    auto [a, b] = default_ab(3);
    DoublingMeasure mu = assemble_blocks(3, a, b, {BlockSpec{AdicInterval::unit(3), 1, a, b}});
    std::string csv = regions_csv(mu);
    CHECK(csv.rfind("left,right,x,y,density\n", 0) == 0);
}

TEST_CASE("overlapping blocks are rejected") {
    auto [a, b] = default_ab(2);
    CHECK_THROWS(assemble_blocks(2, a, b, {BlockSpec{AdicInterval(2, 1, 1), 1, a, b}, BlockSpec{AdicInterval(2, 2, 1), 1, a, b}}));
}

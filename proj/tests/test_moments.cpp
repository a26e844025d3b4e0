#include "multiadic/errors.hpp"
#include "multiadic/moments.hpp"

#include <doctest.h>

using namespace multiadic;

namespace {

Rational brute_sup(const DoublingMeasure& mu, std::uint64_t base, std::uint64_t depth, long e) {
    Rational best = 0;
    for (std::uint64_t d = 0; d <= depth; ++d) {
        Integer n = ipow(base, d);
        for (Integer k = 1; k <= n; ++k) {
            AdicInterval J(base, d, k);
            best = std::max(best, moment_ratio_oracle(mu, J.left(), J.right(), e));
        }
    }
    return best;
}

// avg(w^e)/avg(w)^e by summing pieces directly
Rational ratio_by_hand(const DoublingMeasure& mu, const Rational& l, const Rational& r, long e) {
    Rational m1 = 0, me = 0;
    for (const Piece& p : mu.pieces()) {
        Rational lo = std::max(Rational(l), p.left), hi = std::min(Rational(r), p.right);
        if (!(lo < hi)) continue;
        Rational v = mu.value(p.w);
        m1 += (hi - lo) * v;
        me += (hi - lo) * rpow(v, e);
    }
    Rational len = r - l;
    return (me / len) / rpow(m1 / len, e);
}

}  // namespace

TEST_CASE("reverse Hoelder constants for q=3, a=3/4, b=3/2, r=2") {
    Rational a(3, 4), b(3, 2);
    DoublingMeasure mu = assemble_blocks(3, a, b, {BlockSpec{AdicInterval::unit(3), 2, a, b}});
    RHReport rep = rh_scan(mu, 2, 3, 7);
    CHECK(rep.exact_mode);
    REQUIRE(rep.B1.exact);
    CHECK(*rep.B1.exact == Rational(3, 4));
    CHECK(*rep.B2.exact == Rational(3, 16));
    REQUIRE(rep.sup_pow.exact);
    CHECK(*rep.sup_pow.exact == brute_sup(mu, 3, 7, 2));
    CHECK(rep.verdict == Verdict::pass);
    Rational mx = 0;
    for (const Number& c : rep.C) {
        REQUIRE(c.exact);
        mx = std::max(mx, *c.exact);
    }
    CHECK(*rep.bound_pow.exact == mx + 1);
    CHECK(*rep.sup_pow.exact < *rep.bound_pow.exact);

    MomentOptions enc;
    enc.force_enclosure = true;
    RHReport rep2 = rh_scan(mu, 2, 3, 7, enc);
    CHECK_FALSE(rep2.exact_mode);
    CHECK(rep2.sup_pow.enc.contains(*rep.sup_pow.exact));
    CHECK(rep2.bound_pow.enc.contains(*rep.bound_pow.exact));
    CHECK(rep2.verdict == Verdict::pass);
}

TEST_CASE("moment oracle agrees with direct summation") {
    Rational a(3, 4), b(3, 2);
    DoublingMeasure mu = assemble_blocks(3, a, b, {BlockSpec{AdicInterval(3, 1, 2), 2, a, b}});
    for (long e : {2L, 3L, -1L}) {
        CHECK(moment_ratio_oracle(mu, Rational(1, 3), Rational(2, 3), e) == ratio_by_hand(mu, Rational(1, 3), Rational(2, 3), e));
        CHECK(moment_ratio_oracle(mu, Rational(2, 5), Rational(3, 5), e) == ratio_by_hand(mu, Rational(2, 5), Rational(3, 5), e));
    }
}

TEST_CASE("Muckenhoupt scan at r=2") {
    Rational a(3, 4), b(3, 2);
    DoublingMeasure mu = assemble_blocks(3, a, b, {BlockSpec{AdicInterval::unit(3), 2, a, b}});
    ARReport rep = ar_scan(mu, 2, 3, 7);
    CHECK(rep.s == -1);
    CHECK(rep.exact_mode);
    REQUIRE(rep.sup_pow.exact);
    CHECK(*rep.sup_pow.exact == brute_sup(mu, 3, 7, -1));
    CHECK(rep.verdict == Verdict::pass);
    ARReport p5 = ar_scan(mu, 2, 5, 5);
    CHECK(p5.verdict == Verdict::pass);
}

TEST_CASE("non-integer exponents use enclosures") {
    Rational a(3, 4), b(3, 2);
    DoublingMeasure mu = assemble_blocks(3, a, b, {BlockSpec{AdicInterval::unit(3), 1, a, b}});
    RHReport rep = rh_scan(mu, Rational(5, 2), 3, 5);
    CHECK_FALSE(rep.exact_mode);
    CHECK_FALSE(rep.sup_pow.exact);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.sup_pow.enc.certainly_lt(rep.bound_pow.enc));
}

TEST_CASE("exponent outside the admissible range") {
    Rational a(3, 4), b(3, 2);
    DoublingMeasure mu = assemble_blocks(3, a, b, {BlockSpec{AdicInterval::unit(3), 1, a, b}});
    // ln 3 / ln(3/2) ~ 2.7095
    try {
        rh_scan(mu, 3, 3, 3);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        std::string m = e.what();
        CHECK(m.find("2.709") != std::string::npos);
    }
    CHECK_THROWS_AS(rh_scan(mu, 1, 3, 3), DomainError);
    CHECK_THROWS_AS(ar_scan(mu, 1, 3, 3), DomainError);
}

TEST_CASE("default exponents") {
    CHECK(default_rh_exponent(2, Rational(5, 4)) == 2);
    CHECK(default_ar_exponent(3, Rational(3, 4)) == 2);
}

#include "multiadic/enclosure.hpp"
#include "multiadic/errors.hpp"
#include "multiadic/rational.hpp"

#include <doctest.h>

using namespace multiadic;

TEST_CASE("rational canonical form and text") {
    CHECK(to_string(make_rational(6, -4)) == "-3/2");
    CHECK(to_string(Rational(3)) == "3/1");
    CHECK(parse_rational("10/4") == Rational(5, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(make_rational(1, 0), DomainError);
    CHECK(parse_integer("123456789012345678901234567890") * 10 == parse_integer("1234567890123456789012345678900"));
}

TEST_CASE("powers, floors, modular helpers") {
    CHECK(ipow(3ul, 5ul) == 243);
    CHECK(rpow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(rpow(Rational(5), 0) == 1);
    CHECK(floor_of(Rational(-7, 2)) == -4);
    CHECK(ceil_of(Rational(-7, 2)) == -3);
    CHECK(floor_of(Rational(6, 3)) == 2);
    CHECK(bit_length(Integer(255)) == 8);
    CHECK(bit_length(Integer(256)) == 9);
    for (long a = 1; a < 50; ++a) {
        if (a % 7 == 0) continue;
        Integer inv = inverse_mod(a, 49);
        CHECK((inv * a) % 49 == 1);
    }
    CHECK(powm(3, 100, 101) == 1);  // Fermat
}

TEST_CASE("enclosures contain their exact values") {
    Enclosure third(Rational(1, 3), 64);
    CHECK(third.contains(Rational(1, 3)));
    CHECK(third.lo_rational() < third.hi_rational());
    Enclosure half(Rational(1, 2), 64);
    CHECK(half.is_point());

    Enclosure s = third + third + third;
    CHECK(s.contains(Rational(1)));
    Enclosure p = third * Enclosure(Rational(3), 64);
    CHECK(p.contains(Rational(1)));

    Enclosure l2 = Enclosure(Rational(2), 128).log();
    Rational below = parse_rational("693147180559945309417/1000000000000000000000");  // ln 2 - 2.3e-22
    CHECK_FALSE(l2.contains(below));
    CHECK(l2.certainly_gt(Enclosure(below, 128)));
    CHECK(l2.certainly_lt(Enclosure(Rational(7, 10), 128)));
    CHECK(l2.certainly_gt(Enclosure(Rational(69, 100), 128)));

    Enclosure e = l2.exp();
    CHECK(e.contains(Rational(2)));
    CHECK(Enclosure(Rational(4), 128).pow(Rational(1, 2)).contains(Rational(2)));

    Enclosure straddle = Enclosure::hull(Enclosure(Rational(-1), 64), Enclosure(Rational(1), 64));
    CHECK_THROWS_AS(Enclosure(Rational(1), 64) / straddle, PrecisionInsufficient);
}

TEST_CASE("enclosure text round trip keeps the enclosure") {
    for (unsigned bits : {53u, 128u, 256u}) {
        Enclosure x = Enclosure(Rational(10), bits).log() / Enclosure(Rational(3), bits);
        Enclosure y = Enclosure::from_strings(x.lo_string(), x.hi_string(), bits);
        CHECK(y.lo_rational() <= x.lo_rational());
        CHECK(y.hi_rational() >= x.hi_rational());
        CHECK(y.lo_string() == x.lo_string());
        CHECK(y.hi_string() == x.hi_string());
    }
}

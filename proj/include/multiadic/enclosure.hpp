#pragma once

#include "multiadic/rational.hpp"

#include <mpfr.h>

#include <string>

namespace multiadic {

constexpr unsigned kDefaultPrecisionBits = 256;

// Closed interval [lo, hi] of MPFR floats; every operation rounds outward.
class Enclosure {
public:
    explicit Enclosure(unsigned bits = kDefaultPrecisionBits);
    Enclosure(const Rational& r, unsigned bits);
    Enclosure(const Enclosure& o);
    Enclosure(Enclosure&& o) noexcept;
    Enclosure& operator=(Enclosure o) noexcept;
    ~Enclosure();

    // Decimal strings that read back exactly at `bits` precision.
    static Enclosure from_strings(const std::string& lo, const std::string& hi, unsigned bits);

    unsigned bits() const { return bits_; }
    std::string lo_string() const;
    std::string hi_string() const;
    Rational lo_rational() const;
    Rational hi_rational() const;

    bool contains(const Rational& r) const;
    bool is_point() const;
    // Certain comparisons; both false means undecided.
    bool certainly_le(const Enclosure& o) const;
    bool certainly_lt(const Enclosure& o) const;
    bool certainly_gt(const Enclosure& o) const { return o.certainly_lt(*this); }

    Enclosure operator+(const Enclosure& o) const;
    Enclosure operator-(const Enclosure& o) const;
    Enclosure operator*(const Enclosure& o) const;
    Enclosure operator/(const Enclosure& o) const;
    Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }

    Enclosure exp() const;
    Enclosure log() const;       // requires lo > 0
    Enclosure pow(const Enclosure& y) const;  // requires lo > 0
    Enclosure pow(const Rational& y) const;

    // Hull of two enclosures.
    static Enclosure hull(const Enclosure& x, const Enclosure& y);
    // [max(lo), max(hi)]: encloses max(x, y).
    static Enclosure max_of(const Enclosure& x, const Enclosure& y);

    bool operator==(const Enclosure& o) const;

    const __mpfr_struct* lo_ptr() const { return lo_; }
    const __mpfr_struct* hi_ptr() const { return hi_; }

private:
    unsigned bits_;
    mpfr_t lo_;
    mpfr_t hi_;
};

}  // namespace multiadic

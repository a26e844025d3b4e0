#pragma once

#include "multiadic/enclosure.hpp"
#include "multiadic/verifier.hpp"

#include <array>
#include <optional>
#include <string>

namespace multiadic {

// Exact rational, or a certified enclosure when the value is irrational.
struct Number {
    std::optional<Rational> exact;
    Enclosure enc;

    static Number of(const Rational& r, unsigned bits) { return {r, Enclosure(r, bits)}; }
    static Number of(Enclosure e) { return {std::nullopt, std::move(e)}; }
    bool is_exact() const { return exact.has_value(); }
};

enum class Verdict { pass, fail, undecided };
const char* verdict_name(Verdict v);

struct MomentOptions : ScanOptions {
    unsigned bits = kDefaultPrecisionBits;
    bool force_enclosure = false;  // integer exponents too
};

struct RHReport {
    Rational r;
    std::uint64_t base = 2;
    std::uint64_t depth = 0;
    unsigned bits = kDefaultPrecisionBits;
    bool exact_mode = false;
    Number B1, B2;
    std::array<Number, 5> C;
    Number bound_pow;   // max C_i + 1 = bound^r
    Number bound;
    Number sup_pow;     // sup of avg(w^r) / avg(w)^r
    Number sup_measured;  // its r-th root
    std::optional<AdicInterval> witness;
    Verdict verdict = Verdict::pass;
    std::uint64_t evaluated = 0;
};

struct ARReport {
    Rational r;
    Rational s;  // -1/(r-1)
    std::uint64_t base = 2;
    std::uint64_t depth = 0;
    unsigned bits = kDefaultPrecisionBits;
    bool exact_mode = false;
    Number B3, B4;
    std::array<Number, 5> C;
    Number bound_pow;     // max C_i + 1, compared with avg(w^s) / avg(w)^s
    Number bound;         // bound_pow^(r-1)
    Number sup_pow;       // sup of avg(w^s) / avg(w)^s
    Number sup_measured;  // sup of avg(w) avg(w^s)^(r-1) = sup_pow^(r-1)
    std::optional<AdicInterval> witness;
    Verdict verdict = Verdict::pass;
    std::uint64_t evaluated = 0;
};

// r must satisfy 1 < r < ln q / ln b.
RHReport rh_scan(const DoublingMeasure& mu, const Rational& r, std::uint64_t base, std::uint64_t depth,
                 const MomentOptions& opts = {});
// r must satisfy r > 1 - ln a / ln q.
ARReport ar_scan(const DoublingMeasure& mu, const Rational& r, std::uint64_t base, std::uint64_t depth,
                 const MomentOptions& opts = {});

// Midpoint of (1, ln q/ln b) rounded to a quarter, nudged inside the range.
Rational default_rh_exponent(std::uint64_t q, const Rational& b);
// 2 when admissible, else the least admissible integer.
Rational default_ar_exponent(std::uint64_t q, const Rational& a);

// Brute force over pieces: avg(w^e)/avg(w)^e on [l, r), e integer.
Rational moment_ratio_oracle(const DoublingMeasure& mu, const Rational& l, const Rational& r, long e);

}  // namespace multiadic

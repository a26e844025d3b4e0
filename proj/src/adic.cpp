#include "multiadic/adic.hpp"

#include "multiadic/errors.hpp"

#include <cmath>
#include <string>

namespace multiadic {

AdicInterval::AdicInterval(std::uint64_t base, std::uint64_t depth, Integer index)
    : base_(base), depth_(depth), index_(std::move(index)) {
    if (base_ < 2) throw DomainError("adic base must be >= 2");
    if (index_ < 1 || index_ > scale())
        throw DomainError("adic index " + index_.get_str() + " out of range at depth " + std::to_string(depth_));
}

Rational AdicInterval::left() const { return make_rational(index_ - 1, scale()); }
Rational AdicInterval::right() const { return make_rational(index_, scale()); }
Rational AdicInterval::length() const { return make_rational(1, scale()); }

std::vector<AdicInterval> AdicInterval::children() const {
    std::vector<AdicInterval> out;
    out.reserve(base_);
    for (std::uint64_t i = 1; i <= base_; ++i) out.push_back(child(i));
    return out;
}

AdicInterval AdicInterval::child(std::uint64_t i) const {
    if (i < 1 || i > base_) throw DomainError("child index out of range");
    Integer k = (index_ - 1) * static_cast<unsigned long>(base_) + static_cast<unsigned long>(i);
    return AdicInterval(base_, depth_ + 1, std::move(k));
}

AdicInterval AdicInterval::parent() const {
    if (depth_ == 0) throw DomainError("[0,1) has no parent");
    Integer k = (index_ - 1) / static_cast<unsigned long>(base_) + 1;
    return AdicInterval(base_, depth_ - 1, std::move(k));
}

bool AdicInterval::contains(const Rational& x) const {
    // (k-1) <= x base^m < k
    Rational s = x * Rational(scale());
    return s >= Rational(index_ - 1) && s < Rational(index_);
}

bool AdicInterval::contains(const Rational& l, const Rational& r) const {
    return left() <= l && r <= right();
}

bool AdicInterval::disjoint(const AdicInterval& o) const {
    return right() <= o.left() || o.right() <= left();
}

DistinguishedPoints distinguished_points(const AdicInterval& I) {
    Rational step = make_rational(1, I.scale() * static_cast<unsigned long>(I.base()));
    Rational l = I.left();
    return {l + step, l + step * static_cast<unsigned long>(I.base() - 1)};
}

namespace {

bool fits_at(std::uint64_t base, std::uint64_t d, const Rational& l, const Rational& r, Integer& k0) {
    Integer s = ipow(base, d);
    k0 = floor_of(l * Rational(s));
    return r * Rational(s) <= Rational(k0 + 1);
}

}  // namespace

AdicInterval smallest_containing(std::uint64_t base, const Rational& left, const Rational& right) {
    if (base < 2) throw DomainError("adic base must be >= 2");
    if (left < 0 || right > 1 || !(left < right))
        throw DomainError("smallest_containing needs 0 <= left < right <= 1, got [" + to_string(left) + ", " +
                          to_string(right) + ")");
    // No cell at depth d fits once base^-d < right - left.
    Rational len = right - left;
    std::uint64_t hi = 0;
    {
        // start from a lower estimate of log_base(1/len), then walk up exactly
        double bits = static_cast<double>(bit_length(len.get_den())) - static_cast<double>(bit_length(len.get_num())) - 2.0;
        double est = bits / std::log2(static_cast<double>(base)) - 1.0;
        if (est > 0) hi = static_cast<std::uint64_t>(est);
        while (Rational(ipow(base, hi)) * len <= 1) ++hi;
    }
    // containment is monotone in depth; depth 0 always fits
    std::uint64_t lo = 0;
    Integer k0;
    while (lo + 1 < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (fits_at(base, mid, left, right, k0))
            lo = mid;
        else
            hi = mid;
    }
    fits_at(base, lo, left, right, k0);
    return AdicInterval(base, lo, k0 + 1);
}

AdicInterval largest_inside(std::uint64_t base, const Rational& left, const Rational& right) {
    if (base < 2) throw DomainError("adic base must be >= 2");
    if (left < 0 || right > 1 || !(left < right))
        throw DomainError("largest_inside needs 0 <= left < right <= 1");
    for (std::uint64_t d = 0;; ++d) {
        Integer s = ipow(base, d);
        Integer k0 = ceil_of(left * Rational(s));
        if (Rational(k0 + 1) <= right * Rational(s)) return AdicInterval(base, d, k0 + 1);
    }
}

}  // namespace multiadic

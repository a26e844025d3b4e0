#pragma once

#include "multiadic/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace multiadic {

// [(k-1)/base^m, k/base^m), k >= 1.
class AdicInterval {
public:
    AdicInterval() = default;
    AdicInterval(std::uint64_t base, std::uint64_t depth, Integer index);

    static AdicInterval unit(std::uint64_t base) { return AdicInterval(base, 0, 1); }

    std::uint64_t base() const { return base_; }
    std::uint64_t depth() const { return depth_; }
    const Integer& index() const { return index_; }

    Integer scale() const { return ipow(base_, depth_); }  // base^depth
    Rational left() const;
    Rational right() const;
    Rational length() const;

    std::vector<AdicInterval> children() const;
    AdicInterval child(std::uint64_t i) const;  // 1-based
    AdicInterval parent() const;

    bool contains(const Rational& x) const;                        // half-open
    bool contains(const Rational& l, const Rational& r) const;     // [l,r) inside
    bool contains(const AdicInterval& o) const { return contains(o.left(), o.right()); }
    bool disjoint(const AdicInterval& o) const;

    bool operator==(const AdicInterval& o) const = default;

private:
    std::uint64_t base_ = 2;
    std::uint64_t depth_ = 0;
    Integer index_ = 1;
};

struct DistinguishedPoints {
    Rational upsilon;  // right end of the first child
    Rational zeta;     // left end of the last child
};

DistinguishedPoints distinguished_points(const AdicInterval& I);

// Deepest base-adic interval containing [left, right).
AdicInterval smallest_containing(std::uint64_t base, const Rational& left, const Rational& right);
inline AdicInterval smallest_containing(std::uint64_t base, const AdicInterval& I) {
    return smallest_containing(base, I.left(), I.right());
}

// Leftmost base-adic interval of least depth inside [left, right].
AdicInterval largest_inside(std::uint64_t base, const Rational& left, const Rational& right);

}  // namespace multiadic

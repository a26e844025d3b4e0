#pragma once

#include "multiadic/adic.hpp"
#include "multiadic/selection.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace multiadic {

// Density a^x b^y.
struct WeightMonomial {
    unsigned x = 0;
    unsigned y = 0;
    bool operator==(const WeightMonomial&) const = default;
    bool is_unit() const { return x == 0 && y == 0; }
};

struct BlockSpec {
    AdicInterval I;  // q-adic, q = I.base()
    unsigned alpha = 1;
    Rational a;
    Rational b;
};

// 0 < a < 1 < b and (q-1)a + b = q; DomainError otherwise (residual printed).
void validate_ab(std::uint64_t q, const Rational& a, const Rational& b);
std::pair<Rational, Rational> default_ab(std::uint64_t q);

struct Piece {
    Rational left;
    Rational right;
    WeightMonomial w;
};

struct Span {
    Rational left;
    Rational right;
    Rational length() const { return right - left; }
    bool empty() const { return left == right; }
};

enum class Region { E, F, H, G };

class RegionMap {
public:
    RegionMap(BlockSpec spec, std::vector<Piece> pieces);

    const BlockSpec& spec() const { return spec_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    std::uint64_t q() const { return spec_.I.base(); }
    Rational zeta() const;

    // E,F: k in [0, 2 alpha - 1]; H,G: k in [1, 2 alpha].
    Span region(Region r, unsigned k) const;
    Rational measure(const Span& s) const;
    Rational value(const WeightMonomial& w) const;

private:
    BlockSpec spec_;
    std::vector<Piece> pieces_;
};

RegionMap build_block(const BlockSpec& spec);

class DoublingMeasure {
public:
    // Blocks must lie in [0,1) and be pairwise disjoint.
    DoublingMeasure(std::uint64_t q, Rational a, Rational b, std::vector<RegionMap> blocks,
                    std::optional<SelectionFamily> family = std::nullopt);

    std::uint64_t q() const { return q_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const std::vector<RegionMap>& blocks() const { return blocks_; }
    const std::optional<SelectionFamily>& family() const { return family_; }

    // Merged pieces covering [0,1), background included.
    const std::vector<Piece>& pieces() const { return pieces_; }
    unsigned max_exponent() const { return max_exp_; }

    WeightMonomial density_at(const Rational& x) const;
    Rational value(const WeightMonomial& w) const;
    Rational cdf(const Rational& x) const;
    Rational measure_of(const Rational& left, const Rational& right) const;
    Rational measure_of(const AdicInterval& I) const { return measure_of(I.left(), I.right()); }

    // Some piece boundary lies strictly inside (left, right).
    bool has_breakpoint_inside(const Rational& left, const Rational& right) const;
    // Index of the piece containing x, x in [0,1).
    std::size_t piece_index(const Rational& x) const;
    const std::vector<Rational>& breakpoints() const { return breaks_; }
    // Breakpoints strictly inside [L/S, (L+1)/S), as an index range within [from, to).
    std::pair<std::size_t, std::size_t> breakpoints_inside(const Integer& L, const Integer& S, std::size_t from,
                                                           std::size_t to) const;

private:
    std::uint64_t q_;
    Rational a_, b_;
    std::vector<RegionMap> blocks_;
    std::optional<SelectionFamily> family_;
    std::vector<Piece> pieces_;
    std::vector<Rational> lefts_;
    std::vector<Rational> breaks_;  // interior piece boundaries
    std::vector<Integer> break_num_, break_den_;
    std::vector<Rational> cum_;
    std::vector<Rational> apow_, bpow_;
    unsigned max_exp_ = 0;
};

DoublingMeasure assemble_blocks(std::uint64_t q, const Rational& a, const Rational& b,
                                const std::vector<BlockSpec>& specs, unsigned workers = 1);
DoublingMeasure assemble_global(const SelectionFamily& family, const Rational& a, const Rational& b,
                                unsigned workers = 1);

// left,right,x,y,density rows over the merged pieces.
std::string regions_csv(const DoublingMeasure& mu);

}  // namespace multiadic

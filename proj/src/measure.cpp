#include "multiadic/measure.hpp"

#include "multiadic/errors.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <thread>

namespace multiadic {

void validate_ab(std::uint64_t q, const Rational& a, const Rational& b) {
    std::string msg;
    if (!(a > 0 && a < 1)) msg += "need 0 < a < 1 (a = " + to_string(a) + "); ";
    if (!(b > 1)) msg += "need b > 1 (b = " + to_string(b) + "); ";
    Rational residual = Rational(static_cast<unsigned long>(q - 1)) * a + b - Rational(static_cast<unsigned long>(q));
    if (residual != 0) msg += "(q-1)a + b - q = " + to_string(residual) + " (must be 0); ";
    if (!msg.empty()) throw DomainError(msg.substr(0, msg.size() - 2));
}

std::pair<Rational, Rational> default_ab(std::uint64_t q) {
    Rational a = make_rational(2 * q - 1, 2 * q);
    Rational b = Rational(static_cast<unsigned long>(q)) - Rational(static_cast<unsigned long>(q - 1)) * a;
    return {a, b};
}

RegionMap::RegionMap(BlockSpec spec, std::vector<Piece> pieces) : spec_(std::move(spec)), pieces_(std::move(pieces)) {}

Rational RegionMap::zeta() const { return distinguished_points(spec_.I).zeta; }

Rational RegionMap::value(const WeightMonomial& w) const {
    return rpow(spec_.a, w.x) * rpow(spec_.b, w.y);
}

Span RegionMap::region(Region r, unsigned k) const {
    const unsigned A2 = 2 * spec_.alpha;
    const Rational L = spec_.I.length();
    const Rational Z = zeta();
    const std::uint64_t q = this->q();
    auto len = [&](unsigned j) -> Rational { return L * rpow(Rational(static_cast<unsigned long>(q)), -static_cast<long>(j)); };
    switch (r) {
    case Region::H:
        if (k < 1 || k > A2) throw DomainError("H^(k) needs 1 <= k <= 2 alpha");
        return {Z - len(k), Z};
    case Region::G:
        if (k < 1 || k > A2) throw DomainError("G^(k) needs 1 <= k <= 2 alpha");
        return {Z, Z + len(k)};
    case Region::E:
        if (k >= A2) throw DomainError("E^(k) needs k <= 2 alpha - 1");
        if (k == 0) return {spec_.I.left(), Z - len(1)};
        return {Z - len(k), Z - len(k + 1)};
    case Region::F:
        if (k >= A2) throw DomainError("F^(k) needs k <= 2 alpha - 1");
        if (k == 0) return {spec_.I.right(), spec_.I.right()};
        return {Z + len(k + 1), Z + len(k)};
    }
    throw DomainError("unknown region");
}

Rational RegionMap::measure(const Span& s) const {
    Rational total = 0;
    for (const Piece& p : pieces_) {
        Rational lo = std::max(p.left, s.left);
        Rational hi = std::min(p.right, s.right);
        if (lo < hi) total += value(p.w) * (hi - lo);
    }
    return total;
}

RegionMap build_block(const BlockSpec& spec) {
    const std::uint64_t q = spec.I.base();
    if (!is_prime(q)) throw DomainError("block base " + std::to_string(q) + " is not prime");
    if (spec.alpha < 1) throw DomainError("alpha must be >= 1");
    validate_ab(q, spec.a, spec.b);
    const unsigned A = spec.alpha;
    const Rational l = spec.I.left();
    const Rational L = spec.I.length();
    const Rational qr(static_cast<unsigned long>(q));

    std::vector<Piece> left_part, right_part;
    // Step 1: children 1..q-2 keep factor a for good (E^(0)).
    Rational u = L / qr;
    for (std::uint64_t i = 0; i + 2 < q; ++i)
        left_part.push_back({l + u * static_cast<unsigned long>(i), l + u * static_cast<unsigned long>(i + 1), {1, 0}});

    Rational hl = l + u * static_cast<unsigned long>(q - 2);  // H^(1) left end
    Rational gl = hl + u;                                    // G^(1) left end = Zeta
    WeightMonomial wh{1, 0}, wg{0, 1};
    Rational cur = u;  // current chain interval length
    std::vector<Piece> f_pieces;  // built right to left
    for (unsigned s = 2; s <= 2 * A; ++s) {
        Rational c = cur / qr;
        bool early = s <= A;
        // H chain: children of [hl, hl+cur); child q continues.
        for (std::uint64_t i = 1; i < q; ++i) {
            WeightMonomial w = wh;
            if (early && i == 1) ++w.y; else ++w.x;
            left_part.push_back({hl + c * static_cast<unsigned long>(i - 1), hl + c * static_cast<unsigned long>(i), w});
        }
        hl += c * static_cast<unsigned long>(q - 1);
        if (early) ++wh.x; else ++wh.y;
        // G chain: children of [gl, gl+cur); child 1 continues.
        for (std::uint64_t i = q; i >= 2; --i) {
            WeightMonomial w = wg;
            if (!early && i == q) ++w.y; else ++w.x;
            f_pieces.push_back({gl + c * static_cast<unsigned long>(i - 1), gl + c * static_cast<unsigned long>(i), w});
        }
        if (early) ++wg.y; else ++wg.x;
        cur = c;
    }
    left_part.push_back({hl, hl + cur, wh});
    left_part.push_back({gl, gl + cur, wg});
    for (auto it = f_pieces.rbegin(); it != f_pieces.rend(); ++it) left_part.push_back(*it);

    RegionMap map(spec, std::move(left_part));
    // exact self-checks
    const auto& ps = map.pieces();
    Rational total = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i > 0 && ps[i].left != ps[i - 1].right) throw InvariantViolation("block pieces do not tile I");
        total += map.value(ps[i].w) * (ps[i].right - ps[i].left);
    }
    if (ps.front().left != l || ps.back().right != spec.I.right()) throw InvariantViolation("block pieces do not cover I");
    if (total != L) throw InvariantViolation("block mass " + to_string(total) + " != |I| = " + to_string(L));
    if (!(wh == WeightMonomial{A, A}) || !(wg == WeightMonomial{A, A}))
        throw InvariantViolation("H^(2 alpha), G^(2 alpha) densities differ from a^alpha b^alpha");
    return map;
}

DoublingMeasure::DoublingMeasure(std::uint64_t q, Rational a, Rational b, std::vector<RegionMap> blocks,
                                 std::optional<SelectionFamily> family)
    : q_(q), a_(std::move(a)), b_(std::move(b)), blocks_(std::move(blocks)), family_(std::move(family)) {
    validate_ab(q_, a_, b_);
    std::vector<const RegionMap*> order;
    for (const auto& m : blocks_) {
        if (m.q() != q_) throw DomainError("block base differs from q");
        if (m.spec().a != a_ || m.spec().b != b_) throw DomainError("block (a,b) differs from the measure's");
        order.push_back(&m);
    }
    std::sort(order.begin(), order.end(),
              [](const RegionMap* x, const RegionMap* y) { return x->spec().I.left() < y->spec().I.left(); });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i]->spec().I.left() < order[i - 1]->spec().I.right())
            throw InvariantViolation("blocks overlap");

    auto push = [&](const Piece& p) {
        if (!(p.left < p.right)) return;
        if (!pieces_.empty() && pieces_.back().w == p.w && pieces_.back().right == p.left)
            pieces_.back().right = p.right;
        else
            pieces_.push_back(p);
    };
    Rational pos = 0;
    for (const RegionMap* m : order) {
        push({pos, m->spec().I.left(), {0, 0}});
        for (const Piece& p : m->pieces()) {
            push(p);
            max_exp_ = std::max({max_exp_, p.w.x, p.w.y});
        }
        pos = m->spec().I.right();
    }
    push({pos, Rational(1), {0, 0}});

    for (unsigned e = 0; e <= max_exp_; ++e) {
        apow_.push_back(rpow(a_, e));
        bpow_.push_back(rpow(b_, e));
    }
    cum_.reserve(pieces_.size() + 1);
    cum_.push_back(0);
    for (const Piece& p : pieces_) {
        lefts_.push_back(p.left);
        if (p.left != 0) {
            breaks_.push_back(p.left);
            break_num_.push_back(p.left.get_num());
            break_den_.push_back(p.left.get_den());
        }
        cum_.push_back(cum_.back() + value(p.w) * (p.right - p.left));
    }
    if (cum_.back() != 1) throw InvariantViolation("total mass " + to_string(cum_.back()) + " != 1");
}

Rational DoublingMeasure::value(const WeightMonomial& w) const {
    if (w.x > max_exp_ || w.y > max_exp_) return rpow(a_, w.x) * rpow(b_, w.y);
    return apow_[w.x] * bpow_[w.y];
}

std::size_t DoublingMeasure::piece_index(const Rational& x) const {
    if (x < 0 || x >= 1) throw DomainError("point " + to_string(x) + " outside [0,1)");
    auto it = std::upper_bound(lefts_.begin(), lefts_.end(), x);
    return static_cast<std::size_t>(it - lefts_.begin()) - 1;
}

WeightMonomial DoublingMeasure::density_at(const Rational& x) const { return pieces_[piece_index(x)].w; }

Rational DoublingMeasure::cdf(const Rational& x) const {
    if (x < 0 || x > 1) throw DomainError("point " + to_string(x) + " outside [0,1]");
    if (x == 1) return cum_.back();
    std::size_t i = piece_index(x);
    return cum_[i] + value(pieces_[i].w) * (x - pieces_[i].left);
}

Rational DoublingMeasure::measure_of(const Rational& left, const Rational& right) const {
    if (left > right) throw DomainError("inverted interval [" + to_string(left) + ", " + to_string(right) + ")");
    return cdf(right) - cdf(left);
}

bool DoublingMeasure::has_breakpoint_inside(const Rational& left, const Rational& right) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), left);
    return it != breaks_.end() && *it < right;
}

std::pair<std::size_t, std::size_t> DoublingMeasure::breakpoints_inside(const Integer& L, const Integer& S,
                                                                        std::size_t from, std::size_t to) const {
    // x > L/S  <=>  X S > L E
    std::size_t lo = from, hi = to;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (break_num_[mid] * S > L * break_den_[mid]) hi = mid;
        else lo = mid + 1;
    }
    const std::size_t first = lo;
    const Integer L1 = L + 1;
    hi = to;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (break_num_[mid] * S < L1 * break_den_[mid]) lo = mid + 1;
        else hi = mid;
    }
    return {first, lo};
}

DoublingMeasure assemble_blocks(std::uint64_t q, const Rational& a, const Rational& b,
                                const std::vector<BlockSpec>& specs, unsigned workers) {
    std::vector<std::optional<RegionMap>> maps(specs.size());
    std::vector<std::exception_ptr> errs(specs.size());
    auto work = [&](std::size_t i) {
        try {
            maps[i] = build_block(specs[i]);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1 || specs.size() < 2) {
        for (std::size_t i = 0; i < specs.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < specs.size(); i += workers) work(i);
            });
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    std::vector<RegionMap> out;
    for (auto& m : maps) out.push_back(std::move(*m));
    return DoublingMeasure(q, a, b, std::move(out));
}

DoublingMeasure assemble_global(const SelectionFamily& family, const Rational& a, const Rational& b, unsigned workers) {
    validate_ab(family.q, a, b);
    std::vector<BlockSpec> specs;
    for (const FamilyBlock& blk : family.blocks) specs.push_back({blk.I, blk.alpha, a, b});
    DoublingMeasure m = assemble_blocks(family.q, a, b, specs, workers);
    std::vector<RegionMap> blocks = m.blocks();
    return DoublingMeasure(family.q, a, b, std::move(blocks), family);
}

std::string regions_csv(const DoublingMeasure& mu) {
    std::ostringstream os;
    os << "left,right,x,y,density\n";
    for (const Piece& p : mu.pieces())
        os << to_string(p.left) << ',' << to_string(p.right) << ',' << p.w.x << ',' << p.w.y << ','
           << to_decimal(mu.value(p.w), 20) << '\n';
    return os.str();
}

}  // namespace multiadic

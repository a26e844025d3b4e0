#include "multiadic/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace multiadic {

std::uint64_t default_scan_depth(const DoublingMeasure& mu, std::uint64_t base, unsigned extra) {
    std::uint64_t dq = 0;
    for (const RegionMap& m : mu.blocks()) dq = std::max<std::uint64_t>(dq, m.spec().I.depth() + 2ull * m.spec().alpha);
    dq += extra;
    if (base == mu.q()) return dq;
    // least d with base^-d <= q^-dq
    double est = static_cast<double>(dq) * std::log(static_cast<double>(mu.q())) / std::log(static_cast<double>(base));
    std::uint64_t d = est > 2 ? static_cast<std::uint64_t>(est) - 2 : 0;
    Integer target = ipow(mu.q(), dq);
    while (ipow(base, d) < target) ++d;
    return d;
}

namespace {

struct NodeResult {
    std::vector<Integer> masses;  // child masses times a common positive scale
    Integer scale;
    std::uint64_t hi = 1, lo = 1;
    bool pruned_children = false;
};

// densities and prefix integrals over a common denominator G of the breakpoints
struct Layout {
    Integer G, Da;
    std::vector<Integer> B, aD, MI;
};

Layout make_layout(const DoublingMeasure& mu) {
    Layout y;
    y.G = 1;
    for (const Rational& x : mu.breakpoints()) mpz_lcm(y.G.get_mpz_t(), y.G.get_mpz_t(), x.get_den().get_mpz_t());
    y.B.push_back(0);
    for (const Rational& x : mu.breakpoints()) y.B.push_back(x.get_num() * (y.G / x.get_den()));
    y.B.push_back(y.G);
    y.Da = 1;
    std::vector<Rational> w;
    for (const Piece& p : mu.pieces()) {
        w.push_back(mu.value(p.w));
        mpz_lcm(y.Da.get_mpz_t(), y.Da.get_mpz_t(), w.back().get_den().get_mpz_t());
    }
    y.MI.push_back(0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        y.aD.push_back(w[i].get_num() * (y.Da / w[i].get_den()));
        y.MI.push_back(y.MI.back() + y.aD[i] * (y.B[i + 1] - y.B[i]));
    }
    return y;
}

}  // namespace

DoublingReport adic_doubling_scan(const DoublingMeasure& mu, std::uint64_t base, std::uint64_t depth,
                                  const DoublingScanOptions& opts) {
    if (depth < 1) throw DomainError("scan depth must be >= 1");
    DoublingReport rep;
    rep.base = base;
    rep.depth = depth;
    std::set<Rational> ratios;
    AdicInterval root = AdicInterval::unit(base);
    if (!mu.has_breakpoint_inside(root.left(), root.right())) ratios.insert(Rational(1));
    const Layout ly = make_layout(mu);
    const unsigned long ub = static_cast<unsigned long>(base);

    auto eval = [&](const AdicInterval& J, const NodeBreaks& nb) {
        NodeResult r;
        r.masses.resize(base);
        if (nb.count == 1) {
            // units 1/(S' E): constant children weigh aD E, the one holding x is split at u'
            const std::size_t j = nb.first;
            const Integer& E = mu.breakpoints()[j].get_den();
            Integer bu = nb.offset * ub;
            Integer cx = bu / E;
            Integer u2 = bu - cx * E;
            const std::uint64_t c0 = cx.get_ui();
            for (std::uint64_t c = 0; c < base; ++c) {
                if (c < c0) r.masses[c] = ly.aD[j] * E;
                else if (c > c0) r.masses[c] = ly.aD[j + 1] * E;
                else r.masses[c] = ly.aD[j] * u2 + ly.aD[j + 1] * (E - u2);
            }
            r.scale = nb.scale * ub * E * ly.Da;
            r.pruned_children = true;
        } else {
            // units 1/(S' G); F(y) = S' MI_k + aD_k (y - S' B_k) on piece k
            const Integer S2 = nb.scale * ub;
            const Integer L2 = (J.index() - 1) * ub;
            const std::size_t last = nb.first + nb.count;  // last piece touching J
            std::size_t k = nb.first;
            auto F = [&](const Integer& y) {
                while (k < last && S2 * ly.B[k + 1] <= y) ++k;
                return Integer(S2 * ly.MI[k] + ly.aD[k] * (y - S2 * ly.B[k]));
            };
            Integer yprev = L2 * ly.G;
            Integer Fprev = F(yprev);
            for (std::uint64_t c = 0; c < base; ++c) {
                Integer y = (L2 + c + 1) * ly.G;
                std::size_t kprev = k;
                Integer Fy = F(y);
                r.masses[c] = Fy - Fprev;
                // breakpoint strictly inside the child iff some S' B_t lies in (yprev, y)
                bool inside = false;
                for (std::size_t t = std::max(kprev, nb.first) + 1; t <= std::min(k + 1, last) && !inside; ++t) {
                    Integer bt = S2 * ly.B[t];
                    inside = yprev < bt && bt < y;
                }
                if (!inside) r.pruned_children = true;
                yprev = std::move(y);
                Fprev = std::move(Fy);
            }
            r.scale = S2 * ly.G * ly.Da;
        }
        for (std::uint64_t c = 0; c < base; ++c) {
            if (r.masses[c] > r.masses[r.hi - 1]) r.hi = c + 1;
            if (r.masses[c] < r.masses[r.lo - 1]) r.lo = c + 1;
        }
        return r;
    };
    auto sink = [&](const AdicInterval& J, NodeResult&& r) {
        const Integer& mh = r.masses[r.hi - 1];
        const Integer& ml = r.masses[r.lo - 1];
        if (mh * rep.sup_ratio.get_den() > rep.sup_ratio.get_num() * ml) {
            rep.sup_ratio = Rational(mh, ml);
            rep.sup_ratio.canonicalize();
            Rational muh(mh, r.scale), mul(ml, r.scale);
            muh.canonicalize();
            mul.canonicalize();
            rep.witness = DoublingWitness{J, r.hi, r.lo, muh, mul, {}};
        }
        if (rep.ratio_set_truncated) return;
        std::vector<Integer> m = std::move(r.masses);
        std::sort(m.begin(), m.end());
        bool some_equal = std::adjacent_find(m.begin(), m.end()) != m.end();
        m.erase(std::unique(m.begin(), m.end()), m.end());
        if (some_equal || (r.pruned_children && J.depth() < depth)) ratios.insert(Rational(1));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j)
                if (i != j) {
                    Rational x(m[i], m[j]);
                    x.canonicalize();
                    ratios.insert(std::move(x));
                }
        if (ratios.size() > opts.ratio_set_cap) rep.ratio_set_truncated = true;
    };
    ScanStats st = scan_tree<NodeResult>(mu, base, depth, opts, eval, sink);
    rep.evaluated = st.evaluated;
    rep.ratio_set.assign(ratios.begin(), ratios.end());
    if (rep.witness) rep.witness->case_label = classify_interval(mu, rep.witness->J);
    return rep;
}

void judge_q_adic(DoublingReport& rep, const DoublingMeasure& mu) {
    Rational ba = mu.b() / mu.a();
    rep.theoretical_bound = ba;
    rep.bound_label = "b/a";
    bool ok = !rep.ratio_set_truncated && rep.sup_ratio <= ba;
    for (const Rational& r : rep.ratio_set)
        if (r != 1 && r != ba && r != 1 / ba) ok = false;
    rep.pass = ok;
}

void judge_against(DoublingReport& rep, const Rational& bound, const std::string& label) {
    rep.theoretical_bound = bound;
    rep.bound_label = label;
    rep.pass = rep.sup_ratio <= bound;
}

std::string classify_interval(const DoublingMeasure& mu, const AdicInterval& J) {
    const Rational l = J.left(), r = J.right();
    std::vector<std::size_t> touching;
    for (std::size_t i = 0; i < mu.blocks().size(); ++i) {
        const AdicInterval& I = mu.blocks()[i].spec().I;
        if (I.left() < r && l < I.right()) touching.push_back(i);
    }
    if (touching.empty()) return "trivial: disjoint from every block";
    if (touching.size() > 1) return "trivial: spans several blocks";
    const std::size_t i = touching[0];
    const RegionMap& m = mu.blocks()[i];
    const AdicInterval& I = m.spec().I;
    std::string tag = "block " + std::to_string(i + 1) + ": ";
    if (J.contains(I)) return tag + "trivial: contains the block";
    if (mu.family()) {
        for (const AdicInterval& Jl : mu.family()->blocks[i].J)
            if (Jl == J) return tag + "J = J^l";
    }
    const Rational z = m.zeta();
    if (z <= l) return tag + "zeta left of J";
    if (z >= r) return tag + "zeta right of J";
    return tag + "zeta inside J";
}

}  // namespace multiadic

#include "multiadic/verifier.hpp"

#include <algorithm>

namespace multiadic {

ExhaustionBound exhaustion_bound(std::uint64_t p, std::uint64_t q, const Rational& a, const Rational& b) {
    PrimePair pair(p, q);
    if (pair.p() != p) throw DomainError("exhaustion_bound needs p > q");
    validate_ab(q, a, b);
    ExhaustionBound eb;
    eb.p = p;
    eb.q = q;
    unsigned N = 1;
    while (!(Integer(static_cast<unsigned long>(p)) < ipow(q, N))) ++N;
    eb.N = N;

    const Rational Q(static_cast<unsigned long>(q));
    auto add = [&](std::string label, Rational v) { eb.per_case_A.push_back({std::move(label), std::move(v)}); };
    add("J = J^l", Rational(4));
    add("K absent, K'=0", 1 / a);
    if (q == 2) {
        // mu(J_p) lies in [a^2/4, 1] |J_p| when q = 2
        eb.q2_specialization = true;
        add("K absent, K'>=1 (q=2)", 4 / (a * a));
    } else {
        Rational v = std::max({Rational((2 * Q - 2) / (Q - 2)), Rational(2), Rational(2 * Q / (a * (Q - 2)))});
        add("K absent, K'>=1", v);
    }
    add("K'=0 (a)", std::max(b, Rational(1 / a)));
    add("K'=0 (b)", b / a);
    add("K'=0 (c)", 1 / a);
    add("K'=1 (a)", b * b / a);
    add("K'=1 (b)", b * b);
    add("K'=1 (c)", b / (a * a));
    add("K'>1 (a)", b * Q * Q / (a * (Q - a)));
    add("K'>1 (b)", b * Q * Q / (a * (Q - 1)));

    eb.A = eb.per_case_A.front().value;
    eb.A_label = eb.per_case_A.front().label;
    for (const auto& c : eb.per_case_A)
        if (c.value > eb.A) {
            eb.A = c.value;
            eb.A_label = c.label;
        }
    eb.step = b / (a * a);
    eb.C_final = eb.A * rpow(eb.step, N);
    return eb;
}

namespace {

AdicInterval span_cell(std::uint64_t q, const Span& s) { return smallest_containing(q, s.left, s.right); }

std::optional<DoublingViolation> violation_for(const DoublingMeasure& mu, const RegionMap& m, const Rational& C) {
    const unsigned alpha = m.spec().alpha;
    AdicInterval inner = span_cell(mu.q(), m.region(Region::H, alpha));
    Rational half = inner.length() / 2;
    DoublingViolation v;
    v.C = C;
    v.alpha = alpha;
    v.inner = inner;
    v.doubled_left = inner.left() - half;
    v.doubled_right = inner.right() + half;
    if (v.doubled_left < 0 || v.doubled_right > 1) return std::nullopt;
    v.mu_inner = mu.measure_of(inner);
    v.mu_doubled = mu.measure_of(v.doubled_left, v.doubled_right);
    v.ratio = v.mu_doubled / v.mu_inner;
    if (v.ratio > C) return v;
    return std::nullopt;
}

}  // namespace

NonDoublingWitness nondoubling_witness(const DoublingMeasure& mu, std::size_t block,
                                       const std::vector<Rational>& candidates) {
    if (block >= mu.blocks().size()) throw DomainError("block " + std::to_string(block + 1) + " does not exist");
    const RegionMap& m = mu.blocks()[block];
    NonDoublingWitness w;
    w.block = block;
    w.alpha = m.spec().alpha;
    w.H = span_cell(mu.q(), m.region(Region::H, w.alpha));
    w.G = span_cell(mu.q(), m.region(Region::G, w.alpha));
    w.mu_H = mu.measure_of(w.H);
    w.mu_G = mu.measure_of(w.G);
    w.ratio = w.mu_H / w.mu_G;
    Rational expected = rpow(mu.a() / mu.b(), w.alpha);
    w.pass = w.ratio == expected && w.ratio * rpow(mu.b() / mu.a(), w.alpha) == 1 && w.H.length() == w.G.length() &&
             w.H.right() == w.G.left();
    for (const Rational& C : candidates)
        if (auto v = violation_for(mu, m, C)) w.violations.push_back(*v);
    return w;
}

std::optional<DoublingViolation> find_doubling_violation(std::uint64_t q, const Rational& a, const Rational& b,
                                                         const Rational& C, unsigned alpha_max) {
    for (unsigned alpha = 1; alpha <= alpha_max; ++alpha) {
        DoublingMeasure mu = assemble_blocks(q, a, b, {BlockSpec{AdicInterval::unit(q), alpha, a, b}});
        if (auto v = violation_for(mu, mu.blocks()[0], C)) return v;
    }
    return std::nullopt;
}

AlphaTable alpha_independence_table(std::uint64_t p, std::uint64_t q, const Rational& a, const Rational& b,
                                    const std::vector<unsigned>& alphas, unsigned extra_depth,
                                    const FamilyOptions& fam, const DoublingScanOptions& scan) {
    if (alphas.empty()) throw DomainError("alpha list is empty");
    AlphaTable t;
    t.p = p;
    t.q = q;
    t.a = a;
    t.b = b;
    t.bound = exhaustion_bound(p, q, a, b);
    Rational lo, hi;
    for (unsigned alpha : alphas) {
        SelectionFamily f = select_family(q, {p}, {alpha}, fam);
        DoublingMeasure mu = assemble_global(f, a, b, fam.workers);
        AlphaRow row;
        row.alpha = alpha;
        row.q_depth = default_scan_depth(mu, q, extra_depth);
        row.p_scan = adic_doubling_scan(mu, p, default_scan_depth(mu, p, extra_depth), scan);
        judge_against(row.p_scan, t.bound.C_final, "C_final");
        if (t.rows.empty() || row.p_scan.sup_ratio < lo) lo = row.p_scan.sup_ratio;
        if (t.rows.empty() || row.p_scan.sup_ratio > hi) hi = row.p_scan.sup_ratio;
        t.pass = t.pass && row.p_scan.pass;
        t.rows.push_back(std::move(row));
    }
    t.spread = hi / lo;
    t.pass = t.pass && t.spread <= t.bound.A;
    return t;
}

}  // namespace multiadic

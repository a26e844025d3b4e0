#include "multiadic/moments.hpp"

#include <algorithm>
#include <cmath>

namespace multiadic {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

namespace {

bool is_integer(const Rational& r) { return r.get_den() == 1; }

long to_long(const Rational& r) { return r.get_num().get_si(); }

// x^e for a positive rational x and rational e, exact when e is an integer.
Number power(const Rational& x, const Rational& e, unsigned bits) {
    if (is_integer(e) && std::abs(to_long(e)) < 100000) return Number::of(rpow(x, to_long(e)), bits);
    return Number::of(Enclosure(x, bits).pow(e));
}

Number power(const Number& x, const Rational& e, unsigned bits) {
    if (x.is_exact()) return power(*x.exact, e, bits);
    return Number::of(x.enc.pow(e));
}

// The five constants built from (heavy, light) = (B1, B2).
template <class T, class K>
std::array<T, 5> five_constants(const T& B1, const T& B2, std::uint64_t q, K k) {
    const T one = k(1), qm1 = k(static_cast<long>(q - 1)), qm2 = k(static_cast<long>(q) - 2), qq = k(static_cast<long>(q));
    T c1 = one + (qm1 / qq) / (one - B1);
    T c2 = one + qm1 / (one - B1) + (B1 + B2 * qm2) / (one - B2);
    T c3 = one + (qm2 * B2 + B1) / (one - B2);
    T c4 = c3 + qm1 * B2 / (one - B1);
    T c5 = (qm2 + c2) * B2 + c4 * B1;
    return {c1, c2, c3, c4, c5};
}

struct Constants {
    Number B_heavy, B_light;
    std::array<Number, 5> C;
    Number bound_pow;
};

Constants make_constants(std::uint64_t q, const Rational& heavy, const Rational& light, const Rational& e, unsigned bits) {
    Constants out;
    const Rational qr(static_cast<unsigned long>(q));
    Number h = power(heavy, e, bits), l = power(light, e, bits);
    if (h.is_exact() && l.is_exact()) {
        Rational B1 = *h.exact / qr, B2 = *l.exact / qr;
        auto c = five_constants<Rational>(B1, B2, q, [](long n) { return Rational(n); });
        out.B_heavy = Number::of(B1, bits);
        out.B_light = Number::of(B2, bits);
        Rational mx = c[0];
        for (int i = 0; i < 5; ++i) {
            out.C[i] = Number::of(c[i], bits);
            mx = std::max(mx, c[i]);
        }
        out.bound_pow = Number::of(mx + 1, bits);
        return out;
    }
    Enclosure qe(qr, bits);
    Enclosure B1 = h.enc / qe, B2 = l.enc / qe;
    auto c = five_constants<Enclosure>(B1, B2, q, [bits](long n) { return Enclosure(Rational(n), bits); });
    out.B_heavy = Number::of(B1);
    out.B_light = Number::of(B2);
    Enclosure mx = c[0];
    for (int i = 0; i < 5; ++i) {
        out.C[i] = Number::of(c[i]);
        mx = Enclosure::max_of(mx, c[i]);
    }
    out.bound_pow = Number::of(mx + Enclosure(Rational(1), bits));
    return out;
}

struct MomentResult {
    bool exact_mode = false;
    Number sup_pow;
    std::optional<AdicInterval> witness;
    Verdict verdict = Verdict::pass;
    std::uint64_t evaluated = 0;
};

struct NodeValue {
    std::optional<std::pair<Integer, Integer>> frac;  // unreduced num/den, den > 0
    std::optional<Enclosure> enc;
};

// Exact integer layout over a common denominator G of all breakpoints.
struct ScaledPieces {
    Integer G;
    std::vector<Integer> B;  // piece boundaries times G; B[0] = 0, B.back() = G
    Integer Da;              // common denominator of the densities
    std::vector<Integer> aD;
    std::vector<Integer> MI;  // prefix of aD_i (B[i+1]-B[i])
};

ScaledPieces scale_pieces(const DoublingMeasure& mu, const std::vector<Rational>& w) {
    ScaledPieces sp;
    sp.G = 1;
    for (const Rational& x : mu.breakpoints()) mpz_lcm(sp.G.get_mpz_t(), sp.G.get_mpz_t(), x.get_den().get_mpz_t());
    sp.B.push_back(0);
    for (const Rational& x : mu.breakpoints()) sp.B.push_back(x.get_num() * (sp.G / x.get_den()));
    sp.B.push_back(sp.G);
    sp.Da = 1;
    for (const Rational& x : w) mpz_lcm(sp.Da.get_mpz_t(), sp.Da.get_mpz_t(), x.get_den().get_mpz_t());
    sp.MI.push_back(0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        sp.aD.push_back(w[i].get_num() * (sp.Da / w[i].get_den()));
        sp.MI.push_back(sp.MI.back() + sp.aD[i] * (sp.B[i + 1] - sp.B[i]));
    }
    return sp;
}

// integral of w over [L/S, (L+1)/S) times S G Da; breakpoints first..last lie strictly inside
Integer scaled_integral(const ScaledPieces& sp, const Integer& L, const Integer& S, std::size_t first, std::size_t last) {
    const std::size_t j0 = first, j1 = last + 1;
    return sp.aD[j0] * (S * sp.B[first + 1] - L * sp.G) + S * (sp.MI[j1] - sp.MI[j0 + 1]) +
           sp.aD[j1] * ((L + 1) * sp.G - S * sp.B[last + 1]);
}

MomentResult moment_scan(const DoublingMeasure& mu, const Rational& e, std::uint64_t base, std::uint64_t depth,
                         const MomentOptions& opts, const Number& bound_pow) {
    MomentResult res;
    const unsigned bits = opts.bits;
    const auto& pieces = mu.pieces();
    res.exact_mode = is_integer(e) && !opts.force_enclosure && bound_pow.is_exact();
    const long ei = is_integer(e) ? to_long(e) : 0;
    const unsigned long ea = static_cast<unsigned long>(ei < 0 ? -ei : ei);

    std::vector<Rational> w1, we;
    std::vector<Enclosure> wenc;
    for (const Piece& p : pieces) {
        w1.push_back(mu.value(p.w));
        if (res.exact_mode) we.push_back(rpow(w1.back(), ei));
        else wenc.push_back(power(w1.back(), e, bits).enc);
    }
    const ScaledPieces m = scale_pieces(mu, w1);
    const ScaledPieces c = res.exact_mode ? scale_pieces(mu, we) : ScaledPieces{};
    const Enclosure GDa(Rational(m.G * m.Da), bits), Ge(Rational(m.G), bits);

    // A = int w^e, M = int w over J; ratio = (A/|J|) / (M/|J|)^e
    // one breakpoint x = X/E inside: overlaps are u/(S E) and (E-u)/(S E), S cancels
    auto eval_single = [&](const NodeBreaks& nb, NodeValue& v) {
        const std::size_t j = nb.first;
        const Integer& E = mu.breakpoints()[j].get_den();
        const Integer& u = nb.offset;
        const Integer t = E - u;
        Integer Ms = m.aD[j] * u + m.aD[j + 1] * t;  // M S E Da
        if (res.exact_mode) {
            Integer As = c.aD[j] * u + c.aD[j + 1] * t;
            if (ei >= 1) {
                v.frac = std::make_pair(Integer(As * ipow(E, ea - 1) * ipow(m.Da, ea)), Integer(c.Da * ipow(Ms, ea)));
            } else {
                v.frac = std::make_pair(Integer(As * ipow(Ms, ea)), Integer(c.Da * E * ipow(E * m.Da, ea)));
            }
        } else {
            Enclosure eE(Rational(E), bits);
            Enclosure me = (wenc[j] * Enclosure(Rational(u), bits) + wenc[j + 1] * Enclosure(Rational(t), bits)) / eE;
            Enclosure m1 = Enclosure(Rational(Ms), bits) / (eE * Enclosure(Rational(m.Da), bits));
            v.enc = me / m1.pow(e);
        }
    };

    auto eval = [&](const AdicInterval& J, const NodeBreaks& nb) {
        NodeValue v;
        if (nb.count == 1) {
            eval_single(nb, v);
            return v;
        }
        const Integer L = J.index() - 1;
        const Integer& S = nb.scale;
        const std::size_t first = nb.first, last = nb.first + nb.count - 1;
        Integer Ms = scaled_integral(m, L, S, first, last);  // M S G Da
        if (res.exact_mode) {
            Integer As = scaled_integral(c, L, S, first, last);  // A S G Dc
            Integer num, den;
            if (ei >= 1) {
                num = As * ipow(m.G, ea - 1) * ipow(m.Da, ea);
                den = c.Da * ipow(Ms, ea);
            } else {
                num = As * ipow(Ms, ea);
                den = c.Da * m.G * ipow(m.G * m.Da, ea);
            }
            v.frac = std::make_pair(std::move(num), std::move(den));
        } else {
            // sum over pieces j0..j1 of w^e times the exact overlap (units 1/(S G))
            Enclosure acc(Rational(0), bits);
            for (std::size_t k = first; k <= last + 1; ++k) {
                Integer lo = k == first ? Integer(L * m.G) : Integer(S * m.B[k]);
                Integer hi = k == last + 1 ? Integer((L + 1) * m.G) : Integer(S * m.B[k + 1]);
                acc += wenc[k] * Enclosure(Rational(hi - lo), bits);
            }
            Enclosure me = acc / Ge;
            Enclosure m1 = Enclosure(Rational(Ms), bits) / GDa;
            v.enc = me / m1.pow(e);
        }
        return v;
    };

    Rational sup_exact = 1;
    Enclosure sup_enc(Rational(1), bits);
    Enclosure best_hi(Rational(1), bits);
    auto sink = [&](const AdicInterval& J, NodeValue&& v) {
        if (v.frac) {
            if (v.frac->first * sup_exact.get_den() > sup_exact.get_num() * v.frac->second) {
                sup_exact = Rational(v.frac->first, v.frac->second);
                sup_exact.canonicalize();
                res.witness = J;
            }
        } else {
            if (mpfr_greater_p(v.enc->hi_ptr(), best_hi.hi_ptr())) {
                best_hi = *v.enc;
                res.witness = J;
            }
            sup_enc = Enclosure::max_of(sup_enc, *v.enc);
        }
    };
    ScanStats st = scan_tree<NodeValue>(mu, base, depth, opts, eval, sink);
    res.evaluated = st.evaluated;

    if (res.exact_mode) {
        res.sup_pow = Number::of(sup_exact, bits);
        res.verdict = sup_exact <= *bound_pow.exact ? Verdict::pass : Verdict::fail;
    } else {
        res.sup_pow = Number::of(sup_enc);
        if (sup_enc.certainly_le(bound_pow.enc))
            res.verdict = Verdict::pass;
        else if (sup_enc.certainly_gt(bound_pow.enc))
            res.verdict = Verdict::fail;
        else
            res.verdict = Verdict::undecided;
    }
    return res;
}

Enclosure log_ratio(const Rational& x, const Rational& y, unsigned bits) {
    return Enclosure(x, bits).log() / Enclosure(y, bits).log();
}

}  // namespace

RHReport rh_scan(const DoublingMeasure& mu, const Rational& r, std::uint64_t base, std::uint64_t depth,
                 const MomentOptions& opts) {
    const std::uint64_t q = mu.q();
    const Rational qr(static_cast<unsigned long>(q));
    // r < ln q / ln b  <=>  b^u < q^v for r = u/v
    const unsigned long u = r.get_num().get_ui(), v = r.get_den().get_ui();
    bool in_range = r > 1 && r.get_num().fits_ulong_p() && rpow(mu.b(), static_cast<long>(u)) < rpow(qr, static_cast<long>(v));
    if (!in_range) {
        Enclosure t = log_ratio(qr, mu.b(), opts.bits);
        throw DomainError("rh exponent r = " + to_string(r) + " outside the admissible interval (1, ln q/ln b) with ln q/ln b in [" +
                          t.lo_string() + ", " + t.hi_string() + "]");
    }
    RHReport rep;
    rep.r = r;
    rep.base = base;
    rep.depth = depth;
    rep.bits = opts.bits;
    Constants k = make_constants(q, mu.b(), mu.a(), r, opts.bits);
    rep.B1 = k.B_heavy;
    rep.B2 = k.B_light;
    rep.C = k.C;
    rep.bound_pow = k.bound_pow;
    Rational inv = 1 / r;
    rep.bound = power(rep.bound_pow, inv, opts.bits);
    MomentResult m = moment_scan(mu, r, base, depth, opts, rep.bound_pow);
    rep.exact_mode = m.exact_mode;
    rep.sup_pow = m.sup_pow;
    rep.sup_measured = power(m.sup_pow, inv, opts.bits);
    rep.witness = m.witness;
    rep.verdict = m.verdict;
    rep.evaluated = m.evaluated;
    return rep;
}

ARReport ar_scan(const DoublingMeasure& mu, const Rational& r, std::uint64_t base, std::uint64_t depth,
                 const MomentOptions& opts) {
    const std::uint64_t q = mu.q();
    const Rational qr(static_cast<unsigned long>(q));
    // r - 1 > -ln a / ln q  <=>  q^(u-v) a^v > 1 for r = u/v
    bool in_range = r > 1 && r.get_num().fits_ulong_p();
    if (in_range) {
        const unsigned long u = r.get_num().get_ui(), v = r.get_den().get_ui();
        in_range = rpow(qr, static_cast<long>(u - v)) * rpow(mu.a(), static_cast<long>(v)) > 1;
    }
    if (!in_range) {
        Enclosure t = Enclosure(Rational(1), opts.bits) - log_ratio(mu.a(), qr, opts.bits);
        throw DomainError("ar exponent r = " + to_string(r) + " outside the admissible range r > 1 - ln a/ln q with threshold in [" +
                          t.lo_string() + ", " + t.hi_string() + "]");
    }
    ARReport rep;
    rep.r = r;
    rep.s = -1 / (r - 1);
    rep.base = base;
    rep.depth = depth;
    rep.bits = opts.bits;
    Constants k = make_constants(q, mu.a(), mu.b(), rep.s, opts.bits);
    rep.B3 = k.B_heavy;
    rep.B4 = k.B_light;
    rep.C = k.C;
    rep.bound_pow = k.bound_pow;
    Rational rm1 = r - 1;
    rep.bound = power(rep.bound_pow, rm1, opts.bits);
    MomentResult m = moment_scan(mu, rep.s, base, depth, opts, rep.bound_pow);
    rep.exact_mode = m.exact_mode;
    rep.sup_pow = m.sup_pow;
    rep.sup_measured = power(m.sup_pow, rm1, opts.bits);
    rep.witness = m.witness;
    rep.verdict = m.verdict;
    rep.evaluated = m.evaluated;
    return rep;
}

Rational default_rh_exponent(std::uint64_t q, const Rational& b) {
    const Rational qr(static_cast<unsigned long>(q));
    auto ok = [&](const Rational& r) {
        return r > 1 && rpow(b, r.get_num().get_si()) < rpow(qr, r.get_den().get_si());
    };
    double t = std::log(static_cast<double>(q)) / std::log(b.get_d());
    Rational r = make_rational(static_cast<long>(std::lround((1 + t) / 2 * 4)), 4);
    if (r <= 1) r = make_rational(5, 4);
    for (int i = 0; i < 64 && !ok(r); ++i) r = (r + 1) / 2;
    if (!ok(r)) throw DomainError("no admissible reverse Hoelder exponent found");
    return r;
}

Rational default_ar_exponent(std::uint64_t q, const Rational& a) {
    const Rational qr(static_cast<unsigned long>(q));
    long r = 2;
    while (!(rpow(qr, r - 1) * a > 1)) ++r;
    return Rational(r);
}

Rational moment_ratio_oracle(const DoublingMeasure& mu, const Rational& l, const Rational& r, long e) {
    Rational me = 0, m1 = 0;
    for (const Piece& p : mu.pieces()) {
        Rational lo = std::max(l, p.left), hi = std::min(r, p.right);
        if (!(lo < hi)) continue;
        Rational v = mu.value(p.w);
        me += rpow(v, e) * (hi - lo);
        m1 += v * (hi - lo);
    }
    Rational len = r - l;
    return (me / len) / rpow(m1 / len, e);
}

}  // namespace multiadic

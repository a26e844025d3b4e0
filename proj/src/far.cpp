#include "multiadic/far.hpp"

#include "multiadic/errors.hpp"

#include <sstream>

namespace multiadic {

FarConstantResult far_constant(const Rational& delta, std::uint64_t n, std::uint64_t M) {
    if (n < 2) throw DomainError("far_constant needs n >= 2");
    FarConstantResult res;
    res.delta = delta;
    res.n = n;
    res.M = M;
    bool first = true;
    Integer scale = 1;
    for (std::uint64_t m = 0; m <= M; ++m, scale *= static_cast<unsigned long>(n)) {
        Rational t = delta * Rational(scale);
        Integer f = floor_of(t);
        Rational dlo = t - Rational(f), dhi = Rational(f + 1) - t;
        Rational d = std::min(dlo, dhi);
        res.per_m.push_back(d);
        std::vector<FarHit> hits;
        if (dlo == d) hits.push_back({m, f});
        if (dhi == d) hits.push_back({m, f + 1});
        if (first || d < res.inf_value) {
            res.inf_value = d;
            res.argmin = hits.front();
            res.sharp_hits = hits;
            first = false;
        } else if (d == res.inf_value) {
            for (auto& h : hits) res.sharp_hits.push_back(h);
        }
    }
    return res;
}

std::vector<SharpWitness> sharpness_witnesses(std::uint64_t p, std::uint64_t n1, const Integer& k, std::uint64_t q,
                                              std::uint64_t M) {
    if (k % static_cast<unsigned long>(p) == 0) throw DomainError("sharpness_witnesses needs p not dividing k");
    Integer P = ipow(p, n1);
    std::vector<SharpWitness> out;
    Integer Q = 1;
    for (std::uint64_t m = 1; m <= M; ++m) {
        Q *= static_cast<unsigned long>(q);
        Integer num = k * Q - 1;
        if (num % P != 0) continue;
        Integer j = num / P;
        if (k * Q - j * P != 1) throw InvariantViolation("sharpness identity");
        Integer jr = (j + 1) % static_cast<unsigned long>(q);
        if (jr != 0) throw InvariantViolation("sharpness witness j = " + j.get_str() + " is not -1 mod q");
        out.push_back({j, m});
    }
    return out;
}

std::vector<std::uint64_t> odd_primes_upto(std::uint64_t limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        if (i > 2) out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return out;
}

KrantzReport krantz_scan(unsigned m) {
    if (m < 1) throw DomainError("krantz_scan needs m >= 1");
    if (m > 30) throw ResourceError("krantz_scan sieve above 10 * 2^30 is outside the budget");
    KrantzReport rep;
    rep.m = m;
    const Integer two_m = ipow(2, m);
    const std::uint64_t limit = 10ull << m;
    rep.C_m = 1;  // beta = 0 branch
    for (std::uint64_t p : odd_primes_upto(limit)) {
        Integer pn = p;
        for (std::uint64_t n = 1; pn <= 10 * two_m; ++n, pn *= static_cast<unsigned long>(p)) {
            if (10 * pn < two_m) continue;  // p^n / 2^m < 1/10
            ++rep.pairs_examined;
            // |p^n - beta 2^m| <= 2^m p^n
            Integer lo = ceil_of(make_rational(pn - two_m * pn, two_m));
            Integer hi = floor_of(make_rational(pn + two_m * pn, two_m));
            rep.lattice_points += hi - lo + 1;
            // nearest nonzero beta to p^n / 2^m; the minimum over all nonzero
            // beta sits at one of these two
            Integer f = floor_of(make_rational(pn, two_m));
            for (Integer beta : {f, Integer(f + 1)}) {
                if (beta == 0) continue;
                Integer diff = pn - beta * two_m;
                Rational val = make_rational(abs(diff), pn);
                if (val < rep.C_m) {
                    rep.C_m = val;
                    rep.argmin_p = p;
                    rep.argmin_n = n;
                    rep.argmin_beta = beta;
                }
            }
        }
    }
    if (!(rep.C_m > 0)) throw InvariantViolation("C(m) vanished at m = " + std::to_string(m));
    rep.epsilon = rep.C_m / 2;
    return rep;
}

std::string far_csv(const FarConstantResult& r) {
    std::ostringstream os;
    os << "m,value\n";
    for (std::size_t m = 0; m < r.per_m.size(); ++m) os << m << ',' << to_string(r.per_m[m]) << '\n';
    return os.str();
}

}  // namespace multiadic

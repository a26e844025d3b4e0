#include "multiadic/ntheory.hpp"

#include "multiadic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace multiadic {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

Integer checked_prime_power(u64 p, unsigned long e, const NtLimits& limits) {
    // bits(p^e) <= e * bits(p); reject before allocating anything large
    double approx = static_cast<double>(e) * std::log2(static_cast<double>(p));
    if (approx > limits.bit_budget + 1.0)
        throw ResourceError("modulus " + std::to_string(p) + "^" + std::to_string(e) + " exceeds the " +
                            std::to_string(limits.bit_budget) + "-bit budget");
    Integer P = ipow(p, e);
    if (bit_length(P) > limits.bit_budget)
        throw ResourceError("modulus " + std::to_string(p) + "^" + std::to_string(e) + " exceeds the " +
                            std::to_string(limits.bit_budget) + "-bit budget");
    return P;
}

// Order of g in (Z/P)^*, given that it is a power of p. Returns the exponent t.
unsigned p_power_order(Integer g, u64 p, const Integer& P) {
    unsigned t = 0;
    Integer pp(static_cast<unsigned long>(p));
    g %= P;
    while (g != 1) {
        g = powm(g, pp, P);
        ++t;
        if (t > bit_length(P) + 1) throw InvariantViolation("order is not a power of p");
    }
    return t;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimePair::PrimePair(std::uint64_t a, std::uint64_t b) {
    if (a == b) throw DomainError("prime pair needs distinct primes, got " + std::to_string(a) + " twice");
    if (!is_prime(a)) throw DomainError(std::to_string(a) + " is not prime");
    if (!is_prime(b)) throw DomainError(std::to_string(b) + " is not prime");
    p_ = std::max(a, b);
    q_ = std::min(a, b);
}

Integer order_of_base(const PrimePair& pair, unsigned m, const NtLimits& limits) {
    if (m == 0) throw DomainError("order_of_base needs m >= 1");
    Integer P = checked_prime_power(pair.p(), m, limits);
    Integer g = powm(Integer(static_cast<unsigned long>(pair.q())), Integer(static_cast<unsigned long>(pair.p() - 1)), P);
    unsigned t = p_power_order(g, pair.p(), P);
    return ipow(pair.p(), t);
}

StabilizationProfile stabilization_profile(const PrimePair& pair, const NtLimits& limits) {
    const u64 p = pair.p();
    Integer g = ipow(pair.q(), p - 1);
    StabilizationProfile prof;

    unsigned m = 1;
    while (true) {
        Integer mod = checked_prime_power(p, m + 1, limits);
        if (g % mod != 1) break;
        ++m;
    }
    prof.m_pq = m;

    Integer mod = ipow(p, m + 1);
    Integer gr = g % mod;
    Integer pp(static_cast<unsigned long>(p));
    unsigned n0 = 0;
    for (unsigned n = 1; n <= m; ++n) {
        gr = powm(gr, pp, mod);
        if (gr == 1) {
            n0 = n;
            break;
        }
    }
    if (n0 == 0) throw InvariantViolation("no N0 in [1, m_pq] for (" + std::to_string(p) + "," + std::to_string(pair.q()) + ")");
    prof.n0 = n0;
    prof.c_pq = m - n0;

    const unsigned cap = m + limits.verify_extra;
    Integer pc = ipow(p, prof.c_pq);
    unsigned threshold = cap + 1;
    for (unsigned mm = cap; mm >= 1; --mm) {
        bool holds = order_of_base(pair, mm, limits) * pc == ipow(p, mm - 1);
        if (!holds) {
            if (mm >= m + 1)
                throw InvariantViolation("stabilization fails for (" + std::to_string(p) + "," +
                                         std::to_string(pair.q()) + ") at m = " + std::to_string(mm));
            break;
        }
        threshold = mm;
    }
    prof.verified_through = cap;
    prof.observed_threshold = threshold;
    return prof;
}

AdmissibleSet::AdmissibleSet(Integer modulus, Integer step) : modulus_(std::move(modulus)), step_(std::move(step)) {}

Integer AdmissibleSet::size() const {
    // elements 1, 1+step, ... <= modulus
    return (modulus_ - 1) / step_ + 1;
}

bool AdmissibleSet::contains(const Integer& a) const {
    if (a < 1 || a > modulus_) return false;
    Integer r = (a - 1) % step_;
    return r == 0;
}

Integer AdmissibleSet::at(const Integer& i) const {
    if (i < 0 || i >= size()) throw DomainError("admissible index out of range");
    return 1 + i * step_;
}

std::vector<Integer> AdmissibleSet::enumerate(std::size_t limit) const {
    if (size() > limit) throw ResourceError("admissible set has " + size().get_str() + " elements");
    std::vector<Integer> out;
    for (Integer a = 1; a <= modulus_; a += step_) out.push_back(a);
    return out;
}

AdmissibleSet admissible_k(const PrimePair& pair, unsigned m1, const NtLimits& limits) {
    if (m1 == 0) throw DomainError("admissible_k needs m1 >= 1");
    Integer P = checked_prime_power(pair.p(), static_cast<unsigned long>(m1) * (pair.q() - 1), limits);
    StabilizationProfile prof = stabilization_profile(pair, limits);
    return AdmissibleSet(P, ipow(pair.p(), prof.c_pq + 1));
}

PairSolution solve_pair(const PrimePair& pair, unsigned m1, const Integer& k, std::uint64_t min_m2,
                        const NtLimits& limits) {
    const u64 p = pair.p();
    const u64 q = pair.q();
    AdmissibleSet adm = admissible_k(pair, m1, limits);
    if (!adm.contains(k))
        throw DomainError("k = " + k.get_str() + " is not admissible for m1 = " + std::to_string(m1) +
                          " (need k = 1 mod " + adm.step().get_str() + ", 1 <= k <= " + adm.modulus().get_str() + ")");
    const Integer& P = adm.modulus();
    const Integer pp(static_cast<unsigned long>(p));

    Integer g = powm(Integer(static_cast<unsigned long>(q)), Integer(static_cast<unsigned long>(p - 1)), P);
    unsigned t = p_power_order(g, p, P);
    Integer stride = ipow(p, t);
    Integer target = inverse_mod(k, P);

    // Pohlig-Hellman in the cyclic group <g> of order p^t, one base-p digit at a time.
    Integer x = 0;
    if (t > 0) {
        Integer gamma = powm(g, ipow(p, t - 1), P);
        Integer ginv = inverse_mod(g, P);
        Integer pi = 1;
        for (unsigned i = 0; i < t; ++i) {
            Integer h = powm(target * powm(ginv, x, P) % P, ipow(p, t - 1 - i), P);
            Integer cur = 1;
            bool found = false;
            for (u64 d = 0; d < p; ++d) {
                if (cur == h) {
                    x += pi * static_cast<unsigned long>(d);
                    found = true;
                    break;
                }
                cur = cur * gamma % P;
            }
            if (!found)
                throw ResourceError("no m2 solves k q^(m2(p-1)) = 1 mod p^(m1(q-1)) for k = " + k.get_str());
            pi *= pp;
        }
    }
    if (powm(g, x, P) != target)
        throw ResourceError("no m2 solves k q^(m2(p-1)) = 1 mod p^(m1(q-1)) for k = " + k.get_str());

    Integer base = std::max<u64>(min_m2, 1);
    Integer shift = (x - base) % stride;
    if (shift < 0) shift += stride;
    Integer m2z = base + shift;
    if (m2z > limits.m2_cap)
        throw ResourceError("least m2 = " + m2z.get_str() + " exceeds the cap " + std::to_string(limits.m2_cap));

    PairSolution s;
    s.m1 = m1;
    s.k = k;
    s.m2 = to_u64(m2z);
    s.stride = stride;
    Integer Q = ipow(q, s.m2 * (p - 1));
    Integer num = k * Q - 1;
    if (num % P != 0) throw InvariantViolation("discrete log produced a non-solution");
    s.j = num / P;
    StabilizationProfile prof = stabilization_profile(pair, limits);
    if (!check_solution(pair, s, prof.c_pq)) throw InvariantViolation("solve_pair postcondition failed");
    return s;
}

bool check_solution(const PrimePair& pair, const PairSolution& s, unsigned c_pq) {
    const u64 p = pair.p();
    const u64 q = pair.q();
    Integer P = ipow(p, static_cast<unsigned long>(s.m1) * (q - 1));
    Integer Q = ipow(q, s.m2 * (p - 1));
    if (s.k * Q - s.j * P != 1) return false;
    if ((s.k - 1) % ipow(p, c_pq + 1) != 0) return false;
    Integer jr = (s.j + 1) % Integer(static_cast<unsigned long>(q));
    if (jr != 0) return false;
    if (s.k < 1 || s.k > P || s.j < 1 || s.j > Q || s.m2 < 1) return false;
    Integer g = powm(Integer(static_cast<unsigned long>(q)), Integer(static_cast<unsigned long>(p - 1)), P);
    if (powm(g, s.stride, P) != 1) return false;
    if (s.stride > 1 && powm(g, s.stride / static_cast<unsigned long>(p), P) == 1) return false;
    return true;
}

MultiPrimeProfile multi_prime_profile(std::uint64_t p1, const std::vector<std::uint64_t>& others,
                                      const NtLimits& limits) {
    if (others.empty()) throw DomainError("multi_prime_profile needs at least one other prime");
    if (!is_prime(p1)) throw DomainError(std::to_string(p1) + " is not prime");
    std::set<u64> seen{p1};
    MultiPrimeProfile out;
    out.base_prime = p1;
    out.others = others;
    for (u64 pi : others) {
        if (!seen.insert(pi).second) throw DomainError("duplicate prime " + std::to_string(pi));
        if (pi < p1) throw DomainError("base prime " + std::to_string(p1) + " is not the smallest (found " + std::to_string(pi) + ")");
        StabilizationProfile prof = stabilization_profile(PrimePair(pi, p1), limits);
        out.c_max = std::max(out.c_max, prof.c_pq);
        out.m_max = std::max(out.m_max, prof.m_pq);
        out.profiles.push_back(prof);
    }
    return out;
}

}  // namespace multiadic

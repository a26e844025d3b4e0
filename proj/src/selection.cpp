#include "multiadic/selection.hpp"

#include "multiadic/errors.hpp"
#include "multiadic/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <string>
#include <thread>

namespace multiadic {

namespace {

using u64 = std::uint64_t;

void require_interval(const Rational& l, const Rational& r) {
    if (l < 0 || r > 1 || !(l < r))
        throw DomainError("target must satisfy 0 <= left < right <= 1, got [" + to_string(l) + ", " + to_string(r) + "]");
}

unsigned initial_m1(const StabilizationProfile& prof, u64 p, u64 q, const AdicInterval& cell,
                    const Rational& eps, bool guards) {
    unsigned m1 = 1;
    if (guards) {
        unsigned a = prof.m_pq / static_cast<unsigned>(q - 1);
        m1 = static_cast<unsigned>(std::max<u64>(a, cell.depth())) + 1;
    }
    // 1/P < eps q
    while (!(Rational(ipow(p, static_cast<unsigned long>(m1) * (q - 1))) * eps * Rational(q) > 1)) ++m1;
    return m1;
}

// least m2 >= 1 with q^(m2(p-1)) > 10 q P
u64 guard_m2(u64 p, u64 q, const Integer& P) {
    Integer bound = P * static_cast<unsigned long>(10 * q);
    Integer step = ipow(q, p - 1);
    Integer Q = step;
    u64 m2 = 1;
    while (!(Q > bound)) {
        Q *= step;
        ++m2;
    }
    return m2;
}

// [(k-1)/P, (k-1+p)/P) inside cell
bool fits_cell(const Integer& k, u64 p, const Integer& P, const AdicInterval& cell, const Integer& cell_scale) {
    Integer lhs = (k - 1) * cell_scale;
    if (lhs < (cell.index() - 1) * P) return false;
    return (k - 1 + static_cast<unsigned long>(p)) * cell_scale <= cell.index() * P;
}

SelectionResult build_candidate(u64 p, u64 q, unsigned m1, const Integer& P, const Integer& k, u64 m2,
                                const AdicInterval& cell, const Rational& eps, const SelectionOptions& opts) {
    PrimePair pair(p, q);
    SelectionResult s;
    s.p = p;
    s.q = q;
    s.target_cell = cell;
    s.epsilon = eps;
    const u64 e = static_cast<u64>(m1) * (q - 1);
    const u64 f = m2 * (p - 1);
    Integer Q = ipow(q, f);
    Integer j = (k * Q - 1) / P;
    s.I = AdicInterval(q, f - 1, (j + 1) / static_cast<unsigned long>(q));
    s.J = AdicInterval(p, e - 1, (k - 1) / static_cast<unsigned long>(p) + 1);
    s.upsilon = distinguished_points(s.J).upsilon;
    s.zeta = distinguished_points(s.I).zeta;
    s.gap = s.upsilon - s.zeta;

    NtLimits lim = opts.limits;
    lim.m2_cap = std::max<u64>(lim.m2_cap, m2);
    u64 m2_start = opts.enforce_guards ? guard_m2(p, q, P) : 1;
    s.solution = solve_pair(pair, m1, k, m2_start, lim);
    if (s.solution.m2 != m2 || s.solution.j != j)
        throw InvariantViolation("solve_pair disagrees with the selection search at m2 = " + std::to_string(m2));
    return s;
}

}  // namespace

void check_selection(const SelectionResult& s) {
    PrimePair pair(s.p, s.q);
    const PairSolution& sol = s.solution;
    Integer P = ipow(s.p, static_cast<unsigned long>(sol.m1) * (s.q - 1));
    Integer Q = ipow(s.q, sol.m2 * (s.p - 1));
    auto fail = [&](const std::string& what) {
        throw InvariantViolation("selection (p=" + std::to_string(s.p) + ", q=" + std::to_string(s.q) + "): " + what);
    };
    if (s.gap != make_rational(1, P * Q)) fail("gap != 1/(P Q)");
    if (s.upsilon - s.zeta != s.gap || !(s.gap > 0)) fail("gap is not upsilon - zeta > 0");
    if (s.gap > s.epsilon * s.I.length()) fail("gap exceeds epsilon |I|");
    if (!s.J.contains(s.I)) fail("I not inside J");
    if (!(smallest_containing(s.p, s.I) == s.J)) fail("J is not the smallest p-adic cover of I");
    if (!(s.I.left() < s.upsilon && s.upsilon < s.I.right())) fail("upsilon(J) not interior to I");
    if (s.J.left() != make_rational(sol.k - 1, P)) fail("J does not start at (k-1)/P");
    if (s.I.right() != make_rational(sol.j + 1, Q)) fail("I does not end at (j+1)/Q");
    if (!check_solution(pair, sol, stabilization_profile(pair).c_pq)) fail("pair solution invariants");
}

SelectionResult select_pair(std::uint64_t p, std::uint64_t q, const Rational& left, const Rational& right,
                            const Rational& epsilon, const SelectionOptions& opts) {
    PrimePair pair(p, q);
    if (pair.p() != p) throw DomainError("select_pair needs p > q");
    require_interval(left, right);
    if (!(epsilon > 0)) throw DomainError("epsilon must be positive");

    AdicInterval cell = largest_inside(q, left, right);
    Integer cell_scale = cell.scale();
    StabilizationProfile prof = stabilization_profile(pair, opts.limits);
    unsigned m1 = initial_m1(prof, p, q, cell, epsilon, opts.enforce_guards);

    for (unsigned attempt = 0; attempt <= opts.m1_retries; ++attempt, ++m1) {
        const unsigned long e = static_cast<unsigned long>(m1) * (q - 1);
        if (e * std::log2(static_cast<double>(p)) > opts.limits.bit_budget + 1.0)
            throw ResourceError("selection needs a modulus above the bit budget");
        Integer P = ipow(p, e);
        Integer g = powm(Integer(static_cast<unsigned long>(q)), Integer(static_cast<unsigned long>(p - 1)), P);
        Integer ginv = inverse_mod(g, P);
        Integer stride = order_of_base(pair, static_cast<unsigned>(e), opts.limits);

        u64 m2 = opts.enforce_guards ? guard_m2(p, q, P) : 1;
        Integer k = inverse_mod(powm(g, Integer(static_cast<unsigned long>(m2)), P), P);
        Integer tries = std::min<Integer>(stride, Integer(static_cast<unsigned long>(opts.m2_search_cap)));
        for (Integer it = 0; it < tries; ++it, ++m2) {
            if (k == 0) k = P;
            if (fits_cell(k, p, P, cell, cell_scale)) {
                SelectionResult s = build_candidate(p, q, m1, P, k, m2, cell, epsilon, opts);
                if (opts.enforce_guards) {
                    check_selection(s);
                    return s;
                }
                try {
                    check_selection(s);
                    return s;
                } catch (const InvariantViolation&) {
                    // without guards a candidate may legitimately miss; keep looking
                }
            }
            k = k * ginv % P;
        }
    }
    throw ResourceError("no admissible selection inside [" + to_string(left) + ", " + to_string(right) +
                        "] after " + std::to_string(opts.m1_retries + 1) + " values of m1");
}

MultiSelection select_multi(std::uint64_t q, const std::vector<std::uint64_t>& primes, const Rational& left,
                            const Rational& right, const Rational& epsilon, const SelectionOptions& opts) {
    if (primes.empty()) throw DomainError("select_multi needs at least one prime");
    require_interval(left, right);
    if (!(epsilon > 0) || !(epsilon < 1)) throw DomainError("epsilon must lie in (0, 1)");
    for (u64 pi : primes) {
        PrimePair pr(pi, q);
        if (pr.p() != pi) throw DomainError("every prime must exceed q");
    }
    const std::size_t M = primes.size(), d = M + 1;
    const AdicInterval cell = largest_inside(q, left, right);
    const Integer en = epsilon.get_num(), ed = epsilon.get_den();
    const Integer uq(static_cast<unsigned long>(q));
    const int radius = d <= 4 ? 2 : 1;

    // I = [(K-1)/q^(e-1), K/q^(e-1)), zeta = (qK-1)/q^e. For p = p_i the cover J has
    // children of length p^-D, upsilon = (p K' + 1)/p^D, and the gap condition becomes
    // (K qR - R - N) mod pN in [pN - eps q R, pN - 1] with R = p^D, N = q^e.
    u64 tries = 0;
    for (u64 e = cell.depth() + 1;; ++e) {
        if (static_cast<double>(e) * std::log2(static_cast<double>(q)) > opts.limits.bit_budget + 1.0)
            throw ResourceError("multi-prime selection exceeded the bit budget");
        ++tries;
        const Integer N = ipow(q, e);
        const Integer shift = ipow(q, e - 1 - cell.depth());
        const Integer Klo = (cell.index() - 1) * shift + 1, Khi = cell.index() * shift;

        std::vector<Integer> A(M), mod(M), lo(M), hi(M);
        bool usable = true;
        for (std::size_t i = 0; i < M && usable; ++i) {
            const Integer p(static_cast<unsigned long>(primes[i]));
            const Integer lhs = N * ed, c = (uq - 1) * ed + uq * en;
            if (c * p > lhs) {
                usable = false;
                break;
            }
            Integer R = p;
            while (c * R * p <= lhs) R *= p;
            mod[i] = N * p;
            A[i] = uq * R;
            Integer lo_off = ceil_of(Rational(mod[i]) - epsilon * Rational(uq * R));
            if (lo_off < 1) lo_off = 1;
            lo[i] = R + N + lo_off;
            hi[i] = R + N + mod[i] - 1;
            if (lo[i] > hi[i]) usable = false;
        }
        if (!usable) continue;

        std::vector<Integer> W(d);
        W[0] = Khi - Klo + 1;
        for (std::size_t i = 0; i < M; ++i) W[i + 1] = hi[i] - lo[i] + 1;
        Integer Wmax = *std::max_element(W.begin(), W.end());
        std::vector<Integer> w(d);
        for (std::size_t j = 0; j < d; ++j) w[j] = (Wmax + W[j] - 1) / W[j];
        std::vector<IntRow> basis(d, IntRow(d, Integer(0)));
        basis[0][0] = w[0];
        for (std::size_t i = 0; i < M; ++i) {
            basis[0][i + 1] = A[i] * w[i + 1];
            basis[i + 1][i + 1] = mod[i] * w[i + 1];
        }
        lll_reduce(basis);
        std::vector<Rational> target(d);
        target[0] = Rational(Klo + Khi, 2) * Rational(w[0]);
        for (std::size_t i = 0; i < M; ++i) target[i + 1] = Rational(lo[i] + hi[i], 2) * Rational(w[i + 1]);
        std::vector<Integer> c0 = babai(basis, target);

        std::set<Integer> found;
        std::vector<int> off(d, -radius);
        for (;;) {
            Integer v0 = 0;
            for (std::size_t j = 0; j < d; ++j) v0 += (c0[j] + off[j]) * basis[j][0];
            Integer K = v0 / w[0];
            bool ok = Klo <= K && K <= Khi;
            for (std::size_t i = 0; i < M && ok; ++i) {
                Integer r = K * A[i] - lo[i];
                r %= mod[i];
                if (r < 0) r += mod[i];
                ok = r <= hi[i] - lo[i];
            }
            if (ok) found.insert(K);
            std::size_t j = 0;
            while (j < d && off[j] == radius) off[j++] = -radius;
            if (j == d) break;
            ++off[j];
        }

        for (const Integer& K : found) {
            AdicInterval I(q, e - 1, K);
            Rational zeta = distinguished_points(I).zeta;
            Rational budget = epsilon * I.length();
            MultiSelection out;
            bool ok = true;
            for (std::size_t i = 0; i < M && ok; ++i) {
                AdicInterval Ji = smallest_containing(primes[i], I);
                Rational u = distinguished_points(Ji).upsilon;
                Rational gap = u - zeta;
                ok = left <= Ji.left() && Ji.right() <= right && gap > 0 && gap <= budget;
                out.J.push_back(Ji);
                out.upsilon.push_back(u);
                out.gaps.push_back(gap);
            }
            if (!ok) continue;
            out.q = q;
            out.primes = primes;
            out.I = I;
            out.zeta = zeta;
            out.epsilon = epsilon;
            out.tries = tries;
            return out;
        }
    }
}

AdicInterval host_interval(std::uint64_t N, unsigned ell) {
    if (ell < 1) throw DomainError("host index starts at 1");
    Integer s = ipow(N, ell + 1);
    return AdicInterval(N, ell + 1, s - static_cast<unsigned long>(N) + 1);
}

SelectionFamily select_family(std::uint64_t q, const std::vector<std::uint64_t>& primes,
                              const std::vector<unsigned>& alphas, const FamilyOptions& opts) {
    if (!is_prime(q)) throw DomainError(std::to_string(q) + " is not prime");
    if (primes.empty()) throw DomainError("prime list is empty");
    if (alphas.empty()) throw DomainError("block count L must be >= 1");
    std::set<u64> seen;
    u64 N = 1;
    for (u64 pi : primes) {
        if (pi == q) throw DomainError("prime set contains q = " + std::to_string(q));
        if (!is_prime(pi)) throw DomainError(std::to_string(pi) + " is not prime");
        if (pi < q) throw DomainError("prime " + std::to_string(pi) + " is below q = " + std::to_string(q));
        if (!seen.insert(pi).second) throw DomainError("duplicate prime " + std::to_string(pi));
        if (N > (u64(1) << 40) / pi) throw ResourceError("prime product too large");
        N *= pi;
    }
    for (std::size_t l = 0; l < alphas.size(); ++l) {
        unsigned a = alphas[l];
        if (a < 1) throw DomainError("alpha_" + std::to_string(l + 1) + " must be >= 1");
        if (static_cast<u64>(opts.gap_exponent) * a < 2ull * a + opts.guard)
            throw DomainError("gap exponent s = " + std::to_string(opts.gap_exponent) + " violates s*alpha >= 2*alpha + g at alpha = " +
                              std::to_string(a) + ", g = " + std::to_string(opts.guard));
    }

    SelectionFamily fam;
    fam.q = q;
    fam.primes = primes;
    fam.gap_exponent = opts.gap_exponent;
    fam.guard = opts.guard;
    fam.blocks.resize(alphas.size());
    std::vector<std::exception_ptr> errors(alphas.size());

    auto work = [&](std::size_t l) {
        try {
            FamilyBlock& b = fam.blocks[l];
            b.alpha = alphas[l];
            b.host = host_interval(N, static_cast<unsigned>(l + 1));
            b.epsilon = rpow(Rational(q), -static_cast<long>(opts.gap_exponent) * b.alpha);
            if (primes.size() == 1) {
                SelectionResult s = select_pair(primes[0], q, b.host.left(), b.host.right(), b.epsilon, opts.selection);
                b.I = s.I;
                b.J = {s.J};
                b.gaps = {s.gap};
                b.solution = s.solution;
            } else {
                MultiSelection s = select_multi(q, primes, b.host.left(), b.host.right(), b.epsilon, opts.selection);
                b.I = s.I;
                b.J = s.J;
                b.gaps = s.gaps;
            }
        } catch (...) {
            errors[l] = std::current_exception();
        }
    };

    unsigned workers = std::max(1u, opts.workers);
    if (workers == 1 || alphas.size() == 1) {
        for (std::size_t l = 0; l < alphas.size(); ++l) work(l);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t l = w; l < alphas.size(); l += workers) work(l);
            });
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    validate_family(fam);
    return fam;
}

void validate_family(const SelectionFamily& fam) {
    auto fail = [](const std::string& what) { throw InvariantViolation("selection family: " + what); };
    const std::size_t M = fam.primes.size();
    for (std::size_t l = 0; l < fam.blocks.size(); ++l) {
        const FamilyBlock& b = fam.blocks[l];
        std::string tag = "block " + std::to_string(l + 1);
        if (b.J.size() != M || b.gaps.size() != M) fail(tag + " has the wrong number of prime covers");
        if (b.epsilon != rpow(Rational(fam.q), -static_cast<long>(fam.gap_exponent) * b.alpha)) fail(tag + " epsilon");
        if (b.I.base() != fam.q) fail(tag + " I is not q-adic");
        if (!b.host.contains(b.I)) fail(tag + " I outside its host");
        Rational zeta = distinguished_points(b.I).zeta;
        for (std::size_t i = 0; i < M; ++i) {
            const AdicInterval& J = b.J[i];
            if (J.base() != fam.primes[i]) fail(tag + " J has the wrong base");
            if (!(smallest_containing(fam.primes[i], b.I) == J)) fail(tag + " J is not the smallest cover of I");
            if (!b.host.contains(J)) fail(tag + " J outside its host");
            Rational gap = distinguished_points(J).upsilon - zeta;
            if (gap != b.gaps[i]) fail(tag + " recorded gap differs");
            if (!(gap > 0) || gap > b.epsilon * b.I.length()) fail(tag + " gap condition");
        }
        for (std::size_t m = 0; m < l; ++m) {
            const FamilyBlock& o = fam.blocks[m];
            if (!b.host.disjoint(o.host)) fail("hosts overlap");
            if (!b.I.disjoint(o.I)) fail("blocks overlap");
            for (std::size_t i = 0; i < M; ++i)
                if (!b.J[i].disjoint(o.J[i])) fail("J intervals overlap for prime " + std::to_string(fam.primes[i]));
        }
    }
}

}  // namespace multiadic

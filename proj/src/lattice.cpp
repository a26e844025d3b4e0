#include "multiadic/lattice.hpp"

#include "multiadic/errors.hpp"

namespace multiadic {

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<Rational> to_q(const IntRow& r) {
    std::vector<Rational> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = Rational(r[i]);
    return v;
}

Integer nearest(const Rational& x) {
    // floor(x + 1/2)
    Rational y = x + Rational(1, 2);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return f;
}

struct Gso {
    std::vector<std::vector<Rational>> star;
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> B;
};

Gso gram_schmidt(const std::vector<IntRow>& b) {
    const std::size_t n = b.size();
    Gso g;
    g.star.resize(n);
    g.mu.assign(n, std::vector<Rational>(n, Rational(0)));
    g.B.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> v = to_q(b[i]);
        std::vector<Rational> bi = v;
        for (std::size_t j = 0; j < i; ++j) {
            g.mu[i][j] = dot(bi, g.star[j]) / g.B[j];
            for (std::size_t t = 0; t < v.size(); ++t) v[t] -= g.mu[i][j] * g.star[j][t];
        }
        g.star[i] = v;
        g.B[i] = dot(v, v);
        if (g.B[i] == 0) throw DomainError("lattice basis is degenerate");
    }
    return g;
}

}  // namespace

void lll_reduce(std::vector<IntRow>& b) {
    const std::size_t n = b.size();
    if (n < 2) return;
    const Rational delta(3, 4);
    Gso g = gram_schmidt(b);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t jj = k; jj-- > 0;) {
            Integer r = nearest(g.mu[k][jj]);
            if (r == 0) continue;
            for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[jj][t];
            for (std::size_t t = 0; t < jj; ++t) g.mu[k][t] -= Rational(r) * g.mu[jj][t];
            g.mu[k][jj] -= Rational(r);
        }
        if (g.B[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            g = gram_schmidt(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
}

std::vector<Integer> babai(const std::vector<IntRow>& b, const std::vector<Rational>& target) {
    const std::size_t n = b.size();
    Gso g = gram_schmidt(b);
    std::vector<Rational> t = target;
    std::vector<Integer> c(n, Integer(0));
    for (std::size_t i = n; i-- > 0;) {
        Integer r = nearest(dot(t, g.star[i]) / g.B[i]);
        c[i] = r;
        for (std::size_t s = 0; s < t.size(); ++s) t[s] -= Rational(r * b[i][s]);
    }
    return c;
}

}  // namespace multiadic

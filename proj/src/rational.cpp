#include "multiadic/rational.hpp"

#include "multiadic/errors.hpp"

#include <mpfr.h>

#include <cctype>
#include <limits>

namespace multiadic {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
    std::string_view body = text;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body)) throw DomainError("not an integer: '" + std::string(text) + "'");
    Integer z(std::string(body), 10);
    return neg ? Integer(-z) : z;
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view d = text.substr(slash + 1);
    if (!all_digits(d)) throw DomainError("bad denominator in '" + std::string(text) + "'");
    return make_rational(num, Integer(std::string(d), 10));
}

Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Integer ipow(unsigned long base, unsigned long exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

Rational rpow(const Rational& base, long exp) {
    if (exp >= 0) {
        return make_rational(ipow(base.get_num(), static_cast<unsigned long>(exp)),
                             ipow(base.get_den(), static_cast<unsigned long>(exp)));
    }
    if (base == 0) throw DomainError("zero to a negative power");
    unsigned long e = static_cast<unsigned long>(-exp);
    return make_rational(ipow(base.get_den(), e), ipow(base.get_num(), e));
}

Integer floor_of(const Rational& r) {
    Integer z;
    mpz_fdiv_q(z.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return z;
}

Integer ceil_of(const Rational& r) {
    Integer z;
    mpz_cdiv_q(z.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return z;
}

std::size_t bit_length(const Integer& z) {
    if (z == 0) return 0;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
}

Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("no inverse of " + a.get_str() + " mod " + m.get_str());
    return r;
}

Integer powm(const Integer& base, const Integer& exp, const Integer& mod) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

std::uint64_t to_u64(const Integer& z) {
    if (z < 0 || bit_length(z) > 64) throw ResourceError("integer does not fit 64 bits: " + z.get_str());
    std::uint64_t lo = mpz_getlimbn(z.get_mpz_t(), 0);
    if constexpr (sizeof(mp_limb_t) < 8) {
        lo |= static_cast<std::uint64_t>(mpz_getlimbn(z.get_mpz_t(), 1)) << 32;
    }
    return lo;
}

std::string to_decimal(const Rational& r, int digits) {
    mpfr_t x;
    mpfr_init2(x, static_cast<mpfr_prec_t>(digits * 4 + 16));
    mpfr_set_q(x, r.get_mpq_t(), MPFR_RNDN);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, x);
    std::string out(buf);
    mpfr_free_str(buf);
    mpfr_clear(x);
    return out;
}

}  // namespace multiadic

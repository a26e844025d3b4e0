#include "multiadic/enclosure.hpp"

#include "multiadic/errors.hpp"

#include <utility>

namespace multiadic {

Enclosure::Enclosure(unsigned bits) : bits_(bits) {
    mpfr_init2(lo_, bits);
    mpfr_init2(hi_, bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Rational& r, unsigned bits) : bits_(bits) {
    mpfr_init2(lo_, bits);
    mpfr_init2(hi_, bits);
    mpfr_set_q(lo_, r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, r.get_mpq_t(), MPFR_RNDU);
}

Enclosure::Enclosure(const Enclosure& o) : bits_(o.bits_) {
    mpfr_init2(lo_, bits_);
    mpfr_init2(hi_, bits_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& o) noexcept : Enclosure(o.bits_) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Enclosure& Enclosure::operator=(Enclosure o) noexcept {
    std::swap(bits_, o.bits_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Enclosure::~Enclosure() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Enclosure Enclosure::from_strings(const std::string& lo, const std::string& hi, unsigned bits) {
    Enclosure e(bits);
    // Endpoints were printed outward with enough digits to sit within one
    // binary ulp of the stored float, so rounding inward recovers it exactly.
    if (mpfr_set_str(e.lo_, lo.c_str(), 10, MPFR_RNDU) != 0 ||
        mpfr_set_str(e.hi_, hi.c_str(), 10, MPFR_RNDD) != 0)
        throw DomainError("bad enclosure endpoint '" + lo + "' / '" + hi + "'");
    if (mpfr_cmp(e.lo_, e.hi_) > 0) throw DomainError("enclosure with lo > hi");
    return e;
}

namespace {

std::string mpfr_string(const __mpfr_struct* x, mpfr_rnd_t rnd) {
    if (mpfr_zero_p(x)) return "0";
    if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
    mpfr_exp_t e = 0;
    std::size_t n = 2 + static_cast<std::size_t>(mpfr_get_prec(x) * 0.30103) + 1;
    char* s = mpfr_get_str(nullptr, &e, 10, n, x, rnd);
    std::string digits(s);
    mpfr_free_str(s);
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    // scientific: d.ddd e(E-1)
    std::string out = neg ? "-" : "";
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

Rational mpfr_rational(const __mpfr_struct* x) {
    if (!mpfr_number_p(x)) throw PrecisionInsufficient("non-finite enclosure endpoint");
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    if (e >= 0) return Rational(Integer(m << static_cast<unsigned long>(e)));
    return make_rational(m, ipow(Integer(2), static_cast<unsigned long>(-e)));
}

}  // namespace

std::string Enclosure::lo_string() const { return mpfr_string(lo_, MPFR_RNDD); }
std::string Enclosure::hi_string() const { return mpfr_string(hi_, MPFR_RNDU); }
Rational Enclosure::lo_rational() const { return mpfr_rational(lo_); }
Rational Enclosure::hi_rational() const { return mpfr_rational(hi_); }

bool Enclosure::contains(const Rational& r) const {
    return mpfr_cmp_q(lo_, r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, r.get_mpq_t()) >= 0;
}

bool Enclosure::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool Enclosure::certainly_le(const Enclosure& o) const { return mpfr_lessequal_p(hi_, o.lo_) != 0; }
bool Enclosure::certainly_lt(const Enclosure& o) const { return mpfr_less_p(hi_, o.lo_) != 0; }

bool Enclosure::operator==(const Enclosure& o) const {
    return bits_ == o.bits_ && mpfr_equal_p(lo_, o.lo_) && mpfr_equal_p(hi_, o.hi_);
}

Enclosure Enclosure::operator+(const Enclosure& o) const {
    Enclosure r(std::max(bits_, o.bits_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::operator-(const Enclosure& o) const {
    Enclosure r(std::max(bits_, o.bits_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::operator*(const Enclosure& o) const {
    unsigned bits = std::max(bits_, o.bits_);
    Enclosure r(bits);
    mpfr_t t;
    mpfr_init2(t, bits);
    const __mpfr_struct* xs[2] = {lo_, hi_};
    const __mpfr_struct* ys[2] = {o.lo_, o.hi_};
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        }
    mpfr_clear(t);
    return r;
}

Enclosure Enclosure::operator/(const Enclosure& o) const {
    if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
        throw PrecisionInsufficient("division by an enclosure containing zero");
    unsigned bits = std::max(bits_, o.bits_);
    Enclosure r(bits);
    mpfr_t t;
    mpfr_init2(t, bits);
    const __mpfr_struct* xs[2] = {lo_, hi_};
    const __mpfr_struct* ys[2] = {o.lo_, o.hi_};
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_div(t, x, y, MPFR_RNDD);
            mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
            mpfr_div(t, x, y, MPFR_RNDU);
            mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        }
    mpfr_clear(t);
    return r;
}

Enclosure Enclosure::exp() const {
    Enclosure r(bits_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::log() const {
    if (mpfr_sgn(lo_) <= 0) throw PrecisionInsufficient("log of an enclosure not bounded away from zero");
    Enclosure r(bits_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::pow(const Enclosure& y) const { return (y * log()).exp(); }

Enclosure Enclosure::pow(const Rational& y) const { return pow(Enclosure(y, bits_)); }

Enclosure Enclosure::hull(const Enclosure& x, const Enclosure& y) {
    Enclosure r(std::max(x.bits_, y.bits_));
    mpfr_min(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::max_of(const Enclosure& x, const Enclosure& y) {
    Enclosure r(std::max(x.bits_, y.bits_));
    mpfr_max(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
    return r;
}

}  // namespace multiadic

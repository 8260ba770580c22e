#include "sumfree/rational.hpp"

#include <optional>
#include <ostream>

namespace sumfree {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero();
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational make_rational(const Integer& p, const Integer& q) { return Rational(p, q); }

Rational Rational::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
}

std::string Rational::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
    if (digits < 0) digits = 0;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer scaled = ::abs(q_.get_num()) * scale;
    Integer truncated;
    mpz_tdiv_q(truncated.get_mpz_t(), scaled.get_mpz_t(), q_.get_den().get_mpz_t());
    std::string body = truncated.get_str();
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits))
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    return (sign() < 0 ? "-" : "") + body;
}

namespace {

// Parses an optional sign followed by one or more digits.
Integer parse_integer(std::string_view text, std::size_t& pos, std::size_t offset, bool allow_sign) {
    bool negative = false;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    const std::size_t digits_begin = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits_begin)
        throw ParseError("expected digit", offset + pos);
    Integer value(std::string(text.substr(digits_begin, pos - digits_begin)), 10);
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational Rational::parse(std::string_view text, std::size_t offset) {
    if (text.empty()) throw ParseError("empty rational", offset);
    std::size_t pos = 0;
    Integer num = parse_integer(text, pos, offset, true);
    Integer den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        const std::size_t den_pos = pos;
        den = parse_integer(text, pos, offset, false);
        if (den == 0) throw ParseError("zero denominator", offset + den_pos);
    }
    if (pos != text.size())
        throw ParseError(std::string("unexpected character '") + text[pos] + "'", offset + pos);
    return Rational(num, den);
}

namespace {

Rational floor_of(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
    return Rational(f);
}

// Simplest rational in (lo, hi) for 0 <= lo; an empty `hi` means +infinity.
Rational simplest_nonneg(const Rational& lo, const std::optional<Rational>& hi) {
    const Rational fl = floor_of(lo);
    const Rational next = fl + 1;
    if (!hi || next < *hi) return next;
    // (lo, hi) lies within [fl, fl + 1].
    const Rational lo_frac = lo - fl;
    const Rational inner_lo = (*hi - fl).inverse();
    std::optional<Rational> inner_hi;
    if (!lo_frac.is_zero()) inner_hi = lo_frac.inverse();
    return fl + simplest_nonneg(inner_lo, inner_hi).inverse();
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw Error("simplest_between: empty interval");
    if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
    if (hi.sign() <= 0) return -simplest_nonneg(-hi, -lo);
    return simplest_nonneg(lo, hi);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace sumfree

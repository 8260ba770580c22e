#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rationals.
 *
 * Thin value type over GMP's mpq_class. Values are always canonical:
 * denominator positive, gcd(|num|, den) = 1, zero stored as 0/1.
 * Nothing in the library converts a Rational to floating point except
 * to_decimal(), which is for reports only.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sumfree {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// Syntax error in textual input; `position` is a 0-based character offset.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t position)
        : Error(std::move(message) + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

using Integer = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT
    explicit Rational(const Integer& value) : q_(value) {}
    /// Takes a GMP rational; canonicalizes it.
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// num/den reduced; throws DivisionByZero when den == 0.
    Rational(const Integer& num, const Integer& den);

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    /// Throws DivisionByZero for zero.
    Rational inverse() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// "p/q", or "p" when the denominator is 1.
    std::string to_string() const;

    /// Fixed-point decimal with `digits` fractional digits, truncated toward zero.
    std::string to_decimal(int digits = 6) const;

    /// Accepts "p", "p/q" with optional leading '-' or '+'; whitespace not allowed.
    /// `offset` is added to reported error positions.
    static Rational parse(std::string_view text, std::size_t offset = 0);

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

/// Canonical p/q; throws DivisionByZero on q == 0.
Rational make_rational(const Integer& p, const Integer& q);
inline Rational make_rational(long p, long q) { return make_rational(Integer(p), Integer(q)); }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// The rational with the smallest denominator (then smallest |numerator|)
/// strictly inside (lo, hi). Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace sumfree

#include <doctest.h>

#include <numeric>
#include <optional>
#include <random>

#include "sumfree/rational.hpp"

using sumfree::DivisionByZero;
using sumfree::make_rational;
using sumfree::ParseError;
using sumfree::Rational;

namespace {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-2000, 2000), den(1, 500);
    return make_rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("make_rational canonicalizes") {
    CHECK(make_rational(2, 4).to_string() == "1/2");
    CHECK(make_rational(-3, -6).to_string() == "1/2");
    CHECK(make_rational(3, -6).to_string() == "-1/2");
    CHECK(std::gcd(77, 177) == 1);
    const Rational r = make_rational(77, 177);
    CHECK(r.numerator() == 77);
    CHECK(r.denominator() == 177);
    CHECK(make_rational(0, -5).to_string() == "0");
    CHECK(make_rational(0, -5).denominator() == 1);
    CHECK_THROWS_AS(make_rational(1, 0), DivisionByZero);
}

TEST_CASE("arithmetic examples") {
    CHECK(make_rational(1, 2) + make_rational(-1, 114) == make_rational(28, 57));
    CHECK(make_rational(1, 3) * make_rational(77, 177) == make_rational(77, 531));
    CHECK(make_rational(4, 9) < make_rational(1, 2));
    CHECK(sumfree::min(make_rational(4, 9), make_rational(1, 2)) == make_rational(4, 9));
    CHECK(sumfree::max(make_rational(4, 9), make_rational(1, 2)) == make_rational(1, 2));
    CHECK(make_rational(1, 2) - make_rational(1, 3) == make_rational(1, 6));
    CHECK(make_rational(1, 2) / make_rational(1, 4) == Rational(2));
    CHECK_THROWS_AS(make_rational(1, 2) / Rational(0), DivisionByZero);
    CHECK_THROWS_AS(Rational(0).inverse(), DivisionByZero);
}

TEST_CASE("field axioms hold exactly on random triples") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a + (-a) == Rational(0));
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    }
}

TEST_CASE("scaling numerator and denominator preserves the value") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-10000, 10000), den(1, 10000), s(-50, 50);
    for (int trial = 0; trial < 2000; ++trial) {
        const long p = num(rng), q = den(rng);
        long k = s(rng);
        if (k == 0) k = 3;
        const Rational r = make_rational(p, q);
        CHECK(make_rational(p * k, q * k) == r);
        CHECK(r.denominator() > 0);
        CHECK(gcd(sumfree::Integer(abs(r.numerator())), r.denominator()) == 1);
    }
}

TEST_CASE("comparison agrees with cross multiplication") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    for (int trial = 0; trial < 2000; ++trial) {
        const long p1 = num(rng), q1 = den(rng), p2 = num(rng), q2 = den(rng);
        const long cross = p1 * q2 - p2 * q1;
        const auto c = make_rational(p1, q1) <=> make_rational(p2, q2);
        CHECK((cross < 0) == (c < 0));
        CHECK((cross == 0) == (c == 0));
        CHECK((cross > 0) == (c > 0));
    }
}

TEST_CASE("text form") {
    CHECK(Rational::parse("77/177") == make_rational(77, 177));
    CHECK(Rational::parse("-1/114") == make_rational(-1, 114));
    CHECK(Rational::parse("+6/4").to_string() == "3/2");
    CHECK(Rational::parse("1").to_string() == "1");
    CHECK(make_rational(-1, 114).to_string() == "-1/114");

    try {
        Rational::parse("12/x", 5);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 8);
    }
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const Rational r = random_rational(rng);
        CHECK(Rational::parse(r.to_string()) == r);
    }
}

TEST_CASE("decimal rendering") {
    CHECK(make_rational(77, 177).to_decimal(6) == "0.435028");
    CHECK(make_rational(-1, 114).to_decimal(4) == "-0.0087");
    CHECK(Rational(3).to_decimal(2) == "3.00");
    CHECK(make_rational(2, 3).to_decimal(0) == "0");
}

TEST_CASE("simplest_between finds the smallest denominator") {
    CHECK(sumfree::simplest_between(make_rational(1, 2), make_rational(2, 3)) == make_rational(3, 5));
    CHECK(sumfree::simplest_between(make_rational(-1, 3), make_rational(1, 3)) == Rational(0));
    CHECK(sumfree::simplest_between(make_rational(-2, 3), make_rational(-1, 2)) == make_rational(-3, 5));
    CHECK(sumfree::simplest_between(Rational(1), Rational(3)) == Rational(2));
    CHECK(sumfree::simplest_between(Rational(0), make_rational(1, 100)) == make_rational(1, 101));

    // Oracle: for each denominator q in turn, the least p with p/q > lo.
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<long> num(0, 300), den(1, 60);
    for (int trial = 0; trial < 300; ++trial) {
        Rational lo = make_rational(num(rng), den(rng)), hi = make_rational(num(rng), den(rng));
        if (lo == hi) continue;
        if (hi < lo) std::swap(lo, hi);
        std::optional<Rational> expected;
        for (long q = 1; !expected; ++q) {
            // floor(lo * q) + 1 by integer division (lo >= 0)
            const sumfree::Integer p = lo.numerator() * q / lo.denominator() + 1;
            const Rational candidate = make_rational(p, sumfree::Integer(q));
            if (candidate < hi) expected = candidate;
        }
        CHECK(sumfree::simplest_between(lo, hi) == *expected);
    }
}

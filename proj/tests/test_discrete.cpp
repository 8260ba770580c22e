#include <doctest.h>

#include <algorithm>
#include <cstdint>

#include "sumfree/discrete.hpp"

using namespace sumfree;
using namespace sumfree::discrete;

namespace {

// Independent triple check straight from the definition, O(n^3).
bool triple_free(const Set& s, long k) {
    for (long a : s)
        for (long b : s)
            for (long c : s)
                if (a + b == k * c && !(k == 2 && a == b)) return false;
    return true;
}

Set from_mask(std::uint32_t mask, long n) {
    Set s;
    for (long i = 1; i <= n; ++i)
        if (mask >> (i - 1) & 1u) s.push_back(i);
    return s;
}

// All maximum-cardinality free sets by exhaustive search over 2^n subsets.
std::vector<Set> brute_force_maximum(long n, long k) {
    std::vector<Set> best;
    std::size_t best_size = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
        if (size < best_size) continue;
        Set s = from_mask(mask, n);
        if (!triple_free(s, k)) continue;
        if (size > best_size) best.clear(), best_size = size;
        best.push_back(std::move(s));
    }
    std::sort(best.begin(), best.end());
    return best;
}

Set range(long lo, long hi) {
    Set s;
    for (long i = lo; i <= hi; ++i) s.push_back(i);
    return s;
}

Set odds(long n) {
    Set s;
    for (long i = 1; i <= n; i += 2) s.push_back(i);
    return s;
}

}  // namespace

TEST_CASE("forbidden triples") {
    CHECK(forbidden_triples({4, 3}).triples == std::vector<Triple>{{1, 2, 1}, {2, 4, 2}, {3, 3, 2}});
    CHECK(forbidden_triples({2, 1}).triples == std::vector<Triple>{{1, 1, 2}});
    CHECK(forbidden_triples({3, 2}).triples == std::vector<Triple>{{1, 3, 2}});

    for (long n = 1; n <= 20; ++n)
        for (long k = 1; k <= 5; ++k) {
            std::vector<Triple> expected;
            for (long a = 1; a <= n; ++a)
                for (long b = a; b <= n; ++b)
                    for (long c = 1; c <= n; ++c)
                        if (a + b == k * c && !(k == 2 && a == b)) expected.push_back({a, b, c});
            CHECK(forbidden_triples({n, k}).triples == expected);
        }
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(validate({0, 3}), Error);
    CHECK_THROWS_AS(validate({5, 0}), Error);
    CHECK_THROWS_AS(validate({kMaxN + 1, 3}), Error);
    CHECK_NOTHROW(validate({kMaxN, 3}));
}

TEST_CASE("f examples") {
    CHECK(f_max({10, 1}).value == 5);
    const MaxResult r23 = f_max({23, 3});
    CHECK(r23.value == 12);
    CHECK(r23.witness.size() == 12);
    CHECK(triple_free(r23.witness, 3));
    CHECK(f_max({4, 3}).value == 3);
    CHECK(f_max({9, 2}).value == static_cast<long>(brute_force_maximum(9, 2).front().size()));
}

TEST_CASE("f agrees with exhaustive search") {
    for (long n = 1; n <= 15; ++n)
        for (long k = 1; k <= 5; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            const auto brute = brute_force_maximum(n, k);
            const MaxResult res = f_max({n, k});
            CHECK(res.value == static_cast<long>(brute.front().size()));
            CHECK(static_cast<long>(res.witness.size()) == res.value);
            CHECK(triple_free(res.witness, k));
            CHECK(is_sum_free({n, k}, res.witness));
            CHECK(std::is_sorted(res.witness.begin(), res.witness.end()));
            if (n <= 12) CHECK(enumerate_maximum_sets({n, k}) == brute);
        }
}

TEST_CASE("maximum set enumeration") {
    CHECK(enumerate_maximum_sets({11, 1}) == std::vector<Set>{odds(11), range(6, 11)});
    CHECK(enumerate_maximum_sets({10, 1}) == std::vector<Set>{odds(10), range(5, 9), range(6, 10)});
    CHECK(enumerate_maximum_sets({23, 3}) == std::vector<Set>{odds(23)});
    for (const auto& s : enumerate_maximum_sets({18, 2})) CHECK(triple_free(s, 2));
}

TEST_CASE("enumeration node limit") {
    try {
        enumerate_maximum_sets({30, 1}, 50);
        FAIL("expected NodeLimitExceeded");
    } catch (const NodeLimitExceeded& e) {
        for (const auto& s : e.partial()) CHECK(triple_free(s, 1));
    }
    CHECK_NOTHROW(enumerate_maximum_sets({11, 1}, 1000000));
}

TEST_CASE("ceilings and monotonicity up to 30") {
    for (long k : {1L, 2L, 3L, 4L}) {
        long prev = 0;
        for (long n = 1; n <= 30; ++n) {
            const MaxResult res = f_max({n, k});
            CHECK(res.value >= prev);
            CHECK(res.value <= prev + 1);
            CHECK(triple_free(res.witness, k));
            prev = res.value;
            const long ceiling = (n + 1) / 2;
            if (k == 1) CHECK(res.value == ceiling);
            if (k == 3) CHECK(res.value == (n == 4 ? 3 : ceiling));
        }
    }
}

TEST_CASE("discretized continuous sets") {
    const auto top = IntervalUnion::single(make_rational(2, 3), Rational(1));
    CHECK(discretize(top, 9, 3) == Set{7, 8});

    const auto best = IntervalUnion::parse("(8/177,4/59);(28/177,14/59);(2/3,1)");
    const Set big = discretize(best, 177, 3);
    CHECK(big.size() == 74);
    CHECK(is_sum_free({64, 3}, discretize(best, 64, 3)));

    CHECK_THROWS_AS(discretize(IntervalUnion::single(make_rational(1, 2), Rational(1)), 10, 3), Error);

    for (long n = 1; n <= 40; ++n) {
        const Set s = discretize(best, n, 3);
        CHECK(triple_free(s, 3));
        CHECK(static_cast<long>(s.size()) <= f_max({n, 3}).value);
    }
    const auto four = IntervalUnion::parse("(1/110,1/55);(7/110,7/55);(1/2,1)");
    for (long n = 10; n <= 40; n += 10) {
        const Set s = discretize(four, n, 4);
        CHECK(triple_free(s, 4));
        CHECK(static_cast<long>(s.size()) <= f_max({n, 4}).value);
    }
}

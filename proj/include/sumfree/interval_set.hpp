#pragma once

// Finite unions of open intervals with rational endpoints.
//
// Everything here is measure-theoretic: (a,b) and (b,c) are stored merged as
// (a,c), and sets that meet in a single point do not intersect.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumfree/rational.hpp"

namespace sumfree {

struct Interval {
    Rational lo;
    Rational hi;

    /// Throws Error unless lo < hi.
    Interval(Rational lo_, Rational hi_);

    Rational length() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo < x && x < hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

class IntervalUnion {
public:
    IntervalUnion() = default;

    /// Sorts, drops pairs with lo >= hi, merges overlapping and touching pairs.
    static IntervalUnion canonicalize(std::vector<std::pair<Rational, Rational>> raw);
    static IntervalUnion single(const Rational& lo, const Rational& hi);

    /// Parses "(p/q,r/s);(p/q,r/s)". The empty string is the empty union.
    /// Intervals need not be sorted or disjoint; the result is canonicalized.
    static IntervalUnion parse(std::string_view text);

    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    bool empty() const { return intervals_.empty(); }
    const Interval& operator[](std::size_t i) const { return intervals_[i]; }
    auto begin() const { return intervals_.begin(); }
    auto end() const { return intervals_.end(); }

    Rational measure() const;
    /// True when x lies strictly inside one of the intervals.
    bool contains(const Rational& x) const;
    /// Measure-theoretic inclusion: every interval of *this lies inside one of `other`.
    bool subset_of(const IntervalUnion& other) const;

    std::string to_string() const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    std::vector<Interval> intervals_;
};

/// Machine check of the canonical-form invariant: strictly increasing with gaps.
bool is_canonical(const std::vector<Interval>& intervals);

IntervalUnion unite(const IntervalUnion& u, const IntervalUnion& v);
IntervalUnion intersect(const IntervalUnion& u, const IntervalUnion& v);
IntervalUnion subtract(const IntervalUnion& u, const IntervalUnion& v);

IntervalUnion minkowski_sum(const IntervalUnion& u, const IntervalUnion& v);

/// Dilation by q > 0; throws Error otherwise.
IntervalUnion scale(const IntervalUnion& u, const Rational& q);

struct Extent {
    Rational inf;
    Rational sup;
    Rational diam;
};

/// Throws Error for the empty union.
Extent extent(const IntervalUnion& u);

/// x + y = k z with x, y, z inside the set.
struct SumWitness {
    Rational x;
    Rational y;
    Rational z;
};

struct SumFreeVerdict {
    bool sum_free = true;
    std::optional<SumWitness> witness;
};

/// (U+U)/k against U. Throws Error when k == 0.
SumFreeVerdict is_k_sum_free(const IntervalUnion& u, long k);

}  // namespace sumfree

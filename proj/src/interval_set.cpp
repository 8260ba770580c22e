#include "sumfree/interval_set.hpp"

#include <algorithm>
#include <cctype>

namespace sumfree {

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (!(lo < hi)) throw Error("interval requires lo < hi, got (" + lo.to_string() + "," + hi.to_string() + ")");
}

IntervalUnion IntervalUnion::canonicalize(std::vector<std::pair<Rational, Rational>> raw) {
    std::erase_if(raw, [](const auto& p) { return !(p.first < p.second); });
    std::sort(raw.begin(), raw.end());
    IntervalUnion out;
    for (auto& [lo, hi] : raw) {
        if (!out.intervals_.empty() && lo <= out.intervals_.back().hi) {
            if (out.intervals_.back().hi < hi) out.intervals_.back().hi = std::move(hi);
        } else {
            out.intervals_.emplace_back(std::move(lo), std::move(hi));
        }
    }
    return out;
}

IntervalUnion IntervalUnion::single(const Rational& lo, const Rational& hi) {
    return canonicalize({{lo, hi}});
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool at_end() const { return pos >= text.size(); }
    void expect(char c) {
        skip_ws();
        if (at_end()) throw ParseError(std::string("expected '") + c + "' but input ended", pos);
        if (text[pos] != c)
            throw ParseError(std::string("expected '") + c + "', found '" + text[pos] + "'", pos);
        ++pos;
    }
    Rational rational(std::string_view stops) {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && stops.find(text[pos]) == std::string_view::npos &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        return Rational::parse(text.substr(start, pos - start), start);
    }
};

}  // namespace

IntervalUnion IntervalUnion::parse(std::string_view text) {
    Cursor cur{text};
    std::vector<std::pair<Rational, Rational>> raw;
    cur.skip_ws();
    if (cur.at_end()) return {};
    for (;;) {
        cur.expect('(');
        const std::size_t lo_pos = cur.pos;
        Rational lo = cur.rational(",)");
        cur.expect(',');
        Rational hi = cur.rational(",)");
        cur.expect(')');
        if (!(lo < hi)) throw ParseError("interval requires lo < hi", lo_pos);
        raw.emplace_back(std::move(lo), std::move(hi));
        cur.skip_ws();
        if (cur.at_end()) break;
        cur.expect(';');
    }
    return canonicalize(std::move(raw));
}

Rational IntervalUnion::measure() const {
    Rational total;
    for (const auto& iv : intervals_) total += iv.length();
    return total;
}

bool IntervalUnion::contains(const Rational& x) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.hi; });
    return it != intervals_.end() && it->contains(x);
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
    return subtract(*this, other).empty();
}

std::string IntervalUnion::to_string() const {
    std::string out;
    for (const auto& iv : intervals_) {
        if (!out.empty()) out += ';';
        out += '(' + iv.lo.to_string() + ',' + iv.hi.to_string() + ')';
    }
    return out;
}

bool is_canonical(const std::vector<Interval>& intervals) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (!(intervals[i].lo < intervals[i].hi)) return false;
        if (i > 0 && !(intervals[i - 1].hi < intervals[i].lo)) return false;
    }
    return true;
}

namespace {

std::vector<std::pair<Rational, Rational>> as_pairs(const IntervalUnion& u) {
    std::vector<std::pair<Rational, Rational>> out;
    out.reserve(u.size());
    for (const auto& iv : u) out.emplace_back(iv.lo, iv.hi);
    return out;
}

}  // namespace

IntervalUnion unite(const IntervalUnion& u, const IntervalUnion& v) {
    auto raw = as_pairs(u);
    for (const auto& iv : v) raw.emplace_back(iv.lo, iv.hi);
    return IntervalUnion::canonicalize(std::move(raw));
}

IntervalUnion intersect(const IntervalUnion& u, const IntervalUnion& v) {
    std::vector<std::pair<Rational, Rational>> raw;
    std::size_t i = 0, j = 0;
    while (i < u.size() && j < v.size()) {
        const Rational& lo = max(u[i].lo, v[j].lo);
        const Rational& hi = min(u[i].hi, v[j].hi);
        if (lo < hi) raw.emplace_back(lo, hi);
        if (u[i].hi < v[j].hi) ++i; else ++j;
    }
    return IntervalUnion::canonicalize(std::move(raw));
}

IntervalUnion subtract(const IntervalUnion& u, const IntervalUnion& v) {
    std::vector<std::pair<Rational, Rational>> raw;
    std::size_t j = 0;
    for (const auto& iv : u) {
        Rational cursor = iv.lo;
        while (j < v.size() && v[j].hi <= cursor) ++j;
        std::size_t k = j;
        while (k < v.size() && v[k].lo < iv.hi) {
            if (cursor < v[k].lo) raw.emplace_back(cursor, v[k].lo);
            cursor = max(cursor, v[k].hi);
            ++k;
        }
        if (cursor < iv.hi) raw.emplace_back(cursor, iv.hi);
    }
    return IntervalUnion::canonicalize(std::move(raw));
}

IntervalUnion minkowski_sum(const IntervalUnion& u, const IntervalUnion& v) {
    std::vector<std::pair<Rational, Rational>> raw;
    raw.reserve(u.size() * v.size());
    for (const auto& a : u)
        for (const auto& b : v) raw.emplace_back(a.lo + b.lo, a.hi + b.hi);
    return IntervalUnion::canonicalize(std::move(raw));
}

IntervalUnion scale(const IntervalUnion& u, const Rational& q) {
    if (q.sign() <= 0) throw Error("scale factor must be positive, got " + q.to_string());
    std::vector<std::pair<Rational, Rational>> raw;
    raw.reserve(u.size());
    for (const auto& iv : u) raw.emplace_back(iv.lo * q, iv.hi * q);
    return IntervalUnion::canonicalize(std::move(raw));
}

Extent extent(const IntervalUnion& u) {
    if (u.empty()) throw Error("extent of empty union");
    const Rational& inf = u.intervals().front().lo;
    const Rational& sup = u.intervals().back().hi;
    return {inf, sup, sup - inf};
}

SumFreeVerdict is_k_sum_free(const IntervalUnion& u, long k) {
    if (k <= 0) throw Error("k must be a positive integer");
    const Rational kq(k);
    const auto& ivs = u.intervals();
    // Pairwise sums are checked before merging: a merged sum component may
    // contain a junction point that is not itself a sum.
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        for (std::size_t j = i; j < ivs.size(); ++j) {
            const Rational sum_lo = ivs[i].lo + ivs[j].lo;
            const Rational sum_hi = ivs[i].hi + ivs[j].hi;
            const Rational c_lo = sum_lo / kq;
            const Rational c_hi = sum_hi / kq;
            for (const auto& target : ivs) {
                const Rational& lo = max(c_lo, target.lo);
                const Rational& hi = min(c_hi, target.hi);
                if (!(lo < hi)) continue;
                const Rational z = simplest_between(lo, hi);
                const Rational s = kq * z;
                const Rational wi = ivs[i].length();
                const Rational wj = ivs[j].length();
                const Rational x = ivs[i].lo + (s - sum_lo) * wi / (wi + wj);
                return {false, SumWitness{x, s - x, z}};
            }
        }
    }
    return {};
}

}  // namespace sumfree

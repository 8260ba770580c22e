#include "sumfree/certifier.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace sumfree::certify {

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

void append_term(std::string& out, const Rational& coef, const char* name) {
    if (coef.is_zero()) return;
    if (!out.empty()) out += coef.sign() < 0 ? " - " : " + ";
    else if (coef.sign() < 0) out += "-";
    const Rational mag = coef.abs();
    if (*name == '\0') out += mag.to_string();
    else if (mag == 1) out += name;
    else out += mag.to_string() + "*" + name;
}

}  // namespace

std::string AffineForm::to_string() const {
    std::string out;
    append_term(out, constant, "");
    append_term(out, a_coef, "a");
    append_term(out, delta_coef, "delta");
    append_term(out, eps_coef, "eps");
    return out.empty() ? "0" : out;
}

const char* to_string(Branch b) {
    switch (b) {
        case Branch::A2Empty: return "A2Empty";
        case Branch::Gap: return "Gap";
        case Branch::Overlap: return "Overlap";
    }
    return "?";
}

const char* to_string(StepKind k) {
    switch (k) {
        case StepKind::Derivation: return "derivation";
        case StepKind::Case: return "case";
        case StepKind::Contradiction: return "contradiction";
    }
    return "?";
}

bool Certificate::all_pass() const { return consistent(steps); }

bool consistent(const std::vector<Step>& steps) {
    return std::all_of(steps.begin(), steps.end(),
                       [](const Step& s) { return s.kind != StepKind::Derivation || s.holds; });
}

namespace {

// Measure bounds for the pieces of A' = A1 u A2 u A3 and for A \ A'.
const Term kA1{"|A1| <= a/6 + 1/9", {q(1, 9), q(1, 6), 0, 0}};
const Term kA3{"|A3| <= 1/3", {q(1, 3), 0, 0, 0}};
const Term kRemoved{"|A \\ A'| <= 2*delta", {0, 0, q(2), 0}};

std::vector<Term> branch_terms(Branch b) {
    switch (b) {
        case Branch::A2Empty:
            return {kA1, kA3, kRemoved};
        case Branch::Gap:
            return {{"d - a <= 4/9 - a", {q(4, 9), q(-1), 0, 0}},
                    {"b - c < -1/3", {q(-1, 3), 0, 0, 0}},
                    kA3, kRemoved};
        case Branch::Overlap:
            return {kA1, {"|A2| <= 8*delta/3", {0, 0, q(8, 3), 0}}, kA3, kRemoved};
    }
    return {};
}

// Totals as displayed at the end of each branch.
AffineForm displayed_total(Branch b) {
    switch (b) {
        case Branch::A2Empty: return {q(4, 9), 0, q(2, 3) + q(2), 0};
        case Branch::Gap: return {q(4, 9), 0, q(2), 0};
        case Branch::Overlap: return {q(4, 9), 0, q(16, 3), 0};
    }
    return {};
}

AffineForm sum_terms(const std::vector<Term>& terms) {
    AffineForm total;
    for (const auto& t : terms) total = total + t.bound;
    return total;
}

// Worst case over 0 <= a <= 4 delta.
AffineForm eliminate_a(AffineForm f) {
    if (f.a_coef.sign() > 0) f.delta_coef += 4 * f.a_coef;
    f.a_coef = 0;
    return f;
}

const Rational kHalf = q(1, 2);

Step make_step(std::string name, StepKind kind, Rational lhs, std::string rel, Rational rhs) {
    bool holds = false;
    if (rel == "<=") holds = lhs <= rhs;
    else if (rel == "<") holds = lhs < rhs;
    else if (rel == "=") holds = lhs == rhs;
    else if (rel == ">") holds = lhs > rhs;
    else if (rel == ">=") holds = lhs >= rhs;
    return {std::move(name), kind, std::move(lhs), std::move(rel), std::move(rhs), holds};
}

}  // namespace

Certificate derive_delta() {
    Certificate cert;
    for (Branch b : {Branch::A2Empty, Branch::Gap, Branch::Overlap}) {
        BranchBound bb{b, branch_terms(b), {}, displayed_total(b), {}};
        bb.total = eliminate_a(sum_terms(bb.terms));
        // total(delta) = 1/2 - delta
        bb.delta_sup = (kHalf - bb.total.constant) / (bb.total.delta_coef + 1);
        cert.branches.push_back(std::move(bb));
    }
    cert.delta_star = cert.branches.front().delta_sup;
    for (const auto& bb : cert.branches) cert.delta_star = min(cert.delta_star, bb.delta_sup);

    const Rational& d = cert.delta_star;
    cert.steps = check_chain(d, 4 * d, 2 * d);
    for (const auto& bb : cert.branches) {
        Step s = make_step(std::string(to_string(bb.name)) + " total " + bb.total.to_string() +
                               " matches displayed " + bb.displayed.to_string(),
                           StepKind::Derivation, bb.total(0, d), "=", bb.displayed(0, d));
        s.holds = bb.total == bb.displayed;
        cert.steps.push_back(std::move(s));
    }
    return cert;
}

std::vector<Step> check_chain(const Rational& delta, const Rational& a, const Rational& eps) {
    if (delta.sign() < 0 || a.sign() < 0 || eps.sign() < 0) throw Error("check_chain parameters must be nonnegative");
    const Rational x = kHalf - delta;
    std::vector<Step> steps;
    auto add = [&](std::string name, StepKind kind, Rational lhs, std::string rel, Rational rhs) {
        steps.push_back(make_step(std::move(name), kind, std::move(lhs), std::move(rel), std::move(rhs)));
    };

    // |C| >= min(x, (x + 1 - a)/3) and A, C disjoint inside [2a/3, 1].
    add("case |C| >= x: x <= 1/2 - a/3", StepKind::Case, x, "<=", kHalf - a / 3);
    add("case |C| >= (x+1-a)/3: x <= 1/2 - a/4", StepKind::Case, x, "<=", kHalf - a / 4);
    add("one of the two cases holds", StepKind::Derivation, x, "<=", max(kHalf - a / 3, kHalf - a / 4));
    add("a <= 4*delta", StepKind::Derivation, a, "<=", 4 * delta);

    // |A n (2/3,1]| = 1/3 - eps shifts the two case bounds by -eps/2 and -3eps/4.
    add("eps-corrected case |C| >= x: x <= 1/2 - a/3 - eps/2", StepKind::Case, x, "<=", kHalf - a / 3 - eps / 2);
    add("eps-corrected case |C| >= (x+1-a)/3: x <= 1/2 - a/4 - 3*eps/4", StepKind::Case, x, "<=", kHalf - a / 4 - q(3, 4) * eps);
    add("eps <= 2*delta", StepKind::Derivation, eps, "<=", 2 * delta);

    // (A+A)/3 fills all but the stated measure of each window.
    add("|A n (a/3+2/9, a/3+1/3]| <= 1/9 - (1/3 - 2*delta)/3 = 2*delta/3", StepKind::Derivation,
        q(1, 9) - (q(1, 3) - 2 * delta) / 3, "=", q(2, 3) * delta);
    add("|A n (4/9, 2/3]| <= 2/9 - (2/3 - 4*delta)/3 = 4*delta/3", StepKind::Derivation,
        q(2, 9) - (q(2, 3) - 4 * delta) / 3, "=", q(4, 3) * delta);
    add("|A \\ A'| <= 2*delta/3 + 4*delta/3 = 2*delta", StepKind::Derivation,
        q(2, 3) * delta + q(4, 3) * delta, "=", 2 * delta);

    // |A1| via the halving bound on [0, a/3 + 2/9], then a <= 4*delta.
    add("halving bound on A1: (a/3 + 2/9)/2 = a/6 + 1/9", StepKind::Derivation, (a / 3 + q(2, 9)) / 2, "=", a / 6 + q(1, 9));
    add("|A1| <= 2*delta/3 + 1/9", StepKind::Derivation, a / 6 + q(1, 9), "<=", q(2, 3) * delta + q(1, 9));

    add("A2 window nonempty: a/3 + 1/3 <= 4/9", StepKind::Derivation, a / 3 + q(1, 3), "<=", q(4, 9));
    add("I covers A2: d/3 + 1/3 > d at d = 4/9", StepKind::Derivation, q(4, 9) / 3 + q(1, 3), ">", q(4, 9));
    add("C misses at most (4*delta + 4*delta)/3 = 8*delta/3 of I", StepKind::Derivation,
        (4 * delta + 4 * delta) / 3, "=", q(8, 3) * delta);

    for (Branch b : {Branch::A2Empty, Branch::Gap, Branch::Overlap}) {
        const AffineForm total = sum_terms(branch_terms(b));
        add(std::string(to_string(b)) + ": " + total.to_string() + " < 1/2 - delta", StepKind::Contradiction,
            total(a, delta), "<", x);
    }
    return steps;
}

Rational sumset_slack(const IntervalUnion& a) {
    const Extent e = extent(a);
    const Rational m = a.measure();
    return minkowski_sum(a, a).measure() - min(3 * m, m + e.diam);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

IntervalUnion random_union(std::uint64_t seed, std::size_t trial, std::size_t max_intervals) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial))));
    const std::size_t count = 1 + rng() % max_intervals;
    const long denom = 1 + static_cast<long>(rng() % 1000);
    const long span = denom + static_cast<long>(2 * count);
    std::set<long> points;
    while (points.size() < 2 * count) points.insert(static_cast<long>(rng() % static_cast<std::uint64_t>(span + 1)));
    std::vector<std::pair<Rational, Rational>> raw;
    for (auto it = points.begin(); it != points.end(); std::advance(it, 2))
        raw.emplace_back(make_rational(*it, denom), make_rational(*std::next(it), denom));
    return IntervalUnion::canonicalize(std::move(raw));
}

HarnessReport sumset_bound_harness(std::size_t trials, std::size_t max_intervals, std::uint64_t seed) {
    if (trials == 0) throw Error("trials must be positive");
    if (max_intervals == 0) throw Error("max_intervals must be positive");
    HarnessReport report;
    report.trials = trials;
    report.max_intervals = max_intervals;
    report.seed = seed;
    for (std::size_t t = 0; t < trials; ++t) {
        IntervalUnion a = random_union(seed, t, max_intervals);
        const Rational slack = sumset_slack(a);
        if (slack.sign() < 0) {
            ++report.violations;
            if (!report.first_violation) report.first_violation = a;
        }
        if (slack.is_zero()) ++report.zero_slack;
        if (t == 0 || slack < report.min_slack) {
            report.min_slack = slack;
            report.min_slack_set = std::move(a);
        }
    }
    return report;
}

}  // namespace sumfree::certify

#pragma once

// Mechanical re-check of the inequality chain behind |A| <= 1/2 - 1/114 for
// sets without solutions to x + y = 3z, plus a randomized harness for the
// sumset lower bound |A+A| >= min(3|A|, |A| + diam A).
//
// The chain is data: each bound is an affine form in the parameters a = inf A,
// delta and eps, evaluated exactly. Nothing here is symbolic beyond that.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumfree/interval_set.hpp"
#include "sumfree/rational.hpp"

namespace sumfree::certify {

/// constant + a_coef * a + delta_coef * delta + eps_coef * eps
struct AffineForm {
    Rational constant;
    Rational a_coef;
    Rational delta_coef;
    Rational eps_coef;

    Rational operator()(const Rational& a, const Rational& delta, const Rational& eps = 0) const {
        return constant + a_coef * a + delta_coef * delta + eps_coef * eps;
    }
    AffineForm operator+(const AffineForm& o) const {
        return {constant + o.constant, a_coef + o.a_coef, delta_coef + o.delta_coef, eps_coef + o.eps_coef};
    }
    friend bool operator==(const AffineForm&, const AffineForm&) = default;
    std::string to_string() const;
};

enum class Branch { A2Empty, Gap, Overlap };

const char* to_string(Branch b);

/// One measure bound contributing to a branch total.
struct Term {
    std::string label;
    AffineForm bound;
};

struct BranchBound {
    Branch name;
    std::vector<Term> terms;
    /// Sum of the terms with a eliminated using 0 <= a <= 4 delta (worst case).
    AffineForm total;
    /// The total as displayed in the proof; must equal `total`.
    AffineForm displayed;
    /// Contradiction total(delta) < 1/2 - delta holds exactly for delta < delta_sup.
    Rational delta_sup;
};

enum class StepKind {
    Derivation,     // must hold along the proof
    Case,           // one side of a case split; may fail on its own
    Contradiction,  // holds when the branch's contradiction fires
};

const char* to_string(StepKind k);

struct Step {
    std::string name;
    StepKind kind;
    Rational lhs;
    std::string relation;  // "<=", "<", "=", ">"
    Rational rhs;
    bool holds;
};

struct Certificate {
    std::vector<BranchBound> branches;
    Rational delta_star;
    std::vector<Step> steps;

    bool all_pass() const;
};

/// Solves every branch against 1/2 - delta; delta_star is the minimum.
Certificate derive_delta();

/// Evaluates every named inequality with x = |A| = 1/2 - delta.
/// Throws Error when a parameter is negative.
std::vector<Step> check_chain(const Rational& delta, const Rational& a, const Rational& eps);

/// True when every Derivation step holds.
bool consistent(const std::vector<Step>& steps);

/// |A+A| - min(3|A|, |A| + diam A). Throws Error for the empty set.
Rational sumset_slack(const IntervalUnion& a);

struct HarnessReport {
    std::size_t trials = 0;
    std::size_t max_intervals = 0;
    std::uint64_t seed = 0;
    std::size_t violations = 0;
    std::size_t zero_slack = 0;
    Rational min_slack;
    IntervalUnion min_slack_set;
    std::optional<IntervalUnion> first_violation;
};

/// Random unions of 1..max_intervals intervals; trial i draws from a generator
/// seeded by (seed, i), so reports do not depend on evaluation order.
/// Throws Error when trials or max_intervals is zero.
HarnessReport sumset_bound_harness(std::size_t trials, std::size_t max_intervals, std::uint64_t seed);

/// The union drawn for one trial.
IntervalUnion random_union(std::uint64_t seed, std::size_t trial, std::size_t max_intervals);

}  // namespace sumfree::certify

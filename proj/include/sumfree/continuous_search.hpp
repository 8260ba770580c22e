#pragma once

// Exact global maximization of the measure of a k-sum-free union of at most
// m open intervals in [0,1].
//
// Variables are the endpoints l_1 <= r_1 <= l_2 <= ... <= r_m. The set is
// k-sum-free iff for every pair i <= j and every target t the scaled sum
// interval ((l_i+l_j)/k, (r_i+r_j)/k) misses (l_t, r_t), i.e.
//   LEFT:  r_i + r_j <= k l_t    or    RIGHT: l_i + l_j >= k r_t.
// Each such disjunction is resolved lazily by branching; every node solves
// the LP over the resolved rows only.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sumfree/interval_set.hpp"
#include "sumfree/lp.hpp"
#include "sumfree/rational.hpp"

namespace sumfree::continuous {

enum class Choice : unsigned char { Unresolved, Left, Right };

/// Index triple of one disjunction: sum of intervals i <= j against target t.
struct Disjunction {
    std::size_t i, j, t;
    friend bool operator==(const Disjunction&, const Disjunction&) = default;
};

class DisjunctionPattern {
public:
    explicit DisjunctionPattern(std::size_t m);

    std::size_t m() const { return m_; }
    std::size_t size() const { return choices_.size(); }

    std::size_t index(const Disjunction& d) const;
    Disjunction at(std::size_t index) const;

    Choice get(const Disjunction& d) const { return choices_[index(d)]; }
    void set(const Disjunction& d, Choice c) { choices_[index(d)] = c; }
    Choice get(std::size_t index) const { return choices_[index]; }
    void set(std::size_t index, Choice c) { choices_[index] = c; }

    std::size_t resolved_count() const;

private:
    std::size_t m_;
    std::vector<Choice> choices_;
};

/// Endpoints (l_1, r_1, ..., l_m, r_m); l_i == r_i marks a vanished interval.
struct Configuration {
    std::size_t m = 0;
    std::vector<Rational> endpoints;

    Rational lo(std::size_t i) const { return endpoints[2 * i]; }
    Rational hi(std::size_t i) const { return endpoints[2 * i + 1]; }

    /// Drops vanished intervals and canonicalizes.
    IntervalUnion to_union() const;
};

/// Variables 2i = l_i, 2i+1 = r_i; objective sum(r_i - l_i); ordering chain,
/// box [0,1], and one row per resolved disjunction. Throws Error for m == 0 or k == 0.
lp::LinearProgram build_pattern_lp(std::size_t m, long k, const DisjunctionPattern& pattern);

/// Positive-measure overlap of sum interval (i,j)/k with target t, or zero.
Rational overlap(const Configuration& c, long k, const Disjunction& d);

/// The unresolved disjunction the configuration violates most (largest
/// overlap, ties to the lowest index), or nothing if it violates none.
std::optional<std::size_t> select_branch(const Configuration& c, long k, const DisjunctionPattern& pattern);

enum class NodeOrder { DepthFirst, BreadthFirst, BestFirst };

struct SearchOptions {
    /// Keep exploring nodes whose bound equals the incumbent, and report
    /// every optimal set found rather than the first.
    bool all_optima = false;
    unsigned workers = 1;
    std::optional<std::size_t> node_limit;
    NodeOrder order = NodeOrder::DepthFirst;
    /// Dumps every LP tableau (sequential runs only).
    std::ostream* lp_trace = nullptr;
};

enum class SearchStatus { Proven, Interrupted };

const char* to_string(SearchStatus s);

struct Witness {
    Configuration configuration;
    IntervalUnion set;
};

struct SearchResult {
    Rational optimum;
    std::vector<Witness> witnesses;  // sorted, distinct as sets
    std::size_t nodes_explored = 0;
    SearchStatus status = SearchStatus::Proven;
};

/// Throws Error for m == 0 or k == 0.
SearchResult maximize_measure(std::size_t m, long k, const SearchOptions& options = {});

/// k(k-2)/(k^2-2) + 8(k-2)/(k(k^2-2)(k^4-2k^2-4)); throws Error for k < 4.
Rational mu_formula(long k);

}  // namespace sumfree::continuous

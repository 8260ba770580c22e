#pragma once

// k-sum-free subsets of {1..n}: f(n,k), all maximum sets, and lower bounds
// from continuous configurations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sumfree/interval_set.hpp"

namespace sumfree::discrete {

/// Largest supported n; sets are 64-bit masks.
inline constexpr long kMaxN = 64;

struct DiscreteInstance {
    long n = 1;
    long k = 1;
};

/// a + b = k c with a <= b.
struct Triple {
    long a, b, c;
    friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripleSet {
    std::vector<Triple> triples;  // ordered by (a, b)
};

using Set = std::vector<long>;  // ascending

/// Throws Error unless 1 <= n <= kMaxN and k >= 1.
void validate(const DiscreteInstance& inst);

/// For k = 2 the trivial a = b = c solutions are excluded.
TripleSet forbidden_triples(const DiscreteInstance& inst);

/// True when `set` (elements of 1..n) contains no triple of `inst`.
bool is_sum_free(const DiscreteInstance& inst, const Set& set);

struct MaxResult {
    long value = 0;
    Set witness;
    std::size_t nodes = 0;
};

MaxResult f_max(const DiscreteInstance& inst);

/// Thrown when the enumeration node budget runs out; carries what was found.
class NodeLimitExceeded : public Error {
public:
    NodeLimitExceeded(std::vector<Set> partial, std::size_t nodes)
        : Error("node limit exceeded after " + std::to_string(nodes) + " nodes"),
          partial_(std::move(partial)) {}
    const std::vector<Set>& partial() const { return partial_; }

private:
    std::vector<Set> partial_;
};

/// Every set of cardinality f(n,k), lexicographically sorted.
std::vector<Set> enumerate_maximum_sets(const DiscreteInstance& inst,
                                        std::optional<std::size_t> node_limit = std::nullopt);

/// {i in 1..n : i/n in U}; n is not limited by kMaxN.
/// Throws Error when U is not k-sum-free or n, k < 1.
Set discretize(const IntervalUnion& u, long n, long k);

}  // namespace sumfree::discrete

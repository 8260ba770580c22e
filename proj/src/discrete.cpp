#include "sumfree/discrete.hpp"

#include <algorithm>
#include <bit>

namespace sumfree::discrete {

void validate(const DiscreteInstance& inst) {
    if (inst.n < 1 || inst.n > kMaxN)
        throw Error("n must be in [1, " + std::to_string(kMaxN) + "], got " + std::to_string(inst.n));
    if (inst.k < 1) throw Error("k must be positive, got " + std::to_string(inst.k));
}

TripleSet forbidden_triples(const DiscreteInstance& inst) {
    validate(inst);
    TripleSet out;
    for (long a = 1; a <= inst.n; ++a) {
        for (long b = a; b <= inst.n; ++b) {
            if ((a + b) % inst.k != 0) continue;
            const long c = (a + b) / inst.k;
            if (c < 1 || c > inst.n) continue;
            if (inst.k == 2 && a == b) continue;  // a = b forces c = a
            out.triples.push_back({a, b, c});
        }
    }
    return out;
}

bool is_sum_free(const DiscreteInstance& inst, const Set& set) {
    std::vector<bool> member(static_cast<std::size_t>(inst.n) + 1, false);
    for (long x : set) {
        if (x < 1 || x > inst.n) return false;
        member[static_cast<std::size_t>(x)] = true;
    }
    for (const auto& t : forbidden_triples(inst).triples)
        if (member[t.a] && member[t.b] && member[t.c]) return false;
    return true;
}

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(long x) { return Mask{1} << (x - 1); }

Set to_set(Mask m) {
    Set out;
    while (m) {
        out.push_back(std::countr_zero(m) + 1);
        m &= m - 1;
    }
    return out;
}

// Depth-first include/exclude search over n, n-1, ..., 1. The upper bound
// is |chosen| + |addable| minus a greedy packing of disjoint edge remnants,
// each of which must lose at least one element.
class Solver {
public:
    explicit Solver(const DiscreteInstance& inst) : n_(inst.n) {
        edges_of_.resize(static_cast<std::size_t>(n_) + 1);
        for (const auto& t : forbidden_triples(inst).triples) {
            const Mask e = bit(t.a) | bit(t.b) | bit(t.c);
            if (std::find(edges_.begin(), edges_.end(), e) != edges_.end()) continue;
            edges_.push_back(e);
            for (long x = 1; x <= n_; ++x)
                if (e & bit(x)) edges_of_[static_cast<std::size_t>(x)].push_back(e);
        }
        std::stable_sort(edges_.begin(), edges_.end(),
                         [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
    }

    MaxResult maximize() {
        mode_ = Mode::Maximize;
        best_ = 0;
        best_set_ = 0;
        dfs(n_, 0, 0);
        return {best_, to_set(best_set_), nodes_};
    }

    std::vector<Set> enumerate(long target, std::optional<std::size_t> limit) {
        mode_ = Mode::Enumerate;
        target_ = target;
        limit_ = limit;
        found_.clear();
        dfs(n_, 0, 0);
        std::vector<Set> out;
        for (Mask m : found_) out.push_back(to_set(m));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    enum class Mode { Maximize, Enumerate };

    bool addable(long x, Mask chosen) const {
        for (Mask e : edges_of_[static_cast<std::size_t>(x)])
            if ((e & ~bit(x) & ~chosen) == 0) return false;
        return true;
    }

    long upper_bound(Mask avail, Mask chosen, long count) const {
        Mask used = 0;
        long packed = 0;
        for (Mask e : edges_) {
            const Mask rest = e & ~chosen;
            if ((rest & ~avail) != 0 || (rest & used) != 0) continue;
            used |= rest;
            ++packed;
        }
        return count + std::popcount(avail) - packed;
    }

    void dfs(long e, Mask chosen, long count) {
        ++nodes_;
        if (limit_ && nodes_ > *limit_) {
            std::vector<Set> partial;
            for (Mask m : found_) partial.push_back(to_set(m));
            std::sort(partial.begin(), partial.end());
            throw NodeLimitExceeded(std::move(partial), nodes_);
        }
        if (e == 0) {
            if (mode_ == Mode::Maximize) {
                if (count > best_) {
                    best_ = count;
                    best_set_ = chosen;
                }
            } else if (count == target_) {
                found_.push_back(chosen);
            }
            return;
        }
        Mask avail = 0;
        for (long x = 1; x <= e; ++x)
            if (addable(x, chosen)) avail |= bit(x);
        const long bound = upper_bound(avail, chosen, count);
        if (mode_ == Mode::Maximize ? bound <= best_ : bound < target_) return;
        if (avail & bit(e)) dfs(e - 1, chosen | bit(e), count + 1);
        dfs(e - 1, chosen, count);
    }

    long n_;
    std::vector<Mask> edges_;
    std::vector<std::vector<Mask>> edges_of_;
    Mode mode_ = Mode::Maximize;
    long best_ = 0;
    Mask best_set_ = 0;
    long target_ = 0;
    std::optional<std::size_t> limit_;
    std::vector<Mask> found_;
    std::size_t nodes_ = 0;
};

}  // namespace

MaxResult f_max(const DiscreteInstance& inst) {
    validate(inst);
    return Solver(inst).maximize();
}

std::vector<Set> enumerate_maximum_sets(const DiscreteInstance& inst, std::optional<std::size_t> node_limit) {
    validate(inst);
    const long target = f_max(inst).value;
    return Solver(inst).enumerate(target, node_limit);
}

Set discretize(const IntervalUnion& u, long n, long k) {
    if (n < 1 || k < 1) throw Error("n and k must be positive");
    if (!is_k_sum_free(u, k).sum_free) throw Error("set is not " + std::to_string(k) + "-sum-free: " + u.to_string());
    Set out;
    for (long i = 1; i <= n; ++i)
        if (u.contains(make_rational(i, n))) out.push_back(i);
    return out;
}

}  // namespace sumfree::discrete

#include "sumfree/continuous_search.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <queue>
#include <thread>

namespace sumfree::continuous {

DisjunctionPattern::DisjunctionPattern(std::size_t m) : m_(m), choices_(m * (m + 1) / 2 * m, Choice::Unresolved) {}

std::size_t DisjunctionPattern::index(const Disjunction& d) const {
    // Pairs i <= j enumerated row by row.
    const std::size_t pair = d.i * m_ - (d.i * (d.i - 1)) / 2 + (d.j - d.i);
    return pair * m_ + d.t;
}

Disjunction DisjunctionPattern::at(std::size_t index) const {
    std::size_t pair = index / m_;
    const std::size_t t = index % m_;
    std::size_t i = 0;
    while (pair >= m_ - i) {
        pair -= m_ - i;
        ++i;
    }
    return {i, i + pair, t};
}

std::size_t DisjunctionPattern::resolved_count() const {
    return static_cast<std::size_t>(std::count_if(choices_.begin(), choices_.end(),
                                                  [](Choice c) { return c != Choice::Unresolved; }));
}

IntervalUnion Configuration::to_union() const {
    std::vector<std::pair<Rational, Rational>> raw;
    for (std::size_t i = 0; i < m; ++i) raw.emplace_back(lo(i), hi(i));
    return IntervalUnion::canonicalize(std::move(raw));
}

lp::LinearProgram build_pattern_lp(std::size_t m, long k, const DisjunctionPattern& pattern) {
    if (m == 0) throw Error("m must be positive");
    if (k <= 0) throw Error("k must be positive");
    if (pattern.m() != m) throw Error("pattern size does not match m");
    const std::size_t n = 2 * m;
    lp::LinearProgram prog(n);
    for (std::size_t v = 0; v < n; ++v) prog.bounds[v] = {Rational(0), Rational(1)};
    for (std::size_t i = 0; i < m; ++i) {
        prog.objective[2 * i] = -1;
        prog.objective[2 * i + 1] = 1;
    }
    // l_1 <= r_1 <= l_2 <= ... <= r_m
    for (std::size_t v = 0; v + 1 < n; ++v) {
        std::vector<Rational> row(n);
        row[v] = 1;
        row[v + 1] = -1;
        prog.add(std::move(row), lp::Relation::LessEqual, 0);
    }
    const Rational kq(k);
    for (std::size_t idx = 0; idx < pattern.size(); ++idx) {
        const Choice c = pattern.get(idx);
        if (c == Choice::Unresolved) continue;
        const Disjunction d = pattern.at(idx);
        std::vector<Rational> row(n);
        if (c == Choice::Left) {
            // r_i + r_j - k l_t <= 0
            row[2 * d.i + 1] += 1;
            row[2 * d.j + 1] += 1;
            row[2 * d.t] -= kq;
        } else {
            // k r_t - l_i - l_j <= 0
            row[2 * d.t + 1] += kq;
            row[2 * d.i] -= 1;
            row[2 * d.j] -= 1;
        }
        prog.add(std::move(row), lp::Relation::LessEqual, 0);
    }
    return prog;
}

Rational overlap(const Configuration& c, long k, const Disjunction& d) {
    const Rational kq(k);
    const Rational sum_lo = (c.lo(d.i) + c.lo(d.j)) / kq;
    const Rational sum_hi = (c.hi(d.i) + c.hi(d.j)) / kq;
    if (!(sum_lo < sum_hi) || !(c.lo(d.t) < c.hi(d.t))) return 0;
    const Rational width = min(sum_hi, c.hi(d.t)) - max(sum_lo, c.lo(d.t));
    return width.sign() > 0 ? width : Rational(0);
}

std::optional<std::size_t> select_branch(const Configuration& c, long k, const DisjunctionPattern& pattern) {
    std::optional<std::size_t> best;
    Rational best_overlap;
    for (std::size_t idx = 0; idx < pattern.size(); ++idx) {
        if (pattern.get(idx) != Choice::Unresolved) continue;
        Rational w = overlap(c, k, pattern.at(idx));
        if (w.sign() > 0 && (!best || best_overlap < w)) {
            best = idx;
            best_overlap = std::move(w);
        }
    }
    return best;
}

const char* to_string(SearchStatus s) { return s == SearchStatus::Proven ? "Proven" : "Interrupted"; }

namespace {

struct Node {
    DisjunctionPattern pattern;
    std::optional<Rational> parent_bound;
    std::size_t seq = 0;
};

struct BestFirstLess {
    bool operator()(const Node& a, const Node& b) const {
        // priority_queue pops the greatest: higher bound first, then older.
        if (a.parent_bound != b.parent_bound) {
            if (!a.parent_bound) return false;
            if (!b.parent_bound) return true;
            return *a.parent_bound < *b.parent_bound;
        }
        return a.seq > b.seq;
    }
};

class Frontier {
public:
    explicit Frontier(NodeOrder order) : order_(order) {}

    bool empty() const { return order_ == NodeOrder::BestFirst ? heap_.empty() : list_.empty(); }

    void push(Node node) {
        if (order_ == NodeOrder::BestFirst) heap_.push(std::move(node));
        else list_.push_back(std::move(node));
    }

    Node pop() {
        Node node = [&] {
            switch (order_) {
                case NodeOrder::DepthFirst: { Node n = std::move(list_.back()); list_.pop_back(); return n; }
                case NodeOrder::BreadthFirst: { Node n = std::move(list_.front()); list_.pop_front(); return n; }
                case NodeOrder::BestFirst: break;
            }
            Node n = heap_.top();
            heap_.pop();
            return n;
        }();
        return node;
    }

private:
    NodeOrder order_;
    std::deque<Node> list_;
    std::priority_queue<Node, std::vector<Node>, BestFirstLess> heap_;
};

Configuration configuration_from(std::size_t m, const std::vector<Rational>& vertex) {
    return {m, vertex};
}

class Search {
public:
    Search(std::size_t m, long k, const SearchOptions& options)
        : m_(m), k_(k), options_(options), frontier_(options.order) {
        frontier_.push(Node{DisjunctionPattern(m), std::nullopt, seq_++});
    }

    SearchResult run() {
        const unsigned workers = std::max(1u, options_.workers);
        if (workers == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back([this] { work(); });
            for (auto& th : pool) th.join();
        }
        if (error_) std::rethrow_exception(error_);

        SearchResult result;
        result.optimum = incumbent_.value_or(Rational(0));
        result.nodes_explored = nodes_;
        result.status = interrupted_ ? SearchStatus::Interrupted : SearchStatus::Proven;
        for (auto& [key, w] : witnesses_) result.witnesses.push_back(std::move(w));
        return result;
    }

private:
    bool pruned(const Rational& bound) const {
        if (!incumbent_) return false;
        return options_.all_optima ? bound < *incumbent_ : bound <= *incumbent_;
    }

    void work() {
        std::unique_lock lock(mutex_);
        for (;;) {
            cv_.wait(lock, [&] { return stop_ || !frontier_.empty() || active_ == 0; });
            if (stop_ || frontier_.empty()) break;
            if (options_.node_limit && nodes_ >= *options_.node_limit) {
                interrupted_ = true;
                stop_ = true;
                break;
            }
            Node node = frontier_.pop();
            if (node.parent_bound && pruned(*node.parent_bound)) continue;
            ++nodes_;
            ++active_;
            lock.unlock();
            try {
                expand(std::move(node), lock);
            } catch (...) {
                if (!lock.owns_lock()) lock.lock();
                error_ = std::current_exception();
                stop_ = true;
            }
            if (!lock.owns_lock()) lock.lock();
            --active_;
            cv_.notify_all();
        }
        cv_.notify_all();
    }

    // Called unlocked; returns with `lock` held.
    void expand(Node node, std::unique_lock<std::mutex>& lock) {
        const lp::LinearProgram prog = build_pattern_lp(m_, k_, node.pattern);
        lp::SolveOptions lp_options;
        if (options_.workers <= 1) lp_options.trace = options_.lp_trace;
        const lp::LPResult relaxed = lp::solve(prog, lp_options);
        if (relaxed.status != lp::Status::Optimal)
            throw Error(std::string("relaxation not optimal: ") + lp::to_string(relaxed.status));
        Configuration config = configuration_from(m_, relaxed.vertex);
        const std::optional<std::size_t> branch = select_branch(config, k_, node.pattern);

        std::optional<IntervalUnion> set;
        if (!branch) {
            set = config.to_union();
            if (!is_k_sum_free(*set, k_).sum_free)
                throw Error("fathomed configuration is not sum-free: " + set->to_string());
        }

        lock.lock();
        if (pruned(relaxed.value)) return;
        if (!branch) {
            if (!incumbent_ || *incumbent_ < relaxed.value) {
                incumbent_ = relaxed.value;
                witnesses_.clear();
            }
            if (options_.all_optima || witnesses_.empty()) {
                std::string key = set->to_string();
                witnesses_.try_emplace(std::move(key), Witness{std::move(config), std::move(*set)});
            }
            return;
        }
        Node right{node.pattern, relaxed.value, seq_++};
        right.pattern.set(*branch, Choice::Right);
        Node left{std::move(node.pattern), relaxed.value, seq_++};
        left.pattern.set(*branch, Choice::Left);
        frontier_.push(std::move(right));
        frontier_.push(std::move(left));
    }

    std::size_t m_;
    long k_;
    SearchOptions options_;

    std::mutex mutex_;
    std::condition_variable cv_;
    Frontier frontier_;
    std::size_t seq_ = 0;
    std::size_t nodes_ = 0;
    unsigned active_ = 0;
    bool stop_ = false;
    bool interrupted_ = false;
    std::exception_ptr error_;
    std::optional<Rational> incumbent_;
    std::map<std::string, Witness> witnesses_;
};

}  // namespace

SearchResult maximize_measure(std::size_t m, long k, const SearchOptions& options) {
    if (m == 0) throw Error("m must be positive");
    if (k <= 0) throw Error("k must be positive");
    SearchResult result = Search(m, k, options).run();
    std::sort(result.witnesses.begin(), result.witnesses.end(), [](const Witness& a, const Witness& b) {
        return std::lexicographical_compare(a.set.begin(), a.set.end(), b.set.begin(), b.set.end(),
                                            [](const Interval& x, const Interval& y) {
                                                return std::tie(x.lo, x.hi) < std::tie(y.lo, y.hi);
                                            });
    });
    return result;
}

Rational mu_formula(long k) {
    if (k < 4) throw Error("closed form applies to k >= 4");
    const Rational kq(k);
    const Rational k2 = kq * kq;
    return kq * (kq - 2) / (k2 - 2) + Rational(8) * (kq - 2) / (kq * (k2 - 2) * (k2 * k2 - 2 * k2 - 4));
}

}  // namespace sumfree::continuous

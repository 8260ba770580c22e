#pragma once

/**
 * @file lp.hpp
 * @brief Exact rational linear programming.
 *
 * Dense two-phase primal simplex over GMP rationals with Bland's rule
 * (lowest-index entering column, lowest-index leaving basic variable on
 * ratio ties). Bland's rule guarantees termination on degenerate problems
 * and makes the returned vertex a deterministic function of the input.
 *
 * Optimal results carry a dual certificate which check_certificate()
 * verifies against the original problem without trusting the solver.
 */

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sumfree/rational.hpp"

namespace sumfree::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
    std::vector<Rational> coeffs;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

/// Absent ends are unbounded. The default bound is a free variable.
struct Bound {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
};

/// maximize objective . x  subject to constraints and per-variable bounds.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<Rational> objective;
    std::vector<Constraint> constraints;
    std::vector<Bound> bounds;

    explicit LinearProgram(std::size_t n = 0)
        : num_vars(n), objective(n), bounds(n) {}

    void add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
        constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
    }

    /// Throws Error when a vector length disagrees with num_vars.
    void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status s);

/// Lagrange multipliers proving optimality:
///   objective = sum_r row[r] * a_r + upper - lower   (componentwise),
///   row[r] >= 0 for <=, <= 0 for >=, free for =;  upper, lower >= 0,
///   dual value sum_r row[r] b_r + upper . hi - lower . lo = primal value.
struct DualCertificate {
    std::vector<Rational> row;
    std::vector<Rational> upper;
    std::vector<Rational> lower;
};

struct LPResult {
    Status status = Status::Infeasible;
    Rational value;
    std::vector<Rational> vertex;
    DualCertificate certificate;
    std::size_t pivots = 0;
};

struct SolveOptions {
    /// When set, every tableau is dumped here (debugging aid).
    std::ostream* trace = nullptr;
};

LPResult solve(const LinearProgram& lp, const SolveOptions& options = {});

/// Exact primal feasibility plus dual feasibility and zero duality gap.
/// Returns false for non-Optimal results.
bool check_certificate(const LinearProgram& lp, const LPResult& result);

/// Exact primal feasibility of a point.
bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace sumfree::lp

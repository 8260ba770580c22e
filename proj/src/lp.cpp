#include "sumfree/lp.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace sumfree::lp {

void LinearProgram::validate() const {
    if (objective.size() != num_vars) throw Error("objective length != num_vars");
    if (bounds.size() != num_vars) throw Error("bounds length != num_vars");
    for (std::size_t r = 0; r < constraints.size(); ++r)
        if (constraints[r].coeffs.size() != num_vars)
            throw Error("constraint " + std::to_string(r) + " length != num_vars");
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "Optimal";
        case Status::Infeasible: return "Infeasible";
        case Status::Unbounded: return "Unbounded";
    }
    return "?";
}

namespace {

using Q = mpq_class;

// How an original variable is expressed through nonnegative internal columns.
enum class VarForm { Shift, Reflect, Split };

struct VarMap {
    VarForm form;
    std::size_t col;  // Split uses col and col + 1
    Q offset;         // lo for Shift, hi for Reflect
};

enum class RowOrigin { Constraint, UpperBound };

// Internal row: coeffs . x' <= rhs.
struct Row {
    std::vector<Q> coeffs;
    Q rhs;
    RowOrigin origin;
    std::size_t index;  // constraint index or variable index
    int sign;           // internal row = sign * original row
};

class Tableau {
public:
    // Columns: [0, n) structural, [n, n + m) slacks, [n + m, n + m + p) artificials.
    Tableau(const std::vector<Row>& rows, std::size_t n) : n_(n), m_(rows.size()) {
        std::size_t p = 0;
        for (const auto& r : rows) p += sgn(r.rhs) < 0;
        width_ = n_ + m_ + p;
        t_.assign(m_, std::vector<Q>(width_ + 1));
        basis_.resize(m_);
        std::size_t art = n_ + m_;
        for (std::size_t i = 0; i < m_; ++i) {
            const bool negate = sgn(rows[i].rhs) < 0;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = negate ? Q(-rows[i].coeffs[j]) : rows[i].coeffs[j];
            t_[i][n_ + i] = negate ? -1 : 1;
            t_[i][width_] = negate ? Q(-rows[i].rhs) : rows[i].rhs;
            if (negate) {
                t_[i][art] = 1;
                basis_[i] = art++;
            } else {
                basis_[i] = n_ + i;
            }
        }
        obj_.assign(width_ + 1, Q(0));
        allowed_ = width_;
    }

    bool has_artificials() const { return width_ > n_ + m_; }

    // Reduced costs for `cost` (indexed by column, missing entries zero).
    void set_objective(const std::vector<Q>& cost) {
        std::fill(obj_.begin(), obj_.end(), Q(0));
        for (std::size_t j = 0; j <= width_; ++j) {
            Q acc = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                const std::size_t b = basis_[i];
                if (b < cost.size() && sgn(cost[b]) != 0 && sgn(t_[i][j]) != 0) acc += cost[b] * t_[i][j];
            }
            if (j < cost.size()) acc -= cost[j];
            obj_[j] = acc;
        }
    }

    // Bland's rule. Returns false on unboundedness.
    bool optimize(std::size_t& pivots, std::ostream* trace) {
        for (;;) {
            std::size_t enter = allowed_;
            for (std::size_t j = 0; j < allowed_; ++j)
                if (sgn(obj_[j]) < 0) { enter = j; break; }
            if (enter == allowed_) return true;
            std::size_t leave = m_;
            Q best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (sgn(t_[i][enter]) <= 0) continue;
                Q ratio = t_[i][width_] / t_[i][enter];
                if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
            ++pivots;
            if (trace) dump(*trace);
        }
    }

    // Pivots basic artificials out. Every row has its own slack column,
    // so some non-artificial entry is always nonzero.
    void expel_artificials(std::size_t& pivots) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_ + m_) continue;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (sgn(t_[i][j]) != 0) {
                    pivot(i, j);
                    ++pivots;
                    break;
                }
            }
        }
        allowed_ = n_ + m_;
    }

    void pivot(std::size_t pr, std::size_t pc) {
        auto& prow = t_[pr];
        const Q inv = 1 / prow[pc];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= width_; ++j) {
            if (sgn(prow[j]) == 0) continue;
            prow[j] *= inv;
            nz.push_back(j);
        }
        auto eliminate = [&](std::vector<Q>& row) {
            if (sgn(row[pc]) == 0) return;
            const Q factor = row[pc];
            for (std::size_t j : nz) row[j] -= factor * prow[j];
        };
        for (std::size_t i = 0; i < m_; ++i)
            if (i != pr) eliminate(t_[i]);
        eliminate(obj_);
        basis_[pr] = pc;
    }

    const Q& rhs(std::size_t i) const { return t_[i][width_]; }
    const Q& reduced(std::size_t j) const { return obj_[j]; }
    const Q& objective_value() const { return obj_[width_]; }
    std::size_t basic(std::size_t i) const { return basis_[i]; }
    std::size_t rows() const { return m_; }

    void dump(std::ostream& os) const {
        os << "basis:";
        for (auto b : basis_) os << ' ' << b;
        os << '\n';
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j <= width_; ++j) os << (j ? " " : "  ") << t_[i][j].get_str();
            os << '\n';
        }
        os << "  obj:";
        for (std::size_t j = 0; j <= width_; ++j) os << ' ' << obj_[j].get_str();
        os << "\n\n";
    }

private:
    std::size_t n_, m_, width_ = 0, allowed_ = 0;
    std::vector<std::vector<Q>> t_;
    std::vector<Q> obj_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LPResult solve(const LinearProgram& lp, const SolveOptions& options) {
    lp.validate();
    const std::size_t nv = lp.num_vars;

    std::vector<VarMap> vars;
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        const Bound& b = lp.bounds[j];
        if (b.lo) vars.push_back({VarForm::Shift, ncols++, b.lo->raw()});
        else if (b.hi) vars.push_back({VarForm::Reflect, ncols++, b.hi->raw()});
        else { vars.push_back({VarForm::Split, ncols, 0}); ncols += 2; }
    }

    // x_j = offset_j + sum over internal columns; substitute into each row.
    auto internal_row = [&](const std::vector<Rational>& a, const Rational& b, int sign,
                            RowOrigin origin, std::size_t index) {
        Row row{std::vector<Q>(ncols), sign * b.raw(), origin, index, sign};
        for (std::size_t j = 0; j < nv; ++j) {
            if (a[j].is_zero()) continue;
            const Q coef = sign * a[j].raw();
            const VarMap& vm = vars[j];
            switch (vm.form) {
                case VarForm::Shift: row.coeffs[vm.col] += coef; row.rhs -= coef * vm.offset; break;
                case VarForm::Reflect: row.coeffs[vm.col] -= coef; row.rhs -= coef * vm.offset; break;
                case VarForm::Split: row.coeffs[vm.col] += coef; row.coeffs[vm.col + 1] -= coef; break;
            }
        }
        return row;
    };

    std::vector<Row> rows;
    auto push_unique = [&](Row row) {
        for (const auto& r : rows)
            if (r.rhs == row.rhs && r.coeffs == row.coeffs) return;
        rows.push_back(std::move(row));
    };
    for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
        const auto& c = lp.constraints[r];
        if (c.relation != Relation::GreaterEqual) push_unique(internal_row(c.coeffs, c.rhs, +1, RowOrigin::Constraint, r));
        if (c.relation != Relation::LessEqual) push_unique(internal_row(c.coeffs, c.rhs, -1, RowOrigin::Constraint, r));
    }
    for (std::size_t j = 0; j < nv; ++j) {
        const Bound& b = lp.bounds[j];
        if (b.lo && b.hi) {
            Row row{std::vector<Q>(ncols), Q(b.hi->raw() - b.lo->raw()), RowOrigin::UpperBound, j, +1};
            row.coeffs[vars[j].col] = 1;
            push_unique(std::move(row));
        }
    }

    LPResult result;
    Tableau tab(rows, ncols);
    if (options.trace) {
        *options.trace << "initial tableau (" << rows.size() << " rows, " << ncols << " columns)\n";
        tab.dump(*options.trace);
    }

    if (tab.has_artificials()) {
        std::vector<Q> phase1(ncols + rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (sgn(rows[i].rhs) < 0) phase1.resize(phase1.size() + 1, Q(-1));
        tab.set_objective(phase1);
        tab.optimize(result.pivots, options.trace);
        if (sgn(tab.objective_value()) < 0) {
            result.status = Status::Infeasible;
            return result;
        }
        tab.expel_artificials(result.pivots);
    }

    std::vector<Q> cost(ncols);
    Q constant = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        const Q& c = lp.objective[j].raw();
        const VarMap& vm = vars[j];
        switch (vm.form) {
            case VarForm::Shift: cost[vm.col] += c; constant += c * vm.offset; break;
            case VarForm::Reflect: cost[vm.col] -= c; constant += c * vm.offset; break;
            case VarForm::Split: cost[vm.col] += c; cost[vm.col + 1] -= c; break;
        }
    }
    tab.set_objective(cost);
    if (!tab.optimize(result.pivots, options.trace)) {
        result.status = Status::Unbounded;
        return result;
    }

    std::vector<Q> internal(ncols, Q(0));
    for (std::size_t i = 0; i < tab.rows(); ++i)
        if (tab.basic(i) < ncols) internal[tab.basic(i)] = tab.rhs(i);

    result.status = Status::Optimal;
    result.vertex.resize(nv);
    for (std::size_t j = 0; j < nv; ++j) {
        const VarMap& vm = vars[j];
        Q x;
        switch (vm.form) {
            case VarForm::Shift: x = vm.offset + internal[vm.col]; break;
            case VarForm::Reflect: x = vm.offset - internal[vm.col]; break;
            case VarForm::Split: x = internal[vm.col] - internal[vm.col + 1]; break;
        }
        result.vertex[j] = Rational(x);
    }
    Rational value;
    for (std::size_t j = 0; j < nv; ++j) value += lp.objective[j] * result.vertex[j];
    result.value = value;

    DualCertificate& cert = result.certificate;
    cert.row.assign(lp.constraints.size(), Rational());
    cert.upper.assign(nv, Rational());
    cert.lower.assign(nv, Rational());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Rational y = Rational(tab.reduced(ncols + i));
        if (y.is_zero()) continue;
        if (rows[i].origin == RowOrigin::Constraint) cert.row[rows[i].index] += rows[i].sign * y;
        else cert.upper[rows[i].index] += y;
    }
    for (std::size_t j = 0; j < nv; ++j) {
        const VarMap& vm = vars[j];
        const Rational d = Rational(tab.reduced(vm.col));
        if (vm.form == VarForm::Shift) cert.lower[j] += d;
        else if (vm.form == VarForm::Reflect) cert.upper[j] += d;
    }
    return result;
}

bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.num_vars) return false;
    for (const auto& c : lp.constraints) {
        Rational lhs;
        for (std::size_t j = 0; j < lp.num_vars; ++j)
            if (!c.coeffs[j].is_zero()) lhs += c.coeffs[j] * x[j];
        switch (c.relation) {
            case Relation::LessEqual: if (lhs > c.rhs) return false; break;
            case Relation::Equal: if (lhs != c.rhs) return false; break;
            case Relation::GreaterEqual: if (lhs < c.rhs) return false; break;
        }
    }
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        const Bound& b = lp.bounds[j];
        if (b.lo && x[j] < *b.lo) return false;
        if (b.hi && x[j] > *b.hi) return false;
    }
    return true;
}

bool check_certificate(const LinearProgram& lp, const LPResult& result) {
    if (result.status != Status::Optimal) return false;
    const std::size_t nv = lp.num_vars;
    const DualCertificate& cert = result.certificate;
    if (cert.row.size() != lp.constraints.size() || cert.upper.size() != nv || cert.lower.size() != nv)
        return false;
    if (!is_feasible(lp, result.vertex)) return false;

    Rational primal;
    for (std::size_t j = 0; j < nv; ++j) primal += lp.objective[j] * result.vertex[j];
    if (primal != result.value) return false;

    Rational dual;
    for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
        const auto& c = lp.constraints[r];
        const int s = cert.row[r].sign();
        if (c.relation == Relation::LessEqual && s < 0) return false;
        if (c.relation == Relation::GreaterEqual && s > 0) return false;
        if (s != 0) dual += cert.row[r] * c.rhs;
    }
    for (std::size_t j = 0; j < nv; ++j) {
        if (cert.upper[j].sign() < 0 || cert.lower[j].sign() < 0) return false;
        const Bound& b = lp.bounds[j];
        if (!cert.upper[j].is_zero()) {
            if (!b.hi) return false;
            dual += cert.upper[j] * *b.hi;
        }
        if (!cert.lower[j].is_zero()) {
            if (!b.lo) return false;
            dual -= cert.lower[j] * *b.lo;
        }
        Rational stationarity = cert.upper[j] - cert.lower[j];
        for (std::size_t r = 0; r < lp.constraints.size(); ++r)
            if (!cert.row[r].is_zero()) stationarity += cert.row[r] * lp.constraints[r].coeffs[j];
        if (stationarity != lp.objective[j]) return false;
    }
    return dual == primal;
}

}  // namespace sumfree::lp

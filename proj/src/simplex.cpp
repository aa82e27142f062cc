#include "efftemp/simplex.hpp"

#include <cmath>
#include <string>

#include <gmpxx.h>

#include "efftemp/errors.hpp"

namespace efftemp {

namespace {

constexpr double kResidualTolerance = 1e-9;
constexpr int kMaxPivots = 100000;

// Row-major tableau over exact rationals: rows 0..m-1 are constraints, row m
// holds the reduced costs of the current objective; the last column is the
// right-hand side. Every double converts to a rational exactly, so pivots
// introduce no round-off and Bland's rule is guaranteed to terminate.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1)) {}

    mpq_class& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
    const mpq_class& at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
    mpq_class& rhs(std::size_t r) { return at(r, cols_); }
    const mpq_class& rhs(std::size_t r) const { return at(r, cols_); }
    mpq_class& cost(std::size_t c) { return at(rows_, c); }
    const mpq_class& cost(std::size_t c) const { return at(rows_, c); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void pivot(std::size_t pr, std::size_t pc) {
        const mpq_class p = at(pr, pc);
        for (std::size_t c = 0; c <= cols_; ++c) {
            if (sgn(at(pr, c)) != 0) at(pr, c) /= p;
        }
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr || sgn(at(r, pc)) == 0) continue;
            const mpq_class f = at(r, pc);
            for (std::size_t c = 0; c <= cols_; ++c) {
                if (sgn(at(pr, c)) != 0) at(r, c) -= f * at(pr, c);
            }
        }
    }

    void drop_row(std::size_t r) {
        data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
                    data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
        --rows_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<mpq_class> data_;
};

enum class RunResult { Optimal, Unbounded };

// Minimizes the objective stored in the cost row over columns < active_cols.
RunResult run_simplex(Tableau& t, std::vector<std::size_t>& basis, std::size_t active_cols) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
        // Bland: lowest-index improving column.
        std::size_t enter = active_cols;
        for (std::size_t c = 0; c < active_cols; ++c) {
            if (sgn(t.cost(c)) < 0) {
                enter = c;
                break;
            }
        }
        if (enter == active_cols) return RunResult::Optimal;

        // Ratio test; ties broken by the lowest basic variable index.
        std::size_t leave = t.rows();
        mpq_class best;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            if (sgn(t.at(r, enter)) <= 0) continue;
            const mpq_class ratio = t.rhs(r) / t.at(r, enter);
            if (leave == t.rows() || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                best = ratio;
                leave = r;
            }
        }
        if (leave == t.rows()) return RunResult::Unbounded;
        t.pivot(leave, enter);
        basis[leave] = enter;
    }
    throw NumericalError("simplex: pivot limit reached");
}

void load_costs(Tableau& t, const std::vector<mpq_class>& c, const std::vector<std::size_t>& basis) {
    for (std::size_t col = 0; col <= t.cols(); ++col) t.cost(col) = col < c.size() ? c[col] : mpq_class(0);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (basis[r] >= c.size() || sgn(c[basis[r]]) == 0) continue;
        const mpq_class cb = c[basis[r]];
        for (std::size_t col = 0; col <= t.cols(); ++col) t.cost(col) -= cb * t.at(r, col);
    }
}

double constraint_residual(const LinearProgram& lp, const std::vector<double>& x) {
    double residual = 0.0;
    for (const auto& row : lp.constraints) {
        double lhs = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) lhs += row.coefficients[c] * x[c];
        const double diff = lhs - row.rhs;
        switch (row.relation) {
            case Relation::Equal: residual = std::max(residual, std::abs(diff)); break;
            case Relation::LessEqual: residual = std::max(residual, diff); break;
            case Relation::GreaterEqual: residual = std::max(residual, -diff); break;
        }
    }
    return residual;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    const std::size_t m = lp.constraints.size();
    if (n == 0) throw InputError("solve_lp: no variables");
    for (double c : lp.objective) {
        if (!std::isfinite(c)) throw InputError("solve_lp: non-finite objective coefficient");
    }
    for (const auto& row : lp.constraints) {
        if (row.coefficients.size() != n) throw InputError("solve_lp: constraint width does not match the objective");
        for (double a : row.coefficients) {
            if (!std::isfinite(a)) throw InputError("solve_lp: non-finite coefficient");
        }
        if (!std::isfinite(row.rhs)) throw InputError("solve_lp: non-finite right-hand side");
    }

    // Column layout: originals, one slack/surplus per inequality, one artificial
    // per row that lacks a ready-made basic slack.
    std::size_t n_slack = 0;
    for (const auto& row : lp.constraints) n_slack += row.relation != Relation::Equal;
    std::vector<Relation> rel(m);
    std::vector<int> sign(m, 1);
    std::size_t n_art = 0;
    for (std::size_t r = 0; r < m; ++r) {
        rel[r] = lp.constraints[r].relation;
        if (lp.constraints[r].rhs < 0.0) {
            sign[r] = -1;
            if (rel[r] == Relation::LessEqual) rel[r] = Relation::GreaterEqual;
            else if (rel[r] == Relation::GreaterEqual) rel[r] = Relation::LessEqual;
        }
        n_art += rel[r] != Relation::LessEqual;
    }
    const std::size_t art_begin = n + n_slack;
    const std::size_t total = art_begin + n_art;

    Tableau t(m, total);
    std::vector<std::size_t> basis(m);
    std::size_t slack = n, art = art_begin;
    for (std::size_t r = 0; r < m; ++r) {
        const auto& row = lp.constraints[r];
        for (std::size_t c = 0; c < n; ++c) t.at(r, c) = sign[r] * mpq_class(row.coefficients[c]);
        t.rhs(r) = sign[r] * mpq_class(row.rhs);
        if (row.relation != Relation::Equal) {
            // Slack sign follows the original relation, flipped with the row.
            const int s = row.relation == Relation::LessEqual ? 1 : -1;
            t.at(r, slack) = sign[r] * s;
            if (rel[r] == Relation::LessEqual) basis[r] = slack;
            ++slack;
        }
        if (rel[r] != Relation::LessEqual) {
            t.at(r, art) = 1;
            basis[r] = art++;
        }
    }

    // Phase one: minimize the sum of artificials.
    if (n_art > 0) {
        std::vector<mpq_class> phase_one(total);
        for (std::size_t c = art_begin; c < total; ++c) phase_one[c] = 1;
        load_costs(t, phase_one, basis);
        run_simplex(t, basis, total);
        mpq_class infeasibility = 0;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            if (basis[r] >= art_begin) infeasibility += t.rhs(r);
        }
        if (sgn(infeasibility) > 0) {
            return LpSolution{LpStatus::Infeasible, 0.0, {}, infeasibility.get_d()};
        }
        // Drive remaining (zero-valued) artificials out of the basis or drop
        // redundant rows.
        for (std::size_t r = 0; r < t.rows();) {
            if (basis[r] < art_begin) {
                ++r;
                continue;
            }
            std::size_t col = art_begin;
            for (std::size_t c = 0; c < art_begin; ++c) {
                if (sgn(t.at(r, c)) != 0) {
                    col = c;
                    break;
                }
            }
            if (col == art_begin) {
                t.drop_row(r);
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
            } else {
                t.pivot(r, col);
                basis[r] = col;
                ++r;
            }
        }
    }

    // Phase two over non-artificial columns.
    std::vector<mpq_class> cost(art_begin);
    const int dir = lp.sense == Sense::Maximize ? -1 : 1;
    for (std::size_t c = 0; c < n; ++c) cost[c] = dir * mpq_class(lp.objective[c]);
    load_costs(t, cost, basis);
    if (run_simplex(t, basis, art_begin) == RunResult::Unbounded) {
        return LpSolution{LpStatus::Unbounded, 0.0, {}, 0.0};
    }

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x.assign(n, 0.0);
    mpq_class value = 0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (basis[r] >= n) continue;
        sol.x[basis[r]] = t.rhs(r).get_d();
        value += mpq_class(lp.objective[basis[r]]) * t.rhs(r);
    }
    sol.value = value.get_d();
    sol.feasibility_residual = constraint_residual(lp, sol.x);
    if (sol.feasibility_residual > kResidualTolerance) {
        throw NumericalError("simplex: feasibility residual " + std::to_string(sol.feasibility_residual) +
                             " above tolerance");
    }
    return sol;
}

}  // namespace efftemp

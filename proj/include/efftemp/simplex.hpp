#pragma once

#include <vector>

namespace efftemp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LinearConstraint {
    std::vector<double> coefficients;
    Relation relation = Relation::Equal;
    double rhs = 0.0;
};

/// optimize c^T x subject to the constraints and x >= 0.
struct LinearProgram {
    Sense sense = Sense::Minimize;
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    std::vector<double> x;  // a vertex of the feasible region when optimal
    double feasibility_residual = 0.0;
};

/// Dense two-phase tableau simplex in exact rational arithmetic with Bland's
/// anti-cycling rule. Redundant equality rows are dropped after phase one.
/// The returned vertex and value are rounded to double once at the end.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace efftemp

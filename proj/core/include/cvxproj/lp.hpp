#pragma once

#include "cvxproj/linalg.hpp"

#include <vector>

namespace cvx {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vec x;
    double value = 0.0;
};

/// maximize c.x subject to A x <= b, x free.
/// Dense two-phase simplex with Bland's rule; sized for desk-scale problems.
LpResult solve_lp_max(const Mat& A, const Vec& b, const Vec& c);

/// Whether {x : A x <= b} is nonempty.
bool lp_feasible(const Mat& A, const Vec& b);

/// Whether target lies in the convex hull of the given points (within tol).
bool point_in_hull(const std::vector<Vec>& points, const Vec& target, double tol = 1e-9);

/// Pointedness of the positive hull of the rays: true iff the LP
/// { sum l_i r_i = 0, sum l_i = 1, l >= 0 } is infeasible.
bool cone_is_pointed(const std::vector<Vec>& rays, double tol = 1e-9);

} // namespace cvx

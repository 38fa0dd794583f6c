#include "cvxproj/lp.hpp"

#include "cvxproj/errors.hpp"

#include <limits>

namespace cvx {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr int kMaxIters = 20000;

// Full-tableau simplex, minimization over {z >= 0 : Az = b}, b >= 0 assumed.
// Basis columns are kept reduced to the identity. Bland's rule throughout.
struct Tableau {
    Mat a;                  // m x n
    Vec b;                  // m
    Vec cost;               // n
    std::vector<int> basis; // m entries, column indices

    double objective() const {
        double v = 0.0;
        for (int i = 0; i < b.size(); ++i) v += cost[basis[i]] * b[i];
        return v;
    }

    Vec reduced_costs() const {
        Vec r = cost;
        for (int i = 0; i < b.size(); ++i) r -= cost[basis[i]] * a.row(i).transpose();
        return r;
    }

};

void do_pivot(Tableau& t, int row, int col) {
    const double p = t.a(row, col);
    t.b[row] /= p;
    t.a.row(row) /= p;
    for (int i = 0; i < t.a.rows(); ++i) {
        if (i == row) continue;
        const double f = t.a(i, col);
        if (f == 0.0) continue;
        t.a.row(i) -= f * t.a.row(row);
        t.b[i] -= f * t.b[row];
    }
    t.basis[row] = col;
}

enum class StepResult { Optimal, Unbounded, Pivoted };

StepResult simplex_step(Tableau& t) {
    const Vec r = t.reduced_costs();
    int enter = -1;
    for (int j = 0; j < r.size(); ++j) {
        if (r[j] < -kFeasTol) { enter = j; break; } // Bland: lowest index
    }
    if (enter < 0) return StepResult::Optimal;

    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.a.rows(); ++i) {
        if (t.a(i, enter) > kPivotTol) {
            const double ratio = t.b[i] / t.a(i, enter);
            if (ratio < best - kPivotTol ||
                (ratio < best + kPivotTol && (leave < 0 || t.basis[i] < t.basis[leave]))) {
                best = ratio;
                leave = i;
            }
        }
    }
    if (leave < 0) return StepResult::Unbounded;
    do_pivot(t, leave, enter);
    return StepResult::Pivoted;
}

StepResult run_simplex(Tableau& t) {
    for (int iter = 0; iter < kMaxIters; ++iter) {
        const StepResult s = simplex_step(t);
        if (s != StepResult::Pivoted) return s;
    }
    throw Error("simplex: iteration limit exceeded");
}

} // namespace

LpResult solve_lp_max(const Mat& A, const Vec& b, const Vec& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || c.size() != n) throw Error("solve_lp_max: inconsistent sizes");

    // Standard form: x = xp - xn, slack s per row, all >= 0.
    const int nv = 2 * n + m;
    Mat eq(m, nv);
    Vec rhs = b;
    eq.setZero();
    eq.block(0, 0, m, n) = A;
    eq.block(0, n, m, n) = -A;
    eq.block(0, 2 * n, m, m) = Mat::Identity(m, m);
    for (int i = 0; i < m; ++i) {
        if (rhs[i] < 0.0) {
            eq.row(i) = -eq.row(i);
            rhs[i] = -rhs[i];
        }
    }

    // Phase 1: artificial variable per row.
    Tableau t;
    t.a.resize(m, nv + m);
    t.a.block(0, 0, m, nv) = eq;
    t.a.block(0, nv, m, m) = Mat::Identity(m, m);
    t.b = rhs;
    t.cost = Vec::Zero(nv + m);
    for (int i = 0; i < m; ++i) t.cost[nv + i] = 1.0;
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) t.basis[i] = nv + i;

    if (run_simplex(t) == StepResult::Unbounded)
        throw Error("simplex: phase 1 unbounded"); // cannot happen, cost >= 0

    if (t.objective() > kFeasTol) return {LpStatus::Infeasible, Vec(), 0.0};

    // Pivot any leftover artificials out of the basis (degenerate rows).
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < nv) continue;
        int col = -1;
        for (int j = 0; j < nv; ++j) {
            if (std::abs(t.a(i, j)) > 1e-8) { col = j; break; }
        }
        if (col >= 0) do_pivot(t, i, col);
        // else: the row is redundant; the artificial stays basic at value ~0.
    }

    // Phase 2 on the original variables. Rows whose artificial could not be
    // pivoted out are redundant; they keep a zero-cost synthetic column so
    // the tableau stays square.
    int extra = 0;
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= nv) ++extra;

    Tableau t2;
    t2.a.resize(m, nv + extra);
    t2.a.leftCols(nv) = t.a.leftCols(nv);
    t2.a.rightCols(extra).setZero();
    t2.b = t.b;
    t2.cost = Vec::Zero(nv + extra);
    t2.cost.head(n) = -c;          // maximize c.x == minimize -c.x
    t2.cost.segment(n, n) = c;
    t2.basis = t.basis;
    int k = 0;
    for (int i = 0; i < m; ++i) {
        if (t2.basis[i] >= nv) {
            t2.a.row(i).setZero();
            t2.b[i] = 0.0;
            t2.a(i, nv + k) = 1.0;
            t2.basis[i] = nv + k;
            ++k;
        }
    }

    const StepResult s = run_simplex(t2);
    if (s == StepResult::Unbounded) return {LpStatus::Unbounded, Vec(), 0.0};

    Vec z = Vec::Zero(t2.a.cols());
    for (int i = 0; i < m; ++i) z[t2.basis[i]] = t2.b[i];
    LpResult out;
    out.status = LpStatus::Optimal;
    out.x = z.head(n) - z.segment(n, n);
    out.value = c.dot(out.x);
    return out;
}

bool lp_feasible(const Mat& A, const Vec& b) {
    return solve_lp_max(A, b, Vec::Zero(A.cols())).status != LpStatus::Infeasible;
}

bool point_in_hull(const std::vector<Vec>& points, const Vec& target, double tol) {
    if (points.empty()) return false;
    const int k = static_cast<int>(points.size());
    const int d = static_cast<int>(target.size());
    // lambda >= 0, sum lambda = 1, sum lambda p_i = target (within tol).
    Mat A(2 * d + 2 + k, k);
    Vec b(2 * d + 2 + k);
    for (int j = 0; j < k; ++j) {
        A.block(0, j, d, 1) = points[j];
        A.block(d, j, d, 1) = -points[j];
    }
    b.head(d) = target.array() + tol;
    b.segment(d, d) = -(target.array() - tol);
    A.row(2 * d).setOnes();
    b[2 * d] = 1.0;
    A.row(2 * d + 1).setConstant(-1.0);
    b[2 * d + 1] = -1.0;
    A.block(2 * d + 2, 0, k, k) = -Mat::Identity(k, k);
    b.tail(k).setZero();
    return lp_feasible(A, b);
}

bool cone_is_pointed(const std::vector<Vec>& rays, double tol) {
    if (rays.empty()) return true;
    std::vector<Vec> unit;
    unit.reserve(rays.size());
    for (const Vec& r : rays) {
        const double n = r.norm();
        if (n == 0.0) throw Error("cone_is_pointed: zero ray");
        unit.push_back(r / n);
    }
    const Vec zero = Vec::Zero(unit.front().size());
    return !point_in_hull(unit, zero, tol);
}

} // namespace cvx

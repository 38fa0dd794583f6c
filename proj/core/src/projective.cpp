#include "cvxproj/projective.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace cvx {
namespace {

constexpr double kSignEntryTol = 1e-12;

// Rescales only when the norm is off by more than a few ulps so that
// canonicalization is exactly idempotent.
void normalize_in_place(Vec& v) {
    const double n = v.norm();
    if (n == 0.0) throw Error("projective point: zero vector");
    if (std::abs(n - 1.0) > 1e-14) v /= n;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > kSignEntryTol) {
            if (v[i] < 0.0) v = -v;
            break;
        }
    }
}

} // namespace

ProjPoint::ProjPoint(Vec coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw Error("projective point: need at least 2 coordinates");
    normalize_in_place(coords_);
}

double proj_point_distance(const ProjPoint& a, const ProjPoint& b) {
    if (a.coords().size() != b.coords().size())
        throw DimensionMismatch("proj_point_distance: dimension mismatch");
    const double plus = (a.coords() - b.coords()).norm();
    const double minus = (a.coords() + b.coords()).norm();
    return std::min(plus, minus);
}

bool proj_point_equal(const ProjPoint& a, const ProjPoint& b, double tol) {
    return proj_point_distance(a, b) <= tol;
}

AffineChart::AffineChart(Vec functional) : functional_(std::move(functional)) {
    if (functional_.size() < 2 || functional_.norm() == 0.0)
        throw Error("affine chart: functional must be nonzero of length >= 2");
    int best = 0;
    for (int i = 1; i < functional_.size(); ++i)
        if (std::abs(functional_[i]) > std::abs(functional_[best])) best = i;
    drop_ = best;
}

AffineChart AffineChart::standard(int dim) {
    Vec f = Vec::Zero(dim + 1);
    f[0] = 1.0;
    return AffineChart(f);
}

bool AffineChart::covers(const ProjPoint& p, double tol) const {
    if (p.coords().size() != functional_.size())
        throw DimensionMismatch("affine chart: dimension mismatch");
    return std::abs(functional_.dot(p.coords())) > tol;
}

Vec AffineChart::to_affine(const ProjPoint& p) const {
    if (!covers(p)) throw Error("affine chart: point at infinity of this chart");
    const Vec v = p.coords() / functional_.dot(p.coords());
    Vec out(dim());
    int k = 0;
    for (int i = 0; i < v.size(); ++i)
        if (i != drop_) out[k++] = v[i];
    return out;
}

Vec AffineChart::lift(const Vec& x) const {
    if (x.size() != dim()) throw DimensionMismatch("affine chart: affine point has wrong length");
    Vec v(functional_.size());
    int k = 0;
    double partial = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (i != drop_) {
            v[i] = x[k++];
            partial += functional_[i] * v[i];
        }
    }
    v[drop_] = (1.0 - partial) / functional_[drop_];
    return v;
}

ProjPoint AffineChart::from_affine(const Vec& x) const {
    return ProjPoint(lift(x));
}

ProjLinearMap::ProjLinearMap(Mat m) : matrix_(std::move(m)) {
    if (matrix_.size() == 0) throw Error("projective map: empty matrix");
    const double n = operator_norm(matrix_);
    if (n == 0.0) throw Error("projective map: zero matrix");
    if (std::abs(n - 1.0) > 1e-12) matrix_ /= n;
    // Column-major scan for the sign convention.
    for (int j = 0; j < matrix_.cols(); ++j) {
        bool decided = false;
        for (int i = 0; i < matrix_.rows(); ++i) {
            if (std::abs(matrix_(i, j)) > kSignEntryTol) {
                if (matrix_(i, j) < 0.0) matrix_ = -matrix_;
                decided = true;
                break;
            }
        }
        if (decided) break;
    }
}

ProjLinearMap ProjLinearMap::identity(int dim) {
    return ProjLinearMap(Mat::Identity(dim + 1, dim + 1));
}

ProjPoint proj_apply(const ProjLinearMap& t, const ProjPoint& x, double tol) {
    if (t.matrix().cols() != x.coords().size())
        throw DimensionMismatch("proj_apply: dimension mismatch");
    Vec w = t.matrix() * x.coords();
    // Canonical forms have |T| = 1 and |x| = 1.
    if (w.norm() <= tol) throw KernelPoint("proj_apply: point lies in [ker T]");
    return ProjPoint(std::move(w));
}

KernelInfo kernel_and_rank(const ProjLinearMap& t, double rel_tol) {
    KernelInfo info;
    info.rank = numeric_rank(t.matrix(), rel_tol);
    info.kernel_basis = null_space(t.matrix(), rel_tol);
    return info;
}

double proj_map_distance(const ProjLinearMap& a, const ProjLinearMap& b) {
    if (a.matrix().rows() != b.matrix().rows() || a.matrix().cols() != b.matrix().cols())
        throw DimensionMismatch("proj_map_distance: dimension mismatch");
    const double plus = (a.matrix() - b.matrix()).norm();
    const double minus = (a.matrix() + b.matrix()).norm();
    return std::min(plus, minus);
}

bool proj_equal(const ProjLinearMap& a, const ProjLinearMap& b, double tol) {
    return proj_map_distance(a, b) <= tol;
}

ProjLine::ProjLine(const ProjPoint& a, const ProjPoint& b) {
    if (a.coords().size() != b.coords().size())
        throw DimensionMismatch("projective line: dimension mismatch");
    Mat m(a.coords().size(), 2);
    m.col(0) = a.coords();
    m.col(1) = b.coords();
    basis_ = orthonormal_columns(m, 1e-9);
    if (basis_.cols() != 2)
        throw DegenerateConfiguration("projective line: points coincide");
}

bool ProjLine::contains(const ProjPoint& p, double tol) const {
    const Vec residual = p.coords() - basis_ * (basis_.transpose() * p.coords());
    return residual.norm() <= tol;
}

double cross_ratio(const ProjPoint& a, const ProjPoint& x,
                   const ProjPoint& y, const ProjPoint& b) {
    const int n = static_cast<int>(a.coords().size());
    if (x.coords().size() != n || y.coords().size() != n || b.coords().size() != n)
        throw DimensionMismatch("cross_ratio: dimension mismatch");

    Mat stacked(4, n);
    stacked.row(0) = a.coords().transpose();
    stacked.row(1) = x.coords().transpose();
    stacked.row(2) = y.coords().transpose();
    stacked.row(3) = b.coords().transpose();

    Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (n > 2 && sv.size() > 2 && sv[2] > 1e-9 * sv[0])
        throw NotCollinear("cross_ratio: points do not lie on a common line");

    // Coordinates of each point in a basis of the line; the cross ratio is a
    // ratio of 2x2 determinants, invariant under the per-point scale ambiguity.
    const Mat basis = svd.matrixV().leftCols(2); // n x 2
    const Eigen::Vector2d pa = basis.transpose() * a.coords();
    const Eigen::Vector2d px = basis.transpose() * x.coords();
    const Eigen::Vector2d py = basis.transpose() * y.coords();
    const Eigen::Vector2d pb = basis.transpose() * b.coords();

    auto det2 = [](const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
        return u[0] * v[1] - u[1] * v[0];
    };
    const double xa = det2(px, pa);
    const double yb = det2(py, pb);
    if (std::abs(xa) <= 1e-12 || std::abs(yb) <= 1e-12)
        throw DegenerateConfiguration("cross_ratio: a = x or y = b");
    const double xb = det2(px, pb);
    const double ya = det2(py, pa);
    return std::abs(xb * ya) / std::abs(xa * yb);
}

ProjLinearMap limit_of_maps(const std::vector<ProjLinearMap>& seq, double tol) {
    if (seq.empty()) throw Error("limit_of_maps: empty sequence");
    Mat prev = seq.front().matrix();
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (seq[i].matrix().rows() != prev.rows() || seq[i].matrix().cols() != prev.cols())
            throw DimensionMismatch("limit_of_maps: dimension mismatch in sequence");
    }
    double last_gap = 0.0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const Mat& cur = seq[i].matrix();
        const double plus = (cur - prev).norm();
        const double minus = (cur + prev).norm();
        last_gap = std::min(plus, minus);
        prev = (plus <= minus) ? cur : Mat(-cur);
    }
    if (seq.size() > 1 && last_gap > tol)
        throw NotConverged("limit_of_maps: tail is not Cauchy under either sign");
    return ProjLinearMap(prev);
}

} // namespace cvx

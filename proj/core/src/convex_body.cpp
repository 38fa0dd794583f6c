#include "cvxproj/convex_body.hpp"

#include "cvxproj/lp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace cvx {
namespace {

constexpr double kBoundaryRel = 1e-9;

// All index combinations of size k from {0..n-1}.
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<Vec> dedup_points(const std::vector<Vec>& pts, double tol) {
    std::vector<Vec> out;
    for (const Vec& p : pts) {
        bool seen = false;
        for (const Vec& q : out) {
            if ((p - q).norm() <= tol) { seen = true; break; }
        }
        if (!seen) out.push_back(p);
    }
    return out;
}

// Facet enumeration from a (minimal) vertex set, chart dimension <= 4.
std::vector<Halfspace> facets_from_vertices(const std::vector<Vec>& verts, double scale) {
    const int d = static_cast<int>(verts.front().size());
    const int n = static_cast<int>(verts.size());
    if (d == 1) {
        double lo = verts[0][0], hi = verts[0][0];
        for (const Vec& v : verts) { lo = std::min(lo, v[0]); hi = std::max(hi, v[0]); }
        Halfspace upper{Vec::Constant(1, 1.0), hi};
        Halfspace lower{Vec::Constant(1, -1.0), -lo};
        return {upper, lower};
    }
    if (d > 4)
        throw Error("polytope: facet enumeration is supported for dimension <= 4; "
                    "pass halfspaces explicitly");

    const double tol = 1e-9 * std::max(scale, 1.0);
    std::vector<Halfspace> facets;
    for_each_combination(n, d, [&](const std::vector<int>& idx) {
        Mat diffs(d - 1, d);
        for (int i = 1; i < d; ++i)
            diffs.row(i - 1) = (verts[idx[i]] - verts[idx[0]]).transpose();
        const Mat ns = null_space(diffs, 1e-9);
        if (ns.cols() != 1) return; // affinely dependent subset
        Vec normal = ns.col(0);
        const double offset0 = normal.dot(verts[idx[0]]);
        double lo = 0.0, hi = 0.0;
        for (const Vec& v : verts) {
            const double s = normal.dot(v) - offset0;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (hi > tol && lo < -tol) return; // vertices on both sides: not a facet
        if (hi > tol) normal = -normal;    // orient outward
        const double offset = normal.dot(verts[idx[0]]);
        for (const Halfspace& f : facets) {
            if ((f.normal - normal).norm() <= 1e-9 && std::abs(f.offset - offset) <= tol)
                return;
        }
        facets.push_back({normal, offset});
    });
    if (facets.empty()) throw Error("polytope: no facets found (degenerate vertex set)");
    return facets;
}

// Vertex enumeration from halfspaces, chart dimension <= 4.
std::vector<Vec> vertices_from_facets(const std::vector<Halfspace>& facets, int d) {
    if (d > 4)
        throw Error("halfspaces: vertex enumeration is supported for dimension <= 4");
    const int m = static_cast<int>(facets.size());
    std::vector<Vec> verts;
    double scale = 1.0;
    for_each_combination(m, d, [&](const std::vector<int>& idx) {
        Mat a(d, d);
        Vec b(d);
        for (int i = 0; i < d; ++i) {
            a.row(i) = facets[idx[i]].normal.transpose();
            b[i] = facets[idx[i]].offset;
        }
        Eigen::FullPivLU<Mat> lu(a);
        if (lu.rank() < d) return;
        const Vec x = lu.solve(b);
        scale = std::max(scale, x.norm());
        for (const Halfspace& f : facets) {
            if (f.normal.dot(x) - f.offset > 1e-9 * std::max(scale, 1.0)) return;
        }
        verts.push_back(x);
    });
    return dedup_points(verts, 1e-9 * scale);
}

std::vector<Vec> prune_to_extreme(std::vector<Vec> verts) {
    if (verts.size() <= 2) return verts;
    std::vector<Vec> minimal;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < verts.size(); ++j)
            if (j != i) others.push_back(verts[j]);
        if (!point_in_hull(others, verts[i], 1e-9))
            minimal.push_back(verts[i]);
    }
    return minimal;
}

double pairwise_diameter(const std::vector<Vec>& verts) {
    double d = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            d = std::max(d, (verts[i] - verts[j]).norm());
    return d;
}

} // namespace

ConvexBody::ConvexBody(Rep rep, AffineChart chart) : rep_(rep), chart_(std::move(chart)) {}

ConvexBody ConvexBody::interval(double lo, double hi, std::optional<AffineChart> chart) {
    if (!(lo < hi)) throw Error("interval: need lo < hi");
    ConvexBody b(Rep::Interval, chart ? *chart : AffineChart::standard(1));
    if (b.chart_.dim() != 1) throw DimensionMismatch("interval: chart must have dimension 1");
    b.vertices_ = {Vec::Constant(1, lo), Vec::Constant(1, hi)};
    b.facets_ = {{Vec::Constant(1, 1.0), hi}, {Vec::Constant(1, -1.0), -lo}};
    b.diameter_ = hi - lo;
    b.boundary_tol_ = kBoundaryRel * b.diameter_;
    return b;
}

ConvexBody ConvexBody::polytope(std::vector<Vec> vertices, AffineChart chart) {
    if (vertices.empty()) throw Error("polytope: no vertices");
    const int d = chart.dim();
    for (const Vec& v : vertices)
        if (v.size() != d) throw DimensionMismatch("polytope: vertex length != chart dimension");
    std::vector<Vec> verts = prune_to_extreme(dedup_points(vertices, 1e-12));
    Mat diffs(static_cast<int>(verts.size()) - 1, d);
    for (std::size_t i = 1; i < verts.size(); ++i)
        diffs.row(static_cast<int>(i) - 1) = (verts[i] - verts[0]).transpose();
    if (numeric_rank(diffs, 1e-10) < d)
        throw Error("polytope: empty interior (vertices do not affinely span the chart)");
    const double scale = pairwise_diameter(verts);
    std::vector<Halfspace> facets = facets_from_vertices(verts, scale);
    return polytope(std::move(verts), std::move(facets), std::move(chart));
}

ConvexBody ConvexBody::polytope(std::vector<Vec> vertices, std::vector<Halfspace> facets,
                                AffineChart chart) {
    ConvexBody b(Rep::Polytope, std::move(chart));
    b.vertices_ = std::move(vertices);
    b.facets_ = std::move(facets);
    for (Halfspace& f : b.facets_) {
        const double n = f.normal.norm();
        if (n == 0.0) throw Error("polytope: zero facet normal");
        f.normal /= n;
        f.offset /= n;
    }
    b.diameter_ = pairwise_diameter(b.vertices_);
    if (b.diameter_ == 0.0) throw Error("polytope: degenerate vertex set");
    b.boundary_tol_ = kBoundaryRel * b.diameter_;
    return b;
}

ConvexBody ConvexBody::halfspaces(std::vector<Halfspace> facets, AffineChart chart) {
    if (facets.empty()) throw Error("halfspaces: empty constraint list");
    const int d = chart.dim();
    Mat a(static_cast<int>(facets.size()), d);
    Vec rhs(static_cast<int>(facets.size()));
    for (std::size_t i = 0; i < facets.size(); ++i) {
        const double n = facets[i].normal.norm();
        if (n == 0.0) throw Error("halfspaces: zero normal");
        facets[i].normal /= n;
        facets[i].offset /= n;
        a.row(static_cast<int>(i)) = facets[i].normal.transpose();
        rhs[static_cast<int>(i)] = facets[i].offset;
    }
    for (int i = 0; i < d; ++i) {
        for (double s : {1.0, -1.0}) {
            Vec c = Vec::Zero(d);
            c[i] = s;
            const LpResult r = solve_lp_max(a, rhs, c);
            if (r.status == LpStatus::Infeasible) throw Error("halfspaces: empty body");
            if (r.status == LpStatus::Unbounded)
                throw NotProper("halfspaces: body is unbounded in its chart");
        }
    }
    std::vector<Vec> verts = vertices_from_facets(facets, d);
    if (verts.empty()) throw Error("halfspaces: no vertices found");
    ConvexBody b(Rep::Halfspaces, std::move(chart));
    b.facets_ = std::move(facets);
    b.vertices_ = prune_to_extreme(std::move(verts));
    b.diameter_ = pairwise_diameter(b.vertices_);
    if (b.diameter_ == 0.0) throw Error("halfspaces: empty interior");
    b.boundary_tol_ = kBoundaryRel * b.diameter_;
    return b;
}

ConvexBody ConvexBody::ellipsoid(Vec center, Mat shape, AffineChart chart) {
    ConvexBody b(Rep::Ellipsoid, std::move(chart));
    if (center.size() != b.chart_.dim() || shape.rows() != shape.cols() ||
        shape.rows() != center.size())
        throw DimensionMismatch("ellipsoid: inconsistent dimensions");
    if ((shape - shape.transpose()).norm() > 1e-12 * shape.norm())
        throw Error("ellipsoid: shape matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(shape);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw Error("ellipsoid: shape matrix must be positive definite");
    b.center_ = std::move(center);
    b.shape_ = std::move(shape);
    b.diameter_ = 2.0 / std::sqrt(es.eigenvalues().minCoeff());
    b.boundary_tol_ = kBoundaryRel * b.diameter_;
    return b;
}

ConvexBody ConvexBody::improper(ConvexBody body) {
    body.proper_ = false;
    return body;
}

const std::vector<Vec>& ConvexBody::vertices() const {
    if (rep_ == Rep::Ellipsoid) throw Error("vertices(): ellipsoid has no vertex list");
    return vertices_;
}

const std::vector<Halfspace>& ConvexBody::facets() const {
    if (rep_ == Rep::Ellipsoid) throw Error("facets(): ellipsoid has no facet list");
    return facets_;
}

const Vec& ConvexBody::center() const {
    if (rep_ != Rep::Ellipsoid) throw Error("center(): not an ellipsoid");
    return center_;
}

const Mat& ConvexBody::shape() const {
    if (rep_ != Rep::Ellipsoid) throw Error("shape(): not an ellipsoid");
    return shape_;
}

double ConvexBody::margin(const Vec& x) const {
    if (x.size() != dim()) throw DimensionMismatch("margin: wrong affine dimension");
    if (rep_ == Rep::Ellipsoid) {
        const Vec r = x - center_;
        return r.dot(shape_ * r) - 1.0;
    }
    double m = -std::numeric_limits<double>::infinity();
    for (const Halfspace& f : facets_)
        m = std::max(m, f.normal.dot(x) - f.offset);
    return m;
}

Region ConvexBody::classify_affine(const Vec& x) const {
    // Ellipsoid margins are dimensionless (defining function is 1 on the
    // boundary); halfspace margins are chart lengths, so scale by diameter.
    const double tol = rep_ == Rep::Ellipsoid ? kBoundaryRel : boundary_tol_;
    const double m = margin(x);
    if (m < -tol) return Region::Interior;
    if (m <= tol) return Region::Boundary;
    return Region::Exterior;
}

Region ConvexBody::classify(const ProjPoint& p) const {
    if (!chart_.covers(p)) return Region::Exterior;
    return classify_affine(chart_.to_affine(p));
}

Vec ConvexBody::interior_point() const {
    if (rep_ == Rep::Ellipsoid) return center_;
    Vec c = Vec::Zero(dim());
    for (const Vec& v : vertices_) c += v;
    return c / static_cast<double>(vertices_.size());
}

std::pair<double, double> ConvexBody::line_hits(const Vec& x, const Vec& y) const {
    const Vec u = y - x;
    const double un = u.norm();
    if (un <= 1e-14 * std::max(1.0, diameter_))
        throw CoincidentPoints("line_hits: points coincide");

    if (rep_ == Rep::Ellipsoid) {
        const Vec r = x - center_;
        const double a = u.dot(shape_ * u);
        const double bq = 2.0 * u.dot(shape_ * r);
        const double cq = r.dot(shape_ * r) - 1.0;
        const double disc = bq * bq - 4.0 * a * cq;
        if (a <= 0.0 || disc <= 0.0) throw Error("line_hits: degenerate ellipsoid chord");
        const double sq = std::sqrt(disc);
        // Numerically stable quadratic roots.
        const double q = -0.5 * (bq + (bq >= 0.0 ? sq : -sq));
        double t1 = q / a;
        double t2 = (q != 0.0) ? cq / q : -bq / a - t1;
        if (t1 > t2) std::swap(t1, t2);
        return {t1, t2};
    }

    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();
    for (const Halfspace& f : facets_) {
        const double slope = f.normal.dot(u);
        const double gap = f.offset - f.normal.dot(x); // > 0 for interior x
        if (std::abs(slope) <= 1e-14) continue;
        const double t = gap / slope;
        if (slope > 0.0) t_max = std::min(t_max, t);
        else t_min = std::max(t_min, t);
    }
    if (!std::isfinite(t_min) || !std::isfinite(t_max))
        throw Error("line_hits: unbounded chord (body not bounded?)");
    return {t_min, t_max};
}

std::vector<Vec> ConvexBody::sample_interior(int n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<Vec> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        if (rep_ == Rep::Ellipsoid) {
            Eigen::SelfAdjointEigenSolver<Mat> es(shape_);
            const Mat half = es.operatorInverseSqrt();
            Vec g = rng.normal_vec(dim());
            if (g.norm() == 0.0) g = Vec::Ones(dim());
            g /= g.norm();
            const double radius = 0.995 * std::pow(rng.uniform(1e-9, 1.0), 1.0 / dim());
            out.push_back(center_ + half * (radius * g));
        } else {
            const Vec w = rng.simplex_weights(static_cast<int>(vertices_.size()));
            Vec p = Vec::Zero(dim());
            for (std::size_t i = 0; i < vertices_.size(); ++i) p += w[static_cast<int>(i)] * vertices_[i];
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<Vec> ConvexBody::sample_boundary(int n, std::uint64_t seed) const {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL);
    const Vec base = interior_point();
    std::vector<Vec> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        Vec dir = rng.normal_vec(dim());
        if (dir.norm() == 0.0) dir = Vec::Ones(dim());
        dir /= dir.norm();
        const auto [t0, t1] = line_hits(base, base + dir);
        out.push_back(base + t1 * dir);
    }
    return out;
}

Mat ConvexBody::homogeneous_quadric() const {
    if (rep_ != Rep::Ellipsoid) throw Error("homogeneous_quadric: not an ellipsoid");
    const int d = dim();
    const Vec& f = chart_.functional();
    // Affine-coordinate extractor relative to the center: A v = aff(v) - (f.v) c.
    Mat sel = Mat::Zero(d, d + 1);
    int k = 0;
    for (int i = 0; i <= d; ++i)
        if (i != chart_.drop_index()) sel(k++, i) = 1.0;
    const Mat a = sel - center_ * f.transpose();
    return a.transpose() * shape_ * a - f * f.transpose();
}

Region contains(const ConvexBody& body, const ProjPoint& x) {
    return body.classify(x);
}

Chord chord_endpoints(const ConvexBody& body, const ProjPoint& x, const ProjPoint& y) {
    if (body.classify(x) != Region::Interior || body.classify(y) != Region::Interior)
        throw NotInterior("chord_endpoints: both points must be interior");
    const Vec xa = body.chart().to_affine(x);
    const Vec ya = body.chart().to_affine(y);
    if ((xa - ya).norm() <= 1e-14 * std::max(1.0, body.diameter()))
        throw CoincidentPoints("chord_endpoints: points coincide");
    const auto [t0, t1] = body.line_hits(xa, ya);
    const Vec u = ya - xa;
    return Chord{body.chart().from_affine(xa + t0 * u), x, y,
                 body.chart().from_affine(xa + t1 * u), t0, t1};
}

ExtremePoints extreme_points(const ConvexBody& body) {
    ExtremePoints out;
    if (body.rep() == ConvexBody::Rep::Polytope || body.rep() == ConvexBody::Rep::Halfspaces) {
        out.enumerable = true;
        for (const Vec& v : body.vertices())
            out.points.push_back(body.chart().from_affine(v));
    }
    return out;
}

bool is_strictly_convex(const ConvexBody& body) {
    switch (body.rep()) {
        case ConvexBody::Rep::Ellipsoid:
        case ConvexBody::Rep::Interval:
            return true;
        default:
            return body.dim() < 2;
    }
}

} // namespace cvx

#pragma once

#include "cvxproj/projective.hpp"

#include <optional>
#include <vector>

namespace cvx {

enum class Region { Interior, Boundary, Exterior };

/// Constraint normal.x <= offset in affine chart coordinates; normal is unit.
struct Halfspace {
    Vec normal;
    double offset = 0.0;
};

struct Chord {
    ProjPoint a, x, y, b; // ordered a, x, y, b along the line
    double t_a = 0.0;     // parameters of a and b on the line x + t (y - x)
    double t_b = 0.0;
};

struct ExtremePoints {
    bool enumerable = false;            // false: infinitely many, use sample_boundary
    std::vector<ProjPoint> points;      // the vertex list when enumerable
};

/// A bounded convex open set in a declared affine chart. Bodies are immutable
/// and every query is a pure function. A body carries a properness flag; the
/// catalog uses a non-proper stand-in for a full affine chart, which the
/// metric operations refuse.
class ConvexBody {
public:
    enum class Rep { Interval, Polytope, Halfspaces, Ellipsoid };

    static ConvexBody interval(double lo, double hi,
                               std::optional<AffineChart> chart = std::nullopt);
    /// Vertex representation. Listed points that are not extreme are dropped,
    /// so the stored vertex list is always minimal. Facets are derived by
    /// direct enumeration (supported for chart dimension <= 4); pass them
    /// explicitly for higher dimensions.
    static ConvexBody polytope(std::vector<Vec> vertices, AffineChart chart);
    static ConvexBody polytope(std::vector<Vec> vertices, std::vector<Halfspace> facets,
                               AffineChart chart);
    /// Halfspace representation; must be bounded with nonempty interior.
    /// Vertices are derived for chart dimension <= 4.
    static ConvexBody halfspaces(std::vector<Halfspace> facets, AffineChart chart);
    /// { x : (x-center)^T shape (x-center) < 1 }, shape symmetric positive definite.
    static ConvexBody ellipsoid(Vec center, Mat shape, AffineChart chart);
    /// Same body, tagged non-proper (stand-in for an unbounded set).
    static ConvexBody improper(ConvexBody body);

    Rep rep() const { return rep_; }
    bool proper() const { return proper_; }
    const AffineChart& chart() const { return chart_; }
    int dim() const { return chart_.dim(); }
    double diameter() const { return diameter_; }

    const std::vector<Vec>& vertices() const;      // interval/polytope/halfspaces
    const std::vector<Halfspace>& facets() const;  // interval/polytope/halfspaces
    const Vec& center() const;                     // ellipsoid
    const Mat& shape() const;                      // ellipsoid

    Region classify(const ProjPoint& p) const;
    Region classify_affine(const Vec& x) const;
    /// Signed defining-function value: negative inside, zero on the boundary.
    double margin(const Vec& x) const;

    Vec interior_point() const; // affine coordinates of a deep interior point
    std::vector<Vec> sample_interior(int n, std::uint64_t seed) const;
    std::vector<Vec> sample_boundary(int n, std::uint64_t seed) const;

    /// Boundary hit parameters (t_min < 0 < 1 < t_max) of the line x + t(y-x)
    /// through two interior affine points.
    std::pair<double, double> line_hits(const Vec& x, const Vec& y) const;

    /// Homogeneous symmetric matrix H with body = { [v] : v' H v < 0 }
    /// (ellipsoid representation only).
    Mat homogeneous_quadric() const;

private:
    ConvexBody(Rep rep, AffineChart chart);

    Rep rep_;
    AffineChart chart_;
    bool proper_ = true;
    std::vector<Vec> vertices_;
    std::vector<Halfspace> facets_;
    Vec center_;
    Mat shape_;
    double diameter_ = 0.0;
    double boundary_tol_ = 0.0;
};

/// Classification of a point against the body: Exterior when the point is
/// outside the body's chart.
Region contains(const ConvexBody& body, const ProjPoint& x);

/// Boundary endpoints of the chord through two interior points, ordered
/// a, x, y, b. Throws NotInterior / CoincidentPoints.
Chord chord_endpoints(const ConvexBody& body, const ProjPoint& x, const ProjPoint& y);

/// Vertex list for polytopes; non-enumerable marker for ellipsoids and
/// intervals (every boundary point is extreme there; sample via
/// ConvexBody::sample_boundary).
ExtremePoints extreme_points(const ConvexBody& body);

/// Whether the boundary meets every projective line in at most two points.
bool is_strictly_convex(const ConvexBody& body);

} // namespace cvx

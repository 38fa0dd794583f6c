#include "cvxproj/hilbert.hpp"

#include <cmath>
#include <limits>

namespace cvx {
namespace {

// log of the cross ratio [a,x,y,b] from chord parameters t_a < 0 < 1 < t_b of
// the line x + t(y-x); chord length factors cancel.
double log_cross_ratio(double t_a, double t_b) {
    return std::log((t_b * (1.0 - t_a)) / ((-t_a) * (t_b - 1.0)));
}

} // namespace

double hilbert_distance(const ConvexBody& body, const ProjPoint& x, const ProjPoint& y) {
    if (!body.proper())
        throw NotProper("hilbert_distance: body is not proper");
    if (body.classify(x) != Region::Interior || body.classify(y) != Region::Interior)
        throw NotInterior("hilbert_distance: points must be interior");
    if (proj_point_distance(x, y) <= 1e-14) return 0.0;
    const Vec xa = body.chart().to_affine(x);
    const Vec ya = body.chart().to_affine(y);
    if ((xa - ya).norm() <= 1e-14 * std::max(1.0, body.diameter())) return 0.0;
    const auto [t_a, t_b] = body.line_hits(xa, ya);
    return log_cross_ratio(t_a, t_b);
}

double cone_hilbert_distance(const ConvexCone& cone, const Vec& x, const Vec& y) {
    if (cone.classify(x) != Region::Interior || cone.classify(y) != Region::Interior)
        throw NotInCone("cone_hilbert_distance: points must be interior to the cone");
    if ((x - y).norm() <= 1e-14 * std::max(x.norm(), y.norm())) return 0.0;
    const ConvexCone::LineHits h = cone.line_hits(x, y);
    if (h.min_finite && h.max_finite) return log_cross_ratio(h.t_min, h.t_max);
    if (h.min_finite) return std::log((1.0 - h.t_min) / (-h.t_min)); // b at infinity
    if (h.max_finite) return std::log(h.t_max / (h.t_max - 1.0));    // a at infinity
    throw Error("cone_hilbert_distance: chord never meets the boundary (cone not proper?)");
}

MetricSample evaluate_pairs(const ConvexBody& body,
                            std::vector<std::pair<ProjPoint, ProjPoint>> pairs) {
    MetricSample sample;
    sample.distances.reserve(pairs.size());
    for (const auto& [x, y] : pairs)
        sample.distances.push_back(hilbert_distance(body, x, y));
    sample.pairs = std::move(pairs);
    return sample;
}

CheckReport check_contraction(const ProjLinearMap& t, const ConvexBody& source,
                              const ConvexBody& target,
                              const std::vector<std::pair<ProjPoint, ProjPoint>>& pairs,
                              double tol) {
    CheckReport report{"contraction", false, -std::numeric_limits<double>::infinity(), tol, 0};
    for (const auto& [x, y] : pairs) {
        ProjPoint tx = [&] {
            try {
                return proj_apply(t, x);
            } catch (const KernelPoint&) {
                throw ImageEscapes("check_contraction: sample point maps into [ker T]");
            }
        }();
        ProjPoint ty = [&] {
            try {
                return proj_apply(t, y);
            } catch (const KernelPoint&) {
                throw ImageEscapes("check_contraction: sample point maps into [ker T]");
            }
        }();
        if (target.classify(tx) != Region::Interior || target.classify(ty) != Region::Interior)
            throw ImageEscapes("check_contraction: image point is not interior to the target");
        const double d1 = hilbert_distance(source, x, y);
        const double d2 = hilbert_distance(target, tx, ty);
        report.max_margin = std::max(report.max_margin, d2 - d1);
        ++report.pairs_checked;
    }
    report.pass = report.pairs_checked > 0 && report.max_margin <= tol;
    return report;
}

CheckReport check_isometry(const Mat& g, const ConvexBody& body,
                           const std::vector<std::pair<ProjPoint, ProjPoint>>& pairs,
                           double tol) {
    if (!preserves_body(g, body))
        throw NotAutomorphism("check_isometry: matrix does not preserve the body");
    CheckReport report{"isometry", false, 0.0, tol, 0};
    const ProjLinearMap pg(g);
    for (const auto& [x, y] : pairs) {
        const double d = hilbert_distance(body, x, y);
        const double dg = hilbert_distance(body, proj_apply(pg, x), proj_apply(pg, y));
        report.max_margin = std::max(report.max_margin, std::abs(dg - d));
        ++report.pairs_checked;
    }
    report.pass = report.pairs_checked > 0 && report.max_margin <= tol;
    return report;
}

std::vector<std::pair<ProjPoint, ProjPoint>> sample_pairs(const ConvexBody& body, int n,
                                                          std::uint64_t seed) {
    const auto xs = body.sample_interior(n, seed);
    const auto ys = body.sample_interior(n, seed ^ 0x5851f42d4c957f2dULL);
    std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
    pairs.reserve(n);
    for (int i = 0; i < n; ++i)
        pairs.emplace_back(body.chart().from_affine(xs[i]), body.chart().from_affine(ys[i]));
    return pairs;
}

} // namespace cvx

#pragma once

#include "cvxproj/cone.hpp"
#include "cvxproj/convex_body.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cvx {

/// Batch evaluation record for metric checks.
struct MetricSample {
    std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
    std::vector<double> distances; // aligned with pairs, each >= 0
};

/// Evaluates the Hilbert distance over a batch of interior pairs.
MetricSample evaluate_pairs(const ConvexBody& body,
                            std::vector<std::pair<ProjPoint, ProjPoint>> pairs);

/// Hilbert distance log[a,x,y,b] on a proper convex body. No 1/2 factor: on
/// the unit disk this is twice the curvature -1 hyperbolic distance.
/// Throws NotProper for non-proper bodies and NotInterior for boundary or
/// exterior points.
double hilbert_distance(const ConvexBody& body, const ProjPoint& x, const ProjPoint& y);

/// Hilbert distance of the cone viewed as a convex domain of its ambient
/// affine space, with the infinite-endpoint cross-ratio convention (a chord
/// reaching a recession direction of the cone drops that endpoint's factors).
/// On the positive orthant this is log(max(r_max,1)/min(r_min,1)) for the
/// coordinate ratios r_i = y_i/x_i, which reduces to the Birkhoff/Hopf
/// oscillation log(r_max/r_min) whenever some ratio is 1.
double cone_hilbert_distance(const ConvexCone& cone, const Vec& x, const Vec& y);

struct CheckReport {
    std::string name;
    bool pass = false;
    double max_margin = 0.0; // worst signed violation over the pairs
    double tolerance = 0.0;
    int pairs_checked = 0;
};

/// Distance-decreasing check: max over pairs of d2(Tx,Ty) - d1(x,y).
/// Throws ImageEscapes if some image is not interior to the target body.
CheckReport check_contraction(const ProjLinearMap& t, const ConvexBody& source,
                              const ConvexBody& target,
                              const std::vector<std::pair<ProjPoint, ProjPoint>>& pairs,
                              double tol = 1e-9);

/// Isometry check for an automorphism: max over pairs of |d(gx,gy) - d(x,y)|.
/// Throws NotAutomorphism when g does not preserve the body.
CheckReport check_isometry(const Mat& g, const ConvexBody& body,
                           const std::vector<std::pair<ProjPoint, ProjPoint>>& pairs,
                           double tol = 1e-9);

/// Seeded interior point pairs for the batch verifiers.
std::vector<std::pair<ProjPoint, ProjPoint>> sample_pairs(const ConvexBody& body, int n,
                                                          std::uint64_t seed);

} // namespace cvx

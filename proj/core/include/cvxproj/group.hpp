#pragma once

#include "cvxproj/convex_body.hpp"
#include "cvxproj/projective.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cvx {

class ConvexCone;

struct Generator {
    std::string label;
    Mat matrix;
    Mat inverse;
};

/// A finitely generated subgroup of GL(d+1, R), given by generator matrices.
/// Inverses are computed at construction and verified to 1e-10.
class GroupGens {
public:
    GroupGens() = default;
    explicit GroupGens(std::vector<std::pair<std::string, Mat>> generators);

    int ambient_dim() const { return ambient_; } // d+1
    std::size_t size() const { return gens_.size(); }
    bool empty() const { return gens_.empty(); }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& at(std::size_t i) const { return gens_.at(i); }

    /// Matrix of a word like "a*b^-1*a". "1" (or empty) is the identity.
    Mat word_matrix(const std::string& word) const;

private:
    std::vector<Generator> gens_;
    int ambient_ = 0;
};

struct OrbitBall {
    ProjPoint base;
    int radius = 0;
    std::vector<std::pair<std::string, ProjPoint>> points; // BFS order, deduplicated
};

/// All points w.p for words w of length <= radius over generators and their
/// inverses, breadth-first with free reduction, deduplicated at 1e-8.
/// Throws Exploded past the point cap.
OrbitBall orbit_ball(const GroupGens& group, const ProjPoint& base, int radius,
                     std::size_t cap = 100000);

/// Whether [g] maps the body onto itself. Exact per representation:
/// a polytope's vertex set must be permuted (within 1e-9); an ellipsoid's
/// homogeneous quadric must pull back to a positive multiple of itself.
bool preserves_body(const Mat& g, const ConvexBody& body, double tol = 1e-9);

/// Lift of a body-preserving group to cone automorphisms: each generator is
/// rescaled to determinant +-1 and its sign fixed so that it maps an interior
/// ray of the cone into the cone; e*Id is appended (the group Lambda = Gamma x Z).
/// Throws NoConsistentSign when neither sign works.
GroupGens cone_lift(const GroupGens& group, const ConvexCone& cone);

/// Whether [h g] = [g h] projectively for every generator g.
bool centralizes(const Mat& h, const GroupGens& group, double tol = 1e-9);

} // namespace cvx

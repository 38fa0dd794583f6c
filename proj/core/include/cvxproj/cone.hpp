#pragma once

#include "cvxproj/convex_body.hpp"
#include "cvxproj/group.hpp"

#include <memory>
#include <vector>

namespace cvx {

/// A proper convex open cone in R^n, either as the positive hull of extreme
/// rays (with derived facet normals) or as the cone over a convex body sliced
/// by its chart hyperplane. Properness (pointedness and full-dimensionality)
/// is verified at construction.
class ConvexCone {
public:
    enum class Rep { PolyhedralRays, BaseBody };

    ConvexCone() = default; // empty; fill via the factories

    static ConvexCone from_rays(std::vector<Vec> rays);
    static ConvexCone over_body(const ConvexBody& body);

    Rep rep() const { return rep_; }
    int ambient_dim() const { return ambient_; }

    const std::vector<Vec>& rays() const;          // polyhedral only
    const std::vector<Vec>& facet_normals() const; // polyhedral; inward, unit
    const ConvexBody& base() const;                // base-body only

    /// Membership of the open cone; the apex is Boundary, the opposite
    /// component -C is Exterior. Tolerances are relative to |x|.
    Region classify(const Vec& x, double tol = 1e-9) const;

    Vec interior_point() const;
    std::vector<Vec> sample_interior(int n, std::uint64_t seed) const;

    struct LineHits {
        double t_min = 0.0, t_max = 0.0;
        bool min_finite = true, max_finite = true;
    };
    /// Boundary crossings of x + t(y - x) for interior x, y; an infinite side
    /// means the chord follows a recession direction of the cone.
    LineHits line_hits(const Vec& x, const Vec& y) const;

private:
    Rep rep_ = Rep::PolyhedralRays;
    int ambient_ = 0;
    std::vector<Vec> rays_;
    std::vector<Vec> facet_normals_;
    std::shared_ptr<const ConvexBody> base_;
    Mat quadric_; // homogeneous quadric for base-body cones over ellipsoids
};

/// The open cone above a proper body: {t v : t > 0, [v] in body, chart(v) = 1}.
ConvexCone cone_over(const ConvexBody& body);

/// Orthonormal (Frobenius) basis of {X : X g = g X for all generators}, via
/// the null space of the stacked Sylvester operators. Contains the identity
/// direction, so the dimension is at least one.
std::vector<Mat> commutant_basis(const GroupGens& group, double rel_tol = 1e-10);

struct DecompositionBlock {
    Mat basis;      // n x m, orthonormal columns spanning the invariant subspace
    ConvexCone cone; // the factor cone, in block coordinates (dimension m)
    /// Commutant of the restricted action has dimension 2 or 4 but the block
    /// admits no further real split (complex or quaternionic type).
    bool irreducible_nonabsolute = false;
};

struct Decomposition {
    std::vector<DecompositionBlock> blocks;
    int block_count() const { return static_cast<int>(blocks.size()); }
};

/// Invariant splitting of the cone: commutant eigenspace refinement until each
/// block's commutant is one-dimensional, with the cone projected onto each
/// block along the others. The block-coordinate decomposition C = C_1 + ... + C_k
/// is verified on interior samples; throws SplitUnverified when the invariant
/// subspaces exist but the cone does not split along them.
Decomposition invariant_splitting(const GroupGens& group, const ConvexCone& cone,
                                  std::uint64_t seed = 0);

struct DecompositionReport {
    bool pass = false;
    double max_invariance_residual = 0.0; // over blocks and generators
    int failed_samples = 0;
    int samples_checked = 0;
    std::string detail;
};

/// Re-checks a decomposition: each subspace must be invariant within 1e-9 and
/// sampled interior points must decompose into interior factor points and back.
DecompositionReport verify_decomposition(const ConvexCone& cone, const GroupGens& group,
                                         const Decomposition& decomp, int samples = 200,
                                         std::uint64_t seed = 0);

} // namespace cvx

#pragma once

#include "cvxproj/cone.hpp"
#include "cvxproj/group.hpp"
#include "cvxproj/hilbert.hpp"

#include <vector>

namespace cvx {

/// A homomorphism between lifted groups, given on generators: the i-th source
/// generator maps to image[i].
struct Equivariance {
    GroupGens source;
    std::vector<Mat> image;

    int source_ambient() const { return source.ambient_dim(); }
    int target_ambient() const {
        return image.empty() ? 0 : static_cast<int>(image.front().rows());
    }
    /// Worst relative residual |S phi - tau(phi) S| / |S| over the generators.
    double residual(const Mat& s) const;
};

/// The linear solution space { S : S phi_i = tau(phi_i) S } between two cones,
/// with an orthonormal (Frobenius) basis. The cone-mapping subset is queried
/// through maps_cone_to_cone.
class EquivariantSpace {
public:
    EquivariantSpace(std::vector<Mat> basis, Equivariance equivariance,
                     ConvexCone source_cone, ConvexCone target_cone);

    int dimension() const { return static_cast<int>(basis_.size()); }
    const std::vector<Mat>& basis() const { return basis_; }
    const Equivariance& equivariance() const { return equiv_; }
    const ConvexCone& source_cone() const { return source_; }
    const ConvexCone& target_cone() const { return target_; }

    /// Linear combination of the basis with the given coefficients.
    Mat combine(const Vec& coefficients) const;
    /// Coefficients of an equivariant matrix in the basis (orthogonal projection).
    Vec coefficients(const Mat& s) const;

private:
    std::vector<Mat> basis_;
    Equivariance equiv_;
    ConvexCone source_, target_;
};

/// Null space of the stacked operators S -> S phi_i - tau(phi_i) S; may be
/// zero-dimensional.
EquivariantSpace equivariant_solution_space(const Equivariance& equivariance,
                                            const ConvexCone& source_cone,
                                            const ConvexCone& target_cone,
                                            double rel_tol = 1e-10);

enum class ConeMapClass { StrictlyInside, OnBoundary, Outside };

/// Whether S maps the open source cone strictly inside, onto the boundary of,
/// or outside the target cone. Exact via extreme rays for polyhedral sources
/// (rays in the closed target cone plus an interior deep point); sampled with
/// 500 seeded interior rays for base-body sources.
ConeMapClass maps_cone_to_cone(const Mat& s, const ConvexCone& source,
                               const ConvexCone& target, std::uint64_t seed = 0);

struct BlendInterval {
    double r = 0.0;          // max sampled target-cone distance between the two maps
    double lo = 0.0;         // -e^{-R}
    double hi = 0.0;         // 1 + e^{-R}
    bool verified = false;   // every grid blend is StrictlyInside
};

/// The guaranteed open blending interval (-e^{-R}, 1 + e^{-R}) around two
/// cone-mapping equivariant maps, with R estimated on a caller-supplied sample
/// of source-cone points, then verified on a 21-point grid of blends.
/// Throws NotComparable when some pair of images is at infinite distance.
BlendInterval blend_interval(const EquivariantSpace& space, const Mat& s1, const Mat& s2,
                             const std::vector<Vec>& sample, int grid_points = 21);

struct Factorization {
    Mat u_basis;          // orthonormal basis of ker S0 (may have zero columns)
    Mat w_basis;          // orthonormal basis of the invariant complement W
    Mat projector;        // p_W: image W, kernel U, commutes with the group
    GroupGens quotient_group; // restrictions of the source group to W coordinates
    ConvexCone quotient_cone; // p_W of the source cone, in W coordinates
    Mat injective_part;   // S0 = injective_part o (W-coordinates of p_W)
};

/// Factorization of an equivariant cone map through its kernel quotient:
/// U = ker S0, W = the sum of invariant splitting blocks outside U, p_W the
/// block projection. Identities are verified on cone samples.
/// Throws KernelNotInvariant when S0 is not equivariant (or its kernel is not
/// invariant) and NoComplement when the splitting cannot separate U.
Factorization factorize(const Mat& s0, const GroupGens& source_group,
                        const Equivariance& equivariance, const ConvexCone& source_cone,
                        const ConvexCone& target_cone, std::uint64_t seed = 0);

/// Reconstruction of a projective map from sampled boundary values on a
/// strictly convex source: least squares over the incidence constraints
/// "T(xi_j) is parallel to image_j", validated through the two-line
/// intersection identity. Throws InconsistentBoundaryData when the samples do
/// not come from a single projective map (residual above tol).
ProjLinearMap boundary_reconstruct(const ConvexBody& source, const ConvexBody& target,
                                   const std::vector<std::pair<ProjPoint, ProjPoint>>& boundary_map,
                                   double residual_tol = 1e-6);

struct HomotopyReport {
    bool boundary_preserved = false;  // both maps send samples into the target boundary
    double worst_boundary_margin = 0.0;
    bool boundary_images_agree = false;
    double max_boundary_gap = 0.0;
    bool maps_projectively_equal = false;
    double map_gap = 0.0;
    bool all_pass() const {
        return boundary_preserved && boundary_images_agree && maps_projectively_equal;
    }
};

/// The three-stage rigidity check behind boundary rigidity: boundary points
/// map to boundary, boundary images agree, and the maps coincide. For
/// non-strictly-convex targets the report records which stage fails.
HomotopyReport homotopy_agreement(const ProjLinearMap& t0, const ProjLinearMap& t1,
                                  const ConvexBody& target,
                                  const std::vector<ProjPoint>& boundary_samples,
                                  double boundary_tol = 1e-7, double agree_tol = 1e-8);

/// Evaluation map F(n, l) = [l(n)] of the product family: coefficients select
/// a map from the space, which is applied to the point. Throws NotInSpace when
/// the combination does not map the cone strictly inside the target or the
/// point is not interior to the source.
ProjPoint family_evaluate(const EquivariantSpace& space, const Vec& coefficients,
                          const ProjPoint& point);

} // namespace cvx

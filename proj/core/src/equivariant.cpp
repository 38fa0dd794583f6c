#include "cvxproj/equivariant.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cvx {

double Equivariance::residual(const Mat& s) const {
    if (source.size() != image.size())
        throw DimensionMismatch("equivariance: generator lists are not aligned");
    double worst = 0.0;
    for (std::size_t i = 0; i < source.size(); ++i) {
        const Mat r = s * source.at(i).matrix - image[i] * s;
        worst = std::max(worst, r.norm() / std::max(s.norm(), 1e-300));
    }
    return worst;
}

EquivariantSpace::EquivariantSpace(std::vector<Mat> basis, Equivariance equivariance,
                                   ConvexCone source_cone, ConvexCone target_cone)
    : basis_(std::move(basis)),
      equiv_(std::move(equivariance)),
      source_(std::move(source_cone)),
      target_(std::move(target_cone)) {}

Mat EquivariantSpace::combine(const Vec& coefficients) const {
    if (coefficients.size() != dimension())
        throw DimensionMismatch("equivariant space: coefficient length != dimension");
    if (basis_.empty()) throw Error("equivariant space: zero-dimensional");
    Mat s = Mat::Zero(basis_.front().rows(), basis_.front().cols());
    for (int i = 0; i < dimension(); ++i) s += coefficients[i] * basis_[i];
    return s;
}

Vec EquivariantSpace::coefficients(const Mat& s) const {
    Vec c(dimension());
    for (int i = 0; i < dimension(); ++i) c[i] = (s.cwiseProduct(basis_[i])).sum();
    return c;
}

EquivariantSpace equivariant_solution_space(const Equivariance& equivariance,
                                            const ConvexCone& source_cone,
                                            const ConvexCone& target_cone,
                                            double rel_tol) {
    if (equivariance.source.size() != equivariance.image.size())
        throw DimensionMismatch("equivariant_solution_space: generator lists not aligned");
    const int n1 = equivariance.source_ambient();
    const int n2 = equivariance.target_ambient();
    if (n1 != source_cone.ambient_dim() || n2 != target_cone.ambient_dim())
        throw DimensionMismatch("equivariant_solution_space: cone dimensions do not match");
    for (const Mat& m : equivariance.image) {
        Eigen::FullPivLU<Mat> lu(m);
        if (!lu.isInvertible())
            throw Error("equivariant_solution_space: image matrix is singular");
    }

    const Mat id1 = Mat::Identity(n1, n1);
    const Mat id2 = Mat::Identity(n2, n2);
    const int k = static_cast<int>(equivariance.source.size());
    Mat stacked(k * n1 * n2, n1 * n2);
    for (int i = 0; i < k; ++i) {
        // vec(S phi - tau S) = (phi' kron I - I kron tau) vec(S)
        stacked.middleRows(i * n1 * n2, n1 * n2) =
            kron(equivariance.source.at(i).matrix.transpose(), id2) -
            kron(id1, equivariance.image[i]);
    }
    const Mat ns = null_space(stacked, rel_tol);
    std::vector<Mat> basis;
    basis.reserve(ns.cols());
    for (int j = 0; j < ns.cols(); ++j) basis.push_back(unvec(ns.col(j), n2, n1));
    return EquivariantSpace(std::move(basis), equivariance, source_cone, target_cone);
}

ConeMapClass maps_cone_to_cone(const Mat& s, const ConvexCone& source,
                               const ConvexCone& target, std::uint64_t seed) {
    if (s.cols() != source.ambient_dim() || s.rows() != target.ambient_dim())
        throw DimensionMismatch("maps_cone_to_cone: matrix shape does not match the cones");
    if (s.norm() == 0.0) throw Error("maps_cone_to_cone: zero map");

    if (source.rep() == ConvexCone::Rep::PolyhedralRays) {
        // Exact: every extreme ray must land in the closed target cone, and the
        // ray sum (a deep interior point) decides strictness. A ray may map to
        // zero (the apex) without breaking strictness.
        for (const Vec& r : source.rays()) {
            const Vec image = s * r;
            if (image.norm() <= 1e-12 * s.norm()) continue;
            if (target.classify(image) == Region::Exterior) return ConeMapClass::Outside;
        }
        const Vec deep = s * source.interior_point();
        return target.classify(deep) == Region::Interior ? ConeMapClass::StrictlyInside
                                                         : ConeMapClass::OnBoundary;
    }

    bool boundary_seen = false;
    for (const Vec& x : source.sample_interior(500, seed)) {
        const Vec image = s * x;
        if (image.norm() <= 1e-12 * s.norm() * x.norm()) {
            boundary_seen = true;
            continue;
        }
        switch (target.classify(image)) {
            case Region::Exterior: return ConeMapClass::Outside;
            case Region::Boundary: boundary_seen = true; break;
            case Region::Interior: break;
        }
    }
    return boundary_seen ? ConeMapClass::OnBoundary : ConeMapClass::StrictlyInside;
}

BlendInterval blend_interval(const EquivariantSpace& space, const Mat& s1, const Mat& s2,
                             const std::vector<Vec>& sample, int grid_points) {
    if (sample.empty()) throw Error("blend_interval: empty sample");
    const ConvexCone& c1 = space.source_cone();
    const ConvexCone& c2 = space.target_cone();
    if (maps_cone_to_cone(s1, c1, c2) != ConeMapClass::StrictlyInside ||
        maps_cone_to_cone(s2, c1, c2) != ConeMapClass::StrictlyInside)
        throw Error("blend_interval: both maps must map the cone strictly inside");

    BlendInterval out;
    for (const Vec& x : sample) {
        if (c1.classify(x) != Region::Interior)
            throw NotInCone("blend_interval: sample point is not interior to the source cone");
        const Vec y1 = s1 * x;
        const Vec y2 = s2 * x;
        if (c2.classify(y1) != Region::Interior || c2.classify(y2) != Region::Interior)
            throw NotComparable("blend_interval: images on different faces of the target cone");
        out.r = std::max(out.r, cone_hilbert_distance(c2, y1, y2));
    }
    const double margin = std::exp(-out.r);
    out.lo = -margin;
    out.hi = 1.0 + margin;

    out.verified = true;
    const double eps = 1e-6;
    for (int i = 0; i < grid_points; ++i) {
        const double lambda = (out.lo + eps) +
            (out.hi - eps - (out.lo + eps)) * static_cast<double>(i) / (grid_points - 1);
        const Mat blend = lambda * s1 + (1.0 - lambda) * s2;
        if (maps_cone_to_cone(blend, c1, c2) != ConeMapClass::StrictlyInside) {
            out.verified = false;
            break;
        }
    }
    return out;
}

Factorization factorize(const Mat& s0, const GroupGens& source_group,
                        const Equivariance& equivariance, const ConvexCone& source_cone,
                        const ConvexCone& target_cone, std::uint64_t seed) {
    const int n1 = source_cone.ambient_dim();
    if (s0.cols() != n1 || s0.rows() != target_cone.ambient_dim())
        throw DimensionMismatch("factorize: matrix shape does not match the cones");
    if (equivariance.residual(s0) > 1e-9)
        throw KernelNotInvariant("factorize: map is not equivariant at tolerance");
    if (maps_cone_to_cone(s0, source_cone, target_cone) != ConeMapClass::StrictlyInside)
        throw Error("factorize: map must send the source cone strictly inside the target");

    Factorization f;
    f.u_basis = null_space(s0, 1e-10);
    const int ku = static_cast<int>(f.u_basis.cols());

    // The kernel must be invariant under the source group.
    for (const Generator& g : source_group.generators()) {
        if (ku == 0) break;
        const Mat image = g.matrix * f.u_basis;
        const Mat residual = image - f.u_basis * (f.u_basis.transpose() * image);
        if (residual.norm() > 1e-9 * std::max(image.norm(), 1e-300))
            throw KernelNotInvariant("factorize: ker S0 is not invariant under the group");
    }

    if (ku == 0) {
        // Injective map: trivial factorization.
        f.w_basis = Mat::Identity(n1, n1);
        f.projector = Mat::Identity(n1, n1);
        std::vector<std::pair<std::string, Mat>> gens;
        for (const Generator& g : source_group.generators()) gens.emplace_back(g.label, g.matrix);
        f.quotient_group = GroupGens(std::move(gens));
        f.quotient_cone = source_cone;
        f.injective_part = s0;
        return f;
    }

    const Decomposition decomp = invariant_splitting(source_group, source_cone, seed);

    // W = sum of the blocks not contained in U; a block partially inside U
    // means the splitting cannot separate the kernel.
    std::vector<const DecompositionBlock*> w_blocks;
    const Mat pu = f.u_basis * f.u_basis.transpose();
    for (const DecompositionBlock& b : decomp.blocks) {
        const Mat outside = b.basis - pu * b.basis; // (I - P_U) B
        Eigen::JacobiSVD<Mat> svd(outside);
        const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
        const double smin = svd.singularValues().size()
                                ? svd.singularValues()[svd.singularValues().size() - 1]
                                : 0.0;
        if (smax <= 1e-7) continue;      // block inside U
        if (smin <= 1e-7)
            throw NoComplement("factorize: a splitting block straddles ker S0");
        w_blocks.push_back(&b);
    }
    if (w_blocks.empty()) throw NoComplement("factorize: kernel swallows every block");

    Mat w_raw(n1, n1 - ku);
    int col = 0;
    for (const DecompositionBlock* b : w_blocks) {
        const int m = static_cast<int>(b->basis.cols());
        if (col + m > n1 - ku)
            throw NoComplement("factorize: block dimensions do not complement the kernel");
        w_raw.middleCols(col, m) = b->basis;
        col += m;
    }
    if (col != n1 - ku)
        throw NoComplement("factorize: block dimensions do not complement the kernel");
    f.w_basis = orthonormal_columns(w_raw, 1e-10);

    // Oblique projector with image W and kernel U.
    Mat p(n1, n1);
    p.leftCols(n1 - ku) = w_raw;
    p.rightCols(ku) = f.u_basis;
    Eigen::FullPivLU<Mat> lu(p);
    if (!lu.isInvertible()) throw NoComplement("factorize: U + W does not span");
    const Mat p_inv = lu.inverse();
    f.projector = w_raw * p_inv.topRows(n1 - ku);

    for (const Generator& g : source_group.generators()) {
        if ((f.projector * g.matrix - g.matrix * f.projector).norm() >
            1e-9 * std::max(1.0, g.matrix.norm()))
            throw NoComplement("factorize: projector does not commute with the group");
    }

    // Quotient data in W coordinates.
    std::vector<std::pair<std::string, Mat>> q_gens;
    for (const Generator& g : source_group.generators())
        q_gens.emplace_back(g.label, Mat(f.w_basis.transpose() * g.matrix * f.w_basis));
    f.quotient_group = GroupGens(std::move(q_gens));

    if (source_cone.rep() == ConvexCone::Rep::PolyhedralRays) {
        std::vector<Vec> rays;
        for (const Vec& r : source_cone.rays()) {
            Vec xi = f.w_basis.transpose() * (f.projector * r);
            if (xi.norm() > 1e-9) rays.push_back(std::move(xi));
        }
        f.quotient_cone = ConvexCone::from_rays(std::move(rays));
    } else {
        throw NoComplement("factorize: quotient cone of a non-polyhedral source is not "
                           "representable here");
    }

    f.injective_part = s0 * f.w_basis;
    if (numeric_rank(f.injective_part, 1e-10) < f.injective_part.cols())
        throw Error("factorize: factored map is not injective");

    // Verify S0 = injective_part o (W-coordinates of p_W) on cone samples.
    const Mat coord = f.w_basis.transpose() * f.projector;
    for (const Vec& x : source_cone.sample_interior(200, seed)) {
        const Vec lhs = s0 * x;
        const Vec rhs = f.injective_part * (coord * x);
        if ((lhs - rhs).norm() > 1e-9 * std::max(lhs.norm(), 1e-300))
            throw Error("factorize: factorization identity failed on a sample");
        if (f.quotient_cone.classify(coord * x) != Region::Interior)
            throw Error("factorize: projected sample is not interior to the quotient cone");
    }
    return f;
}

ProjLinearMap boundary_reconstruct(const ConvexBody& source, const ConvexBody& target,
                                   const std::vector<std::pair<ProjPoint, ProjPoint>>& boundary_map,
                                   double residual_tol) {
    if (!is_strictly_convex(source))
        throw Error("boundary_reconstruct: source body must be strictly convex");
    const int n1 = source.dim() + 1;
    const int n2 = target.dim() + 1;
    if (static_cast<int>(boundary_map.size()) < source.dim() + 3)
        throw Error("boundary_reconstruct: need at least d+3 boundary samples");

    const int k = static_cast<int>(boundary_map.size());
    Mat a(k * n2, n1 * n2);
    for (int j = 0; j < k; ++j) {
        const Vec& xi = boundary_map[j].first.coords();
        const Vec& eta = boundary_map[j].second.coords();
        const Mat proj = Mat::Identity(n2, n2) - eta * eta.transpose(); // eta is unit
        a.middleRows(j * n2, n2) = kron(xi.transpose(), proj);
    }
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const Vec t_vec = svd.matrixV().col(n1 * n2 - 1);
    const Mat t_mat = unvec(t_vec, n2, n1);
    const ProjLinearMap t(t_mat);

    double worst = 0.0;
    for (const auto& [xi, eta] : boundary_map) {
        const Vec image = t.matrix() * xi.coords();
        const double in = image.norm();
        if (in <= 1e-12) {
            worst = 1.0;
            break;
        }
        worst = std::max(worst, proj_point_distance(ProjPoint(image), eta));
    }
    if (worst > residual_tol)
        throw InconsistentBoundaryData("boundary_reconstruct: samples are not consistent "
                                       "with a single projective map");

    // Two-line validation: interior points are intersections of chords, and
    // the image must be the intersection of the image lines.
    if (n1 == 3 && n2 == 3 && k >= 4) {
        auto cross3 = [](const Vec& u, const Vec& v) {
            Vec w(3);
            w[0] = u[1] * v[2] - u[2] * v[1];
            w[1] = u[2] * v[0] - u[0] * v[2];
            w[2] = u[0] * v[1] - u[1] * v[0];
            return w;
        };
        const int checks = std::min(20, k / 2);
        for (int c = 0; c < checks; ++c) {
            const int i1 = c, i2 = (c + k / 2) % k;           // chord 1
            const int j1 = (c + 1) % k, j2 = (c + 1 + k / 2) % k; // chord 2
            if (i1 == j1 || i1 == j2 || i2 == j1 || i2 == j2) continue;
            const Vec l1 = cross3(boundary_map[i1].first.coords(), boundary_map[i2].first.coords());
            const Vec l2 = cross3(boundary_map[j1].first.coords(), boundary_map[j2].first.coords());
            const Vec p = cross3(l1, l2);
            if (p.norm() <= 1e-10) continue; // parallel chords
            const Vec m1 = cross3(t.matrix() * boundary_map[i1].first.coords(),
                                  t.matrix() * boundary_map[i2].first.coords());
            const Vec m2 = cross3(t.matrix() * boundary_map[j1].first.coords(),
                                  t.matrix() * boundary_map[j2].first.coords());
            const Vec q = cross3(m1, m2);
            if (q.norm() <= 1e-10) continue;
            const ProjPoint image = proj_apply(t, ProjPoint(p));
            if (proj_point_distance(image, ProjPoint(q)) > residual_tol)
                throw InconsistentBoundaryData("boundary_reconstruct: two-line intersection "
                                               "identity failed");
        }
    }
    return t;
}

HomotopyReport homotopy_agreement(const ProjLinearMap& t0, const ProjLinearMap& t1,
                                  const ConvexBody& target,
                                  const std::vector<ProjPoint>& boundary_samples,
                                  double boundary_tol, double agree_tol) {
    HomotopyReport report;
    if (boundary_samples.empty()) throw Error("homotopy_agreement: no boundary samples");

    report.boundary_preserved = true;
    for (const ProjLinearMap* t : {&t0, &t1}) {
        for (const ProjPoint& xi : boundary_samples) {
            const ProjPoint image = proj_apply(*t, xi);
            if (!target.chart().covers(image)) {
                report.boundary_preserved = false;
                report.worst_boundary_margin = std::numeric_limits<double>::infinity();
                continue;
            }
            const double m = std::abs(target.margin(target.chart().to_affine(image)));
            report.worst_boundary_margin = std::max(report.worst_boundary_margin, m);
            if (m > boundary_tol * std::max(1.0, target.diameter()))
                report.boundary_preserved = false;
        }
    }

    for (const ProjPoint& xi : boundary_samples) {
        const double gap = proj_point_distance(proj_apply(t0, xi), proj_apply(t1, xi));
        report.max_boundary_gap = std::max(report.max_boundary_gap, gap);
    }
    report.boundary_images_agree = report.max_boundary_gap <= agree_tol;

    report.map_gap = proj_map_distance(t0, t1);
    report.maps_projectively_equal = report.map_gap <= agree_tol;
    return report;
}

ProjPoint family_evaluate(const EquivariantSpace& space, const Vec& coefficients,
                          const ProjPoint& point) {
    const Mat s = space.combine(coefficients);
    if (maps_cone_to_cone(s, space.source_cone(), space.target_cone()) !=
        ConeMapClass::StrictlyInside)
        throw NotInSpace("family_evaluate: combination does not map the cone strictly inside");
    const Vec& v = point.coords();
    if (space.source_cone().classify(v) != Region::Interior &&
        space.source_cone().classify(Vec(-v)) != Region::Interior)
        throw NotInSpace("family_evaluate: point is not interior to the source");
    return proj_apply(ProjLinearMap(s), point);
}

} // namespace cvx

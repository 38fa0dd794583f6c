#include "cvxproj/cone.hpp"

#include "cvxproj/lp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>

namespace cvx {
namespace {

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k > n || k <= 0) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Inward facet normals of a pointed full-dimensional polyhedral cone from its
// extreme rays, by (n-1)-subset enumeration. Desk-scale dimensions.
std::vector<Vec> facets_from_rays(const std::vector<Vec>& rays, int n) {
    std::vector<Vec> facets;
    if (n == 1) {
        Vec f(1);
        f[0] = rays.front()[0] > 0.0 ? 1.0 : -1.0;
        facets.push_back(f);
        return facets;
    }
    const int m = static_cast<int>(rays.size());
    for_each_combination(m, n - 1, [&](const std::vector<int>& idx) {
        Mat span(n - 1, n);
        for (int i = 0; i < n - 1; ++i) span.row(i) = rays[idx[i]].transpose();
        const Mat ns = null_space(span, 1e-10);
        if (ns.cols() != 1) return;
        Vec normal = ns.col(0);
        double lo = 0.0, hi = 0.0;
        for (const Vec& r : rays) {
            const double s = normal.dot(r) / r.norm();
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (hi > 1e-10 && lo < -1e-10) return; // rays on both sides
        if (lo < -1e-10) normal = -normal;     // orient inward
        for (const Vec& f : facets)
            if ((f - normal).norm() <= 1e-9) return;
        facets.push_back(normal);
    });
    return facets;
}

} // namespace

ConvexCone ConvexCone::from_rays(std::vector<Vec> rays) {
    if (rays.empty()) throw Error("cone: no rays");
    ConvexCone c;
    c.rep_ = Rep::PolyhedralRays;
    c.ambient_ = static_cast<int>(rays.front().size());
    for (Vec& r : rays) {
        if (r.size() != c.ambient_) throw DimensionMismatch("cone: ray length mismatch");
        const double n = r.norm();
        if (n == 0.0) throw Error("cone: zero ray");
        r /= n;
    }
    Mat span(static_cast<int>(rays.size()), c.ambient_);
    for (std::size_t i = 0; i < rays.size(); ++i) span.row(static_cast<int>(i)) = rays[i].transpose();
    if (numeric_rank(span, 1e-10) < c.ambient_)
        throw NotProper("cone: rays do not span the ambient space (empty interior)");
    if (!cone_is_pointed(rays))
        throw NotProper("cone: not pointed (contains a line)");
    c.facet_normals_ = facets_from_rays(rays, c.ambient_);
    if (c.facet_normals_.empty()) throw Error("cone: facet enumeration failed");
    c.rays_ = std::move(rays);
    return c;
}

ConvexCone ConvexCone::over_body(const ConvexBody& body) {
    const AffineChart& chart = body.chart();
    if (body.rep() == ConvexBody::Rep::Ellipsoid) {
        ConvexCone c;
        c.rep_ = Rep::BaseBody;
        c.ambient_ = body.dim() + 1;
        c.base_ = std::make_shared<ConvexBody>(body);
        c.quadric_ = body.homogeneous_quadric();
        return c;
    }
    std::vector<Vec> rays;
    for (const Vec& v : body.vertices()) rays.push_back(chart.lift(v));
    return from_rays(std::move(rays));
}

const std::vector<Vec>& ConvexCone::rays() const {
    if (rep_ != Rep::PolyhedralRays) throw Error("rays(): base-body cone");
    return rays_;
}

const std::vector<Vec>& ConvexCone::facet_normals() const {
    if (rep_ != Rep::PolyhedralRays) throw Error("facet_normals(): base-body cone");
    return facet_normals_;
}

const ConvexBody& ConvexCone::base() const {
    if (rep_ != Rep::BaseBody) throw Error("base(): polyhedral cone");
    return *base_;
}

Region ConvexCone::classify(const Vec& x, double tol) const {
    if (x.size() != ambient_) throw DimensionMismatch("cone classify: wrong length");
    const double scale = x.norm();
    if (scale <= 1e-300) return Region::Boundary; // apex

    if (rep_ == Rep::PolyhedralRays) {
        double worst = std::numeric_limits<double>::infinity();
        for (const Vec& f : facet_normals_)
            worst = std::min(worst, f.dot(x));
        if (worst > tol * scale) return Region::Interior;
        if (worst >= -tol * scale) return Region::Boundary;
        return Region::Exterior;
    }

    const double s = base_->chart().functional().dot(x);
    if (s <= 0.0) {
        // Closure meets {functional = 0} only at the apex.
        return Region::Exterior;
    }
    const ProjPoint px(x);
    if (!base_->chart().covers(px)) return Region::Exterior;
    return base_->classify_affine(base_->chart().to_affine(px));
}

Vec ConvexCone::interior_point() const {
    if (rep_ == Rep::PolyhedralRays) {
        Vec sum = Vec::Zero(ambient_);
        for (const Vec& r : rays_) sum += r;
        return sum / static_cast<double>(rays_.size());
    }
    return base_->chart().lift(base_->interior_point());
}

std::vector<Vec> ConvexCone::sample_interior(int n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<Vec> out;
    out.reserve(n);
    if (rep_ == Rep::PolyhedralRays) {
        for (int k = 0; k < n; ++k) {
            const Vec w = rng.simplex_weights(static_cast<int>(rays_.size()));
            Vec p = Vec::Zero(ambient_);
            for (std::size_t i = 0; i < rays_.size(); ++i) p += w[static_cast<int>(i)] * rays_[i];
            p *= std::exp(rng.uniform(-1.0, 1.0)); // spread along the ray direction
            out.push_back(std::move(p));
        }
    } else {
        const auto pts = base_->sample_interior(n, seed);
        for (const Vec& z : pts)
            out.push_back(std::exp(rng.uniform(-1.0, 1.0)) * base_->chart().lift(z));
    }
    return out;
}

ConvexCone::LineHits ConvexCone::line_hits(const Vec& x, const Vec& y) const {
    const Vec u = y - x;
    if (u.norm() <= 1e-14 * std::max(x.norm(), y.norm()))
        throw CoincidentPoints("cone line_hits: points coincide");

    LineHits hits;
    if (rep_ == Rep::PolyhedralRays) {
        double t_min = -std::numeric_limits<double>::infinity();
        double t_max = std::numeric_limits<double>::infinity();
        for (const Vec& f : facet_normals_) {
            const double slope = f.dot(u);
            const double gap = -f.dot(x); // f.x > 0 for interior x
            if (std::abs(slope) <= 1e-14 * std::max(1.0, u.norm())) continue;
            const double t = gap / slope;
            if (slope < 0.0) t_max = std::min(t_max, t);
            else t_min = std::max(t_min, t);
        }
        hits.t_min = t_min;
        hits.t_max = t_max;
        hits.min_finite = std::isfinite(t_min);
        hits.max_finite = std::isfinite(t_max);
        return hits;
    }

    // Quadric cone: p(t)' H p(t) = 0 bounds the region {H < 0, functional > 0}.
    // Crossing {functional = 0} with H < 0 strictly cannot happen inside the
    // closure, so the quadratic's real roots are the only candidates.
    const double a = u.dot(quadric_ * u);
    const double b = 2.0 * u.dot(quadric_ * x);
    const double c = x.dot(quadric_ * x);
    std::vector<double> roots;
    if (std::abs(a) <= 1e-14 * quadric_.norm() * u.squaredNorm()) {
        if (std::abs(b) > 0.0) roots.push_back(-c / b);
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
            roots.push_back(q / a);
            if (q != 0.0) roots.push_back(c / q);
            else roots.push_back(-b / a - q / a);
        }
    }
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();
    for (double t : roots) {
        if (t <= 1e-12) t_min = std::max(t_min, t);
        if (t >= 1.0 - 1e-12) t_max = std::min(t_max, t);
    }
    hits.t_min = t_min;
    hits.t_max = t_max;
    hits.min_finite = std::isfinite(t_min);
    hits.max_finite = std::isfinite(t_max);
    return hits;
}

ConvexCone cone_over(const ConvexBody& body) {
    if (!body.proper()) throw NotProper("cone_over: body is tagged non-proper");
    return ConvexCone::over_body(body);
}

std::vector<Mat> commutant_basis(const GroupGens& group, double rel_tol) {
    if (group.empty()) throw Error("commutant_basis: empty group");
    const int n = group.ambient_dim();
    const Mat id = Mat::Identity(n, n);
    Mat stacked(static_cast<int>(group.size()) * n * n, n * n);
    for (std::size_t i = 0; i < group.size(); ++i) {
        const Mat& g = group.at(i).matrix;
        // vec(X g - g X) = (g' kron I - I kron g) vec(X)
        stacked.middleRows(static_cast<int>(i) * n * n, n * n) =
            kron(g.transpose(), id) - kron(id, g);
    }
    const Mat ns = null_space(stacked, rel_tol);
    std::vector<Mat> basis;
    basis.reserve(ns.cols());
    for (int j = 0; j < ns.cols(); ++j) basis.push_back(unvec(ns.col(j), n, n));
    return basis;
}

namespace {

struct RawBlock {
    Mat basis; // n x m orthonormal
    bool nonabsolute = false;
};

// Real invariant subspace spanned by a conjugation-closed cluster of
// eigenvectors.
Mat real_span(const Eigen::MatrixXcd& cluster, double rel_tol = 1e-9) {
    Mat stacked(cluster.rows(), 2 * cluster.cols());
    stacked.leftCols(cluster.cols()) = cluster.real();
    stacked.rightCols(cluster.cols()) = cluster.imag();
    return orthonormal_columns(stacked, rel_tol);
}

void split_recursive(const Mat& basis, const GroupGens& group, Rng& rng,
                     std::vector<RawBlock>& out) {
    const int m = static_cast<int>(basis.cols());
    std::vector<std::pair<std::string, Mat>> restricted;
    for (const Generator& g : group.generators())
        restricted.emplace_back(g.label, Mat(basis.transpose() * g.matrix * basis));
    const GroupGens sub(restricted);
    const std::vector<Mat> com = commutant_basis(sub);
    if (com.size() == 1) {
        out.push_back({basis, false});
        return;
    }

    Mat x = Mat::Zero(m, m);
    for (const Mat& b : com) x += rng.normal() * b;

    // Use the symmetrized element when the commutant is closed under
    // transposition (then the eigenbasis is real and well conditioned);
    // otherwise fall back to complex eigenvalue clustering.
    Mat xt_proj = Mat::Zero(m, m);
    for (const Mat& b : com) xt_proj += (x.transpose().cwiseProduct(b)).sum() * b;
    const bool symmetrizable = (x.transpose() - xt_proj).norm() <= 1e-9 * x.norm();

    std::vector<Mat> cluster_bases;
    if (symmetrizable) {
        Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (x + x.transpose())));
        const Vec vals = es.eigenvalues();
        const double scale = std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
        int start = 0;
        for (int i = 1; i <= m; ++i) {
            if (i == m || vals[i] - vals[i - 1] > 1e-8 * scale) {
                cluster_bases.push_back(es.eigenvectors().middleCols(start, i - start));
                start = i;
            }
        }
    } else {
        Eigen::EigenSolver<Mat> es(x);
        const Eigen::VectorXcd vals = es.eigenvalues();
        const Eigen::MatrixXcd vecs = es.eigenvectors();
        const double scale = std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int i, int j) {
            if (vals[i].real() != vals[j].real()) return vals[i].real() < vals[j].real();
            return std::abs(vals[i].imag()) < std::abs(vals[j].imag());
        });
        std::vector<int> cluster_of(m, -1);
        int n_clusters = 0;
        for (int oi = 0; oi < m; ++oi) {
            const int i = order[oi];
            if (cluster_of[i] >= 0) continue;
            const int c = n_clusters++;
            for (int j = 0; j < m; ++j) {
                if (cluster_of[j] >= 0) continue;
                // Conjugate eigenvalues join the same real cluster.
                if (std::abs(vals[j] - vals[i]) <= 1e-8 * scale ||
                    std::abs(std::conj(vals[j]) - vals[i]) <= 1e-8 * scale)
                    cluster_of[j] = c;
            }
        }
        for (int c = 0; c < n_clusters; ++c) {
            std::vector<int> members;
            for (int j = 0; j < m; ++j)
                if (cluster_of[j] == c) members.push_back(j);
            Eigen::MatrixXcd sub(m, static_cast<int>(members.size()));
            for (std::size_t k = 0; k < members.size(); ++k) sub.col(static_cast<int>(k)) = vecs.col(members[k]);
            cluster_bases.push_back(real_span(sub));
        }
    }

    if (cluster_bases.size() <= 1) {
        // Commutant is larger than the scalars but the generic element does
        // not split over R (complex/quaternionic type).
        out.push_back({basis, true});
        return;
    }
    for (const Mat& cb : cluster_bases)
        split_recursive(Mat(basis * cb), group, rng, out);
}

} // namespace

Decomposition invariant_splitting(const GroupGens& group, const ConvexCone& cone,
                                  std::uint64_t seed) {
    if (group.empty()) throw Error("invariant_splitting: empty group");
    const int n = cone.ambient_dim();
    if (group.ambient_dim() != n)
        throw DimensionMismatch("invariant_splitting: group and cone dimensions differ");

    Rng rng(seed);
    std::vector<RawBlock> raw;
    split_recursive(Mat::Identity(n, n), group, rng, raw);

    Decomposition decomp;
    if (raw.size() == 1) {
        DecompositionBlock block;
        block.basis = Mat::Identity(n, n);
        block.cone = cone;
        block.irreducible_nonabsolute = raw.front().nonabsolute;
        decomp.blocks.push_back(std::move(block));
        return decomp;
    }

    if (cone.rep() != ConvexCone::Rep::PolyhedralRays)
        throw SplitUnverified("invariant_splitting: invariant subspaces found but the "
                              "factor cones of a non-polyhedral cone are not representable here");

    // Block-coordinate projections: coordinates with respect to P = [B_1 .. B_k].
    Mat p(n, n);
    int col = 0;
    for (const RawBlock& b : raw) {
        p.middleCols(col, static_cast<int>(b.basis.cols())) = b.basis;
        col += static_cast<int>(b.basis.cols());
    }
    Eigen::FullPivLU<Mat> lu(p);
    if (!lu.isInvertible())
        throw SplitUnverified("invariant_splitting: blocks do not span the ambient space");
    const Mat p_inv = lu.inverse();

    col = 0;
    for (const RawBlock& b : raw) {
        const int m = static_cast<int>(b.basis.cols());
        std::vector<Vec> rays;
        for (const Vec& r : cone.rays()) {
            Vec xi = p_inv.middleRows(col, m) * r;
            if (xi.norm() > 1e-9) rays.push_back(std::move(xi));
        }
        if (rays.empty())
            throw SplitUnverified("invariant_splitting: a block receives no cone rays");
        DecompositionBlock block;
        block.basis = b.basis;
        block.irreducible_nonabsolute = b.nonabsolute;
        try {
            block.cone = ConvexCone::from_rays(std::move(rays));
        } catch (const NotProper&) {
            throw SplitUnverified("invariant_splitting: projected cone factor is not proper");
        }
        decomp.blocks.push_back(std::move(block));
        col += m;
    }

    const DecompositionReport report = verify_decomposition(cone, group, decomp, 200, seed);
    if (!report.pass)
        throw SplitUnverified("invariant_splitting: cone does not decompose along the "
                              "invariant subspaces: " + report.detail);
    return decomp;
}

DecompositionReport verify_decomposition(const ConvexCone& cone, const GroupGens& group,
                                         const Decomposition& decomp, int samples,
                                         std::uint64_t seed) {
    DecompositionReport report;
    const int n = cone.ambient_dim();
    int total_cols = 0;
    for (const DecompositionBlock& b : decomp.blocks) total_cols += static_cast<int>(b.basis.cols());
    if (total_cols != n) {
        report.detail = "blocks do not span the ambient space";
        return report;
    }

    for (const DecompositionBlock& b : decomp.blocks) {
        for (const Generator& g : group.generators()) {
            const Mat image = g.matrix * b.basis;
            const Mat residual = image - b.basis * (b.basis.transpose() * image);
            report.max_invariance_residual = std::max(
                report.max_invariance_residual, residual.norm() / std::max(image.norm(), 1e-300));
        }
    }

    Mat p(n, n);
    int col = 0;
    for (const DecompositionBlock& b : decomp.blocks) {
        p.middleCols(col, static_cast<int>(b.basis.cols())) = b.basis;
        col += static_cast<int>(b.basis.cols());
    }
    Eigen::FullPivLU<Mat> lu(p);
    if (!lu.isInvertible()) {
        report.detail = "singular block matrix";
        return report;
    }
    const Mat p_inv = lu.inverse();

    // Forward: interior points of C split into interior factor points.
    int checked = 0;
    for (const Vec& x : cone.sample_interior(samples, seed)) {
        ++checked;
        col = 0;
        bool ok = true;
        for (const DecompositionBlock& b : decomp.blocks) {
            const int m = static_cast<int>(b.basis.cols());
            const Vec xi = p_inv.middleRows(col, m) * x;
            if (b.cone.classify(xi) != Region::Interior) ok = false;
            col += m;
        }
        if (!ok) ++report.failed_samples;
    }
    // Backward: sums of interior factor points are interior in C.
    std::vector<std::vector<Vec>> factor_samples;
    for (std::size_t i = 0; i < decomp.blocks.size(); ++i)
        factor_samples.push_back(decomp.blocks[i].cone.sample_interior(samples, seed + 1 + i));
    for (int s = 0; s < samples; ++s) {
        ++checked;
        Vec x = Vec::Zero(n);
        for (std::size_t i = 0; i < decomp.blocks.size(); ++i)
            x += decomp.blocks[i].basis * factor_samples[i][s];
        if (cone.classify(x) != Region::Interior) ++report.failed_samples;
    }

    report.samples_checked = checked;
    report.pass = report.failed_samples == 0 && report.max_invariance_residual <= 1e-9;
    if (report.failed_samples > 0) report.detail = "sampled point failed factor membership";
    else if (report.max_invariance_residual > 1e-9) report.detail = "invariance residual too large";
    return report;
}

} // namespace cvx

#pragma once

#include "cvxproj/errors.hpp"
#include "cvxproj/linalg.hpp"

#include <vector>

namespace cvx {

/// A point of real projective space P(R^{d+1}), stored in canonical form:
/// homogeneous coordinates with Euclidean norm one and the first entry of
/// magnitude above 1e-12 positive. Immutable after construction.
class ProjPoint {
public:
    explicit ProjPoint(Vec coords);

    const Vec& coords() const { return coords_; }
    /// Projective dimension d; coords has length d+1.
    int dim() const { return static_cast<int>(coords_.size()) - 1; }

private:
    Vec coords_;
};

/// Euclidean distance between canonical coordinates, minimized over the sign
/// ambiguity. Zero iff the two points coincide projectively.
double proj_point_distance(const ProjPoint& a, const ProjPoint& b);

bool proj_point_equal(const ProjPoint& a, const ProjPoint& b, double tol = 1e-9);

/// An affine chart of P(R^{d+1}): the set {[v] : functional.v != 0}, with a
/// point's affine coordinates read off from v/(functional.v) by dropping the
/// coordinate of largest functional weight.
class AffineChart {
public:
    explicit AffineChart(Vec functional);
    static AffineChart standard(int dim); // functional e_0 in dimension d

    int dim() const { return static_cast<int>(functional_.size()) - 1; }
    const Vec& functional() const { return functional_; }
    int drop_index() const { return drop_; }

    bool covers(const ProjPoint& p, double tol = 1e-12) const;
    Vec to_affine(const ProjPoint& p) const; // length d; throws NotInterior-free Error if at infinity
    ProjPoint from_affine(const Vec& x) const;
    Vec lift(const Vec& x) const;            // homogeneous vector with functional.v = 1

private:
    Vec functional_;
    int drop_;
};

/// A projectivized linear map [T], T in Lin(R^{d1+1}, R^{d2+1}) \ {0}.
/// Canonical form: operator norm one, first entry (column-major order) of
/// magnitude above 1e-12 positive.
class ProjLinearMap {
public:
    explicit ProjLinearMap(Mat m);
    static ProjLinearMap identity(int dim);

    const Mat& matrix() const { return matrix_; }
    int source_dim() const { return static_cast<int>(matrix_.cols()) - 1; }
    int target_dim() const { return static_cast<int>(matrix_.rows()) - 1; }

private:
    Mat matrix_;
};

/// Image [T v]. Throws KernelPoint when v is in the kernel at tolerance
/// (|T v| <= tol |T| |v|).
ProjPoint proj_apply(const ProjLinearMap& t, const ProjPoint& x, double tol = 1e-12);

struct KernelInfo {
    int rank = 0;
    Mat kernel_basis; // orthonormal columns spanning ker T
};

/// Rank by singular values above 1e-10 * sigma_max and an orthonormal kernel basis.
KernelInfo kernel_and_rank(const ProjLinearMap& t, double rel_tol = 1e-10);

/// Frobenius distance between canonical forms, minimized over sign.
double proj_map_distance(const ProjLinearMap& a, const ProjLinearMap& b);

/// Projective equality: T1 = lambda T2 for some nonzero scalar, i.e. the
/// canonical forms agree up to sign within tol in Frobenius norm.
bool proj_equal(const ProjLinearMap& a, const ProjLinearMap& b, double tol = 1e-9);

/// A projective line, stored as an orthonormal basis of its 2-dimensional span.
class ProjLine {
public:
    ProjLine(const ProjPoint& a, const ProjPoint& b);

    const Mat& basis() const { return basis_; } // (d+1) x 2, orthonormal
    bool contains(const ProjPoint& p, double tol = 1e-9) const;

private:
    Mat basis_;
};

/// Cross ratio [a,x,y,b] = (|x-b||y-a|)/(|x-a||y-b|) of four collinear points,
/// evaluated scale-freely through 2x2 determinants in a basis of the line, so
/// a point at infinity of any affine chart needs no special casing. Throws
/// NotCollinear when the four points do not span a line at tolerance and
/// DegenerateConfiguration when a = x or y = b.
double cross_ratio(const ProjPoint& a, const ProjPoint& x,
                   const ProjPoint& y, const ProjPoint& b);

/// Limit of a sequence of projectivized maps: every term is canonicalized to
/// unit operator norm, signs are aligned greedily (both signs are tried per
/// term), and the final term is returned when the aligned tail is Cauchy.
/// Throws NotConverged otherwise; the limit may have lower rank than the terms.
ProjLinearMap limit_of_maps(const std::vector<ProjLinearMap>& seq, double tol = 1e-8);

} // namespace cvx

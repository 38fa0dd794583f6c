#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace cvx {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Number of singular values above rel_tol * sigma_max.
int numeric_rank(const Mat& a, double rel_tol = 1e-10);

/// Orthonormal basis of the (right) null space, one column per kernel direction.
/// Empty (n x 0) matrix when the kernel is trivial.
Mat null_space(const Mat& a, double rel_tol = 1e-10);

/// Orthonormal basis of the column span.
Mat orthonormal_columns(const Mat& a, double rel_tol = 1e-12);

/// Largest singular value.
double operator_norm(const Mat& a);

/// Kronecker product, column-major convention: vec(A X B) = (B^T kron A) vec(X).
Mat kron(const Mat& a, const Mat& b);

/// Reshape a vector of length rows*cols into a matrix, column-major.
Mat unvec(const Vec& v, int rows, int cols);

/// Column-major flattening of a matrix.
Vec vec(const Mat& m);

/// Largest principal angle (radians) between the column spans of two
/// orthonormal bases of equal dimension. ~0 when the spans coincide.
double subspace_angle(const Mat& a, const Mat& b);

/// Deterministic random source for sampled checks. All sampled operations in
/// the library draw from one of these so results are reproducible per seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(engine_);
    }
    double normal() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(engine_);
    }
    int uniform_int(int lo, int hi) { // inclusive bounds
        std::uniform_int_distribution<int> d(lo, hi);
        return d(engine_);
    }
    Vec normal_vec(int n) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }
    /// Strictly positive weights summing to one (interior simplex sample).
    Vec simplex_weights(int n) {
        Vec w(n);
        for (int i = 0; i < n; ++i) w[i] = -std::log(uniform(1e-12, 1.0));
        return w / w.sum();
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cvx

#include "cvxproj/linalg.hpp"

#include <Eigen/SVD>

namespace cvx {

int numeric_rank(const Mat& a, double rel_tol) {
    Eigen::JacobiSVD<Mat> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > rel_tol * sv[0]) ++r;
    return r;
}

Mat null_space(const Mat& a, double rel_tol) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int n = static_cast<int>(a.cols());
    int r = 0;
    if (sv.size() > 0 && sv[0] > 0.0) {
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > rel_tol * sv[0]) ++r;
    }
    return svd.matrixV().rightCols(n - r);
}

Mat orthonormal_columns(const Mat& a, double rel_tol) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int r = 0;
    if (sv.size() > 0 && sv[0] > 0.0) {
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > rel_tol * sv[0]) ++r;
    }
    return svd.matrixU().leftCols(r);
}

double operator_norm(const Mat& a) {
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat unvec(const Vec& v, int rows, int cols) {
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Vec vec(const Mat& m) {
    return Eigen::Map<const Vec>(m.data(), m.size());
}

double subspace_angle(const Mat& a, const Mat& b) {
    if (a.cols() == 0 && b.cols() == 0) return 0.0;
    if (a.cols() != b.cols()) return M_PI / 2.0;
    Eigen::JacobiSVD<Mat> svd(a.transpose() * b);
    const auto& sv = svd.singularValues();
    double c = sv.size() > 0 ? sv[sv.size() - 1] : 0.0;
    c = std::min(1.0, std::max(-1.0, c));
    return std::acos(c);
}

} // namespace cvx

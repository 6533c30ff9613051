#include "gsis/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gsis/errors.hpp"

namespace gsis {

double max_abs(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
}

} // namespace

SymmetricEigen jacobi_eigensolve(const Matrix& a_in, int max_sweeps) {
    if (a_in.rows() != a_in.cols())
        throw DimensionMismatch("jacobi_eigensolve needs a square matrix");
    const int n = static_cast<int>(a_in.rows());
    Matrix a = 0.5 * (a_in + a_in.transpose());
    Matrix v = Matrix::Identity(n, n);

    SymmetricEigen out;
    if (n == 0) {
        out.vectors = v;
        out.values = Vector(0);
        return out;
    }

    const double base = std::max(a.norm(), 1e-300);
    const double stop = 1e-15 * base;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (off_diagonal_norm(a) > stop && sweep >= max_sweeps)
        throw ConvergenceFailure("jacobi rotation sweeps exhausted, off-diagonal norm " +
                                 std::to_string(off_diagonal_norm(a)));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) < a(j, j); });
    out.vectors = Matrix(n, n);
    out.values = Vector(n);
    for (int j = 0; j < n; ++j) {
        out.vectors.col(j) = v.col(order[j]);
        out.values(j) = a(order[j], order[j]);
    }
    out.sweeps = sweep;
    return out;
}

Matrix orthonormal_range(const Matrix& a, double rank_rel, double floor_scale) {
    if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax <= 0.0) return Matrix(a.rows(), 0);
    const double cutoff = rank_rel * std::max(smax, floor_scale);
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return svd.matrixU().leftCols(r);
}

int numerical_rank(const Matrix& a, double rank_rel) {
    if (a.cols() == 0 || a.rows() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax <= 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_rel * smax) ++r;
    return r;
}

Matrix nullspace(const Matrix& a, double rank_rel) {
    if (a.cols() == 0) return Matrix(0, 0);
    if (a.rows() == 0) return Matrix::Identity(a.cols(), a.cols());
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    int r = 0;
    if (smax > 0.0)
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > rank_rel * smax) ++r;
    return svd.matrixV().rightCols(a.cols() - r);
}

Matrix pseudo_inverse(const Matrix& a, double pinv_rel) {
    if (a.rows() == 0 || a.cols() == 0) return Matrix(a.cols(), a.rows());
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Vector inv = Vector::Zero(sv.size());
    if (smax > 0.0)
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > pinv_rel * smax) inv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double subspace_distance(const Matrix& b1, const Matrix& b2) {
    if (b1.rows() != b2.rows())
        throw DimensionMismatch("subspace_distance needs bases in the same ambient space");
    const auto n = b1.rows();
    if (b1.cols() == 0 && b2.cols() == 0) return 0.0;
    Matrix diff = Matrix::Zero(n, n);
    if (b1.cols() > 0) diff += b1 * b1.transpose();
    if (b2.cols() > 0) diff -= b2 * b2.transpose();
    Eigen::JacobiSVD<Matrix> svd(diff);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Matrix subspace_sum(const Matrix& b1, const Matrix& b2, double rank_rel) {
    if (b1.rows() != b2.rows())
        throw DimensionMismatch("subspace_sum needs bases in the same ambient space");
    Matrix stacked(b1.rows(), b1.cols() + b2.cols());
    if (b1.cols() > 0) stacked.leftCols(b1.cols()) = b1;
    if (b2.cols() > 0) stacked.rightCols(b2.cols()) = b2;
    return orthonormal_range(stacked, rank_rel);
}

Matrix subspace_intersection(const Matrix& b1, const Matrix& b2, double rank_rel) {
    if (b1.rows() != b2.rows())
        throw DimensionMismatch("subspace_intersection needs bases in the same ambient space");
    if (b1.cols() == 0 || b2.cols() == 0) return Matrix(b1.rows(), 0);
    Matrix stacked(b1.rows(), b1.cols() + b2.cols());
    stacked.leftCols(b1.cols()) = b1;
    stacked.rightCols(b2.cols()) = -b2;
    Matrix ns = nullspace(stacked, rank_rel);
    if (ns.cols() == 0) return Matrix(b1.rows(), 0);
    return orthonormal_range(b1 * ns.topRows(b1.cols()), rank_rel);
}

Matrix orthogonal_complement(const Matrix& b, int n, double rank_rel) {
    if (b.cols() == 0) return Matrix::Identity(n, n);
    if (b.rows() != n)
        throw DimensionMismatch("orthogonal_complement ambient dimension does not match basis");
    return nullspace(Matrix(b.transpose()), rank_rel);
}

} // namespace gsis

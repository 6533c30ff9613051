#include "gsis/rkhs.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"

namespace gsis {

namespace {

void require_same_decomposition(const Sigrkhs& a, const Sigrkhs& b) {
    if (a.space.sd == nullptr || a.space.sd != b.space.sd)
        throw DecompositionMismatch(
            "both reproducing-kernel structures must share one decomposition object");
}

/// The metric block of band m (identity for the standard inner product).
Matrix metric_block(const Sigrkhs& h, int m) {
    const int k = h.space.dim_fn[m];
    if (h.standard_ip) return Matrix::Identity(k, k);
    return h.metric[m];
}

} // namespace

Sigrkhs kernel_from_gsis(const Gsis& u) {
    Sigrkhs h;
    h.space = u;
    h.kernel = si_projection_filter(u).first;
    h.standard_ip = true;
    return h;
}

Sigrkhs bandlimited_kernel(const SpectralDecomposition& sd, const std::vector<int>& omega) {
    Sigrkhs h;
    h.space = bandlimited_space(sd, omega);
    std::vector<double> f(static_cast<size_t>(sd.band_count), 0.0);
    for (int m : omega) f[static_cast<size_t>(m)] = 1.0;
    h.kernel = spectral_multiplier(sd, f);
    h.standard_ip = true;
    h.empty_space_warning = omega.empty();
    return h;
}

Sigrkhs inner_product_assemble(const Gsis& u, const std::vector<Matrix>& blocks) {
    if (u.sd == nullptr) throw InvalidSpec("the space carries no decomposition");
    const auto& sd = *u.sd;
    if (static_cast<int>(blocks.size()) != sd.band_count)
        throw DimensionMismatch("expected one inner-product block per band");

    Sigrkhs h;
    h.space = u;
    h.standard_ip = false;
    h.metric.resize(blocks.size());

    Matrix kernel = Matrix::Zero(sd.n, sd.n);
    for (int m = 0; m < sd.band_count; ++m) {
        const int k = u.dim_fn[m];
        const Matrix& g = blocks[static_cast<size_t>(m)];
        if (g.rows() != k || g.cols() != k)
            throw DimensionMismatch("inner-product block " + std::to_string(m) +
                                    " does not match the band dimension " + std::to_string(k));
        if (k == 0) {
            h.metric[static_cast<size_t>(m)] = g;
            continue;
        }
        const double scale = max_abs(g);
        if (max_abs(g - g.transpose()) > 1e-10 * (1.0 + scale))
            throw NotPositiveDefinite("inner-product block " + std::to_string(m) +
                                      " is not symmetric");
        Matrix gs = 0.5 * (g + g.transpose());
        SymmetricEigen eig = jacobi_eigensolve(gs);
        const double lam_max = eig.values.maxCoeff();
        const double lam_min = eig.values.minCoeff();
        if (!(lam_min > 1e-12 * std::max(1.0, lam_max)))
            throw NotPositiveDefinite("inner-product block " + std::to_string(m) +
                                      " has a nonpositive eigenvalue " + std::to_string(lam_min));
        h.metric[static_cast<size_t>(m)] = gs;
        // reproducing kernel of the block: B_m G_m^{-1} B_m^T
        Matrix ginv =
            eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.transpose();
        const Matrix& b = u.range_fn[static_cast<size_t>(m)].basis;
        kernel += b * ginv * b.transpose();
    }
    kernel = 0.5 * (kernel + kernel.transpose());
    h.kernel = make_filter(sd, kernel);
    return h;
}

double rkhs_inner_product(const Sigrkhs& h, const Vector& x, const Vector& y) {
    if (h.space.sd == nullptr) throw InvalidSpec("the structure carries no decomposition");
    const auto& sd = *h.space.sd;
    if (x.size() != sd.n || y.size() != sd.n)
        throw DimensionMismatch("signal length does not match the decomposition");
    double acc = 0.0;
    for (int m = 0; m < sd.band_count; ++m) {
        if (h.space.dim_fn[m] == 0) continue;
        const Matrix& b = h.space.range_fn[static_cast<size_t>(m)].basis;
        Vector cx = b.transpose() * x;
        Vector cy = b.transpose() * y;
        if (h.standard_ip)
            acc += cx.dot(cy);
        else
            acc += cx.dot(h.metric[static_cast<size_t>(m)] * cy);
    }
    return acc;
}

double reproducing_residual(const Sigrkhs& h) {
    if (h.space.sd == nullptr) throw InvalidSpec("the structure carries no decomposition");
    const auto& sd = *h.space.sd;
    if (h.space.dim() == 0) return 0.0;
    // <b, K(., v)>_H over all v is (K M b)^T with M = sum_m B_m G_m B_m^T.
    Matrix gram = Matrix::Zero(sd.n, sd.n);
    for (int m = 0; m < sd.band_count; ++m) {
        if (h.space.dim_fn[m] == 0) continue;
        const Matrix& b = h.space.range_fn[static_cast<size_t>(m)].basis;
        gram += b * metric_block(h, m) * b.transpose();
    }
    const Matrix& basis = h.space.space.basis;
    return max_abs(h.kernel.h * (gram * basis) - basis);
}

IsometryReport isometry_check(const Sigrkhs& h1, const Sigrkhs& h2, const Filter& t,
                              std::optional<double> tol) {
    require_same_decomposition(h1, h2);
    const auto& sd = *h1.space.sd;
    if (t.tag == FilterTag::general)
        throw NotShiftInvariant("isometry analysis needs a shift-invariant filter");
    if (t.h.rows() != sd.n || t.h.cols() != sd.n)
        throw DimensionMismatch("operator dimension does not match the decomposition");
    const double eps = tol ? *tol : 1e-8 * (1.0 + max_abs(t.h));

    if (h1.space.dim() > 0) {
        Matrix image = t.h * h1.space.space.basis;
        const Matrix& b2 = h2.space.space.basis;
        Matrix escape = b2.cols() > 0 ? Matrix(image - b2 * (b2.transpose() * image)) : image;
        double worst = 0.0;
        for (int j = 0; j < escape.cols(); ++j)
            worst = std::max(worst, escape.col(j).norm());
        if (worst > eps)
            throw RangeEscape("the operator image leaves the target space by " +
                              std::to_string(worst));
    }

    IsometryReport rep;
    rep.isometric = true;
    for (int m = 0; m < sd.band_count; ++m) {
        IsometryBlock blk;
        blk.band = m;
        blk.dim_from = h1.space.dim_fn[m];
        blk.dim_to = h2.space.dim_fn[m];
        if (blk.dim_from == 0) {
            blk.isometric = true;  // vacuous
        } else if (blk.dim_to == 0) {
            blk.isometric = false;  // the band collapses to zero
        } else {
            const Matrix& b1 = h1.space.range_fn[static_cast<size_t>(m)].basis;
            const Matrix& b2 = h2.space.range_fn[static_cast<size_t>(m)].basis;
            Matrix block = b2.transpose() * (t.h * b1);
            // whiten both sides: G = L L^T turns the metric norms into
            // Euclidean ones, so isometry shows up as unit singular values
            if (!h1.standard_ip) {
                Eigen::LLT<Matrix> llt1(h1.metric[static_cast<size_t>(m)]);
                block = llt1.matrixL().solve(block.transpose()).transpose();
            }
            if (!h2.standard_ip) {
                Eigen::LLT<Matrix> llt2(h2.metric[static_cast<size_t>(m)]);
                block = Matrix(llt2.matrixL().transpose()) * block;
            }
            Eigen::JacobiSVD<Matrix> svd(block);
            const auto& s = svd.singularValues();
            blk.sigma_max = s.size() ? s(0) : 0.0;
            blk.sigma_min = s.size() ? s(s.size() - 1) : 0.0;
            bool unit = blk.dim_to >= blk.dim_from;
            for (int i = 0; i < s.size(); ++i) unit = unit && std::abs(s(i) - 1.0) <= eps;
            blk.isometric = unit;
        }
        rep.norm = std::max(rep.norm, blk.sigma_max);
        rep.isometric = rep.isometric && blk.isometric;
        rep.blocks.push_back(blk);
    }
    return rep;
}

} // namespace gsis

#include "gsis/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"

namespace gsis {

namespace {

void require_same_decomposition(const Gsis& a, const Gsis& b) {
    if (a.sd == nullptr || b.sd == nullptr || a.sd != b.sd)
        throw DecompositionMismatch(
            "spaces must be analyzed against the same decomposition object");
}

void fill_band_summary(Gsis& g) {
    g.dim_fn.clear();
    g.spectrum.clear();
    for (size_t m = 0; m < g.range_fn.size(); ++m) {
        g.dim_fn.push_back(g.range_fn[m].dim());
        if (g.dim_fn.back() > 0) g.spectrum.push_back(static_cast<int>(m));
    }
}

std::vector<int> validate_band_list(const SpectralDecomposition& sd,
                                    const std::vector<int>& omega) {
    std::set<int> seen;
    for (int m : omega) {
        if (m < 0 || m >= sd.band_count)
            throw BandOutOfRange("band index " + std::to_string(m) + " outside [0, " +
                                 std::to_string(sd.band_count - 1) + "]");
        if (!seen.insert(m).second)
            throw InvalidSpec("band index " + std::to_string(m) + " listed twice");
    }
    return {seen.begin(), seen.end()};
}

} // namespace

Subspace make_subspace(const Matrix& spanning, double rank_rel) {
    return {orthonormal_range(spanning, rank_rel)};
}

Gsis analyze_space(const SpectralDecomposition& sd, const Subspace& v,
                   std::optional<double> tol) {
    if (v.basis.rows() != sd.n && v.dim() > 0)
        throw DimensionMismatch("subspace lives in dimension " +
                                std::to_string(v.basis.rows()) + ", expected " +
                                std::to_string(sd.n));
    const double eps = tol ? *tol : sd.tol.subspace_eq * (1.0 + sd.shift_scale);

    Gsis g;
    g.sd = &sd;
    g.space = v;
    if (v.dim() > 0) {
        const Matrix& b = v.basis;
        for (int l = 0; l < sd.d; ++l) {
            Matrix image = sd.shifts[l] * b;
            Matrix escape = image - b * (b.transpose() * image);
            double worst = 0.0;
            for (int j = 0; j < escape.cols(); ++j)
                worst = std::max(worst, escape.col(j).norm());
            if (worst > eps)
                throw NotShiftInvariant("shift " + std::to_string(l + 1) +
                                        " leaves the subspace by " + std::to_string(worst));
        }
    }

    int total = 0;
    for (int m = 0; m < sd.band_count; ++m) {
        Matrix comp = v.dim() > 0 ? Matrix(sd.projections[m] * v.basis) : Matrix(sd.n, 0);
        // basis columns are unit vectors, so rank decisions are anchored at
        // scale 1: a band projection made purely of rounding noise is rank 0.
        g.range_fn.push_back({orthonormal_range(comp, sd.tol.rank_rel, 1.0)});
        total += g.range_fn.back().dim();
    }
    if (total != v.dim())
        throw InternalError("InternalError",
                            "band dimensions sum to " + std::to_string(total) + " but dim V = " +
                                std::to_string(v.dim()) +
                                "; the space is numerically unstable under band splitting");
    fill_band_summary(g);
    return g;
}

Gsis gsis_from_bands(const SpectralDecomposition& sd, const std::vector<Matrix>& band_bases) {
    if (static_cast<int>(band_bases.size()) != sd.band_count)
        throw DimensionMismatch("need one basis per band");
    Gsis g;
    g.sd = &sd;
    int total = 0;
    for (int m = 0; m < sd.band_count; ++m) total += static_cast<int>(band_bases[m].cols());
    Matrix all(sd.n, total);
    int at = 0;
    for (int m = 0; m < sd.band_count; ++m) {
        const Matrix& b = band_bases[m];
        if (b.cols() > 0) {
            if (b.rows() != sd.n) throw DimensionMismatch("band basis has wrong row count");
            if (max_abs(b - sd.projections[m] * b) > 1e-8)
                throw InvalidSpec("band basis " + std::to_string(m) +
                                  " does not lie inside its eigenspace");
            if (max_abs(b.transpose() * b - Matrix::Identity(b.cols(), b.cols())) > 1e-8)
                throw InvalidSpec("band basis " + std::to_string(m) + " is not orthonormal");
            all.middleCols(at, b.cols()) = b;
            at += static_cast<int>(b.cols());
        }
        g.range_fn.push_back({b});
    }
    g.space = {all};
    fill_band_summary(g);
    return g;
}

Gsis full_space(const SpectralDecomposition& sd) {
    std::vector<Matrix> bands;
    for (int m = 0; m < sd.band_count; ++m) bands.push_back(sd.eigenspaces[m]);
    return gsis_from_bands(sd, bands);
}

Gsis bandlimited_space(const SpectralDecomposition& sd, const std::vector<int>& omega) {
    std::vector<int> bands = validate_band_list(sd, omega);
    std::vector<Matrix> bases(sd.band_count, Matrix(sd.n, 0));
    for (int m : bands) bases[m] = sd.eigenspaces[m];
    return gsis_from_bands(sd, bases);
}

Gsis space_sum(const Gsis& a, const Gsis& b) {
    require_same_decomposition(a, b);
    const auto& sd = *a.sd;
    std::vector<Matrix> bands;
    for (int m = 0; m < sd.band_count; ++m)
        bands.push_back(
            subspace_sum(a.range_fn[m].basis, b.range_fn[m].basis, sd.tol.rank_rel));
    return gsis_from_bands(sd, bands);
}

Gsis space_intersection(const Gsis& a, const Gsis& b) {
    require_same_decomposition(a, b);
    const auto& sd = *a.sd;
    std::vector<Matrix> bands;
    for (int m = 0; m < sd.band_count; ++m)
        bands.push_back(
            subspace_intersection(a.range_fn[m].basis, b.range_fn[m].basis, sd.tol.rank_rel));
    return gsis_from_bands(sd, bands);
}

Gsis space_complement(const Gsis& a) {
    if (a.sd == nullptr) throw DecompositionMismatch("space is not attached to a decomposition");
    const auto& sd = *a.sd;
    std::vector<Matrix> bands;
    for (int m = 0; m < sd.band_count; ++m) {
        // complement of the band component inside W_m, in W_m coordinates
        const Matrix& w = sd.eigenspaces[m];
        Matrix coords = w.transpose() * a.range_fn[m].basis;
        Matrix comp = orthogonal_complement(coords, sd.multiplicities[m], sd.tol.rank_rel);
        bands.push_back(Matrix(w * comp));
    }
    return gsis_from_bands(sd, bands);
}

std::pair<Filter, Filter> si_projection_filter(const Gsis& u) {
    if (u.sd == nullptr) throw DecompositionMismatch("space is not attached to a decomposition");
    const auto& sd = *u.sd;
    Matrix h = Matrix::Zero(sd.n, sd.n);
    for (int m = 0; m < sd.band_count; ++m) {
        const Matrix& b = u.range_fn[m].basis;
        if (b.cols() > 0) h += b * b.transpose();
    }
    return {make_filter(sd, h), make_filter(sd, Matrix(Matrix::Identity(sd.n, sd.n) - h))};
}

std::optional<std::vector<int>> bandlimited_test(const Gsis& u) {
    if (u.sd == nullptr) throw DecompositionMismatch("space is not attached to a decomposition");
    std::vector<int> omega;
    for (int m = 0; m < u.sd->band_count; ++m) {
        if (u.dim_fn[m] == 0) continue;
        if (u.dim_fn[m] != u.sd->multiplicities[m]) return std::nullopt;
        omega.push_back(m);
    }
    return omega;
}

Gsis maximal_invariant_subspace(const Gsis& u) {
    if (u.sd == nullptr) throw DecompositionMismatch("space is not attached to a decomposition");
    const auto& sd = *u.sd;
    Matrix image = u.space.basis;
    double scale = 1.0;
    for (int l = sd.d - 1; l >= 0; --l) {
        image = sd.shifts[l] * image;
        scale *= 1.0 + sd.shift_scale;
    }
    Subspace v{orthonormal_range(image, sd.tol.rank_rel, scale)};
    return analyze_space(sd, v);
}

bool shifted_equality_test(const Gsis& u) {
    if (u.sd == nullptr) throw DecompositionMismatch("space is not attached to a decomposition");
    const auto& sd = *u.sd;
    for (int m : u.spectrum)
        for (int l = 0; l < sd.d; ++l)
            if (std::abs(sd.frequencies[m](l)) <= sd.group_tol) return false;
    return true;
}

BeurlingResult beurling_factorization(const SpectralDecomposition& sd,
                                      const std::vector<int>& omega, std::uint64_t seed) {
    if (sd.max_gamma_norm >= 1.0)
        throw NotNormalized("factorization needs max ||gamma(m)||_2 < 1, got " +
                            std::to_string(sd.max_gamma_norm));
    std::vector<int> keep = validate_band_list(sd, omega);
    std::set<int> keep_set(keep.begin(), keep.end());

    auto [a, nodes] = separating_direction(sd, seed);
    BeurlingResult out;
    out.a = a;
    std::vector<double> f(sd.band_count, 1.0);
    for (int m = 0; m < sd.band_count; ++m) {
        if (keep_set.count(m)) continue;
        out.roots.push_back(nodes[m]);
        for (int mp = 0; mp < sd.band_count; ++mp)
            f[mp] *= (nodes[mp] - nodes[m]) / (1.0 - nodes[m] * nodes[mp]);
    }
    out.b = spectral_multiplier(sd, f);
    return out;
}

SiOperatorReport si_operator_analysis(const Gsis& u1, const Gsis& u2, const Filter& t,
                                      std::optional<double> tol) {
    require_same_decomposition(u1, u2);
    const auto& sd = *u1.sd;
    if (t.tag == FilterTag::general)
        throw NotShiftInvariant("operator analysis needs a shift-invariant filter");
    if (t.h.rows() != sd.n || t.h.cols() != sd.n)
        throw DimensionMismatch("operator dimension does not match the decomposition");
    const double eps = tol ? *tol : 1e-8 * (1.0 + max_abs(t.h));

    // Range containment: T U1 ⊆ U2.
    if (u1.dim() > 0) {
        Matrix image = t.h * u1.space.basis;
        const Matrix& b2 = u2.space.basis;
        Matrix escape = b2.cols() > 0 ? Matrix(image - b2 * (b2.transpose() * image)) : image;
        double worst = 0.0;
        for (int j = 0; j < escape.cols(); ++j)
            worst = std::max(worst, escape.col(j).norm());
        if (worst > eps)
            throw RangeEscape("the operator image leaves the target space by " +
                              std::to_string(worst));
    }

    SiOperatorReport rep;
    rep.injective = rep.surjective = rep.isometric = true;
    for (int m = 0; m < sd.band_count; ++m) {
        BlockVerdict v;
        v.band = m;
        v.dim_from = u1.dim_fn[m];
        v.dim_to = u2.dim_fn[m];
        const Matrix& b1 = u1.range_fn[m].basis;
        const Matrix& b2 = u2.range_fn[m].basis;
        if (v.dim_from == 0) {
            v.injective = true;
            v.isometric = true;
            v.surjective = (v.dim_to == 0);
        } else if (v.dim_to == 0) {
            // everything maps to zero inside this band
            v.injective = false;
            v.isometric = false;
            v.surjective = true;
        } else {
            Matrix block = b2.transpose() * (t.h * b1);
            Eigen::JacobiSVD<Matrix> svd(block);
            const auto& s = svd.singularValues();
            v.sigma_max = s.size() ? s(0) : 0.0;
            v.sigma_min = s.size() ? s(s.size() - 1) : 0.0;
            v.injective = v.dim_from <= v.dim_to && v.sigma_min > eps;
            int rank = 0;
            for (int i = 0; i < s.size(); ++i)
                if (s(i) > eps) ++rank;
            v.surjective = (rank == v.dim_to);
            v.isometric =
                v.dim_from <= v.dim_to &&
                max_abs(block.transpose() * block -
                        Matrix::Identity(v.dim_from, v.dim_from)) <= eps;
        }
        rep.injective = rep.injective && v.injective;
        rep.surjective = rep.surjective && v.surjective;
        rep.isometric = rep.isometric && v.isometric;
        rep.blocks.push_back(v);
    }
    return rep;
}

} // namespace gsis

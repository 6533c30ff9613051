#include "gsis/fgsis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"

namespace gsis {

namespace {

void require_normalized(const SpectralDecomposition& sd, const char* what) {
    if (sd.gamma_scale >= 1.0)
        throw NotNormalized(std::string(what) + " needs every |gamma_l(m)| < 1 (found " +
                            std::to_string(sd.gamma_scale) + "); rescale the shifts first");
}

double band_product(const SpectralDecomposition& sd, int m) {
    double p = 1.0;
    for (int l = 0; l < sd.d; ++l) p *= 1.0 - sd.frequencies[m](l) * sd.frequencies[m](l);
    return p;
}

} // namespace

GeneratorFamily make_generators(const Matrix& phi) {
    if (phi.cols() < 1 || phi.rows() < 1)
        throw InvalidSpec("a generator family needs at least one generator signal");
    double scale = 0.0;
    for (int j = 0; j < phi.cols(); ++j) scale = std::max(scale, phi.col(j).norm());
    for (int j = 0; j < phi.cols(); ++j)
        if (phi.col(j).norm() <= 1e-14 * (1.0 + scale))
            throw ZeroGenerator("generator " + std::to_string(j + 1) + " is numerically zero");
    return {phi};
}

FiberSet fiber_analysis(const SpectralDecomposition& sd, const GeneratorFamily& phi) {
    if (phi.phi.rows() != sd.n)
        throw DimensionMismatch("generators live in dimension " +
                                std::to_string(phi.phi.rows()) + ", expected " +
                                std::to_string(sd.n));
    FiberSet fs;
    fs.sd = &sd;
    fs.r = phi.count();
    for (int j = 0; j < fs.r; ++j) fs.scale = std::max(fs.scale, phi.phi.col(j).norm());

    for (int m = 0; m < sd.band_count; ++m) {
        Matrix f = sd.projections[m] * phi.phi;
        Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeThinV);
        Vector sv = svd.singularValues();
        const double cutoff = sd.tol.rank_rel * std::max(sv.size() ? sv(0) : 0.0, fs.scale);
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > cutoff) ++rank;
        fs.fibers.push_back(f);
        Matrix gram = f.transpose() * f;
        fs.gram.push_back(0.5 * (gram + gram.transpose()));
        fs.coeff_space.push_back(svd.matrixV().leftCols(rank));
        fs.singular_values.push_back(sv);
        fs.rank.push_back(rank);
    }
    return fs;
}

Gsis generated_space(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                     std::uint64_t seed) {
    (void)seed;  // the band-by-band construction is deterministic
    FiberSet fs = fiber_analysis(sd, phi);
    std::vector<Matrix> bands;
    for (int m = 0; m < sd.band_count; ++m)
        bands.push_back(orthonormal_range(fs.fibers[m], sd.tol.rank_rel, fs.scale));
    return gsis_from_bands(sd, bands);
}

MinimalGenerators minimal_generators(const Gsis& u) {
    if (u.sd == nullptr) throw DecompositionMismatch("space is not attached to a decomposition");
    const auto& sd = *u.sd;
    MinimalGenerators out;
    out.length = u.dim_fn.empty() ? 0 : *std::max_element(u.dim_fn.begin(), u.dim_fn.end());
    if (out.length == 0) {
        out.phi = Matrix(sd.n, 0);
        return out;
    }
    out.phi = Matrix::Zero(sd.n, out.length);
    for (int m = 0; m < sd.band_count; ++m)
        for (int j = 0; j < u.dim_fn[m]; ++j) out.phi.col(j) += u.range_fn[m].basis.col(j);

    // The family must regenerate the space it came from.
    Gsis regen = generated_space(sd, {out.phi});
    if (regen.dim() != u.dim() ||
        subspace_distance(regen.space.basis, u.space.basis) > sd.tol.subspace_eq)
        throw InternalError("InternalError",
                            "minimal generator family failed to regenerate its space");
    return out;
}

Matrix frame_coupling(const SpectralDecomposition& sd, FrameHorizon horizon) {
    if (!horizon.finite) require_normalized(sd, "the infinite-horizon coupling kernel");
    if (horizon.finite && horizon.terms < 1)
        throw InvalidSpec("a finite horizon needs at least one term");
    const int count = sd.band_count;
    Matrix a(count, count);
    for (int m = 0; m < count; ++m) {
        for (int mp = m; mp < count; ++mp) {
            double entry = 1.0;
            for (int l = 0; l < sd.d; ++l) {
                const double t = sd.frequencies[m](l) * sd.frequencies[mp](l);
                if (horizon.finite) {
                    double sum = 0.0, power = 1.0;
                    for (int k = 0; k < horizon.terms; ++k) {
                        sum += power;
                        power *= t;
                    }
                    entry *= sum;
                } else {
                    entry *= 1.0 / (1.0 - t);
                }
            }
            a(m, mp) = entry;
            a(mp, m) = entry;
        }
    }
    return a;
}

double frame_sum(const FiberSet& fs, const Matrix& coupling, const Vector& x) {
    const auto& sd = *fs.sd;
    if (x.size() != sd.n) throw DimensionMismatch("signal length does not match");
    if (coupling.rows() != sd.band_count || coupling.cols() != sd.band_count)
        throw DimensionMismatch("coupling kernel has the wrong band count");
    Matrix c(sd.band_count, fs.r);
    for (int m = 0; m < sd.band_count; ++m) c.row(m) = x.transpose() * fs.fibers[m];
    double total = 0.0;
    for (int j = 0; j < fs.r; ++j) total += c.col(j).dot(coupling * c.col(j));
    return total;
}

FrameBounds frame_bounds(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                         FrameHorizon horizon) {
    if (!horizon.finite) require_normalized(sd, "frame bounds");
    FiberSet fs = fiber_analysis(sd, phi);
    Matrix a = frame_coupling(sd, horizon);
    SymmetricEigen ae = jacobi_eigensolve(a);
    const double amin = ae.values(0), amax = ae.values(ae.values.size() - 1);
    if (amin <= 0)
        throw InternalError("InternalError", "coupling kernel lost positive definiteness");

    double min_active = 0.0, max_all = 0.0;
    bool any = false;
    for (int m = 0; m < sd.band_count; ++m) {
        const Vector& sv = fs.singular_values[m];
        if (sv.size() > 0) max_all = std::max(max_all, sv(0));
        if (fs.rank[m] > 0) {
            const double smin_pos = sv(fs.rank[m] - 1);
            min_active = any ? std::min(min_active, smin_pos) : smin_pos;
            any = true;
        }
    }
    FrameBounds out;
    out.lower = any ? amin * min_active * min_active : 0.0;
    out.upper = amax * max_all * max_all;
    return out;
}

Filter frame_operator(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                      FrameHorizon horizon) {
    if (!horizon.finite) require_normalized(sd, "the frame operator");
    FiberSet fs = fiber_analysis(sd, phi);
    Matrix a = frame_coupling(sd, horizon);
    Matrix s = Matrix::Zero(sd.n, sd.n);
    for (int m = 0; m < sd.band_count; ++m)
        for (int mp = 0; mp < sd.band_count; ++mp)
            s += a(m, mp) * (fs.fibers[m] * fs.fibers[mp].transpose());
    return make_filter(sd, Matrix(0.5 * (s + s.transpose())));
}

bool frame_operator_si_test(const FiberSet& fs, std::optional<double> tol) {
    double cmax = 0.0;
    for (const auto& c : fs.gram) cmax = std::max(cmax, max_abs(c));
    const double eps = tol ? *tol : 1e-10 * (1.0 + cmax) * (1.0 + cmax);
    for (size_t m = 0; m < fs.gram.size(); ++m)
        for (size_t mp = 0; mp < fs.gram.size(); ++mp)
            if (m != mp && max_abs(fs.gram[m] * fs.gram[mp]) > eps) return false;
    return true;
}

double bessel_bound(const SpectralDecomposition& sd, const GeneratorFamily& phi) {
    require_normalized(sd, "the Bessel bound");
    FiberSet fs = fiber_analysis(sd, phi);
    double total = 0.0;
    for (int m = 0; m < sd.band_count; ++m) {
        const Vector& sv = fs.singular_values[m];
        const double smax = sv.size() ? sv(0) : 0.0;
        total += smax * smax / band_product(sd, m);
    }
    return std::sqrt(total);
}

DualFrameResult dual_frame(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                           std::uint64_t seed) {
    (void)seed;  // construction is deterministic; parameter kept for interface stability
    require_normalized(sd, "dual frame construction");
    FiberSet fs = fiber_analysis(sd, phi);
    const int r = fs.r;

    std::vector<int> active;
    int total_rank = 0;
    for (int m = 0; m < sd.band_count; ++m)
        if (fs.rank[m] > 0) {
            active.push_back(m);
            total_rank += fs.rank[m];
        }

    DualFrameResult out;
    if (total_rank > r) {
        out.exists = false;
        return out;
    }
    Matrix stacked(r, total_rank);
    std::vector<int> offset_of(sd.band_count, -1);
    int at = 0;
    for (int m : active) {
        offset_of[m] = at;
        stacked.middleCols(at, fs.rank[m]) = fs.coeff_space[m];
        at += fs.rank[m];
    }
    out.exists = total_rank == 0 || numerical_rank(stacked, sd.tol.rank_rel) == total_rank;
    if (!out.exists) return out;

    if (total_rank == 0) {
        // zero generators cannot reach here (family validation), but keep a
        // well-defined degenerate answer
        out.dual = Matrix::Zero(sd.n, r);
        return out;
    }

    // Extend the stacked coefficient bases to a basis of R^r with coordinate
    // vectors, then take its biorthogonal (inverse-transpose) system.
    Matrix full(r, r);
    full.leftCols(total_rank) = stacked;
    Matrix q = orthonormal_range(stacked, sd.tol.rank_rel);
    int have = total_rank;
    for (int j = 0; j < r && have < r; ++j) {
        Vector e = Vector::Zero(r);
        e(j) = 1.0;
        Vector resid = e - q * (q.transpose() * e);
        if (resid.norm() > 1e-8) {
            full.col(have) = e;
            have += 1;
            Matrix grown(r, q.cols() + 1);
            grown.leftCols(q.cols()) = q;
            grown.col(q.cols()) = resid / resid.norm();
            q = grown;
        }
    }
    if (have != r)
        throw InternalError("InternalError", "failed to extend coefficient spaces to a basis");
    Matrix btilde = Eigen::PartialPivLU<Matrix>(full).inverse().transpose();

    // Oblique band projections Q_m and the dual fibers.
    std::vector<Matrix> dual_fibers(sd.band_count, Matrix::Zero(sd.n, r));
    std::vector<Matrix> b_cert(sd.band_count, Matrix::Zero(r, r));
    out.dual = Matrix::Zero(sd.n, r);
    for (int m : active) {
        const int k = fs.rank[m];
        Matrix w = stacked.middleCols(offset_of[m], k);
        Matrix wt = btilde.middleCols(offset_of[m], k);
        Matrix qm = w * wt.transpose();
        Matrix dm = band_product(sd, m) * pseudo_inverse(fs.gram[m], sd.tol.pinv_rel) * qm;
        dual_fibers[m] = fs.fibers[m] * dm;
        b_cert[m] = fs.gram[m] * dm;
        out.dual += dual_fibers[m];
    }

    // Certificates.
    for (int m : active) {
        for (int mp : active)
            if (m != mp)
                out.cross_band_max = std::max(out.cross_band_max, max_abs(b_cert[m] * b_cert[mp]));
        out.idempotent_residual =
            std::max(out.idempotent_residual,
                     max_abs(b_cert[m] * b_cert[m] - band_product(sd, m) * b_cert[m]));
        Matrix span_f = orthonormal_range(fs.fibers[m], sd.tol.rank_rel, fs.scale);
        Matrix span_d = orthonormal_range(dual_fibers[m], sd.tol.rank_rel, fs.scale);
        if (span_f.cols() != span_d.cols() || subspace_distance(span_f, span_d) > 1e-8)
            out.span_match = false;
    }

    // Mixed frame operator must act as the identity on the generated space.
    Matrix coupling = frame_coupling(sd);
    Matrix mixed = Matrix::Zero(sd.n, sd.n);
    for (int m = 0; m < sd.band_count; ++m)
        for (int mp = 0; mp < sd.band_count; ++mp)
            mixed += coupling(m, mp) * (fs.fibers[m] * dual_fibers[mp].transpose());
    Matrix space(sd.n, 0);
    for (int m : active)
        space = subspace_sum(space, orthonormal_range(fs.fibers[m], sd.tol.rank_rel, fs.scale),
                             sd.tol.rank_rel);
    out.reconstruction_residual = space.cols() > 0 ? max_abs(mixed * space - space) : 0.0;
    if (out.reconstruction_residual > 1e-8)
        throw ReconstructionResidualExceeded(
            "dual frame reconstruction residual " + std::to_string(out.reconstruction_residual) +
            " exceeds 1e-8");
    return out;
}

RieszResult riesz_check(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                        std::uint64_t seed) {
    FiberSet fs = fiber_analysis(sd, phi);
    RieszResult out;
    auto [a, nodes] = separating_direction(sd, seed);
    out.a = a;
    out.nodes = nodes;

    const int count = sd.band_count;
    Matrix v(count, count);
    for (int m = 0; m < count; ++m) {
        double p = 1.0;
        for (int k = 0; k < count; ++k) {
            v(m, k) = p;
            p *= nodes[m];
        }
    }
    Eigen::JacobiSVD<Matrix> svd(v);
    const double vmin = svd.singularValues()(count - 1);
    const double vmax = svd.singularValues()(0);

    out.is_riesz = true;
    double fmin = 0.0, fmax = 0.0;
    bool first = true;
    for (int m = 0; m < count; ++m) {
        if (fs.rank[m] < fs.r) out.is_riesz = false;
        const Vector& sv = fs.singular_values[m];
        const double smax = sv.size() ? sv(0) : 0.0;
        const double smin = sv.size() >= fs.r ? sv(fs.r - 1) : 0.0;
        fmax = std::max(fmax, smax);
        fmin = first ? smin : std::min(fmin, smin);
        first = false;
    }
    out.lower = (vmin * fmin) * (vmin * fmin);
    out.upper = (vmax * fmax) * (vmax * fmax);
    return out;
}

} // namespace gsis

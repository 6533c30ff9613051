#include "gsis/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"
#include "gsis/random.hpp"

namespace gsis {

namespace {

std::vector<double> band_multipliers(const SpectralDecomposition& sd, const Matrix& h) {
    std::vector<double> mu(sd.band_count);
    for (int m = 0; m < sd.band_count; ++m) {
        const Matrix& b = sd.eigenspaces[m];
        mu[m] = (b.transpose() * h * b).trace() / sd.multiplicities[m];
    }
    return mu;
}

Matrix assemble_multiplier(const SpectralDecomposition& sd, const std::vector<double>& f) {
    Matrix h = Matrix::Zero(sd.n, sd.n);
    for (int m = 0; m < sd.band_count; ++m) h += f[m] * sd.projections[m];
    return h;
}

} // namespace

FilterTag classify_filter(const SpectralDecomposition& sd, const Matrix& h,
                          std::optional<double> tol) {
    if (h.rows() != sd.n || h.cols() != sd.n)
        throw DimensionMismatch("filter must be " + std::to_string(sd.n) + "x" +
                                std::to_string(sd.n));
    const double eps = tol ? *tol : sd.tol.classify(max_abs(h));

    std::vector<double> mu = band_multipliers(sd, h);
    if (max_abs(h - assemble_multiplier(sd, mu)) <= eps) return FilterTag::polynomial;

    const double eps_comm = eps * (1.0 + sd.shift_scale);
    for (const auto& s : sd.shifts)
        if (max_abs(s * h - h * s) > eps_comm) return FilterTag::general;
    return FilterTag::shift_invariant;
}

Filter make_filter(const SpectralDecomposition& sd, const Matrix& h, std::optional<double> tol) {
    Filter f;
    f.h = h;
    f.tag = classify_filter(sd, h, tol);
    if (f.tag == FilterTag::polynomial) f.multipliers = band_multipliers(sd, h);
    return f;
}

Filter spectral_multiplier(const SpectralDecomposition& sd, const std::vector<double>& f) {
    if (static_cast<int>(f.size()) != sd.band_count)
        throw DimensionMismatch("need " + std::to_string(sd.band_count) +
                                " multipliers, got " + std::to_string(f.size()));
    for (double v : f)
        if (!std::isfinite(v)) throw InvalidSpec("band multipliers must be finite");
    Filter out;
    out.h = assemble_multiplier(sd, f);
    out.tag = FilterTag::polynomial;
    out.multipliers = f;
    return out;
}

Filter fractional_shift(const SpectralDecomposition& sd, int l, double t) {
    if (l < 0 || l >= sd.d)
        throw BandOutOfRange("shift index " + std::to_string(l) + " outside [0, " +
                             std::to_string(sd.d - 1) + "]");
    if (!(t >= 0) || !std::isfinite(t))
        throw InvalidSpec("fractional power must be a finite t >= 0");
    std::vector<double> f(sd.band_count);
    for (int m = 0; m < sd.band_count; ++m) {
        double g = sd.frequencies[m](l);
        if (g < -sd.group_tol)
            throw NegativeBaseFractionalPower("gamma_" + std::to_string(l + 1) + "(" +
                                              std::to_string(m + 1) + ") = " + std::to_string(g) +
                                              " is negative; fractional powers are undefined");
        if (g < 0) g = 0;
        f[m] = (g == 0.0 && t == 0.0) ? 1.0 : std::pow(g, t);
    }
    return spectral_multiplier(sd, f);
}

Filter shift_pseudoinverse(const SpectralDecomposition& sd, int l) {
    if (l < 0 || l >= sd.d)
        throw BandOutOfRange("shift index " + std::to_string(l) + " outside [0, " +
                             std::to_string(sd.d - 1) + "]");
    std::vector<double> f(sd.band_count);
    for (int m = 0; m < sd.band_count; ++m) {
        const double g = sd.frequencies[m](l);
        f[m] = std::abs(g) > sd.group_tol ? 1.0 / g : 0.0;
    }
    return spectral_multiplier(sd, f);
}

std::pair<Vector, std::vector<double>> separating_direction(const SpectralDecomposition& sd,
                                                            std::uint64_t seed, double min_sep,
                                                            int attempts) {
    Rng rng(seed);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        Vector a = rng.unit_sphere(sd.d);
        std::vector<double> nodes(sd.band_count);
        for (int m = 0; m < sd.band_count; ++m) nodes[m] = a.dot(sd.frequencies[m]);
        double sep = std::numeric_limits<double>::infinity();
        for (int i = 0; i < sd.band_count; ++i)
            for (int j = i + 1; j < sd.band_count; ++j)
                sep = std::min(sep, std::abs(nodes[i] - nodes[j]));
        if (sd.band_count < 2 || sep > min_sep) return {a, nodes};
    }
    throw SeparationFailure("no mixing direction separated the " +
                            std::to_string(sd.band_count) + " frequencies after " +
                            std::to_string(attempts) + " attempts");
}

double ProjectionPolynomials::eval(int m, double x) const {
    const int count = static_cast<int>(nodes.size());
    // Barycentric second form of the Lagrange basis polynomial l_m.
    double num = 0.0, den = 0.0;
    for (int j = 0; j < count; ++j) {
        const double diff = x - nodes[j];
        if (std::abs(diff) < 1e-300) return j == m ? 1.0 : 0.0;
        const double term = barycentric_weights[j] / diff;
        den += term;
        if (j == m) num = term;
    }
    return num / den;
}

Matrix ProjectionPolynomials::eval_matrix(int m) const {
    const int n = static_cast<int>(t.rows());
    const int count = static_cast<int>(nodes.size());
    std::vector<int> order;
    for (int j = 0; j < count; ++j)
        if (j != m) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return std::abs(nodes[i] - nodes[m]) > std::abs(nodes[j] - nodes[m]);
    });
    Matrix x = Matrix::Identity(n, n);
    for (int j : order) x = (t - nodes[j] * Matrix::Identity(n, n)) * x / (nodes[m] - nodes[j]);
    return x;
}

ProjectionPolynomials projection_polynomials(const SpectralDecomposition& sd,
                                             std::uint64_t seed) {
    const int count = sd.band_count;
    std::string last_failure;
    for (int attempt = 0; attempt < 32; ++attempt) {
        Vector a;
        std::vector<double> nodes;
        try {
            std::tie(a, nodes) = separating_direction(sd, seed + attempt, 1e-10, 1);
        } catch (const SeparationFailure& e) {
            last_failure = e.what();
            continue;
        }

        ProjectionPolynomials pp;
        pp.a = a;
        pp.nodes = nodes;
        pp.t = Matrix::Zero(sd.n, sd.n);
        for (int l = 0; l < sd.d; ++l) pp.t += a(l) * sd.shifts[l];

        pp.barycentric_weights.assign(count, 1.0);
        for (int m = 0; m < count; ++m)
            for (int j = 0; j < count; ++j)
                if (j != m) pp.barycentric_weights[m] /= (nodes[m] - nodes[j]);

        // Monomial coefficients by incremental multiplication of the factors.
        pp.coefficients.assign(count, {});
        for (int m = 0; m < count; ++m) {
            std::vector<double> c{1.0};
            for (int j = 0; j < count; ++j) {
                if (j == m) continue;
                std::vector<double> next(c.size() + 1, 0.0);
                for (size_t k = 0; k < c.size(); ++k) {
                    next[k + 1] += c[k];
                    next[k] -= nodes[j] * c[k];
                }
                c = std::move(next);
            }
            for (auto& v : c) v *= pp.barycentric_weights[m];
            pp.coefficients[m] = std::move(c);
        }

        pp.max_residual = 0.0;
        for (int m = 0; m < count; ++m)
            pp.max_residual =
                std::max(pp.max_residual, max_abs(pp.eval_matrix(m) - sd.projections[m]));
        if (pp.max_residual <= 1e-7) return pp;
        last_failure = "matrix residual " + std::to_string(pp.max_residual);
    }
    throw SeparationFailure("projection polynomials failed after 32 attempts (" + last_failure +
                            ")");
}

SiBlocks si_decompose(const SpectralDecomposition& sd, const Filter& h) {
    if (h.tag == FilterTag::general)
        throw NotShiftInvariant("block decomposition needs a shift-invariant filter");
    if (h.h.rows() != sd.n || h.h.cols() != sd.n)
        throw DimensionMismatch("filter dimension does not match the decomposition");
    SiBlocks out;
    Matrix sum = Matrix::Zero(sd.n, sd.n);
    for (int m = 0; m < sd.band_count; ++m) {
        out.blocks.push_back(sd.projections[m] * h.h * sd.projections[m]);
        sum += out.blocks.back();
    }
    out.residual = max_abs(h.h - sum);
    return out;
}

Filter random_si_filter(const SpectralDecomposition& sd, std::uint64_t seed) {
    Rng rng(seed);
    Matrix r = rng.gaussian_matrix(sd.n, sd.n);
    r = 0.5 * (r + r.transpose());
    Matrix g = Matrix::Zero(sd.n, sd.n);
    for (int m = 0; m < sd.band_count; ++m) g += sd.projections[m] * r * sd.projections[m];
    return make_filter(sd, g);
}

std::optional<Filter> center_witness(const SpectralDecomposition& sd, const Filter& h,
                                     std::uint64_t seed) {
    const FilterTag tag = h.tag;
    if (tag == FilterTag::general)
        throw NotShiftInvariant("center membership only concerns shift-invariant filters");
    if (tag == FilterTag::polynomial) return std::nullopt;
    for (int attempt = 0; attempt < 16; ++attempt) {
        Filter g = random_si_filter(sd, seed * 131 + attempt);
        if (max_abs(h.h * g.h - g.h * h.h) > 1e-8) return g;
    }
    throw WitnessSearchExhausted(
        "no commutant witness separated the filter from the center after 16 attempts");
}

BasisInvarianceReport basis_invariance_check(const SpectralDecomposition& sd, const Matrix& h,
                                             int trials, std::uint64_t seed) {
    if (h.rows() != sd.n || h.cols() != sd.n)
        throw DimensionMismatch("filter dimension does not match the decomposition");
    Rng rng(seed);
    const Matrix& u0 = sd.source.u;
    const Matrix r0 = u0.transpose() * h * u0;

    std::vector<std::vector<int>> cols_of(sd.band_count);
    for (int j = 0; j < sd.n; ++j) cols_of[sd.grouping[j]].push_back(j);

    BasisInvarianceReport rep;
    for (int trial = 0; trial < trials; ++trial) {
        Matrix u = u0;
        for (int m = 0; m < sd.band_count; ++m) {
            const auto& cols = cols_of[m];
            const int k = static_cast<int>(cols.size());
            if (k == 1) continue;
            Matrix q = rng.orthogonal(k);
            Matrix sub(sd.n, k);
            for (int j = 0; j < k; ++j) sub.col(j) = u0.col(cols[j]);
            sub = sub * q;
            for (int j = 0; j < k; ++j) u.col(cols[j]) = sub.col(j);
        }
        rep.max_deviation = std::max(rep.max_deviation, max_abs(u.transpose() * h * u - r0));
    }
    rep.invariant = rep.max_deviation <= 1e-8 * (1.0 + max_abs(h));
    return rep;
}

} // namespace gsis

#include "gsis/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"

namespace gsis {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

double column_distance(const Matrix& lambda, int i, int j) {
    double d = 0.0;
    for (int l = 0; l < lambda.rows(); ++l)
        d = std::max(d, std::abs(lambda(l, i) - lambda(l, j)));
    return d;
}

} // namespace

SpectralDecomposition build_decomposition(const ShiftSet& ss, const JointEigen& je,
                                          std::optional<double> tol_group) {
    const int n = ss.n;
    const int d = ss.count();
    if (je.u.rows() != n || je.u.cols() != n || je.lambda.rows() != d || je.lambda.cols() != n)
        throw DimensionMismatch("joint eigendecomposition shape does not match the shift set");

    SpectralDecomposition sd;
    sd.shifts = ss.shifts;
    sd.graph = ss.graph;
    sd.tol = ss.tol;
    sd.source = je;
    sd.n = n;
    sd.d = d;
    sd.shift_scale = ss.scale;

    const double lam_mag = max_abs(je.lambda);
    sd.group_tol = tol_group ? *tol_group : ss.tol.group(lam_mag);

    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (column_distance(je.lambda, i, j) <= sd.group_tol) uf.unite(i, j);

    std::vector<int> root_of(n);
    std::vector<int> roots;
    for (int i = 0; i < n; ++i) {
        root_of[i] = uf.find(i);
        if (root_of[i] == i) roots.push_back(i);
    }

    struct Cluster {
        Vector gamma;
        std::vector<int> cols;
    };
    std::vector<Cluster> clusters;
    for (int r : roots) {
        Cluster c;
        c.cols.clear();
        for (int i = 0; i < n; ++i)
            if (root_of[i] == r) c.cols.push_back(i);
        c.gamma = Vector::Zero(d);
        for (int i : c.cols) c.gamma += je.lambda.col(i);
        c.gamma /= static_cast<double>(c.cols.size());
        clusters.push_back(std::move(c));
    }

    for (size_t a = 0; a < clusters.size(); ++a) {
        for (size_t b = a + 1; b < clusters.size(); ++b) {
            double dist = (clusters[a].gamma - clusters[b].gamma).cwiseAbs().maxCoeff();
            if (dist <= 10.0 * sd.group_tol)
                throw AmbiguousClustering(
                    "frequency clusters separated by only " + std::to_string(dist) +
                    " (grouping tolerance " + std::to_string(sd.group_tol) +
                    "); pick an explicit grouping tolerance");
        }
    }

    // Ascending ||gamma||_2, then lexicographic; comparisons honour the
    // grouping tolerance so the order is stable across seeds.
    const double tie = sd.group_tol;
    std::stable_sort(clusters.begin(), clusters.end(), [&](const Cluster& x, const Cluster& y) {
        const double nx = x.gamma.norm(), ny = y.gamma.norm();
        if (std::abs(nx - ny) > tie) return nx < ny;
        for (int l = 0; l < d; ++l) {
            if (std::abs(x.gamma(l) - y.gamma(l)) > tie) return x.gamma(l) < y.gamma(l);
        }
        return false;
    });

    sd.band_count = static_cast<int>(clusters.size());
    sd.grouping.assign(n, -1);
    int total = 0;
    for (int m = 0; m < sd.band_count; ++m) {
        const auto& c = clusters[m];
        const int mult = static_cast<int>(c.cols.size());
        Matrix basis(n, mult);
        for (int j = 0; j < mult; ++j) {
            basis.col(j) = je.u.col(c.cols[j]);
            sd.grouping[c.cols[j]] = m;
        }
        sd.frequencies.push_back(c.gamma);
        sd.eigenspaces.push_back(basis);
        sd.projections.push_back(basis * basis.transpose());
        sd.multiplicities.push_back(mult);
        total += mult;
        sd.gamma_scale = std::max(sd.gamma_scale, c.gamma.cwiseAbs().maxCoeff());
        sd.max_gamma_norm = std::max(sd.max_gamma_norm, c.gamma.norm());
    }
    if (total != n)
        throw InternalError("InternalError", "band multiplicities sum to " +
                                                 std::to_string(total) + ", expected " +
                                                 std::to_string(n));
    return sd;
}

SpectralDecomposition decompose(const ShiftSet& ss, std::uint64_t seed,
                                std::optional<double> tol_group) {
    return build_decomposition(ss, joint_eigendecomposition(ss, seed), tol_group);
}

double GftSignal::total_energy() const {
    double e = 0.0;
    for (const auto& c : components) e += c.squaredNorm();
    return e;
}

GftSignal gft(const SpectralDecomposition& sd, const Vector& x) {
    if (x.size() != sd.n)
        throw DimensionMismatch("signal has length " + std::to_string(x.size()) +
                                ", decomposition expects " + std::to_string(sd.n));
    GftSignal out;
    out.sd = &sd;
    out.components.reserve(sd.band_count);
    for (int m = 0; m < sd.band_count; ++m)
        out.components.push_back(sd.eigenspaces[m] * (sd.eigenspaces[m].transpose() * x));
    return out;
}

Vector igft(const GftSignal& xh) {
    if (!xh.sd) throw DecompositionMismatch("GFT signal is not attached to a decomposition");
    Vector x = Vector::Zero(xh.sd->n);
    for (const auto& c : xh.components) x += c;
    return x;
}

LowpassResult lowpass(const SpectralDecomposition& sd, const Vector& x, int k) {
    if (x.size() != sd.n)
        throw DimensionMismatch("signal has length " + std::to_string(x.size()) +
                                ", decomposition expects " + std::to_string(sd.n));
    if (k < 1 || k > sd.band_count)
        throw BandOutOfRange("cutoff band " + std::to_string(k) + " outside [1, " +
                             std::to_string(sd.band_count) + "]");
    GftSignal xh = gft(sd, x);
    LowpassResult out;
    out.approximation = Vector::Zero(sd.n);
    for (int m = 0; m < k; ++m) out.approximation += xh.components[m];
    out.error = (x - out.approximation).norm();
    if (k == sd.band_count) {
        out.bound = 0.0;
        return out;
    }
    double shift_energy = 0.0;
    for (const auto& s : sd.shifts) shift_energy += (s * x).squaredNorm();
    const double cutoff = sd.frequencies[k].norm();
    out.bound = cutoff > 0 ? std::sqrt(shift_energy) / cutoff
                           : std::numeric_limits<double>::infinity();
    return out;
}

SpectralDecomposition scale_decomposition(const SpectralDecomposition& sd, double c) {
    if (!(c > 0) || !std::isfinite(c))
        throw InvalidSpec("scale factor must be positive and finite");
    SpectralDecomposition out = sd;
    for (auto& s : out.shifts) s *= c;
    out.source.lambda *= c;
    for (auto& g : out.frequencies) g *= c;
    out.shift_scale = sd.shift_scale * c;
    out.gamma_scale = sd.gamma_scale * c;
    out.max_gamma_norm = sd.max_gamma_norm * c;
    out.group_tol = sd.group_tol * c;
    return out;
}

NormalizedDecomposition normalize_shifts(const SpectralDecomposition& sd, double margin) {
    if (!(margin > 0) || margin >= 1)
        throw InvalidSpec("normalization margin must lie in (0, 1)");
    if (sd.max_gamma_norm <= 0) return {sd, 1.0};
    const double factor = (1.0 - margin) / sd.max_gamma_norm;
    return {scale_decomposition(sd, factor), factor};
}

} // namespace gsis

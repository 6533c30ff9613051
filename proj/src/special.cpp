#include "gsis/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"

namespace gsis {

namespace {

constexpr double kPi = 3.14159265358979323846;

double joint_residual(const std::vector<Matrix>& shifts, const JointEigen& je) {
    double worst = 0.0;
    for (size_t l = 0; l < shifts.size(); ++l) {
        Matrix rebuilt =
            je.u * je.lambda.row(static_cast<int>(l)).asDiagonal() * je.u.transpose();
        worst = std::max(worst, max_abs(shifts[l] - rebuilt));
    }
    return worst;
}

} // namespace

SpectralDecomposition complete_graph_decomposition(int n) {
    if (n < 2) throw InvalidSpec("a complete graph needs at least two vertices");
    ShiftSet ss = standard_shifts(complete_graph(n), {ShiftKind::sym_laplacian});

    // Householder reflection sending e_1 to the normalized constant vector
    // gives an exactly orthogonal eigenbasis with that vector first.
    Vector ones = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
    Vector w = Vector::Unit(n, 0) - ones;
    Matrix u = Matrix::Identity(n, n);
    const double wsq = w.squaredNorm();
    if (wsq > 0) u -= (2.0 / wsq) * (w * w.transpose());

    JointEigen je;
    je.u = u;
    je.lambda = Matrix::Constant(1, n, static_cast<double>(n) / (n - 1));
    je.lambda(0, 0) = 0.0;
    je.residual = joint_residual(ss.shifts, je);
    je.orth_residual = max_abs(u.transpose() * u - Matrix::Identity(n, n));
    return build_decomposition(ss, je);
}

CompleteGraphFramePredicates complete_graph_frame_predicates(int n, const Matrix& phi) {
    if (n < 2) throw InvalidSpec("a complete graph needs at least two vertices");
    if (phi.rows() != n)
        throw DimensionMismatch("generators must live on the graph's " + std::to_string(n) +
                                " vertices");
    if (phi.cols() == 0) throw InvalidSpec("at least one generator is required");

    const int r = static_cast<int>(phi.cols());
    Vector means(r);
    double col_scale = 0.0;
    for (int j = 0; j < r; ++j) {
        means(j) = phi.col(j).sum() / n;
        col_scale = std::max(col_scale, phi.col(j).norm());
    }

    Vector ones = Vector::Ones(n);
    Matrix q = orthonormal_range(phi, 1e-9, col_scale > 0 ? col_scale : 1.0);
    Vector escape = q.cols() > 0 ? Vector(ones - q * (q.transpose() * ones)) : ones;
    const bool ones_in_span = escape.norm() <= 1e-8 * std::sqrt(static_cast<double>(n));
    const bool all_means_zero = means.cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + col_scale);

    CompleteGraphFramePredicates out;
    out.dual_exists = ones_in_span || all_means_zero;

    Vector combo = phi * means;  // sum_j mean_j phi_j
    const double target = means.squaredNorm();
    out.operator_si =
        max_abs(combo - target * ones) <= 1e-10 * (1.0 + combo.cwiseAbs().maxCoeff() + target);
    return out;
}

CirculantSpec make_circulant_spec(int n, const std::vector<int>& q) {
    if (n < 2) throw InvalidSpec("a circulant graph needs at least two vertices");
    if (q.empty()) throw InvalidSpec("at least one connection offset is required");
    int g = n;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] < 1 || 2 * q[i] > n)
            throw InvalidSpec("offset " + std::to_string(q[i]) +
                              " is outside [1, N/2] for N = " + std::to_string(n));
        if (i > 0 && q[i] <= q[i - 1])
            throw InvalidSpec("offsets must be strictly increasing");
        g = std::gcd(g, q[i]);
    }
    if (g != 1) throw InvalidSpec("offsets and N must be coprime (gcd " + std::to_string(g) + ")");

    CirculantSpec spec;
    spec.n = n;
    spec.q = q;
    for (int qi : q) spec.thetas.push_back(2.0 * kPi * qi / n);
    return spec;
}

ShiftSet circulant_shifts(const CirculantSpec& spec) {
    const int n = spec.n;
    std::vector<Matrix> mats;
    for (int qi : spec.q) {
        Matrix s = Matrix::Identity(n, n);
        const double off = 2 * qi == n ? -1.0 : -0.5;
        for (int v = 0; v < n; ++v) {
            s(v, (v + qi) % n) += off;
            if (2 * qi != n) s(v, (v - qi + n) % n) += off;
        }
        mats.push_back(s);
    }
    return validate_shifts(mats, circulant_graph(n, spec.q));
}

CirculantDecomposition circulant_decomposition(const CirculantSpec& spec) {
    ShiftSet ss = circulant_shifts(spec);
    const int n = spec.n;
    const int d = spec.d();
    const bool even = n % 2 == 0;
    const int pairs = even ? n / 2 - 1 : (n - 1) / 2;

    Matrix u(n, n);
    Matrix lambda(d, n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double amp = std::sqrt(2.0 / n);

    auto fill_lambda = [&](int col, int k) {
        for (int l = 0; l < d; ++l) lambda(l, col) = 1.0 - std::cos(k * spec.thetas[l]);
    };

    for (int v = 0; v < n; ++v) u(v, 0) = inv_sqrt_n;
    fill_lambda(0, 0);
    for (int k = 1; k <= pairs; ++k) {
        const int cc = 2 * k - 1, sc = 2 * k;
        for (int v = 0; v < n; ++v) {
            const double angle = 2.0 * kPi * k * v / n;
            u(v, cc) = amp * std::cos(angle);
            u(v, sc) = amp * std::sin(angle);
        }
        fill_lambda(cc, k);
        fill_lambda(sc, k);
    }
    if (even) {
        for (int v = 0; v < n; ++v) u(v, n - 1) = (v % 2 == 0 ? 1.0 : -1.0) * inv_sqrt_n;
        fill_lambda(n - 1, n / 2);
    }

    CirculantDecomposition out;
    out.je.u = u;
    out.je.lambda = lambda;
    out.je.residual = joint_residual(ss.shifts, out.je);
    out.je.orth_residual = max_abs(u.transpose() * u - Matrix::Identity(n, n));
    out.sd = build_decomposition(ss, out.je);
    return out;
}

bool circulant_distinct_spectrum(const CirculantSpec& spec) {
    const int d = spec.d();
    if (d > 20) throw PartitionBlowup("partition enumeration over " + std::to_string(d) +
                                      " offsets is infeasible");
    if (d == 1) return true;

    const int n = spec.n;
    const bool even = n % 2 == 0;
    const unsigned full = (1u << d) - 1u;
    // unordered partitions: the first offset always sits in Q1
    for (unsigned mask = 1; mask < full; mask += 2) {
        int r1 = 0, r2 = 0;
        for (int i = 0; i < d; ++i) {
            if (mask & (1u << i))
                r1 = std::gcd(r1, spec.q[static_cast<size_t>(i)]);
            else
                r2 = std::gcd(r2, spec.q[static_cast<size_t>(i)]);
        }
        const int g1 = std::gcd(r1, n);
        const int g2 = std::gcd(r2, n);
        bool ok = g1 == 1 || g2 == 1;
        if (!ok && even) {
            ok = (n % 4 != 0 && ((g1 == 2 && g2 >= 3) || (g1 >= 3 && g2 == 2))) ||
                 (n % 12 != 0 && ((g1 == 3 && g2 == 4) || (g1 == 4 && g2 == 3)));
        }
        if (!ok) return false;
    }
    return true;
}

bool circulant_distinct_spectrum_direct(const CirculantSpec& spec, double tol) {
    const int rows = spec.n / 2 + 1;  // digital frequencies 0..floor(N/2)
    const int d = spec.d();
    std::vector<std::vector<double>> lam(static_cast<size_t>(rows));
    for (int k = 0; k < rows; ++k)
        for (int l = 0; l < d; ++l)
            lam[static_cast<size_t>(k)].push_back(1.0 - std::cos(k * spec.thetas[l]));
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < rows; ++j) {
            double gap = 0.0;
            for (int l = 0; l < d; ++l)
                gap = std::max(gap, std::abs(lam[static_cast<size_t>(i)][static_cast<size_t>(l)] -
                                             lam[static_cast<size_t>(j)][static_cast<size_t>(l)]));
            if (gap <= tol) return false;
        }
    return true;
}

} // namespace gsis

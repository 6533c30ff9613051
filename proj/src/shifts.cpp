#include "gsis/shifts.hpp"

#include <cmath>
#include <string>

#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"
#include "gsis/random.hpp"

namespace gsis {

ShiftSet validate_shifts(const std::vector<Matrix>& matrices,
                         const std::optional<Graph>& graph, const ToleranceConfig& tol) {
    if (matrices.empty()) throw EmptyShiftSet("a shift set needs at least one operator");

    ShiftSet out;
    out.tol = tol;
    out.graph = graph;
    out.n = static_cast<int>(matrices[0].rows());
    if (out.n < 2)
        throw DimensionMismatch("shift operators must act on at least 2 vertices, got " +
                                std::to_string(out.n));
    for (size_t l = 0; l < matrices.size(); ++l) {
        if (matrices[l].rows() != matrices[l].cols())
            throw DimensionMismatch("shift " + std::to_string(l + 1) + " is not square");
        if (matrices[l].rows() != out.n)
            throw DimensionMismatch("shift " + std::to_string(l + 1) + " is " +
                                    std::to_string(matrices[l].rows()) + "x" +
                                    std::to_string(matrices[l].cols()) + ", expected " +
                                    std::to_string(out.n));
    }
    if (graph && graph->vertex_count() != out.n)
        throw DimensionMismatch("graph has " + std::to_string(graph->vertex_count()) +
                                " vertices but shifts act on " + std::to_string(out.n));

    out.scale = 0.0;
    for (const auto& s : matrices) out.scale = std::max(out.scale, max_abs(s));

    const double tol_sym = tol.sym(out.scale);
    for (size_t l = 0; l < matrices.size(); ++l) {
        const double asym = max_abs(matrices[l] - matrices[l].transpose());
        if (asym > tol_sym)
            throw NotSymmetric("shift " + std::to_string(l + 1) + " has asymmetry " +
                               std::to_string(asym));
        out.shifts.push_back(0.5 * (matrices[l] + matrices[l].transpose()));
    }

    if (graph) {
        for (size_t l = 0; l < out.shifts.size(); ++l) {
            const Matrix& s = out.shifts[l];
            for (int i = 0; i < out.n; ++i)
                for (int j = 0; j < out.n; ++j)
                    if (i != j && std::abs(s(i, j)) > tol_sym && !graph->has_edge(i, j))
                        throw SupportViolation(
                            "shift " + std::to_string(l + 1) + " couples non-adjacent vertices (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
        }
    }

    const double tol_comm = tol.comm(out.scale) * (1.0 + out.scale);
    for (size_t a = 0; a < out.shifts.size(); ++a) {
        for (size_t b = a + 1; b < out.shifts.size(); ++b) {
            const double c = max_abs(out.shifts[a] * out.shifts[b] - out.shifts[b] * out.shifts[a]);
            if (c > tol_comm)
                throw NotCommuting("shifts " + std::to_string(a + 1) + " and " +
                                   std::to_string(b + 1) + " have commutator norm " +
                                   std::to_string(c));
        }
    }
    return out;
}

ShiftSet standard_shifts(const Graph& g, const std::vector<ShiftKind>& kinds,
                         const ToleranceConfig& tol) {
    if (kinds.empty()) throw EmptyShiftSet("no shift kinds requested");
    std::vector<Matrix> mats;
    for (ShiftKind k : kinds) {
        switch (k) {
            case ShiftKind::adjacency: mats.push_back(g.adjacency()); break;
            case ShiftKind::laplacian: mats.push_back(g.laplacian()); break;
            case ShiftKind::sym_laplacian: mats.push_back(g.sym_laplacian()); break;
        }
    }
    return validate_shifts(mats, g, tol);
}

namespace {

/// Recursively splits a block of joint eigenvector columns until every shift
/// is diagonal on it. `cols` indexes columns of v.
void refine_block(Matrix& v, const std::vector<Matrix>& shifts, const std::vector<int>& cols,
                  size_t l, const ToleranceConfig& tol) {
    if (l >= shifts.size() || cols.size() <= 1) return;
    const int k = static_cast<int>(cols.size());
    Matrix sub(v.rows(), k);
    for (int j = 0; j < k; ++j) sub.col(j) = v.col(cols[j]);

    Matrix block = sub.transpose() * shifts[l] * sub;
    block = 0.5 * (block + block.transpose());
    SymmetricEigen se = jacobi_eigensolve(block);
    sub = sub * se.vectors;
    for (int j = 0; j < k; ++j) v.col(cols[j]) = sub.col(j);

    const double split_tol = 1e-8 * (1.0 + max_abs(shifts[l]));
    std::vector<int> part{cols[0]};
    std::vector<std::vector<int>> parts;
    for (int j = 1; j < k; ++j) {
        if (se.values(j) - se.values(j - 1) > split_tol) {
            parts.push_back(part);
            part.clear();
        }
        part.push_back(cols[j]);
    }
    parts.push_back(part);
    for (const auto& p : parts) refine_block(v, shifts, p, l + 1, tol);
}

} // namespace

JointEigen joint_eigendecomposition(const ShiftSet& ss, std::uint64_t seed) {
    const int n = ss.n;
    const int d = ss.count();
    Rng rng(seed);
    const Vector a = rng.unit_sphere(d);

    Matrix t = Matrix::Zero(n, n);
    for (int l = 0; l < d; ++l) t += a(l) * ss.shifts[l];

    SymmetricEigen se = jacobi_eigensolve(t);
    Matrix v = se.vectors;

    const double mag = std::max(std::abs(se.values(0)), std::abs(se.values(n - 1)));
    const double cluster_tol = 1e-8 * (1.0 + mag);
    std::vector<std::vector<int>> clusters;
    std::vector<int> cur{0};
    for (int j = 1; j < n; ++j) {
        if (se.values(j) - se.values(j - 1) > cluster_tol) {
            clusters.push_back(cur);
            cur.clear();
        }
        cur.push_back(j);
    }
    clusters.push_back(cur);
    for (const auto& c : clusters) refine_block(v, ss.shifts, c, 0, ss.tol);

    JointEigen out;
    out.u = v;
    out.lambda = Matrix(d, n);
    for (int l = 0; l < d; ++l)
        for (int j = 0; j < n; ++j)
            out.lambda(l, j) = v.col(j).dot(ss.shifts[l] * v.col(j));

    out.orth_residual = max_abs(v.transpose() * v - Matrix::Identity(n, n));
    out.residual = 0.0;
    for (int l = 0; l < d; ++l) {
        Matrix recon = v * out.lambda.row(l).asDiagonal() * v.transpose();
        out.residual = std::max(out.residual, max_abs(ss.shifts[l] - recon));
    }
    const double tol_eig = ss.tol.eig(ss.scale);
    if (out.residual > tol_eig || out.orth_residual > ss.tol.orth_abs)
        throw ConvergenceFailure("joint eigendecomposition residual " +
                                 std::to_string(out.residual) + " (orthogonality " +
                                 std::to_string(out.orth_residual) + ") exceeds tolerance");
    return out;
}

} // namespace gsis

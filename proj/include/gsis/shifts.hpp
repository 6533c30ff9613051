#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gsis/graph.hpp"
#include "gsis/tolerance.hpp"

namespace gsis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A validated commuting family of symmetric graph shift operators.
/// Construction enforces: at least one shift, all square of the same
/// dimension N >= 2, each symmetric, pairwise commuting, and (when a graph is
/// attached) supported on the graph's edges plus the diagonal. Matrices are
/// symmetrized exactly after the symmetry check.
struct ShiftSet {
    std::vector<Matrix> shifts;
    std::optional<Graph> graph;
    ToleranceConfig tol;
    int n = 0;
    double scale = 0.0;  ///< max over shifts of the largest |entry|

    int count() const { return static_cast<int>(shifts.size()); }
};

ShiftSet validate_shifts(const std::vector<Matrix>& matrices,
                         const std::optional<Graph>& graph = std::nullopt,
                         const ToleranceConfig& tol = {});

enum class ShiftKind { adjacency, laplacian, sym_laplacian };

/// Builds the requested standard operators of a graph and validates them as
/// a shift set (so non-commuting combinations are rejected).
ShiftSet standard_shifts(const Graph& g, const std::vector<ShiftKind>& kinds,
                         const ToleranceConfig& tol = {});

/// A simultaneous orthogonal diagonalization of a shift set: the columns of
/// `u` are common eigenvectors, `lambda(l, k)` is the eigenvalue of shift l
/// on column k.
struct JointEigen {
    Matrix u;            ///< N x N orthogonal
    Matrix lambda;       ///< d x N
    double residual = 0;       ///< max_l max-entry of S_l - U diag(lambda_l) U^T
    double orth_residual = 0;  ///< max-entry of U^T U - I
};

/// Computes a joint eigendecomposition deterministically for a given seed:
/// diagonalizes a random unit-sphere combination T = sum_l a_l S_l with a
/// cyclic Jacobi solver, then recursively refines eigenvector clusters
/// against each shift in turn so that every individual S_l is diagonalized
/// even when T has accidental eigenvalue collisions.
JointEigen joint_eigendecomposition(const ShiftSet& shifts, std::uint64_t seed = 0);

} // namespace gsis

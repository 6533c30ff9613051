#pragma once

#include <Eigen/Dense>

namespace gsis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const Matrix& a);

struct SymmetricEigen {
    Matrix vectors;  ///< orthogonal, one eigenvector per column
    Vector values;   ///< ascending
    int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a symmetric matrix. Deterministic:
/// fixed sweep order, rotations chosen by the classic stable formulas,
/// eigenpairs sorted ascending. Throws ConvergenceFailure if the off-diagonal
/// mass has not collapsed after `max_sweeps` sweeps.
SymmetricEigen jacobi_eigensolve(const Matrix& a, int max_sweeps = 64);

/// Orthonormal basis of the column space, as the left singular vectors with
/// singular value > rank_rel * max(sigma_max, floor_scale). Returns an n x 0
/// matrix for rank 0. `floor_scale` anchors the cutoff to the natural scale
/// of the input data so that an all-noise matrix (for example the projection
/// of a basis onto an orthogonal band) reports rank 0 instead of promoting
/// rounding errors to directions.
Matrix orthonormal_range(const Matrix& a, double rank_rel = 1e-9, double floor_scale = 0.0);

int numerical_rank(const Matrix& a, double rank_rel = 1e-9);

/// Orthonormal basis of the right null space (kernel) of `a`.
Matrix nullspace(const Matrix& a, double rank_rel = 1e-9);

/// Moore-Penrose pseudo-inverse with singular values below
/// pinv_rel * sigma_max treated as zero.
Matrix pseudo_inverse(const Matrix& a, double pinv_rel = 1e-10);

/// Spectral-norm distance between the orthogonal projectors onto the column
/// spans of b1 and b2 (columns must be orthonormal). Equal subspaces give ~0;
/// any dimension mismatch gives at least 1.
double subspace_distance(const Matrix& b1, const Matrix& b2);

/// Orthonormal basis of span(b1) + span(b2).
Matrix subspace_sum(const Matrix& b1, const Matrix& b2, double rank_rel = 1e-9);

/// Orthonormal basis of span(b1) ∩ span(b2); inputs need orthonormal columns.
Matrix subspace_intersection(const Matrix& b1, const Matrix& b2, double rank_rel = 1e-9);

/// Orthonormal basis of the orthogonal complement of span(b) inside R^n.
Matrix orthogonal_complement(const Matrix& b, int n, double rank_rel = 1e-9);

} // namespace gsis

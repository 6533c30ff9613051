#pragma once

// Shared fixture builders for the test suite: the standard graph families,
// seeded random commuting shift pairs with engineered repeated eigenvalues,
// and small helpers used across test binaries.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gsis/graph.hpp"
#include "gsis/linalg.hpp"
#include "gsis/random.hpp"
#include "gsis/shifts.hpp"
#include "gsis/spectral.hpp"

namespace gsis::testing {

/// A commuting symmetric pair built as two polynomials of one random
/// symmetric matrix whose spectrum is collapsed onto a few levels, so the
/// pair has genuinely repeated joint eigenvalues. Each output is normalized
/// to unit spectral radius.
inline std::vector<Matrix> random_commuting_pair(int n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix g = rng.gaussian_matrix(n, n);
    Matrix sym = 0.5 * (g + g.transpose());
    SymmetricEigen se = jacobi_eigensolve(sym);

    // Collapse eigenvalues onto a small number of levels to force repeats.
    const int levels = 2 + static_cast<int>(rng.uniform() * std::max(1, n / 2));
    Vector lam(n);
    for (int i = 0; i < n; ++i) {
        const int level = static_cast<int>(rng.uniform() * levels) % levels;
        lam(i) = -1.0 + 2.0 * static_cast<double>(level) / std::max(1, levels - 1);
    }

    auto assemble = [&](const Vector& vals) {
        Matrix m = se.vectors * vals.asDiagonal() * se.vectors.transpose();
        return Matrix(0.5 * (m + m.transpose()));
    };

    // Two distinct polynomials of the same diagonalizable matrix.
    Vector lam1(n), lam2(n);
    const double c1 = 0.5 + rng.uniform(), c2 = 0.5 + rng.uniform();
    for (int i = 0; i < n; ++i) {
        lam1(i) = c1 * lam(i) + 0.3 * lam(i) * lam(i);
        lam2(i) = c2 * lam(i) * lam(i) - 0.7 * lam(i) + 0.1;
    }
    auto normalize = [](Vector v) {
        const double m = v.cwiseAbs().maxCoeff();
        return m > 0 ? Vector(v / m) : v;
    };
    return {assemble(normalize(lam1)), assemble(normalize(lam2))};
}

inline ShiftSet complete_shift_set(int n) {
    Graph g = complete_graph(n);
    return standard_shifts(g, {ShiftKind::sym_laplacian});
}

inline ShiftSet circulant_shift_set(int n, const std::vector<int>& offsets) {
    std::vector<Matrix> mats;
    for (int q : offsets) {
        Graph g = circulant_graph(n, {q});
        mats.push_back(g.sym_laplacian());
    }
    return validate_shifts(mats, circulant_graph(n, offsets));
}

} // namespace gsis::testing

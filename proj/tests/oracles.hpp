#pragma once

// Brute-force oracles for frame machinery: honest enumeration of shifted
// generator systems S^alpha phi_j over a truncated power lattice, computed by
// repeated matrix-vector multiplication with no spectral shortcuts. Used to
// validate the closed-form fiber-route formulas.

#include <cmath>
#include <limits>
#include <vector>

#include "gsis/fgsis.hpp"
#include "gsis/spectral.hpp"

namespace gsis::testing {

/// All shifted generators S^alpha phi_j with alpha in [0, k_max]^d, flattened
/// into columns.
inline Matrix shifted_system(const SpectralDecomposition& sd, const Matrix& phi, int k_max) {
    const int d = sd.d;
    const int r = static_cast<int>(phi.cols());
    std::vector<int> alpha(d, 0);
    long long count = 1;
    for (int l = 0; l < d; ++l) count *= (k_max + 1);
    Matrix out(sd.n, count * r);
    long long at = 0;
    while (true) {
        Matrix shifted = phi;
        for (int l = 0; l < d; ++l)
            for (int k = 0; k < alpha[l]; ++k) shifted = sd.shifts[l] * shifted;
        out.middleCols(at * r, r) = shifted;
        at += 1;
        int l = 0;
        while (l < d) {
            alpha[l] += 1;
            if (alpha[l] <= k_max) break;
            alpha[l] = 0;
            l += 1;
        }
        if (l == d) break;
    }
    return out;
}

/// Truncated frame sum sum_{alpha <= k_max, j} <x, S^alpha phi_j>^2.
inline double truncated_frame_sum(const SpectralDecomposition& sd, const Matrix& phi, int k_max,
                                  const Vector& x) {
    Matrix sys = shifted_system(sd, phi, k_max);
    double total = 0.0;
    for (int c = 0; c < sys.cols(); ++c) {
        const double ip = x.dot(sys.col(c));
        total += ip * ip;
    }
    return total;
}

/// Truncated frame operator sum_{alpha <= k_max} S^alpha Phi Phi^T S^alpha.
inline Matrix truncated_frame_operator(const SpectralDecomposition& sd, const Matrix& phi,
                                       int k_max) {
    Matrix sys = shifted_system(sd, phi, k_max);
    return sys * sys.transpose();
}

/// Upper bound on the tail of the infinite frame sum beyond the [0, k_max]^d
/// box: every excluded term satisfies <x, S^alpha phi_j>^2 <=
/// rho^{|alpha|_inf} * coefficient with rho = max_m max_l gamma_l(m)^2 < 1
/// and coefficient = (sum_{m,j} |<x_hat(m), phi_hat_j(m)>|)^2, which the
/// caller computes for its concrete signal. Lattice shells of sup-norm
/// radius t hold fewer than (t+1)^d points.
inline double frame_tail_bound(const SpectralDecomposition& sd, double coefficient, int k_max) {
    double rho = 0.0;
    for (int m = 0; m < sd.band_count; ++m)
        for (int l = 0; l < sd.d; ++l)
            rho = std::max(rho, sd.frequencies[m](l) * sd.frequencies[m](l));
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    // number of lattice points at sup-norm radius t grows polynomially; a
    // crude but safe envelope: sum_{t > k_max} (t+1)^d rho^t
    double tail = 0.0;
    double power = std::pow(rho, k_max + 1);
    for (int t = k_max + 1; t < k_max + 2000; ++t) {
        double shell = 1.0;
        for (int l = 0; l < sd.d; ++l) shell *= (t + 1);
        tail += shell * power;
        power *= rho;
        if (shell * power < 1e-18) break;
    }
    return coefficient * tail;
}

} // namespace gsis::testing

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gsis/shifts.hpp"

namespace gsis {

/// Basis-independent spectral decomposition of the identity induced by a
/// commuting shift set: joint eigenvalues are clustered into M distinct
/// frequency vectors gamma(m) in R^d, sorted by ascending ||gamma(m)||_2
/// (lexicographic tie-break), each with an orthogonal projection P_m onto its
/// joint eigenspace W_m. The struct is self-contained: it carries copies of
/// the shift matrices it was built from.
struct SpectralDecomposition {
    std::vector<Matrix> shifts;
    std::optional<Graph> graph;
    ToleranceConfig tol;
    JointEigen source;

    int n = 0;
    int d = 0;
    int band_count = 0;                ///< M
    std::vector<Vector> frequencies;   ///< gamma(m), each in R^d
    std::vector<Matrix> projections;   ///< P_m, N x N
    std::vector<Matrix> eigenspaces;   ///< orthonormal basis of W_m, N x mult
    std::vector<int> multiplicities;   ///< dim W_m
    std::vector<int> grouping;         ///< eigenvector column -> band index

    double shift_scale = 0;     ///< max |entry| over shifts
    double gamma_scale = 0;     ///< max |gamma_l(m)|
    double max_gamma_norm = 0;  ///< max_m ||gamma(m)||_2
    double group_tol = 0;       ///< absolute grouping tolerance actually used
};

/// Groups the joint eigenvalues of `je` and assembles the decomposition.
/// `tol_group` overrides the default absolute grouping tolerance
/// 1e-8 * (1 + max |lambda|). Throws AmbiguousClustering when two resulting
/// frequency clusters sit closer than 10x the grouping tolerance, since the
/// band structure would then depend on the tolerance choice.
SpectralDecomposition build_decomposition(const ShiftSet& shifts, const JointEigen& je,
                                          std::optional<double> tol_group = std::nullopt);

/// Convenience: validate nothing, just run the seeded joint solver and group.
SpectralDecomposition decompose(const ShiftSet& shifts, std::uint64_t seed = 0,
                                std::optional<double> tol_group = std::nullopt);

/// The graph Fourier transform of x: the list of band components
/// x_hat(m) = P_m x. Basis-free by construction.
struct GftSignal {
    const SpectralDecomposition* sd = nullptr;
    std::vector<Vector> components;

    double band_energy(int m) const { return components[m].squaredNorm(); }
    double total_energy() const;
};

GftSignal gft(const SpectralDecomposition& sd, const Vector& x);
Vector igft(const GftSignal& xh);

struct LowpassResult {
    Vector approximation;  ///< sum of the K lowest-band components
    double bound;          ///< a priori error bound from the shift energies
    double error;          ///< actual ||x - approximation||_2
};

/// Keeps bands 1..K (1-based K in [1, M]). The bound is
/// sqrt(sum_l ||S_l x||^2) / ||gamma(K+1)||_2 for K < M and exact 0 slack for
/// K = M. For a sorted decomposition only gamma(1) can vanish, so the bound's
/// denominator is zero only in the degenerate K+1 <= 1 case, which cannot
/// occur; a zero denominator would yield bound = +infinity rather than a
/// ZeroCutoffFrequency throw.
LowpassResult lowpass(const SpectralDecomposition& sd, const Vector& x, int k);

/// Uniform scaling of the whole structure by c > 0: shifts, eigenvalues and
/// frequencies are multiplied by c; projections and grouping are unchanged.
SpectralDecomposition scale_decomposition(const SpectralDecomposition& sd, double c);

struct NormalizedDecomposition {
    SpectralDecomposition sd;
    double factor;
};

/// Scales so that max_m ||gamma(m)||_2 = 1 - margin, which also bounds every
/// |gamma_l(m)| below 1. A decomposition with all-zero frequencies is
/// returned unchanged with factor 1.
NormalizedDecomposition normalize_shifts(const SpectralDecomposition& sd, double margin = 0.01);

} // namespace gsis

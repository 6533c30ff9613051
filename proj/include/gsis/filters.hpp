#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gsis/spectral.hpp"

namespace gsis {

/// Classification of a linear operator relative to a shift set: `polynomial`
/// operators are scalar on every band (a member of the algebra generated by
/// the shifts), `shift_invariant` operators commute with every shift but act
/// by an arbitrary block within some band, everything else is `general`.
enum class FilterTag { polynomial, shift_invariant, general };

struct Filter {
    Matrix h;
    FilterTag tag = FilterTag::general;
    /// Band multipliers, filled for polynomial filters (one scalar per band).
    std::vector<double> multipliers;
};

/// Classifies `h` against the decomposition. `tol` defaults to
/// 1e-8 * (1 + max |h entry|); the shift-invariance commutator test
/// additionally scales with the shift magnitude.
FilterTag classify_filter(const SpectralDecomposition& sd, const Matrix& h,
                          std::optional<double> tol = std::nullopt);

/// classify + package, filling multipliers when polynomial.
Filter make_filter(const SpectralDecomposition& sd, const Matrix& h,
                   std::optional<double> tol = std::nullopt);

/// Diagonal filter prescribed by one multiplier per band: sum_m f(m) P_m.
Filter spectral_multiplier(const SpectralDecomposition& sd, const std::vector<double>& f);

/// S_l^t with t >= 0 real, defined spectrally as gamma_l(m)^t on each band.
/// Requires every gamma_l(m) >= 0 (up to the grouping tolerance, with small
/// negatives clamped to zero); otherwise NegativeBaseFractionalPower.
Filter fractional_shift(const SpectralDecomposition& sd, int l, double t);

/// Spectral pseudo-inverse of S_l: inverts gamma_l(m) on bands where it is
/// nonzero (relative to the grouping tolerance), zero elsewhere.
Filter shift_pseudoinverse(const SpectralDecomposition& sd, int l);

/// Interpolating polynomials p_m with p_m(T) = P_m for the seeded mixing
/// combination T = sum_l a_l S_l. Nodes are mu(m) = <a, gamma(m)>; the seed
/// search retries until all nodes separate by more than 1e-10 and the
/// realized matrix residual is below 1e-7 (else SeparationFailure).
struct ProjectionPolynomials {
    Vector a;                                       ///< mixing direction, |a| = 1
    Matrix t;                                       ///< realized combination
    std::vector<double> nodes;                      ///< mu(m), pairwise distinct
    std::vector<std::vector<double>> coefficients;  ///< monomial coefficients of p_m
    double max_residual = 0;                        ///< max_m |p_m(T) - P_m|_max

    /// Numerically stable scalar evaluation (barycentric form).
    double eval(int m, double x) const;
    /// p_m(T) assembled in product form with large-distance-first ordering.
    Matrix eval_matrix(int m) const;

    std::vector<double> barycentric_weights;
};

ProjectionPolynomials projection_polynomials(const SpectralDecomposition& sd,
                                             std::uint64_t seed = 0);

/// Chooses a seeded unit direction whose induced nodes <a, gamma(m)> are
/// pairwise separated by more than `min_sep`; shared by the polynomial and
/// factorization machinery. Returns the direction and the nodes.
std::pair<Vector, std::vector<double>> separating_direction(const SpectralDecomposition& sd,
                                                            std::uint64_t seed,
                                                            double min_sep = 1e-10,
                                                            int attempts = 32);

/// Block decomposition H = sum_m P_m H P_m of a shift-invariant filter, with
/// the residual of that identity. Throws NotShiftInvariant for general
/// filters.
struct SiBlocks {
    std::vector<Matrix> blocks;  ///< P_m H P_m
    double residual = 0;
};

SiBlocks si_decompose(const SpectralDecomposition& sd, const Filter& h);

/// Random shift-invariant filter sum_m P_m R P_m with R Gaussian; used as a
/// generic probe of the commutant.
Filter random_si_filter(const SpectralDecomposition& sd, std::uint64_t seed);

/// For a shift-invariant but non-polynomial h, searches (16 seeded attempts)
/// for a shift-invariant witness G with |HG - GH| > 1e-8, proving h lies
/// outside the center of the commutant. Returns nothing when h is
/// polynomial (center members commute with the whole commutant). Throws
/// WitnessSearchExhausted if no witness is found for a non-polynomial h.
std::optional<Filter> center_witness(const SpectralDecomposition& sd, const Filter& h,
                                     std::uint64_t seed = 0);

/// Empirical basis-independence probe: compares U^T H U across random
/// re-mixings of each band's eigenbasis. Polynomial filters are invariant;
/// non-polynomial ones deviate.
struct BasisInvarianceReport {
    double max_deviation = 0;
    bool invariant = false;
};

BasisInvarianceReport basis_invariance_check(const SpectralDecomposition& sd, const Matrix& h,
                                             int trials = 8, std::uint64_t seed = 0);

} // namespace gsis

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gsis/filters.hpp"
#include "gsis/spectral.hpp"

namespace gsis {

/// A subspace of R^N held as an orthonormal basis (N x dim).
struct Subspace {
    Matrix basis;
    int dim() const { return static_cast<int>(basis.cols()); }
};

/// Orthonormalizes an arbitrary spanning set.
Subspace make_subspace(const Matrix& spanning, double rank_rel = 1e-9);

/// A shift-invariant subspace analyzed against a decomposition: the space
/// splits as the orthogonal direct sum of its band components
/// range_fn[m] = P_m V, each a subspace of W_m, and dim V = sum_m dim_fn[m].
/// `spectrum` lists the active bands (0-based).
struct Gsis {
    const SpectralDecomposition* sd = nullptr;
    Subspace space;
    std::vector<Subspace> range_fn;
    std::vector<int> dim_fn;
    std::vector<int> spectrum;

    int dim() const { return space.dim(); }
};

/// Verifies shift-invariance of `v` (S_l V ⊆ V for every shift, within
/// `tol`, default 1e-8 * (1 + shift magnitude)) and computes the band split.
/// Throws NotShiftInvariant otherwise.
Gsis analyze_space(const SpectralDecomposition& sd, const Subspace& v,
                   std::optional<double> tol = std::nullopt);

/// Assembles a Gsis directly from per-band orthonormal bases (each must lie
/// inside its W_m; checked). The space basis is their concatenation.
Gsis gsis_from_bands(const SpectralDecomposition& sd, const std::vector<Matrix>& band_bases);

Gsis full_space(const SpectralDecomposition& sd);

/// The bandlimited space ⊕_{m in omega} W_m for 0-based distinct band
/// indices; BandOutOfRange on bad indices. An empty omega yields the zero
/// space.
Gsis bandlimited_space(const SpectralDecomposition& sd, const std::vector<int>& omega);

/// Shift-invariant spaces over one decomposition form a lattice computed
/// band by band. Both arguments must reference the same decomposition
/// object (DecompositionMismatch otherwise).
Gsis space_sum(const Gsis& a, const Gsis& b);
Gsis space_intersection(const Gsis& a, const Gsis& b);
Gsis space_complement(const Gsis& a);

/// The orthogonal projector onto the space and onto its complement, both of
/// which are shift-invariant filters (polynomial exactly when the space is
/// bandlimited).
std::pair<Filter, Filter> si_projection_filter(const Gsis& u);

/// Returns the band list when the space is exactly bandlimited (every band
/// component is all of W_m or zero), nothing otherwise. Integer test, no
/// tolerance.
std::optional<std::vector<int>> bandlimited_test(const Gsis& u);

/// The largest subspace W ⊆ U with S_l W = W for every shift, computed as
/// the range of S_1 ... S_d applied to U.
Gsis maximal_invariant_subspace(const Gsis& u);

/// Whether S_l U = U holds for every shift: true iff no active band has a
/// vanishing frequency product (zero tested at the grouping tolerance).
bool shifted_equality_test(const Gsis& u);

/// A polynomial filter B whose range is exactly the bandlimited space on
/// `omega`, built from a separating direction as a normalized product of
/// root factors over the complement bands. Requires max ||gamma(m)||_2 < 1
/// (NotNormalized).
struct BeurlingResult {
    Vector a;                   ///< separating direction used
    std::vector<double> roots;  ///< annihilated nodes mu(m), m outside omega
    Filter b;
};

BeurlingResult beurling_factorization(const SpectralDecomposition& sd,
                                      const std::vector<int>& omega, std::uint64_t seed = 0);

/// Behaviour of a shift-invariant operator T between two spaces, decided
/// band by band via the compressed blocks T_m : P_m U1 -> P_m U2.
struct BlockVerdict {
    int band = 0;
    int dim_from = 0;
    int dim_to = 0;
    double sigma_min = 0;  ///< smallest singular value of the block (0 if empty)
    double sigma_max = 0;
    bool injective = false;
    bool surjective = false;
    bool isometric = false;
};

struct SiOperatorReport {
    std::vector<BlockVerdict> blocks;
    bool injective = false;
    bool surjective = false;
    bool isometric = false;
};

/// Requires t shift-invariant and T(U1) ⊆ U2 (RangeEscape otherwise).
SiOperatorReport si_operator_analysis(const Gsis& u1, const Gsis& u2, const Filter& t,
                                      std::optional<double> tol = std::nullopt);

} // namespace gsis

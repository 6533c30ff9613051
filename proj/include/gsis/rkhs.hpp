#pragma once

#include <optional>
#include <vector>

#include "gsis/spaces.hpp"

namespace gsis {

/// A reproducing-kernel structure on a shift-invariant space. The inner
/// product is either the standard one (`metric` empty) or given band by band
/// through SPD blocks G_m expressed in the coordinates of
/// space.range_fn[m], so that
///     <x, y>_H = sum_m (B_m^T x)^T G_m (B_m^T y).
/// The kernel is always a shift-invariant filter whose columns K(., v)
/// reproduce point evaluation on the space under that inner product.
struct Sigrkhs {
    Gsis space;
    Filter kernel;
    bool standard_ip = true;
    std::vector<Matrix> metric;  ///< one SPD block per band; empty for standard
    /// Set by bandlimited_kernel when the band list is empty: the space and
    /// kernel are zero, which is legal but rarely intended.
    bool empty_space_warning = false;
};

/// Standard-inner-product structure on `u`: the kernel is the shift-invariant
/// orthogonal projector onto the space, K = sum_m J_m J_m^T.
Sigrkhs kernel_from_gsis(const Gsis& u);

/// Structure on the bandlimited space over `omega` (0-based distinct bands):
/// K = sum_{m in omega} P_m, always a polynomial filter. An empty omega
/// yields the zero space and kernel with `empty_space_warning` set.
Sigrkhs bandlimited_kernel(const SpectralDecomposition& sd, const std::vector<int>& omega);

/// Equips `u` with the inner product given by per-band SPD blocks in
/// range_fn coordinates: `blocks` holds one matrix per band, blocks[m] of
/// size dim_fn[m] x dim_fn[m] (0x0 for inactive bands). The kernel solves
/// the reproducing equation block by block: K = sum_m B_m G_m^{-1} B_m^T.
/// Throws DimensionMismatch on shape errors and NotPositiveDefinite when a
/// block is asymmetric or has a nonpositive eigenvalue.
Sigrkhs inner_product_assemble(const Gsis& u, const std::vector<Matrix>& blocks);

/// <x, y>_H as the band sum above. Components outside the space do not
/// contribute.
double rkhs_inner_product(const Sigrkhs& h, const Vector& x, const Vector& y);

/// max over an orthonormal basis {b} of the space and all vertices v of
/// |<b, K(., v)>_H - b(v)|.
double reproducing_residual(const Sigrkhs& h);

/// Per-band verdict of the whitened operator block
/// L2^T (B2^T T B1) L1^{-T} with G = L L^T: the map is isometric on the band
/// exactly when all dim_from singular values equal one.
struct IsometryBlock {
    int band = 0;
    int dim_from = 0;
    int dim_to = 0;
    double sigma_min = 0;
    double sigma_max = 0;
    bool isometric = false;
};

struct IsometryReport {
    std::vector<IsometryBlock> blocks;
    bool isometric = false;
    double norm = 0;  ///< max over bands of the whitened block operator norm
};

/// Decides whether the shift-invariant filter `t` maps h1 isometrically into
/// h2, band by band in the respective inner products. Both structures must
/// reference the same decomposition (DecompositionMismatch). Throws
/// NotShiftInvariant for general filters and RangeEscape when the image of
/// h1's space leaves h2's space by more than the tolerance
/// (default 1e-8 * (1 + max |t|)).
IsometryReport isometry_check(const Sigrkhs& h1, const Sigrkhs& h2, const Filter& t,
                              std::optional<double> tol = std::nullopt);

} // namespace gsis

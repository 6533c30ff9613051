#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gsis/spaces.hpp"

namespace gsis {

/// A finite family of generator signals, one per column. Columns must be
/// nonzero (ZeroGenerator).
struct GeneratorFamily {
    Matrix phi;  ///< N x r
    int count() const { return static_cast<int>(phi.cols()); }
};

GeneratorFamily make_generators(const Matrix& phi);

/// Per-band data of a generator family: the fiber F(m) = P_m Phi (N x r),
/// its Gram matrix C(m) = F(m)^T F(m), the coefficient space
/// X(m) = range C(m) ⊆ R^r, and the fiber rank, which equals the dimension
/// of the band component of the generated space.
struct FiberSet {
    const SpectralDecomposition* sd = nullptr;
    int r = 0;
    std::vector<Matrix> fibers;           ///< F(m)
    std::vector<Matrix> gram;             ///< C(m), r x r
    std::vector<Matrix> coeff_space;      ///< orthonormal basis of X(m), r x rank
    std::vector<Vector> singular_values;  ///< singular values of F(m)
    std::vector<int> rank;
    double scale = 0;                     ///< largest generator column norm
};

FiberSet fiber_analysis(const SpectralDecomposition& sd, const GeneratorFamily& phi);

/// The smallest shift-invariant space containing the generators, realized as
/// the span of {T^k phi_j : 0 <= k < M} for a seeded separating combination
/// T. Matches the span of the fibers.
Gsis generated_space(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                     std::uint64_t seed = 0);

/// The minimal number of generators of a shift-invariant space is the
/// largest band dimension; an explicit minimal family stacks one orthonormal
/// band vector per slot. Returns length 0 and an empty family for the zero
/// space.
struct MinimalGenerators {
    int length = 0;
    Matrix phi;  ///< N x length (empty when length = 0)
};

MinimalGenerators minimal_generators(const Gsis& u);

/// Translation horizon for frame sums: the infinite lattice of shift powers
/// (requiring |gamma_l(m)| < 1) or a finite truncation with powers
/// 0..terms-1 per shift.
struct FrameHorizon {
    bool finite = false;
    int terms = 0;
};

/// The band coupling kernel of the shifted-generator system:
/// A(m, m') = prod_l 1/(1 - gamma_l(m) gamma_l(m')) for the infinite
/// horizon, or the partial geometric sums for a finite one. Symmetric
/// positive definite.
Matrix frame_coupling(const SpectralDecomposition& sd, FrameHorizon horizon = {});

/// Frame sum of the shifted generator system at x:
/// sum_phi sum_alpha <x, S^alpha phi>^2 = sum_phi c_phi^T A c_phi with
/// c_phi(m) = <x_hat(m), phi_hat(m)>.
double frame_sum(const FiberSet& fs, const Matrix& coupling, const Vector& x);

/// Frame bounds of the shifted system on the generated space:
/// lower = lambda_min(A) * min over active bands of sigma_min^+(F(m))^2,
/// upper = lambda_max(A) * max_m sigma_max(F(m))^2.
struct FrameBounds {
    double lower = 0;
    double upper = 0;
};

FrameBounds frame_bounds(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                         FrameHorizon horizon = {});

/// The frame operator S = sum_{m,m'} A(m,m') F(m) F(m')^T of the shifted
/// system, classified as a filter.
Filter frame_operator(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                      FrameHorizon horizon = {});

/// The frame operator is shift-invariant iff the fiber Grams annihilate each
/// other across bands: C(m) C(m') = 0 for all m != m'.
bool frame_operator_si_test(const FiberSet& fs, std::optional<double> tol = std::nullopt);

/// Bessel bound sqrt(sum_m sigma_max(F(m))^2 / prod_l (1 - gamma_l(m)^2))
/// for the synthesis operator of the shifted system.
double bessel_bound(const SpectralDecomposition& sd, const GeneratorFamily& phi);

/// Existence and construction of a shift-invariant dual frame whose shifted
/// system reproduces every signal of the generated space. Exists iff the
/// coefficient spaces X(m) of the active bands are linearly independent
/// (their sum in R^r is direct). The construction extends the stacked X(m)
/// bases to a basis of R^r, takes the biorthogonal system, and maps it back
/// through the fiber pseudo-inverses.
struct DualFrameResult {
    bool exists = false;
    Matrix dual;                        ///< N x r dual generators (empty if not exists)
    double reconstruction_residual = 0; ///< operator identity residual on the space
    double cross_band_max = 0;          ///< max |B(m) B(m')|, m != m'
    double idempotent_residual = 0;     ///< max |B(m)^2 - prod(m) B(m)|
    bool span_match = true;             ///< dual fibers span the same band components
};

DualFrameResult dual_frame(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                           std::uint64_t seed = 0);

/// Riesz property of the shifted system: holds iff every fiber has full rank
/// r. Bounds come from the separating-node Vandermonde matrix V and the
/// extreme fiber singular values:
/// lower = (sigma_min(V) min_m sigma_min(F(m)))^2,
/// upper = (sigma_max(V) max_m sigma_max(F(m)))^2.
struct RieszResult {
    bool is_riesz = false;
    double lower = 0;
    double upper = 0;
    Vector a;                   ///< separating direction behind V
    std::vector<double> nodes;
};

RieszResult riesz_check(const SpectralDecomposition& sd, const GeneratorFamily& phi,
                        std::uint64_t seed = 0);

} // namespace gsis

#pragma once

#include <cstdint>
#include <vector>

#include "gsis/spectral.hpp"

namespace gsis {

/// A vertex set Y and frequency-band set Omega together with
/// alpha(Y, Omega) = (sum_{m in Omega} sum_{v in Y} ||delta_v_hat(m)||^2)^{1/2},
/// the coupling quantity of the spatial-Fourier uncertainty machinery.
/// alpha < 1 makes (Y, Omega) a strong annihilating pair.
struct SpatialFourierPair {
    const SpectralDecomposition* sd = nullptr;
    std::vector<int> y_set;      ///< 0-based vertices, sorted
    std::vector<int> omega_set;  ///< 0-based bands, sorted
    double alpha = 0;
    int dim_omega = 0;  ///< sum of multiplicities over omega_set
};

/// Computes alpha via the projection diagonals: ||delta_v_hat(m)||^2 =
/// P_m(v, v). Throws EmptySet for an empty Y or Omega, InvalidSpec for
/// out-of-range or repeated vertices, BandOutOfRange for bad bands.
SpatialFourierPair alpha_pair(const SpectralDecomposition& sd, const std::vector<int>& y,
                              const std::vector<int>& omega);

/// Both sides of the annihilation inequality
///   ||x|| <= c1 * (energy of x_hat off Omega)^{1/2}
///          + c2 * (energy of x off Y)^{1/2}
/// with c1 = (1 - alpha)^{-1} and c2 = (dim Omega - alpha^2)^{1/2}/(1 - alpha).
/// Requires alpha < 1 (AlphaNotBelowOne).
struct AnnihilationBound {
    double c1 = 0;
    double c2 = 0;
    double lhs = 0;  ///< ||x||_2
    double rhs = 0;
    bool holds = false;
};

AnnihilationBound annihilation_bound(const SpatialFourierPair& pair, const Vector& x);

/// Spatial concentration defect: (sum_{v not in Y} |x(v)|^2)^{1/2} / ||x||.
/// Throws ZeroSignal on x = 0.
double concentration(const Vector& x, const std::vector<int>& y);

/// Fourier concentration defect: (sum_{m not in Omega} ||x_hat(m)||^2)^{1/2}
/// / ||x||. Throws ZeroSignal on x = 0.
double concentration_fourier(const SpectralDecomposition& sd, const Vector& x,
                             const std::vector<int>& omega);

/// The Donoho-Stark-type consequence: whenever some nonzero signal is
/// eps_t-concentrated on Y with transform eps_f-concentrated on Omega,
/// alpha(Y, Omega) >= 1 - eps_t - sqrt(dim Omega) * eps_f. Evaluates that
/// inequality (with a 1e-12 slack) for the given pair.
bool donoho_stark_check(const SpatialFourierPair& pair, double eps_t, double eps_f);

/// alpha evaluated on the supports of x and of its transform, plus the
/// support-size product; always alpha_supports >= 1 for nonzero x. Supports
/// use the relative floor |x(v)| > support_rel * ||x|| (band components
/// likewise). Throws ZeroSignal.
struct SupportUncertainty {
    SpatialFourierPair pair;   ///< supports of x and x_hat
    double alpha_supports = 0;
    long long product = 0;     ///< #supp(x) * dim(supp x_hat)
};

SupportUncertainty support_uncertainty(const SpectralDecomposition& sd, const Vector& x);

/// Coherence norms of the projection family:
///   p_inf   = max_{v,m} ||delta_v_hat(m)||            (always exact)
///   p_star  = sup (#Y * dim Omega)^{-1/2} over pairs with alpha >= 1
///   p_star2 = sup (#Y * #Omega)^{-1/2}  over the same pairs.
/// For each band subset the optimal Y is the shortest prefix of the
/// descending projection diagonals whose mass reaches one, so the search is
/// exact when all 2^M - 1 subsets fit the budget
/// (N <= exhaustive_limit and N * 2^M <= 2^24); otherwise seeded sampling
/// over band subsets yields certified lower bounds with lower_bound_only
/// set. The chain 1/sqrt(N) <= p_star <= p_star2 <= p_inf always holds.
struct CoherenceNorms {
    double p_star = 0;
    double p_star2 = 0;
    double p_inf = 0;
    bool lower_bound_only = false;
    long long subsets_examined = 0;
};

CoherenceNorms coherence_norms(const SpectralDecomposition& sd, int exhaustive_limit = 64,
                               std::uint64_t seed = 0);

} // namespace gsis

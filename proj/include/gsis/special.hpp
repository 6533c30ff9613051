#pragma once

#include <vector>

#include "gsis/spectral.hpp"

namespace gsis {

/// Closed-form decomposition of the complete graph K_N under its
/// symmetrically normalized Laplacian: two bands, gamma = {0, N/(N-1)},
/// P_1 = ones/N and P_2 = I - P_1.
SpectralDecomposition complete_graph_decomposition(int n);

/// Closed-form frame verdicts for a generator family on K_N (shifts scaled
/// to the normalized regime): a shift-invariant dual exists exactly when the
/// constant vector lies in span(Phi) or every generator has zero mean, and
/// the frame operator is shift-invariant exactly when
/// sum_j mean_j phi_j = (sum_j mean_j^2) * ones.
struct CompleteGraphFramePredicates {
    bool dual_exists = false;
    bool operator_si = false;
};

CompleteGraphFramePredicates complete_graph_frame_predicates(int n, const Matrix& phi);

/// A circulant graph C(N, Q) with one shift per connection offset q in Q.
struct CirculantSpec {
    int n = 0;
    std::vector<int> q;
    std::vector<double> thetas;  ///< 2 pi q_l / N

    int d() const { return static_cast<int>(q.size()); }
};

/// Validates 1 <= q_1 < ... < q_d <= N/2 and gcd(q_1, ..., q_d, N) = 1
/// (InvalidSpec otherwise).
CirculantSpec make_circulant_spec(int n, const std::vector<int>& q);

/// One shift per offset: the symmetrically normalized Laplacian of the
/// single-offset circulant subgraph (diagonal 1, value -1/2 at distance q,
/// or -1 when q = N/2). The attached graph is the full C(N, Q).
ShiftSet circulant_shifts(const CirculantSpec& spec);

/// Closed-form joint eigendecomposition: the constant column, cosine/sine
/// pairs at digital frequencies k = 1, 2, ..., and for even N the
/// alternating-sign column, with eigenvalues 1 - cos(k theta_l). The
/// decomposition regroups and re-sorts these columns into the global
/// ascending-frequency band order; the returned JointEigen keeps the
/// closed-form column layout.
struct CirculantDecomposition {
    SpectralDecomposition sd;
    JointEigen je;
};

CirculantDecomposition circulant_decomposition(const CirculantSpec& spec);

/// Partition-gcd criterion for whether the eigenvalue rows of the circulant
/// family are pairwise distinct (so every band has the generic dimension:
/// 1 at k = 0, 2 per cosine/sine pair, 1 at Nyquist for even N). Exact
/// integer arithmetic over all unordered partitions of Q; throws
/// PartitionBlowup for d > 20.
bool circulant_distinct_spectrum(const CirculantSpec& spec);

/// Brute-force cross-check of the same verdict by direct eigenvalue
/// enumeration: evaluates lambda_k = (1 - cos(k theta_l))_l for
/// k = 0..floor(N/2) and tests pairwise separation. Intended as an oracle
/// for the gcd criterion, not as the production path.
bool circulant_distinct_spectrum_direct(const CirculantSpec& spec, double tol = 1e-9);

} // namespace gsis

#include "gsis/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"
#include "gsis/random.hpp"

namespace gsis {

namespace {

std::vector<int> checked_set(const std::vector<int>& in, int limit, const char* what,
                             bool band) {
    std::set<int> seen;
    for (int v : in) {
        if (v < 0 || v >= limit) {
            const std::string msg = std::string(what) + " index " + std::to_string(v) +
                                    " is outside [0, " + std::to_string(limit - 1) + "]";
            if (band) throw BandOutOfRange(msg);
            throw InvalidSpec(msg);
        }
        if (!seen.insert(v).second)
            throw InvalidSpec(std::string(what) + " index " + std::to_string(v) + " repeats");
    }
    return std::vector<int>(seen.begin(), seen.end());
}

/// Per-vertex mass sum_{m in omega} P_m(v, v) of a band subset.
Vector omega_mass(const SpectralDecomposition& sd, const std::vector<int>& omega) {
    Vector w = Vector::Zero(sd.n);
    for (int m : omega) w += sd.projections[static_cast<size_t>(m)].diagonal();
    return w;
}

} // namespace

SpatialFourierPair alpha_pair(const SpectralDecomposition& sd, const std::vector<int>& y,
                              const std::vector<int>& omega) {
    if (y.empty() || omega.empty())
        throw EmptySet("both the vertex set and the band set must be nonempty");
    SpatialFourierPair pair;
    pair.sd = &sd;
    pair.y_set = checked_set(y, sd.n, "vertex", false);
    pair.omega_set = checked_set(omega, sd.band_count, "band", true);
    for (int m : pair.omega_set) pair.dim_omega += sd.multiplicities[static_cast<size_t>(m)];
    Vector w = omega_mass(sd, pair.omega_set);
    double acc = 0.0;
    for (int v : pair.y_set) acc += w(v);
    pair.alpha = std::sqrt(std::max(acc, 0.0));
    return pair;
}

AnnihilationBound annihilation_bound(const SpatialFourierPair& pair, const Vector& x) {
    if (pair.sd == nullptr) throw InvalidSpec("the pair carries no decomposition");
    const auto& sd = *pair.sd;
    if (x.size() != sd.n)
        throw DimensionMismatch("signal length does not match the decomposition");
    if (!(pair.alpha < 1.0))
        throw AlphaNotBelowOne("alpha = " + std::to_string(pair.alpha) +
                               " does not certify an annihilating pair");

    AnnihilationBound out;
    out.c1 = 1.0 / (1.0 - pair.alpha);
    out.c2 = std::sqrt(std::max(pair.dim_omega - pair.alpha * pair.alpha, 0.0)) /
             (1.0 - pair.alpha);

    GftSignal hat = gft(sd, x);
    std::set<int> in_omega(pair.omega_set.begin(), pair.omega_set.end());
    double fourier_tail = 0.0;
    for (int m = 0; m < sd.band_count; ++m)
        if (!in_omega.count(m)) fourier_tail += hat.band_energy(m);
    std::set<int> in_y(pair.y_set.begin(), pair.y_set.end());
    double spatial_tail = 0.0;
    for (int v = 0; v < sd.n; ++v)
        if (!in_y.count(v)) spatial_tail += x(v) * x(v);

    out.lhs = x.norm();
    out.rhs = out.c1 * std::sqrt(fourier_tail) + out.c2 * std::sqrt(spatial_tail);
    out.holds = out.lhs <= out.rhs + 1e-12 * (1.0 + out.rhs);
    return out;
}

double concentration(const Vector& x, const std::vector<int>& y) {
    const double norm = x.norm();
    if (norm == 0.0) throw ZeroSignal("concentration of the zero signal is undefined");
    std::vector<int> ys = checked_set(y, static_cast<int>(x.size()), "vertex", false);
    std::set<int> in_y(ys.begin(), ys.end());
    double tail = 0.0;
    for (int v = 0; v < x.size(); ++v)
        if (!in_y.count(static_cast<int>(v))) tail += x(v) * x(v);
    return std::sqrt(tail) / norm;
}

double concentration_fourier(const SpectralDecomposition& sd, const Vector& x,
                             const std::vector<int>& omega) {
    const double norm = x.norm();
    if (norm == 0.0) throw ZeroSignal("concentration of the zero signal is undefined");
    if (x.size() != sd.n)
        throw DimensionMismatch("signal length does not match the decomposition");
    std::vector<int> os = checked_set(omega, sd.band_count, "band", true);
    std::set<int> in_omega(os.begin(), os.end());
    GftSignal hat = gft(sd, x);
    double tail = 0.0;
    for (int m = 0; m < sd.band_count; ++m)
        if (!in_omega.count(m)) tail += hat.band_energy(m);
    return std::sqrt(tail) / norm;
}

bool donoho_stark_check(const SpatialFourierPair& pair, double eps_t, double eps_f) {
    return pair.alpha >= 1.0 - eps_t - std::sqrt(static_cast<double>(pair.dim_omega)) * eps_f -
                             1e-12;
}

SupportUncertainty support_uncertainty(const SpectralDecomposition& sd, const Vector& x) {
    if (x.size() != sd.n)
        throw DimensionMismatch("signal length does not match the decomposition");
    const double norm = x.norm();
    if (norm == 0.0) throw ZeroSignal("the zero signal has no support");
    const double floor = sd.tol.support_rel * norm;

    std::vector<int> supp;
    for (int v = 0; v < sd.n; ++v)
        if (std::abs(x(v)) > floor) supp.push_back(v);
    GftSignal hat = gft(sd, x);
    std::vector<int> supp_hat;
    for (int m = 0; m < sd.band_count; ++m)
        if (hat.components[static_cast<size_t>(m)].norm() > floor) supp_hat.push_back(m);
    if (supp.empty() || supp_hat.empty())
        throw ZeroSignal("the signal is numerically zero at the support threshold");

    SupportUncertainty out;
    out.pair = alpha_pair(sd, supp, supp_hat);
    out.alpha_supports = out.pair.alpha;
    out.product = static_cast<long long>(supp.size()) * out.pair.dim_omega;
    return out;
}

CoherenceNorms coherence_norms(const SpectralDecomposition& sd, int exhaustive_limit,
                               std::uint64_t seed) {
    CoherenceNorms out;
    for (int m = 0; m < sd.band_count; ++m)
        out.p_inf = std::max(
            out.p_inf, std::sqrt(sd.projections[static_cast<size_t>(m)].diagonal().maxCoeff()));

    // For a fixed band subset, alpha^2 is additive over vertices, so the
    // best Y of a given size takes the largest per-vertex masses; the
    // supremum over Y is therefore attained at the shortest descending
    // prefix whose mass reaches one.
    auto consider = [&](const std::vector<int>& omega) {
        int dim = 0;
        for (int m : omega) dim += sd.multiplicities[static_cast<size_t>(m)];
        Vector w = omega_mass(sd, omega);
        std::sort(w.data(), w.data() + w.size(), std::greater<double>());
        double acc = 0.0;
        for (int j = 1; j <= sd.n; ++j) {
            acc += w(j - 1);
            if (acc >= 1.0 - 1e-9) {
                out.p_star = std::max(out.p_star, 1.0 / std::sqrt(double(j) * dim));
                out.p_star2 = std::max(
                    out.p_star2, 1.0 / std::sqrt(double(j) * static_cast<double>(omega.size())));
                break;
            }
        }
        ++out.subsets_examined;
    };

    const int m_count = sd.band_count;
    const bool exhaustive = sd.n <= exhaustive_limit && m_count < 24 &&
                            static_cast<double>(sd.n) * std::ldexp(1.0, m_count) <=
                                static_cast<double>(1 << 24);
    if (exhaustive) {
        for (std::uint32_t mask = 1; mask < (1u << m_count); ++mask) {
            std::vector<int> omega;
            for (int m = 0; m < m_count; ++m)
                if (mask & (1u << m)) omega.push_back(m);
            consider(omega);
        }
    } else {
        out.lower_bound_only = true;
        // singletons and the full set first, then seeded random subsets
        for (int m = 0; m < m_count; ++m) consider({m});
        std::vector<int> all(static_cast<size_t>(m_count));
        std::iota(all.begin(), all.end(), 0);
        consider(all);
        Rng rng(seed);
        for (int trial = 0; trial < 2000; ++trial) {
            std::vector<int> omega;
            for (int m = 0; m < m_count; ++m)
                if (rng.uniform() < 0.5) omega.push_back(m);
            if (!omega.empty()) consider(omega);
        }
    }
    return out;
}

} // namespace gsis

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"
#include "gsis/special.hpp"
#include "gsis/uncertainty.hpp"

using namespace gsis;

namespace {

std::vector<int> upto(int k) {
    std::vector<int> v(static_cast<size_t>(k));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

} // namespace

TEST_CASE("alpha closed forms on complete and circulant graphs") {
    SUBCASE("complete graph") {
        for (int n : {4, 10}) {
            SpectralDecomposition sd = complete_graph_decomposition(n);
            for (int ny = 1; ny <= n; ++ny) {
                SpatialFourierPair p0 = alpha_pair(sd, upto(ny), {0});
                CHECK(p0.alpha == doctest::Approx(std::sqrt(double(ny) / n)).epsilon(1e-12));
                SpatialFourierPair p1 = alpha_pair(sd, upto(ny), {1});
                CHECK(p1.alpha ==
                      doctest::Approx(std::sqrt((1.0 - 1.0 / n) * ny)).epsilon(1e-12));
                SpatialFourierPair both = alpha_pair(sd, upto(ny), {0, 1});
                CHECK(both.alpha == doctest::Approx(std::sqrt(double(ny))).epsilon(1e-12));
            }
        }
    }
    SUBCASE("circulant graph") {
        CirculantDecomposition cd = circulant_decomposition(make_circulant_spec(8, {1}));
        const auto& sd = cd.sd;
        SpatialFourierPair p = alpha_pair(sd, {2, 5}, {0, 1});
        const int dim = sd.multiplicities[0] + sd.multiplicities[1];
        CHECK(p.dim_omega == dim);
        CHECK(p.alpha == doctest::Approx(std::sqrt(dim * 2.0 / 8.0)).epsilon(1e-12));
    }
    SUBCASE("one vertex against all frequencies has unit alpha") {
        auto pair = gsis::testing::random_commuting_pair(9, 1000);
        SpectralDecomposition sd = decompose(validate_shifts(pair));
        SpatialFourierPair p = alpha_pair(sd, {4}, upto(sd.band_count));
        CHECK(p.alpha == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("input validation") {
        SpectralDecomposition sd = complete_graph_decomposition(4);
        CHECK_THROWS_AS(alpha_pair(sd, {}, {0}), EmptySet);
        CHECK_THROWS_AS(alpha_pair(sd, {0}, {}), EmptySet);
        CHECK_THROWS_AS(alpha_pair(sd, {4}, {0}), InvalidSpec);
        CHECK_THROWS_AS(alpha_pair(sd, {0, 0}, {0}), InvalidSpec);
        CHECK_THROWS_AS(alpha_pair(sd, {0}, {2}), BandOutOfRange);
    }
}

TEST_CASE("delta signals have unit total transform energy") {
    auto pair = gsis::testing::random_commuting_pair(11, 1001);
    SpectralDecomposition sd = decompose(validate_shifts(pair));
    for (int v = 0; v < sd.n; ++v) {
        GftSignal hat = gft(sd, Vector::Unit(sd.n, v));
        CHECK(hat.total_energy() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("alpha grows with either set") {
    auto pair = gsis::testing::random_commuting_pair(10, 1002);
    SpectralDecomposition sd = decompose(validate_shifts(pair));
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int ny = 1 + static_cast<int>(rng.uniform() * (sd.n - 1));
        const int no = 1 + static_cast<int>(rng.uniform() * (sd.band_count - 1));
        SpatialFourierPair base = alpha_pair(sd, upto(ny), upto(no));
        if (ny < sd.n)
            CHECK(alpha_pair(sd, upto(ny + 1), upto(no)).alpha >= base.alpha - 1e-14);
        if (no < sd.band_count)
            CHECK(alpha_pair(sd, upto(ny), upto(no + 1)).alpha >= base.alpha - 1e-14);
        CHECK(base.alpha <= std::sqrt(double(std::min(ny, base.dim_omega))) + 1e-12);
    }
}

TEST_CASE("the annihilation inequality holds for random signals") {
    SUBCASE("complete graph single-vertex pair") {
        SpectralDecomposition sd = complete_graph_decomposition(4);
        SpatialFourierPair p = alpha_pair(sd, {1}, {1});
        CHECK(p.alpha == doctest::Approx(std::sqrt(3.0 / 4.0)).epsilon(1e-12));
        Rng rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            AnnihilationBound b = annihilation_bound(p, rng.gaussian_vector(4));
            CHECK(b.holds);
        }
        AnnihilationBound zero = annihilation_bound(p, Vector::Zero(4));
        CHECK(zero.holds);
        CHECK(zero.lhs == 0.0);
    }
    SUBCASE("random fixtures, many signals") {
        for (std::uint64_t seed : {0ull, 1ull}) {
            auto mats = gsis::testing::random_commuting_pair(12, 1010 + seed);
            SpectralDecomposition sd = decompose(validate_shifts(mats));
            Rng rng(seed);
            int found = 0;
            for (int attempt = 0; attempt < 50 && found < 3; ++attempt) {
                const int ny = 1 + static_cast<int>(rng.uniform() * 3);
                const int no = 1 + static_cast<int>(rng.uniform() * 2);
                std::vector<int> y, omega;
                for (int v = 0; v < sd.n && static_cast<int>(y.size()) < ny; ++v)
                    if (rng.uniform() < 0.3) y.push_back(v);
                for (int m = 0; m < sd.band_count && static_cast<int>(omega.size()) < no; ++m)
                    if (rng.uniform() < 0.3) omega.push_back(m);
                if (y.empty() || omega.empty()) continue;
                SpatialFourierPair p = alpha_pair(sd, y, omega);
                if (!(p.alpha < 1.0)) continue;
                ++found;
                for (int trial = 0; trial < 1000; ++trial)
                    CHECK(annihilation_bound(p, rng.gaussian_vector(sd.n)).holds);
            }
            CHECK(found >= 1);
        }
    }
    SUBCASE("alpha at or above one is rejected") {
        SpectralDecomposition sd = complete_graph_decomposition(4);
        SpatialFourierPair p = alpha_pair(sd, upto(4), {0, 1});
        CHECK_THROWS_AS(annihilation_bound(p, Vector::Ones(4)), AlphaNotBelowOne);
    }
}

TEST_CASE("an annihilating pair admits no doubly supported signal") {
    SpectralDecomposition sd = complete_graph_decomposition(4);
    // alpha({1}, {1}) < 1: signals supported on vertex 1 with transform in
    // band 1 form the intersection of span{e_1} and W_1
    Matrix e1 = Matrix::Zero(4, 1);
    e1(1, 0) = 1.0;
    Matrix inter = subspace_intersection(e1, sd.eigenspaces[1]);
    CHECK(inter.cols() == 0);
}

TEST_CASE("concentration defects and the Donoho-Stark inequality") {
    SUBCASE("exact supports have zero defect") {
        SpectralDecomposition sd = complete_graph_decomposition(5);
        Vector x = Vector::Zero(5);
        x(0) = 2.0;
        x(3) = -1.0;
        CHECK(concentration(x, {0, 3}) == 0.0);
        CHECK(concentration(x, {0}) > 0.0);
        CHECK(concentration_fourier(sd, Vector::Ones(5), {0}) == doctest::Approx(0.0));
        CHECK_THROWS_AS(concentration(Vector::Zero(5), {0}), ZeroSignal);
        CHECK_THROWS_AS(concentration_fourier(sd, Vector::Zero(5), {0}), ZeroSignal);
    }
    SUBCASE("the constant signal makes the corollary tight on complete graphs") {
        for (int n : {4, 10}) {
            SpectralDecomposition sd = complete_graph_decomposition(n);
            Vector ones = Vector::Ones(n);
            const double eps_t = concentration(ones, upto(n));
            const double eps_f = concentration_fourier(sd, ones, {0});
            CHECK(eps_t == 0.0);
            CHECK(eps_f == doctest::Approx(0.0));
            SpatialFourierPair p = alpha_pair(sd, upto(n), {0});
            CHECK(p.alpha == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(donoho_stark_check(p, eps_t, eps_f));
        }
    }
    SUBCASE("realized concentrations always satisfy the inequality") {
        auto mats = gsis::testing::random_commuting_pair(10, 1020);
        SpectralDecomposition sd = decompose(validate_shifts(mats));
        Rng rng(7);
        for (int trial = 0; trial < 100; ++trial) {
            Vector x = rng.gaussian_vector(sd.n);
            const int ny = 1 + static_cast<int>(rng.uniform() * sd.n) % sd.n;
            const int no = 1 + static_cast<int>(rng.uniform() * sd.band_count) % sd.band_count;
            SpatialFourierPair p = alpha_pair(sd, upto(ny), upto(no));
            const double eps_t = concentration(x, upto(ny));
            const double eps_f = concentration_fourier(sd, x, upto(no));
            CHECK(donoho_stark_check(p, eps_t, eps_f));
        }
    }
}

TEST_CASE("support uncertainty reaches its witnesses exactly") {
    SUBCASE("delta signals on circulants") {
        for (auto spec : {make_circulant_spec(8, {1}), make_circulant_spec(9, {1, 3})}) {
            CirculantDecomposition cd = circulant_decomposition(spec);
            for (int v = 0; v < spec.n; v += 3) {
                SupportUncertainty su = support_uncertainty(cd.sd, Vector::Unit(spec.n, v));
                CHECK(su.alpha_supports == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(su.product == spec.n);  // 1 vertex x all bands
            }
        }
    }
    SUBCASE("the constant signal on complete graphs") {
        for (int n : {2, 4, 10}) {
            SpectralDecomposition sd = complete_graph_decomposition(n);
            SupportUncertainty su = support_uncertainty(sd, Vector::Ones(n));
            CHECK(su.alpha_supports == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(su.product == n);  // n vertices x the 1-dim constant band
        }
    }
    SUBCASE("generic signals sit above the bound") {
        auto mats = gsis::testing::random_commuting_pair(12, 1030);
        SpectralDecomposition sd = decompose(validate_shifts(mats));
        Rng rng(9);
        for (int trial = 0; trial < 50; ++trial) {
            SupportUncertainty su = support_uncertainty(sd, rng.gaussian_vector(sd.n));
            CHECK(su.alpha_supports >= 1.0 - 1e-10);
        }
        CHECK_THROWS_AS(support_uncertainty(sd, Vector::Zero(sd.n)), ZeroSignal);
    }
}

TEST_CASE("coherence norms reproduce the closed forms") {
    SUBCASE("complete graphs") {
        for (int n : {2, 4, 10}) {
            SpectralDecomposition sd = complete_graph_decomposition(n);
            CoherenceNorms c = coherence_norms(sd);
            CHECK(!c.lower_bound_only);
            CHECK(c.p_star == doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-12));
            CHECK(c.p_star2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
            CHECK(c.p_inf == doctest::Approx(std::sqrt(1.0 - 1.0 / n)).epsilon(1e-12));
        }
    }
    SUBCASE("single-band decomposition") {
        ShiftSet ss = validate_shifts({Matrix::Identity(6, 6)});
        SpectralDecomposition sd = decompose(ss);
        REQUIRE(sd.band_count == 1);
        CoherenceNorms c = coherence_norms(sd);
        CHECK(c.p_star2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.p_inf == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.p_star == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
    }
    SUBCASE("circulant with integral vertex-to-band ratio") {
        CirculantDecomposition cd = circulant_decomposition(make_circulant_spec(8, {1, 2}));
        int max_dim = 0;
        for (int m : cd.sd.multiplicities) max_dim = std::max(max_dim, m);
        REQUIRE(8 % max_dim == 0);
        CoherenceNorms c = coherence_norms(cd.sd);
        const double expected = std::sqrt(double(max_dim) / 8.0);
        CHECK(c.p_star == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));
        CHECK(c.p_star2 == doctest::Approx(expected).epsilon(1e-12));
        CHECK(c.p_inf == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("the chain holds on random fixtures") {
        for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
            auto mats = gsis::testing::random_commuting_pair(10, 1040 + seed);
            SpectralDecomposition sd = decompose(validate_shifts(mats));
            CoherenceNorms c = coherence_norms(sd);
            CHECK(1.0 / std::sqrt(double(sd.n)) <= c.p_star + 1e-12);
            CHECK(c.p_star <= c.p_star2 + 1e-12);
            CHECK(c.p_star2 <= c.p_inf + 1e-9);
        }
    }
    SUBCASE("sampling mode reports certified lower bounds") {
        auto mats = gsis::testing::random_commuting_pair(10, 1050);
        SpectralDecomposition sd = decompose(validate_shifts(mats));
        CoherenceNorms exact = coherence_norms(sd);
        CoherenceNorms sampled = coherence_norms(sd, /*exhaustive_limit=*/0);
        CHECK(sampled.lower_bound_only);
        CHECK(sampled.p_star <= exact.p_star + 1e-12);
        CHECK(sampled.p_star2 <= exact.p_star2 + 1e-12);
        CHECK(sampled.p_inf == doctest::Approx(exact.p_inf));
        CHECK(sampled.subsets_examined > 0);
    }
}

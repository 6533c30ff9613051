#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gsis/errors.hpp"
#include "gsis/filters.hpp"
#include "gsis/linalg.hpp"

using namespace gsis;

namespace {

SpectralDecomposition random_sd(int n, std::uint64_t seed) {
    auto pair = gsis::testing::random_commuting_pair(n, seed);
    ShiftSet ss = validate_shifts(pair);
    return decompose(ss);
}

} // namespace

TEST_CASE("classification separates polynomial, shift-invariant and general") {
    SpectralDecomposition sd = random_sd(12, 410);

    // A polynomial of the shifts.
    Matrix p = 0.7 * sd.shifts[0] + sd.shifts[1] * sd.shifts[1] -
               0.2 * Matrix::Identity(sd.n, sd.n);
    CHECK(classify_filter(sd, p) == FilterTag::polynomial);

    // Multiplier with distinct values per band: also polynomial.
    std::vector<double> f(sd.band_count);
    for (int m = 0; m < sd.band_count; ++m) f[m] = std::sin(m + 1.0);
    Filter mult = spectral_multiplier(sd, f);
    CHECK(mult.tag == FilterTag::polynomial);
    CHECK(classify_filter(sd, mult.h) == FilterTag::polynomial);
    Filter packaged = make_filter(sd, mult.h);
    REQUIRE(packaged.multipliers.size() == f.size());
    for (int m = 0; m < sd.band_count; ++m)
        CHECK(packaged.multipliers[m] == doctest::Approx(f[m]).epsilon(1e-10));

    // A non-scalar block inside a multi-dimensional band: SI, not polynomial.
    int wide = -1;
    for (int m = 0; m < sd.band_count; ++m)
        if (sd.multiplicities[m] >= 2) wide = m;
    REQUIRE(wide >= 0);
    Rng rng(3);
    Matrix r = rng.gaussian_matrix(sd.n, sd.n);
    Matrix block = sd.projections[wide] * r * sd.projections[wide];
    Matrix si = block + block.transpose() + sd.projections[0];
    CHECK(classify_filter(sd, si) == FilterTag::shift_invariant);

    // Generic dense matrix: general.
    Matrix g = rng.gaussian_matrix(sd.n, sd.n);
    CHECK(classify_filter(sd, g) == FilterTag::general);

    CHECK_THROWS_AS(classify_filter(sd, Matrix::Zero(3, 3)), DimensionMismatch);
}

TEST_CASE("every shift-invariant filter splits into band blocks") {
    SpectralDecomposition sd = random_sd(10, 411);
    Filter g = random_si_filter(sd, 7);
    CHECK(g.tag != FilterTag::general);
    SiBlocks blocks = si_decompose(sd, g);
    CHECK(blocks.residual < 1e-10 * (1 + max_abs(g.h)));
    // blocks commute with every shift
    for (const auto& b : blocks.blocks)
        for (const auto& s : sd.shifts) CHECK(max_abs(s * b - b * s) < 1e-9);

    Filter general;
    general.h = Matrix::Random(10, 10);
    general.tag = FilterTag::general;
    CHECK_THROWS_AS(si_decompose(sd, general), NotShiftInvariant);
}

TEST_CASE("projection polynomials hit every projection") {
    for (std::uint64_t seed : {0ull, 5ull}) {
        SpectralDecomposition sd = random_sd(11, 500 + seed);
        ProjectionPolynomials pp = projection_polynomials(sd, seed);
        CHECK(pp.max_residual <= 1e-7);
        REQUIRE(static_cast<int>(pp.nodes.size()) == sd.band_count);
        for (int m = 0; m < sd.band_count; ++m) {
            // scalar evaluation matches the Kronecker property on the nodes
            for (int j = 0; j < sd.band_count; ++j)
                CHECK(pp.eval(m, pp.nodes[j]) == doctest::Approx(m == j ? 1.0 : 0.0).epsilon(1e-8));
            // monomial coefficients evaluate consistently with the barycentric form
            double x = 0.37;
            double horner = 0.0;
            for (auto it = pp.coefficients[m].rbegin(); it != pp.coefficients[m].rend(); ++it)
                horner = horner * x + *it;
            CHECK(horner == doctest::Approx(pp.eval(m, x)).epsilon(1e-7));
        }
    }
}

TEST_CASE("projection polynomials on the complete graph") {
    ShiftSet ss = gsis::testing::complete_shift_set(6);
    SpectralDecomposition sd = decompose(ss);
    ProjectionPolynomials pp = projection_polynomials(sd, 0);
    REQUIRE(pp.nodes.size() == 2);
    CHECK(pp.max_residual < 1e-12);
    // with two nodes the polynomials are affine: p_1(t) = (t - mu2)/(mu1 - mu2)
    CHECK(pp.coefficients[0].size() == 2);
}

TEST_CASE("fractional shift powers interpolate integer powers") {
    ShiftSet ss = gsis::testing::circulant_shift_set(9, {1, 3});
    SpectralDecomposition sd = decompose(ss);  // normalized laplacian bands are >= 0
    Filter half = fractional_shift(sd, 0, 0.5);
    CHECK(max_abs(half.h * half.h - sd.shifts[0]) < 1e-9);
    Filter one = fractional_shift(sd, 0, 1.0);
    CHECK(max_abs(one.h - sd.shifts[0]) < 1e-10);
    Filter zero = fractional_shift(sd, 0, 0.0);
    CHECK(max_abs(zero.h - Matrix::Identity(9, 9)) < 1e-10);

    // adjacency-type shifts have negative bands: rejected
    Graph k4 = complete_graph(4);
    ShiftSet adj = standard_shifts(k4, {ShiftKind::adjacency});
    SpectralDecomposition sd2 = decompose(adj);
    CHECK_THROWS_AS(fractional_shift(sd2, 0, 0.5), NegativeBaseFractionalPower);
    CHECK_THROWS_AS(fractional_shift(sd, 2, 0.5), BandOutOfRange);
}

TEST_CASE("shift pseudo-inverse inverts off the kernel") {
    ShiftSet ss = gsis::testing::circulant_shift_set(8, {1, 2});
    SpectralDecomposition sd = decompose(ss);
    Filter pinv = shift_pseudoinverse(sd, 0);
    // S S^+ is the projection off the zero band of S_0
    Matrix proj = sd.shifts[0] * pinv.h;
    for (int m = 0; m < sd.band_count; ++m) {
        const double expected = std::abs(sd.frequencies[m](0)) > sd.group_tol ? 1.0 : 0.0;
        CHECK(max_abs(proj * sd.projections[m] - expected * sd.projections[m]) < 1e-9);
    }
}

TEST_CASE("center witness separates non-polynomial SI filters") {
    SpectralDecomposition sd = random_sd(12, 430);
    int wide = -1;
    for (int m = 0; m < sd.band_count; ++m)
        if (sd.multiplicities[m] >= 2) wide = m;
    REQUIRE(wide >= 0);

    // Non-polynomial SI filter: a rank-one asymmetric-block inside one band.
    Rng rng(9);
    Matrix r = rng.gaussian_matrix(sd.n, sd.n);
    r = 0.5 * (r + r.transpose());
    Matrix h = sd.projections[wide] * r * sd.projections[wide];
    Filter f = make_filter(sd, h);
    REQUIRE(f.tag == FilterTag::shift_invariant);

    auto witness = center_witness(sd, f, 1);
    REQUIRE(witness.has_value());
    CHECK(max_abs(f.h * witness->h - witness->h * f.h) > 1e-8);
    CHECK(witness->tag != FilterTag::general);

    // Polynomial filters commute with the whole commutant: no witness.
    Filter poly = spectral_multiplier(sd, std::vector<double>(sd.band_count, 2.0));
    CHECK(!center_witness(sd, poly, 1).has_value());

    Filter general;
    general.h = rng.gaussian_matrix(sd.n, sd.n);
    general.tag = FilterTag::general;
    CHECK_THROWS_AS(center_witness(sd, general, 0), NotShiftInvariant);
}

TEST_CASE("U^T H U is basis-independent exactly for polynomial filters") {
    SpectralDecomposition sd = random_sd(12, 440);
    int wide = -1;
    for (int m = 0; m < sd.band_count; ++m)
        if (sd.multiplicities[m] >= 2) wide = m;
    REQUIRE(wide >= 0);

    Matrix poly = sd.shifts[0] * sd.shifts[0] - 0.3 * sd.shifts[1];
    BasisInvarianceReport inv = basis_invariance_check(sd, poly, 6, 11);
    CHECK(inv.invariant);
    CHECK(inv.max_deviation < 1e-10);

    Rng rng(4);
    Matrix r = rng.gaussian_matrix(sd.n, sd.n);
    Matrix h = sd.projections[wide] * (r + r.transpose()) * sd.projections[wide];
    BasisInvarianceReport si = basis_invariance_check(sd, h, 6, 11);
    CHECK(!si.invariant);

    Matrix g = rng.gaussian_matrix(sd.n, sd.n);
    BasisInvarianceReport gen = basis_invariance_check(sd, g, 6, 11);
    CHECK(!gen.invariant);
}

TEST_CASE("spectral multiplier argument validation") {
    SpectralDecomposition sd = random_sd(8, 450);
    CHECK_THROWS_AS(spectral_multiplier(sd, std::vector<double>(sd.band_count + 1, 1.0)),
                    DimensionMismatch);
    std::vector<double> bad(sd.band_count, 1.0);
    bad[0] = std::nan("");
    CHECK_THROWS_AS(spectral_multiplier(sd, bad), InvalidSpec);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "gsis/errors.hpp"
#include "gsis/fgsis.hpp"
#include "gsis/linalg.hpp"
#include "gsis/special.hpp"

using namespace gsis;

TEST_CASE("complete-graph decomposition closed form") {
    SUBCASE("two vertices") {
        SpectralDecomposition sd = complete_graph_decomposition(2);
        REQUIRE(sd.band_count == 2);
        CHECK(sd.frequencies[0](0) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(sd.frequencies[1](0) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(max_abs(sd.projections[0] - Matrix::Ones(2, 2) / 2.0) < 1e-14);
    }
    SUBCASE("four vertices") {
        SpectralDecomposition sd = complete_graph_decomposition(4);
        REQUIRE(sd.band_count == 2);
        CHECK(sd.frequencies[1](0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
        CHECK(sd.multiplicities[0] == 1);
        CHECK(sd.multiplicities[1] == 3);
        CHECK(max_abs(sd.projections[0] - Matrix::Ones(4, 4) / 4.0) < 1e-12);
        CHECK(max_abs(sd.projections[1] - (Matrix::Identity(4, 4) - Matrix::Ones(4, 4) / 4.0)) <
              1e-12);
    }
    SUBCASE("agrees with the generic eigensolver route") {
        for (int n : {2, 4, 10}) {
            SpectralDecomposition closed = complete_graph_decomposition(n);
            SpectralDecomposition generic =
                decompose(standard_shifts(complete_graph(n), {ShiftKind::sym_laplacian}));
            REQUIRE(closed.band_count == generic.band_count);
            for (int m = 0; m < closed.band_count; ++m) {
                CHECK(max_abs(closed.projections[m] - generic.projections[m]) < 1e-10);
                CHECK(std::abs(closed.frequencies[m](0) - generic.frequencies[m](0)) < 1e-10);
            }
        }
    }
    SUBCASE("rejects degenerate orders") {
        CHECK_THROWS_AS(complete_graph_decomposition(1), InvalidSpec);
    }
}

TEST_CASE("complete-graph frame predicates match the generic machinery") {
    const int n = 6;
    Rng rng(900);

    SUBCASE("the constant generator admits a dual") {
        CompleteGraphFramePredicates p = complete_graph_frame_predicates(n, Matrix::Ones(n, 1));
        CHECK(p.dual_exists);
        CHECK(p.operator_si);
    }
    SUBCASE("zero-mean generators admit a dual") {
        Matrix phi = rng.gaussian_matrix(n, 2);
        for (int j = 0; j < 2; ++j) phi.col(j).array() -= phi.col(j).mean();
        CompleteGraphFramePredicates p = complete_graph_frame_predicates(n, phi);
        CHECK(p.dual_exists);
        CHECK(p.operator_si);  // both sides of the identity vanish
    }
    SUBCASE("generic generators with nonzero means admit no dual") {
        Matrix phi = rng.gaussian_matrix(n, 2);
        phi.col(0).array() += 1.0;
        phi.col(1).array() += 2.0;
        CompleteGraphFramePredicates p = complete_graph_frame_predicates(n, phi);
        CHECK(!p.dual_exists);
        CHECK(!p.operator_si);
    }
    SUBCASE("cross-check against the fiber route on normalized shifts") {
        SpectralDecomposition sd = complete_graph_decomposition(n);
        SpectralDecomposition norm = scale_decomposition(sd, 0.7 * (n - 1) / n);
        for (int trial = 0; trial < 20; ++trial) {
            Matrix phi = rng.gaussian_matrix(n, 2);
            if (trial % 3 == 0)
                for (int j = 0; j < 2; ++j) phi.col(j).array() -= phi.col(j).mean();
            if (trial % 3 == 1) phi.col(0) = Vector::Ones(n);
            CompleteGraphFramePredicates p = complete_graph_frame_predicates(n, phi);
            GeneratorFamily fam = make_generators(phi);
            CHECK(p.dual_exists == dual_frame(norm, fam).exists);
            CHECK(p.operator_si == frame_operator_si_test(fiber_analysis(norm, fam)));
        }
    }
}

TEST_CASE("circulant specification validation") {
    CHECK_NOTHROW(make_circulant_spec(5, {1}));
    CHECK_NOTHROW(make_circulant_spec(8, {1, 2}));
    CHECK_NOTHROW(make_circulant_spec(6, {2, 3}));
    CHECK_THROWS_AS(make_circulant_spec(1, {1}), InvalidSpec);
    CHECK_THROWS_AS(make_circulant_spec(8, {}), InvalidSpec);
    CHECK_THROWS_AS(make_circulant_spec(8, {0}), InvalidSpec);
    CHECK_THROWS_AS(make_circulant_spec(8, {5}), InvalidSpec);      // above N/2
    CHECK_THROWS_AS(make_circulant_spec(8, {2, 1}), InvalidSpec);   // unsorted
    CHECK_THROWS_AS(make_circulant_spec(8, {1, 1}), InvalidSpec);   // repeated
    CHECK_THROWS_AS(make_circulant_spec(6, {2}), InvalidSpec);      // gcd 2
    CHECK_THROWS_AS(make_circulant_spec(12, {2, 4, 6}), InvalidSpec);
}

TEST_CASE("circulant shifts are the per-offset normalized Laplacians") {
    CirculantSpec spec = make_circulant_spec(6, {1, 3});
    ShiftSet ss = circulant_shifts(spec);
    REQUIRE(ss.count() == 2);
    // offset 1: two neighbours, off-diagonal -1/2
    CHECK(ss.shifts[0](0, 0) == doctest::Approx(1.0));
    CHECK(ss.shifts[0](0, 1) == doctest::Approx(-0.5));
    CHECK(ss.shifts[0](0, 5) == doctest::Approx(-0.5));
    CHECK(ss.shifts[0](0, 3) == doctest::Approx(0.0));
    // offset 3 = N/2: single neighbour, off-diagonal -1
    CHECK(ss.shifts[1](0, 3) == doctest::Approx(-1.0));
    CHECK(ss.shifts[1](0, 1) == doctest::Approx(0.0));
}

TEST_CASE("circulant closed-form decomposition") {
    SUBCASE("C(5,{1}) has three bands with the cosine eigenvalues") {
        CirculantDecomposition cd = circulant_decomposition(make_circulant_spec(5, {1}));
        REQUIRE(cd.sd.band_count == 3);
        CHECK(cd.sd.frequencies[0](0) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(cd.sd.frequencies[1](0) ==
              doctest::Approx(1.0 - std::cos(2.0 * M_PI / 5.0)).epsilon(1e-13));
        CHECK(cd.sd.frequencies[2](0) ==
              doctest::Approx(1.0 - std::cos(4.0 * M_PI / 5.0)).epsilon(1e-13));
        CHECK(cd.sd.multiplicities == std::vector<int>{1, 2, 2});
        CHECK(cd.je.residual < 1e-13);
        CHECK(cd.je.orth_residual < 1e-13);
    }
    SUBCASE("C(4,{1}) exercises the even branch with the Nyquist column") {
        CirculantDecomposition cd = circulant_decomposition(make_circulant_spec(4, {1}));
        REQUIRE(cd.sd.band_count == 3);
        CHECK(cd.sd.frequencies[2](0) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(cd.sd.multiplicities == std::vector<int>{1, 2, 1});
        // the alternating column is grouped alone into the Nyquist band
        CHECK(cd.sd.grouping[3] == 2);
    }
    SUBCASE("cosine/sine pairs land in one band and the order is re-sorted") {
        CirculantDecomposition cd = circulant_decomposition(make_circulant_spec(9, {1, 3}));
        for (int k = 1; k <= 4; ++k)
            CHECK(cd.sd.grouping[2 * k - 1] == cd.sd.grouping[2 * k]);
        for (int m = 0; m + 1 < cd.sd.band_count; ++m)
            CHECK(cd.sd.frequencies[m].norm() <= cd.sd.frequencies[m + 1].norm() + 1e-12);
    }
    SUBCASE("projections agree with the generic eigensolver route") {
        for (auto spec : {make_circulant_spec(5, {1}), make_circulant_spec(8, {1, 2}),
                          make_circulant_spec(12, {3, 4})}) {
            CirculantDecomposition cd = circulant_decomposition(spec);
            SpectralDecomposition generic = decompose(circulant_shifts(spec));
            REQUIRE(cd.sd.band_count == generic.band_count);
            for (int m = 0; m < cd.sd.band_count; ++m) {
                CHECK(max_abs(cd.sd.projections[m] - generic.projections[m]) < 1e-8);
                CHECK((cd.sd.frequencies[m] - generic.frequencies[m]).norm() < 1e-8);
            }
        }
    }
}

TEST_CASE("delta signals spread evenly across circulant bands") {
    for (auto spec : {make_circulant_spec(5, {1}), make_circulant_spec(8, {1, 2})}) {
        CirculantDecomposition cd = circulant_decomposition(spec);
        for (int v = 0; v < spec.n; ++v) {
            GftSignal hat = gft(cd.sd, Vector::Unit(spec.n, v));
            for (int m = 0; m < cd.sd.band_count; ++m)
                CHECK(hat.band_energy(m) ==
                      doctest::Approx(static_cast<double>(cd.sd.multiplicities[m]) / spec.n)
                          .epsilon(1e-12));
        }
    }
}

TEST_CASE("partition-gcd criterion on worked examples") {
    CHECK(circulant_distinct_spectrum(make_circulant_spec(5, {1})));
    CHECK(circulant_distinct_spectrum(make_circulant_spec(9, {1, 3})));
    CHECK(circulant_distinct_spectrum(make_circulant_spec(8, {2, 3})));
    CHECK(circulant_distinct_spectrum(make_circulant_spec(10, {2, 5})));
    CHECK(!circulant_distinct_spectrum(make_circulant_spec(12, {3, 4})));
    CHECK(!circulant_distinct_spectrum(make_circulant_spec(12, {2, 3})));

    // the failing case has an explicit eigenvalue collision: rows 1 and 5
    CirculantDecomposition cd = circulant_decomposition(make_circulant_spec(12, {3, 4}));
    int expected_generic = 12 / 2 + 1;
    CHECK(cd.sd.band_count < expected_generic);
}

TEST_CASE("partition-gcd criterion equals direct enumeration up to order 30") {
    int checked = 0;
    for (int n = 2; n <= 30; ++n) {
        for (int q1 = 1; 2 * q1 <= n; ++q1) {
            if (std::gcd(q1, n) == 1) {
                CirculantSpec s = make_circulant_spec(n, {q1});
                CHECK(circulant_distinct_spectrum(s) == circulant_distinct_spectrum_direct(s));
                ++checked;
            }
            for (int q2 = q1 + 1; 2 * q2 <= n; ++q2) {
                if (std::gcd(std::gcd(q1, q2), n) != 1) continue;
                CirculantSpec s = make_circulant_spec(n, {q1, q2});
                CHECK(circulant_distinct_spectrum(s) == circulant_distinct_spectrum_direct(s));
                ++checked;
            }
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("partition enumeration refuses oversized generator sets") {
    std::vector<int> q(21);
    std::iota(q.begin(), q.end(), 1);
    CirculantSpec spec = make_circulant_spec(43, q);
    CHECK_THROWS_AS(circulant_distinct_spectrum(spec), PartitionBlowup);
}

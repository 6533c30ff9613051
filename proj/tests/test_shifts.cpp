#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gsis/errors.hpp"
#include "gsis/linalg.hpp"
#include "gsis/shifts.hpp"

using namespace gsis;

TEST_CASE("validate_shifts enforces structure") {
    CHECK_THROWS_AS(validate_shifts({}), EmptyShiftSet);

    Matrix rect = Matrix::Zero(2, 3);
    CHECK_THROWS_AS(validate_shifts({rect}), DimensionMismatch);

    Matrix a = Matrix::Zero(3, 3), b = Matrix::Zero(2, 2);
    CHECK_THROWS_AS(validate_shifts({a, b}), DimensionMismatch);

    Matrix asym = Matrix::Zero(3, 3);
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(validate_shifts({asym}), NotSymmetric);

    Matrix one = Matrix::Zero(1, 1);
    CHECK_THROWS_AS(validate_shifts({one}), DimensionMismatch);

    // Non-commuting pair.
    Matrix s1 = Matrix::Zero(3, 3), s2 = Matrix::Zero(3, 3);
    s1(0, 1) = s1(1, 0) = 1.0;
    s2(1, 2) = s2(2, 1) = 1.0;
    CHECK_THROWS_AS(validate_shifts({s1, s2}), NotCommuting);
}

TEST_CASE("tiny asymmetry is forgiven and symmetrized") {
    Matrix s = Matrix::Zero(3, 3);
    s(0, 1) = 1.0;
    s(1, 0) = 1.0 + 1e-13;
    ShiftSet ss = validate_shifts({s});
    CHECK(max_abs(ss.shifts[0] - ss.shifts[0].transpose()) == 0.0);
}

TEST_CASE("graph support is enforced") {
    Graph path(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    Matrix s = Matrix::Zero(3, 3);
    s(0, 2) = s(2, 0) = 1.0;  // couples the non-adjacent pair
    CHECK_THROWS_AS(validate_shifts({s}, path), SupportViolation);

    Matrix ok = path.laplacian();
    ShiftSet ss = validate_shifts({ok}, path);
    CHECK(ss.count() == 1);
    CHECK(ss.n == 3);
}

TEST_CASE("standard shifts of a complete graph commute") {
    Graph k4 = complete_graph(4);
    ShiftSet ss = standard_shifts(k4, {ShiftKind::adjacency, ShiftKind::sym_laplacian});
    CHECK(ss.count() == 2);
    CHECK(max_abs(ss.shifts[0] * ss.shifts[1] - ss.shifts[1] * ss.shifts[0]) < 1e-12);
}

TEST_CASE("joint eigendecomposition diagonalizes every shift") {
    for (std::uint64_t seed : {0ull, 1ull, 2ull, 3ull}) {
        auto pair = testing::random_commuting_pair(10, 100 + seed);
        ShiftSet ss = validate_shifts(pair);
        JointEigen je = joint_eigendecomposition(ss, seed);
        CHECK(je.orth_residual < 1e-12);
        for (int l = 0; l < 2; ++l) {
            Matrix recon = je.u * je.lambda.row(l).asDiagonal() * je.u.transpose();
            CHECK(max_abs(ss.shifts[l] - recon) < 1e-10);
            // off-diagonal mass of U^T S U directly
            Matrix diag = je.u.transpose() * ss.shifts[l] * je.u;
            diag.diagonal().setZero();
            CHECK(max_abs(diag) < 1e-10);
        }
    }
}

TEST_CASE("joint eigendecomposition is deterministic per seed") {
    auto pair = testing::random_commuting_pair(8, 55);
    ShiftSet ss = validate_shifts(pair);
    JointEigen a = joint_eigendecomposition(ss, 17);
    JointEigen b = joint_eigendecomposition(ss, 17);
    CHECK(max_abs(a.u - b.u) == 0.0);
    CHECK(max_abs(a.lambda - b.lambda) == 0.0);
}

TEST_CASE("accidental collisions of the mixing combination are refined apart") {
    // S1 has a repeated eigenvalue block that S2 splits; whatever the random
    // combination does, the refinement must end with both diagonal.
    Matrix s1 = Matrix::Zero(4, 4), s2 = Matrix::Zero(4, 4);
    s1.diagonal() << 1, 1, 2, 2;
    s2.diagonal() << 1, -1, 3, 3;
    Rng rng(5);
    Matrix q = rng.orthogonal(4);
    Matrix a = q * s1 * q.transpose();
    Matrix b = q * s2 * q.transpose();
    ShiftSet ss = validate_shifts({0.5 * (a + a.transpose()), 0.5 * (b + b.transpose())});
    JointEigen je = joint_eigendecomposition(ss, 0);
    for (int l = 0; l < 2; ++l) {
        Matrix diag = je.u.transpose() * ss.shifts[l] * je.u;
        diag.diagonal().setZero();
        CHECK(max_abs(diag) < 1e-10);
    }
}

TEST_CASE("circulant shift sets commute and validate") {
    ShiftSet ss = testing::circulant_shift_set(8, {1, 2});
    CHECK(ss.count() == 2);
    JointEigen je = joint_eigendecomposition(ss, 0);
    CHECK(je.residual < 1e-10);
}

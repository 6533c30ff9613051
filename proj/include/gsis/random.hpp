#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace gsis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Deterministic random source. All stochastic choices in the library flow
/// through an explicitly seeded Rng so that every run with the same seed is
/// reproducible bit for bit on a given platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return uniform_(gen_); }
    double gaussian() { return normal_(gen_); }

    Vector gaussian_vector(int n);
    Matrix gaussian_matrix(int rows, int cols);

    /// Uniform on the unit sphere in R^d, sign-canonicalized so the first
    /// component of largest-index-independent nonzero sign is positive:
    /// the first entry exceeding 1e-12 in magnitude is made positive. In
    /// particular d = 1 always yields +1.
    Vector unit_sphere(int d);

    /// Haar-ish random orthogonal matrix: QR of a Gaussian matrix with the
    /// sign of R's diagonal fixed so the factorization is unique.
    Matrix orthogonal(int n);

    std::uint64_t next_seed() { return gen_(); }

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace gsis

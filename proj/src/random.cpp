#include "gsis/random.hpp"

#include <cmath>

#include "gsis/errors.hpp"

namespace gsis {

Vector Rng::gaussian_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = gaussian();
    return v;
}

Matrix Rng::gaussian_matrix(int rows, int cols) {
    Matrix a(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a(i, j) = gaussian();
    return a;
}

Vector Rng::unit_sphere(int d) {
    if (d <= 0) throw InvalidSpec("unit_sphere needs a positive dimension");
    Vector v;
    double norm = 0.0;
    do {
        v = gaussian_vector(d);
        norm = v.norm();
    } while (norm < 1e-12);
    v /= norm;
    for (int i = 0; i < d; ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0) v = -v;
            break;
        }
    }
    return v;
}

Matrix Rng::orthogonal(int n) {
    Matrix a = gaussian_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
}

} // namespace gsis

// helpers.hpp -- shared fixtures for the test suites: random channels,
// product bases, separable mixtures, maximally correlated coefficients,
// Bell-tetrahedron sampling.
#pragma once

#include "noq/channels.hpp"
#include "noq/linalg.hpp"
#include "noq/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace noq::testing {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Flat Dirichlet sample (uniform on the simplex).
inline std::vector<double> dirichlet(int k, Rng& rng) {
    std::vector<double> p(k);
    double sum = 0.0;
    for (auto& x : p) {
        x = -std::log(1.0 - rng.uniform());
        sum += x;
    }
    for (auto& x : p) x /= sum;
    return p;
}

// Random channel with `kraus_count` Kraus operators, drawn from a Haar
// isometry C^2 -> C^2 (x) C^k.
inline QubitChannel random_channel(int kraus_count, Rng& rng) {
    const Matrix u = haar_unitary(2 * kraus_count, rng);
    std::vector<Matrix> kraus(kraus_count, Matrix::Zero(2, 2));
    for (int i = 0; i < kraus_count; ++i)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                kraus[i](r, c) = u(r * kraus_count + i, c);
    return make_channel(kraus);
}

// Haar-random pure product state on the cut.
inline Matrix random_product_pure(const Bipartition& cut, Rng& rng) {
    const Vector a = haar_unitary(cut.dim_a, rng).col(0);
    const Vector b = haar_unitary(cut.dim_b, rng).col(0);
    Vector v(cut.dim());
    for (Eigen::Index i = 0; i < cut.dim_a; ++i)
        for (Eigen::Index j = 0; j < cut.dim_b; ++j)
            v(i * cut.dim_b + j) = a(i) * b(j);
    return v * v.adjoint();
}

// Convex mixture of at most max_terms random product pure states.
inline DensityMatrix random_separable(const Bipartition& cut, int max_terms,
                                      Rng& rng) {
    const int k = 1 + int(rng.uniform() * max_terms);
    const auto w = dirichlet(k, rng);
    Matrix rho = Matrix::Zero(cut.dim(), cut.dim());
    for (int t = 0; t < k; ++t) rho += w[t] * random_product_pure(cut, rng);
    return make_density(rho, cut);
}

// Random maximally correlated coefficients: tau a random rank-n density
// matrix, bases Haar unitaries.
inline MCSCoefficients random_mcs(Eigen::Index n, Eigen::Index d_a,
                                  Eigen::Index d_b, Rng& rng) {
    const Matrix g = ginibre(n, n, rng);
    Matrix tau = g * g.adjoint();
    tau /= tau.trace().real();
    return make_mcs(tau, haar_unitary(d_a, rng), haar_unitary(d_b, rng));
}

// Uniform Bell-diagonal probability vector (interior of the tetrahedron).
inline std::array<double, 4> random_bell_probs(Rng& rng) {
    const auto p = dirichlet(4, rng);
    return {p[0], p[1], p[2], p[3]};
}

// Correlation-matrix diagonal (r11, r22, r33) of the Bell mixture p; the
// y-axis entry carries the sign of the transposed Pauli.
inline std::array<double, 3> bell_r_of(const std::array<double, 4>& p) {
    return {p[0] + p[1] - p[2] - p[3], -p[0] + p[1] - p[2] + p[3],
            p[0] - p[1] - p[2] + p[3]};
}

inline double middle_abs(double x, double y, double z) {
    std::array<double, 3> a{std::abs(x), std::abs(y), std::abs(z)};
    std::sort(a.begin(), a.end());
    return a[1];
}

}  // namespace noq::testing

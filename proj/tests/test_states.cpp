#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "noq/states.hpp"

#include <cmath>

using namespace noq;
using namespace noq::testing;

TEST_CASE("make_density validates hermiticity, trace, positivity") {
    const Bipartition cut{2, 2};
    CHECK_NOTHROW(make_density(0.25 * identity(4), cut));

    Matrix bad_trace = 0.5 * identity(4);
    CHECK_THROWS_AS(make_density(bad_trace, cut), ValidationError);

    Matrix bad_herm = 0.25 * identity(4);
    bad_herm(0, 1) = Complex(0.1, 0.1);
    CHECK_THROWS_AS(make_density(bad_herm, cut), ValidationError);

    Matrix bad_psd = Matrix::Zero(4, 4);
    bad_psd(0, 0) = 1.5;
    bad_psd(1, 1) = -0.5;
    CHECK_THROWS_AS(make_density(bad_psd, cut), ValidationError);

    CHECK_THROWS_AS(make_density(0.25 * identity(4), Bipartition{2, 3}),
                    std::invalid_argument);
}

TEST_CASE("bell-diagonal: probabilities land on the stated Bell projectors") {
    // p = (1,0,0,0) is the maximally entangled reference state
    const DensityMatrix phi = bell_diagonal({1, 0, 0, 0});
    CHECK(max_abs_diff(phi.rho, max_entangled(2).rho) < 1e-14);

    // each generator (s_k (x) I)|phi+> is an eigenvector with eigenvalue p_k
    const std::array<double, 4> p{0.4, 0.3, 0.2, 0.1};
    const DensityMatrix rho = bell_diagonal(p);
    const Vector phiv = [] {
        Vector v = Vector::Zero(4);
        v(0) = v(3) = 1.0 / std::sqrt(2.0);
        return v;
    }();
    for (int k = 0; k < 4; ++k) {
        const Vector bk = kron(pauli(k), identity(2)) * phiv;
        CHECK(std::abs((bk.adjoint() * rho.rho * bk).value().real() - p[k]) <
              1e-12);
    }
    CHECK_THROWS_AS(bell_diagonal({0.5, 0.5, 0.5, -0.5}), std::invalid_argument);
}

TEST_CASE("bell-diagonal correlation diagonal matches the mixing vector") {
    Rng rng(31);
    for (int k = 0; k < 25; ++k) {
        const auto p = random_bell_probs(rng);
        const auto r = bell_r_of(p);
        const CorrelationMatrix R = correlation_matrix(bell_diagonal(p));
        CHECK(std::abs(R(0, 0) - 1.0) < 1e-12);
        CHECK(std::abs(R(1, 1) - r[0]) < 1e-12);
        CHECK(std::abs(R(2, 2) - r[1]) < 1e-12);
        CHECK(std::abs(R(3, 3) - r[2]) < 1e-12);
        // off-diagonal entries vanish for Bell mixtures
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu)
                if (mu != nu) CHECK(std::abs(R(mu, nu)) < 1e-12);
        // tetrahedron constraints
        CHECK(1.0 + r[0] - r[1] + r[2] >= -1e-10);
        CHECK(1.0 + r[0] + r[1] - r[2] >= -1e-10);
        CHECK(1.0 - r[0] - r[1] - r[2] >= -1e-10);
        CHECK(1.0 - r[0] + r[1] + r[2] >= -1e-10);
    }
}

TEST_CASE("bell_diagonal_from_r inverts the correlation diagonal") {
    Rng rng(32);
    for (int k = 0; k < 25; ++k) {
        const auto p = random_bell_probs(rng);
        const auto r = bell_r_of(p);
        const DensityMatrix rho = bell_diagonal_from_r(r[0], r[1], r[2]);
        CHECK(max_abs_diff(rho.rho, bell_diagonal(p).rho) < 1e-12);
    }
    CHECK_THROWS_AS(bell_diagonal_from_r(1.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("werner states: validity, swap expectation, UU-invariance") {
    Rng rng(33);
    for (Eigen::Index d : {2, 3, 4}) {
        for (double beta : {-1.0, -0.4, 0.0, 0.7, 1.0}) {
            const DensityMatrix rho = werner(d, beta);
            CHECK(std::abs(rho.rho.trace().real() - 1.0) < 1e-12);
            // tr(W rho) = (d + beta d^2 ... ) sanity: swap expectation
            Matrix w = Matrix::Zero(d * d, d * d);
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = 0; j < d; ++j)
                    w(i * d + j, j * d + i) = 1.0;
            const double expect = (w * rho.rho).trace().real();
            CHECK(std::abs(expect - (d + beta * d * d) / (d * d + d * beta)) <
                  1e-10);
        }
        const DensityMatrix rho = werner(d, -0.8);
        for (int k = 0; k < (d == 2 ? 100 : 10); ++k) {
            const Matrix u = haar_unitary(d, rng);
            const Matrix uu = kron(u, u);
            CHECK(max_abs_diff(uu * rho.rho * uu.adjoint(), rho.rho) < 1e-10);
        }
    }
    CHECK_THROWS_AS(werner(2, 1.5), std::invalid_argument);
}

TEST_CASE("isotropic states: fidelity with the entangled state, UU*-invariance") {
    Rng rng(34);
    for (Eigen::Index d : {2, 3}) {
        for (double lam : {0.0, 0.3, 1.0}) {
            const DensityMatrix rho = isotropic(d, lam);
            const Matrix phi = max_entangled(d).rho;
            CHECK(std::abs((phi * rho.rho).trace().real() - lam) < 1e-12);
        }
        const DensityMatrix rho = isotropic(d, 0.6);
        for (int k = 0; k < (d == 2 ? 100 : 10); ++k) {
            const Matrix u = haar_unitary(d, rng);
            const Matrix uustar = kron(u, u.conjugate());
            CHECK(max_abs_diff(uustar * rho.rho * uustar.adjoint(), rho.rho) <
                  1e-10);
        }
    }
    CHECK_THROWS_AS(isotropic(2, 1.2), std::invalid_argument);
    // lambda = 1/d^2 is the maximally mixed state
    CHECK(max_abs_diff(isotropic(3, 1.0 / 9.0).rho, identity(9) / 9.0) <
          1e-12);
}

TEST_CASE("maximally correlated embedding and validation") {
    Rng rng(35);
    const MCSCoefficients mcs = random_mcs(3, 4, 3, rng);
    const DensityMatrix rho = mcs_to_density(mcs);
    CHECK(rho.cut.dim_a == 4);
    CHECK(rho.cut.dim_b == 3);
    // tau is recovered by sandwiching with the embedded basis vectors
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vector vi = kron(mcs.basis_a.col(i), mcs.basis_b.col(i));
            const Vector vj = kron(mcs.basis_a.col(j), mcs.basis_b.col(j));
            CHECK(std::abs((vi.adjoint() * rho.rho * vj).value() -
                           mcs.tau(i, j)) < 1e-12);
        }
    // non-PSD tau is rejected
    Matrix bad(2, 2);
    bad << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(make_mcs_computational(bad, 2, 2), ValidationError);
    // n may not exceed either local dimension
    CHECK_THROWS_AS(make_mcs(identity(3) / 3.0, haar_unitary(2, rng),
                             haar_unitary(3, rng)),
                    std::invalid_argument);
}

TEST_CASE("bell state is the 2x2 maximally correlated state with tau = J/2") {
    Matrix tau(2, 2);
    tau << 0.5, 0.5, 0.5, 0.5;
    const DensityMatrix rho = mcs_to_density(make_mcs_computational(tau, 2, 2));
    CHECK(max_abs_diff(rho.rho, max_entangled(2).rho) < 1e-14);
}

TEST_CASE("cq states are invariant under dephasing in their own basis") {
    Rng rng(36);
    const Matrix ua = haar_unitary(3, rng);
    std::vector<Matrix> sigmas;
    for (int k = 0; k < 3; ++k) {
        Matrix g = ginibre(2, 2, rng);
        Matrix s = g * g.adjoint();
        sigmas.push_back(s / s.trace().real());
    }
    const DensityMatrix rho = cq_state({0.5, 0.3, 0.2}, ua, sigmas);
    CHECK(max_abs_diff(dephase(rho.rho, rho.cut, Side::A, ua), rho.rho) <
          1e-14);
    CHECK_THROWS_AS(cq_state({0.5, 0.6, -0.1}, ua, sigmas),
                    std::invalid_argument);
}

TEST_CASE("cc states are invariant under product dephasing in their bases") {
    Rng rng(37);
    const Matrix ua = haar_unitary(2, rng), ub = haar_unitary(3, rng);
    Eigen::MatrixXd joint(2, 3);
    joint << 0.1, 0.2, 0.3, 0.2, 0.1, 0.1;
    const DensityMatrix rho = cc_state(joint, ua, ub);
    CHECK(max_abs_diff(dephase_product(rho.rho, rho.cut, ua, ub), rho.rho) <
          1e-14);
}

TEST_CASE("correlation matrix round-trips two-qubit states") {
    Rng rng(38);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = random_density(2, 2, 4, rng);
        const CorrelationMatrix r = correlation_matrix(rho);
        CHECK(std::abs(r(0, 0) - 1.0) < 1e-12);
        CHECK(max_abs_diff(matrix_from_correlation(r), rho.rho) < 1e-12);
    }
    CHECK_THROWS_AS(correlation_matrix(random_density(2, 3, 2, 5)),
                    std::invalid_argument);
}

TEST_CASE("bloch vectors round-trip qubit marginals") {
    Rng rng(39);
    const DensityMatrix rho = random_density(2, 2, 3, rng);
    const Matrix ma = partial_trace(rho.rho, rho.cut, Side::A);
    const BlochVector n = bloch_vector(ma);
    CHECK(n.norm() <= 1.0 + 1e-12);
    CHECK(max_abs_diff(matrix_from_bloch(n), ma) < 1e-12);
}

TEST_CASE("random states: rank control, determinism, average near maximally mixed") {
    // pure states at rank 1
    for (std::uint64_t s = 0; s < 5; ++s) {
        const DensityMatrix rho = random_density(2, 3, 1, s);
        CHECK(std::abs((rho.rho * rho.rho).trace().real() - 1.0) < 1e-10);
    }
    // determinism: same seed, bit-identical
    const DensityMatrix a = random_density(3, 3, 5, 123);
    const DensityMatrix b = random_density(3, 3, 5, 123);
    CHECK(max_abs_diff(a.rho, b.rho) == 0.0);

    // full-rank average approaches I/d
    Rng rng(40);
    Matrix avg = Matrix::Zero(4, 4);
    const int n = 3000;
    for (int k = 0; k < n; ++k) avg += random_density(2, 2, 4, rng).rho;
    avg /= double(n);
    CHECK(max_abs_diff(avg, 0.25 * identity(4)) < 1e-2);

    CHECK_THROWS_AS(random_density(2, 2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_density(2, 2, 5, 1), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "noq/measures.hpp"

#include <cmath>

using namespace noq;
using namespace noq::testing;

namespace {

OptimizerConfig fast_config(std::uint64_t seed = 0) {
    OptimizerConfig config;
    config.restarts = 6;
    config.qubit_grid_resolution = 32;
    config.seed = seed;
    return config;
}

}  // namespace

TEST_CASE("negativity: entangled references and separable states") {
    CHECK(std::abs(negativity(max_entangled(2)) - 0.5) < 1e-12);
    CHECK(std::abs(negativity(max_entangled(3)) - 1.0) < 1e-12);
    CHECK(std::abs(negativity(max_entangled(4)) - 1.5) < 1e-12);
    Rng rng(81);
    for (int k = 0; k < 10; ++k) {
        const DensityMatrix sep = random_separable({2, 3}, 6, rng);
        CHECK(negativity(sep) < 1e-9);
    }
    // werner d=2: negativity max(0, -(1+3beta)/(2(2+beta))) at beta<-1/3
    CHECK(std::abs(negativity(werner(2, -1.0)) - 0.5) < 1e-12);
    CHECK(negativity(werner(2, -1.0 / 3.0)) < 1e-10);
}

TEST_CASE("maximally correlated spectrum matches a dense eigensolver") {
    Rng rng(82);
    for (int k = 0; k < 40; ++k) {
        const Eigen::Index n = 2 + k % 3;
        const MCSCoefficients mcs = random_mcs(n, n, n + (k % 2), rng);
        const DensityMatrix rho = mcs_to_density(mcs);
        const Matrix pt = partial_transpose(rho.rho, rho.cut, Side::B);

        const auto pairs = mcs_pt_spectrum(mcs);
        // eigen-equation residuals and multiset agreement
        RealVector analytic(rho.cut.dim());
        CHECK(Eigen::Index(pairs.size()) == rho.cut.dim());
        for (size_t i = 0; i < pairs.size(); ++i) {
            analytic(Eigen::Index(i)) = pairs[i].value;
            CHECK((pt * pairs[i].vector - pairs[i].value * pairs[i].vector)
                      .norm() < 1e-10);
            CHECK(std::abs(pairs[i].vector.norm() - 1.0) < 1e-12);
        }
        std::sort(analytic.begin(), analytic.end());
        const RealVector dense = hermitian_eigenvalues(pt);
        CHECK((analytic - dense).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("degenerate coefficients: vanishing tau_ij still yields a complete spectrum") {
    Matrix tau = Matrix::Zero(3, 3);
    tau(0, 0) = 0.5;
    tau(1, 1) = 0.3;
    tau(2, 2) = 0.2;
    tau(0, 1) = tau(1, 0) = 0.1;  // tau_02 = tau_12 = 0
    const MCSCoefficients mcs = make_mcs_computational(tau, 3, 3);
    const auto pairs = mcs_pt_spectrum(mcs);
    CHECK(pairs.size() == 9);
    const DensityMatrix rho = mcs_to_density(mcs);
    const Matrix pt = partial_transpose(rho.rho, rho.cut, Side::B);
    for (const auto& p : pairs)
        CHECK((pt * p.vector - p.value * p.vector).norm() < 1e-12);
}

TEST_CASE("maximally correlated negativity: coefficient formula vs direct") {
    Rng rng(83);
    for (int k = 0; k < 40; ++k) {
        const Eigen::Index n = 2 + k % 3;
        const MCSCoefficients mcs = random_mcs(n, n, n, rng);
        CHECK(std::abs(negativity_mcs(mcs) - negativity(mcs_to_density(mcs))) <
              1e-10);
    }
}

TEST_CASE("objectives vanish on classical states in their own bases") {
    Rng rng(84);
    const Matrix ua = haar_unitary(2, rng), ub = haar_unitary(3, rng);
    std::vector<Matrix> sigmas;
    for (int k = 0; k < 2; ++k) {
        Matrix g = ginibre(3, 3, rng);
        Matrix s = g * g.adjoint();
        sigmas.push_back(s / s.trace().real());
    }
    const DensityMatrix cq = cq_state({0.7, 0.3}, ua, sigmas);
    CHECK(std::abs(one_sided_objective(cq, Side::A, ua)) < 1e-12);

    Eigen::MatrixXd joint(2, 3);
    joint << 0.25, 0.15, 0.1, 0.2, 0.2, 0.1;
    const DensityMatrix cc = cc_state(joint, ua, ub);
    CHECK(std::abs(two_sided_objective(cc, ua, ub)) < 1e-12);
}

TEST_CASE("objectives are invariant under column phases and permutations") {
    Rng rng(85);
    const DensityMatrix rho = random_density(2, 2, 4, rng);
    const Matrix u = haar_unitary(2, rng);
    Matrix relabeled(2, 2);
    relabeled.col(0) = Complex(0, 1) * u.col(1);
    relabeled.col(1) = Complex(-1, 0) * u.col(0);
    CHECK(std::abs(one_sided_objective(rho, Side::A, u) -
                   one_sided_objective(rho, Side::A, relabeled)) < 1e-12);
    const Matrix v = haar_unitary(2, rng);
    CHECK(std::abs(two_sided_objective(rho, u, v) -
                   two_sided_objective(rho, relabeled, v)) < 1e-12);
}

TEST_CASE("one-sided objective on side B matches the swapped construction") {
    Rng rng(86);
    const DensityMatrix rho = random_density(2, 3, 4, rng);
    const Matrix ub = haar_unitary(3, rng);
    // swap the factors and measure the new A side
    Matrix swapped(6, 6);
    auto idx = [](Eigen::Index b, Eigen::Index a) { return b * 2 + a; };
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 3; ++j)
            for (Eigen::Index k = 0; k < 2; ++k)
                for (Eigen::Index l = 0; l < 3; ++l)
                    swapped(idx(j, i), idx(l, k)) =
                        rho.rho(i * 3 + j, k * 3 + l);
    const DensityMatrix flipped = make_density(swapped, {3, 2});
    CHECK(std::abs(one_sided_objective(rho, Side::B, ub) -
                   one_sided_objective(flipped, Side::A, ub)) < 1e-12);
}

TEST_CASE("bell-diagonal closed form: middle coordinate, tetrahedron guard") {
    CHECK(std::abs(noq_bell_diagonal(0.5, -0.4, 0.3) - 0.2) < 1e-15);
    CHECK(std::abs(noq_bell_diagonal(0.0, 0.0, 1.0) - 0.0) < 1e-15);
    CHECK_THROWS_AS(noq_bell_diagonal(1.0, 1.0, 1.0), ValidationError);
    Rng rng(87);
    for (int k = 0; k < 30; ++k) {
        const auto p = random_bell_probs(rng);
        const auto r = bell_r_of(p);
        CHECK(std::abs(noq_bell_diagonal(r[0], r[1], r[2]) -
                       0.5 * middle_abs(r[0], r[1], r[2])) < 1e-15);
        const MeasureReport rep = noq_bell_diagonal_report(bell_diagonal(p));
        CHECK(rep.method == "closed-form");
        CHECK(std::abs(rep.value - 0.5 * middle_abs(r[0], r[1], r[2])) <
              1e-10);
    }
    // states with off-diagonal correlation entries are not Bell-diagonal
    CHECK_THROWS_AS(noq_bell_diagonal_report(random_density(2, 2, 4, 3)),
                    ValidationError);
}

TEST_CASE("bell-diagonal: numeric one- and two-sided match the closed form") {
    Rng rng(88);
    for (int k = 0; k < 6; ++k) {
        const auto p = random_bell_probs(rng);
        const auto r = bell_r_of(p);
        const DensityMatrix rho = bell_diagonal(p);
        const double closed = 0.5 * middle_abs(r[0], r[1], r[2]);
        const MeasureReport one = noq_one_sided(rho, Side::A, fast_config(k));
        const MeasureReport two = noq_two_sided(rho, fast_config(k));
        CHECK(std::abs(one.value - closed) < 1e-4);
        CHECK(std::abs(two.value - closed) < 1e-4);
        CHECK(one.measure == "noq-a");
        CHECK(two.measure == "noq-ab");
        CHECK(one.method == "numeric");
        CHECK(one.bases.size() == 1);
        CHECK(two.bases.size() == 2);
        CHECK(one.warning.empty());
    }
}

TEST_CASE("mixed-marginal closed form: middle singular value of the block") {
    Rng rng(89);
    for (int k = 0; k < 25; ++k) {
        const QubitChannel ch = random_channel(1 + int(rng.uniform() * 4), rng);
        const DensityMatrix rho = channel_to_state(ch);
        const CorrelationMatrix r = correlation_matrix(rho);
        const Eigen::Vector3d s =
            r.block<3, 3>(1, 1)
                .jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                .singularValues();
        CHECK(std::abs(noq_mixed_marginal(rho) - 0.5 * s(1)) < 1e-12);
    }
    // requires a maximally mixed A marginal
    Matrix skew = Matrix::Zero(4, 4);
    skew(0, 0) = 0.6;
    skew(3, 3) = 0.4;
    CHECK_THROWS_AS(noq_mixed_marginal(make_density(skew, {2, 2})),
                    ValidationError);
}

TEST_CASE("mixed-marginal closed form agrees with numeric minimization") {
    Rng rng(90);
    for (int k = 0; k < 8; ++k) {
        const DensityMatrix rho =
            channel_to_state(random_channel(1 + k % 4, rng));
        const MeasureReport num = noq_one_sided(rho, Side::A, fast_config(k));
        CHECK(std::abs(num.value - noq_mixed_marginal(rho)) < 1e-4);
    }
}

TEST_CASE("werner closed form: values, symmetry, numeric agreement") {
    CHECK(std::abs(noq_werner(2, -1.0) - 0.5) < 1e-15);
    CHECK(std::abs(noq_werner(2, 0.0)) < 1e-15);
    CHECK(std::abs(noq_werner(3, 1.0) - 2.0 / 8.0) < 1e-15);
    for (Eigen::Index d : {2, 3}) {
        for (double beta : {-0.9, -0.3, 0.5, 1.0}) {
            const DensityMatrix rho = werner(d, beta);
            const MeasureReport num =
                noq_one_sided(rho, Side::A, fast_config(1));
            CHECK(std::abs(num.value - noq_werner(d, beta)) < 1e-4);
        }
    }
}

TEST_CASE("werner objective is independent of the measured basis") {
    Rng rng(91);
    for (Eigen::Index d : {2, 3, 4}) {
        const DensityMatrix rho = werner(d, -0.7);
        const double ref = one_sided_objective(rho, Side::A, identity(d));
        for (int k = 0; k < 20; ++k)
            CHECK(std::abs(one_sided_objective(rho, Side::A,
                                               haar_unitary(d, rng)) -
                           ref) < 1e-8);
        CHECK(std::abs(ref - noq_werner(d, -0.7)) < 1e-10);
    }
}

TEST_CASE("isotropic closed forms: anchor at the pure state, factor-two variant") {
    for (Eigen::Index d : {2, 3}) {
        CHECK(std::abs(noq_isotropic(d, 1.0) - 0.5 * (d - 1)) < 1e-12);
        CHECK(std::abs(noq_isotropic_alt(d, 1.0) -
                       2.0 * noq_isotropic(d, 1.0)) < 1e-12);
        CHECK(std::abs(noq_isotropic(d, 1.0 / double(d * d))) < 1e-12);
    }
    // numeric agreement on a small grid
    Rng rng(92);
    for (Eigen::Index d : {2, 3}) {
        for (double lam : {0.05, 0.4, 0.85}) {
            const DensityMatrix rho = isotropic(d, lam);
            const MeasureReport num =
                noq_one_sided(rho, Side::A, fast_config(2));
            CHECK(std::abs(num.value - noq_isotropic(d, lam)) < 1e-4);
        }
    }
    // the isotropic objective is basis-independent as well
    const DensityMatrix rho = isotropic(3, 0.7);
    const double ref = one_sided_objective(rho, Side::A, identity(3));
    for (int k = 0; k < 10; ++k)
        CHECK(std::abs(one_sided_objective(rho, Side::A, haar_unitary(3, rng)) -
                       ref) < 1e-8);
}

TEST_CASE("trace-norm disturbance equals the block objective for a qubit side") {
    Rng rng(93);
    for (int k = 0; k < 30; ++k) {
        const DensityMatrix rho = random_density(2, 2 + k % 3, 4, rng);
        const Matrix u = haar_unitary(2, rng);
        const Matrix dephased = dephase(rho.rho, rho.cut, Side::A, u);
        CHECK(std::abs(0.5 * trace_norm(rho.rho - dephased) -
                       one_sided_objective(rho, Side::A, u)) < 1e-12);
    }
}

TEST_CASE("trace-distance discord: qubit-A equality and dimension guard") {
    Rng rng(94);
    for (int k = 0; k < 5; ++k) {
        const DensityMatrix rho = random_density(2, 2 + k % 3, 3, rng);
        const MeasureReport tdd = trace_distance_discord(rho, fast_config(k));
        const MeasureReport one = noq_one_sided(rho, Side::A, fast_config(k));
        CHECK(std::abs(tdd.value - one.value) < 1e-5);
    }
    CHECK_THROWS_AS(trace_distance_discord(random_density(3, 3, 2, 1)),
                    std::invalid_argument);
    // the generic disturbance minimizer still works for larger sides
    const MeasureReport generic = trace_norm_disturbance(
        random_density(3, 2, 2, 2), Side::A, fast_config(1));
    CHECK(generic.value >= -1e-12);
}

TEST_CASE("geometric discord matches the two-qubit closed form") {
    Rng rng(95);
    for (int k = 0; k < 6; ++k) {
        const DensityMatrix rho = random_density(2, 2, 1 + k % 4, rng);
        const CorrelationMatrix r = correlation_matrix(rho);
        const Eigen::Vector3d x = r.block<3, 1>(1, 0);
        const Eigen::Matrix3d t = r.block<3, 3>(1, 1);
        const Eigen::Matrix3d k3 = x * x.transpose() + t * t.transpose();
        const double closed =
            0.25 * (x.squaredNorm() + t.squaredNorm() -
                    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(k3)
                        .eigenvalues()
                        .maxCoeff());
        const MeasureReport gd = geometric_discord(rho, fast_config(k));
        CHECK(std::abs(gd.value - closed) < 1e-6);
    }
}

TEST_CASE("geometric discord vanishes exactly on classical-quantum states") {
    Rng rng(96);
    const Matrix ua = haar_unitary(2, rng);
    std::vector<Matrix> sigmas;
    for (int k = 0; k < 2; ++k) {
        Matrix g = ginibre(2, 2, rng);
        Matrix s = g * g.adjoint();
        sigmas.push_back(s / s.trace().real());
    }
    const DensityMatrix cq = cq_state({0.55, 0.45}, ua, sigmas);
    CHECK(geometric_discord(cq, fast_config(1)).value < 1e-10);
}

TEST_CASE("deficits: reference values and nonnegativity") {
    // maximally entangled state loses one bit under either protocol
    const DensityMatrix bell = max_entangled(2);
    CHECK(std::abs(deficit(bell, DeficitSides::A, fast_config(1)).value -
                   1.0) < 1e-6);
    CHECK(std::abs(deficit(bell, DeficitSides::AB, fast_config(1)).value -
                   1.0) < 1e-6);
    // product states with commuting marginals lose nothing
    Rng rng(97);
    Matrix ga = ginibre(2, 2, rng), gb = ginibre(2, 2, rng);
    Matrix a = ga * ga.adjoint(), b = gb * gb.adjoint();
    a /= a.trace().real();
    b /= b.trace().real();
    const DensityMatrix prod = make_density(kron(a, b), {2, 2});
    CHECK(deficit(prod, DeficitSides::A, fast_config(2)).value < 1e-7);
    CHECK(deficit(prod, DeficitSides::AB, fast_config(2)).value < 1e-7);
    // dephasing never lowers the entropy
    for (int k = 0; k < 4; ++k) {
        const DensityMatrix rho = random_density(2, 2, 1 + k, rng);
        CHECK(deficit(rho, DeficitSides::A, fast_config(k)).value >= -1e-9);
        CHECK(deficit(rho, DeficitSides::AB, fast_config(k)).value >= -1e-9);
    }
}

TEST_CASE("zero-way deficit dominates one-way deficit") {
    Rng rng(98);
    for (int k = 0; k < 4; ++k) {
        const DensityMatrix rho = random_density(2, 2, 3, rng);
        const double one = deficit(rho, DeficitSides::A, fast_config(k)).value;
        const double both =
            deficit(rho, DeficitSides::AB, fast_config(k)).value;
        CHECK(both >= one - 1e-6);
    }
}

TEST_CASE("negativity never exceeds the minimized two-sided disturbance") {
    Rng rng(99);
    for (int k = 0; k < 6; ++k) {
        const DensityMatrix rho = random_density(2, 2, 1 + k % 4, rng);
        const KhasinCheck chk = khasin_bound_check(rho, fast_config(k));
        CHECK(chk.holds);
        CHECK(chk.negativity <= chk.bound + 1e-8);
    }
    // equality on maximally correlated states
    for (int k = 0; k < 4; ++k) {
        const MCSCoefficients mcs = random_mcs(2, 2, 2, rng);
        const KhasinCheck chk =
            khasin_bound_check(mcs_to_density(mcs), fast_config(k));
        CHECK(std::abs(chk.bound - chk.negativity) < 1e-8);
    }
}

TEST_CASE("reflection form of the qubit disturbance") {
    Rng rng(100);
    // value 1 on the maximally entangled state in the computational basis
    CHECK(std::abs(ru_disturbance(max_entangled(2), identity(2)) - 1.0) <
          1e-12);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = random_density(2, 3, 4, rng);
        const Matrix u = haar_unitary(2, rng);
        const Matrix dephased = dephase(rho.rho, rho.cut, Side::A, u);
        CHECK(std::abs(ru_disturbance(rho, u) -
                       trace_norm(rho.rho - dephased)) < 1e-12);
    }
    CHECK_THROWS_AS(ru_disturbance(random_density(3, 2, 2, 1), identity(3)),
                    std::invalid_argument);
}

TEST_CASE("faithfulness: zero on classical states, positive away from them") {
    Rng rng(101);
    const Matrix ua = haar_unitary(2, rng), ub = haar_unitary(2, rng);
    Eigen::MatrixXd joint(2, 2);
    joint << 0.4, 0.1, 0.2, 0.3;
    const DensityMatrix cc = cc_state(joint, ua, ub);
    CHECK(noq_one_sided(cc, Side::A, fast_config(1)).value < 1e-6);
    CHECK(noq_two_sided(cc, fast_config(1)).value < 1e-6);

    std::vector<Matrix> sigmas{0.5 * identity(2),
                               matrix_from_bloch({0.3, -0.2, 0.8})};
    const DensityMatrix cq = cq_state({0.5, 0.5}, ua, sigmas);
    CHECK(noq_one_sided(cq, Side::A, fast_config(2)).value < 1e-6);

    CHECK(noq_one_sided(werner(2, -1.0), Side::A, fast_config(3)).value >
          1e-3);
    CHECK(noq_one_sided(bell_diagonal_from_r(0.5, -0.4, 0.3), Side::A,
                        fast_config(3))
              .value > 1e-3);
    CHECK(noq_two_sided(max_entangled(2), fast_config(3)).value > 1e-3);
}

TEST_CASE("measures are covariant under local unitaries") {
    Rng rng(102);
    for (int k = 0; k < 3; ++k) {
        const DensityMatrix rho = random_density(2, 2, 2 + k, rng);
        const Matrix u = haar_unitary(2, rng), v = haar_unitary(2, rng);
        const Matrix uv = kron(u, v);
        const DensityMatrix rotated =
            make_density(uv * rho.rho * uv.adjoint(), rho.cut);
        CHECK(std::abs(noq_one_sided(rho, Side::A, fast_config(k)).value -
                       noq_one_sided(rotated, Side::A, fast_config(k)).value) <
              1e-5);
        // the two-sided landscape has four parameters; give the search a
        // deeper multistart so both instances reach the global basin
        OptimizerConfig wide = fast_config(k);
        wide.restarts = 24;
        CHECK(std::abs(noq_two_sided(rho, wide).value -
                       noq_two_sided(rotated, wide).value) < 1e-5);
    }
}

TEST_CASE("hierarchy: negativity <= one-sided <= two-sided") {
    Rng rng(103);
    for (int k = 0; k < 8; ++k) {
        const DensityMatrix rho = random_density(2, 2, 1 + k % 4, rng);
        const double n = negativity(rho);
        const double one = noq_one_sided(rho, Side::A, fast_config(k)).value;
        const double two = noq_two_sided(rho, fast_config(k)).value;
        CHECK(n <= one + 1e-6);
        CHECK(one <= two + 1e-4);
    }
}

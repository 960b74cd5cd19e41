#include "noq/states.hpp"

#include <cmath>
#include <numeric>

namespace noq {

DensityMatrix make_density(const Matrix& rho, const Bipartition& cut) {
    if (rho.rows() != rho.cols() || rho.rows() != cut.dim())
        throw std::invalid_argument("make_density: cut does not match matrix dimension");
    const Matrix h = hermitize(rho, 1e-10);  // throws on asymmetry > 1e-10
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > 1e-10)
        throw ValidationError("make_density: trace violated (trace=" +
                              std::to_string(tr) + ")");
    const double min_eig = hermitian_eigenvalues(h).minCoeff();
    if (min_eig < -1e-10)
        throw ValidationError("make_density: positivity violated (min eigenvalue=" +
                              std::to_string(min_eig) + ")");
    return DensityMatrix{h, cut};
}

static Vector max_entangled_ket(Eigen::Index d) {
    Vector phi = Vector::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
    return phi;
}

DensityMatrix max_entangled(Eigen::Index d) {
    if (d < 2) throw std::invalid_argument("max_entangled: d must be >= 2");
    const Vector phi = max_entangled_ket(d);
    return DensityMatrix{phi * phi.adjoint(), Bipartition{d, d}};
}

DensityMatrix bell_diagonal(const std::array<double, 4>& p) {
    double sum = 0.0;
    for (double pk : p) {
        if (pk < -1e-10)
            throw std::invalid_argument("bell_diagonal: negative probability");
        sum += pk;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("bell_diagonal: probabilities do not sum to 1");
    const Vector phi = max_entangled_ket(2);
    Matrix rho = Matrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) {
        const Vector b = kron(pauli(k), identity(2)) * phi;
        rho += p[k] * (b * b.adjoint()).eval();
    }
    return make_density(rho, Bipartition{2, 2});
}

DensityMatrix bell_diagonal_from_r(double r11, double r22, double r33) {
    // columns of m are the (R11,R22,R33) coordinates of the Bell basis;
    // m is 2x an orthogonal matrix, so p = m^T (1,r)/4.
    Eigen::Matrix4d m;
    m << 1, 1, 1, 1,
         1, 1, -1, -1,
        -1, 1, -1, 1,
         1, -1, -1, 1;
    const Eigen::Vector4d r(1.0, r11, r22, r33);
    const Eigen::Vector4d p = 0.25 * (m.transpose() * r);
    std::array<double, 4> pa{};
    for (int k = 0; k < 4; ++k) {
        if (p(k) < -1e-10)
            throw ValidationError(
                "bell_diagonal_from_r: point outside the Bell-diagonal tetrahedron");
        pa[k] = std::max(p(k), 0.0);
    }
    return bell_diagonal(pa);
}

DensityMatrix werner(Eigen::Index d, double beta) {
    if (d < 2) throw std::invalid_argument("werner: d must be >= 2");
    if (std::abs(beta) > 1.0 + 1e-12)
        throw std::invalid_argument("werner: beta must lie in [-1, 1]");
    Matrix w = Matrix::Zero(d * d, d * d);
    for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l) w(k * d + l, l * d + k) = 1.0;
    const Matrix rho =
        (identity(d * d) + beta * w) / (double(d * d) + double(d) * beta);
    return make_density(rho, Bipartition{d, d});
}

DensityMatrix isotropic(Eigen::Index d, double lambda) {
    if (d < 2) throw std::invalid_argument("isotropic: d must be >= 2");
    if (lambda < -1e-12 || lambda > 1.0 + 1e-12)
        throw std::invalid_argument("isotropic: lambda must lie in [0, 1]");
    const Matrix phi = max_entangled(d).rho;
    const Matrix rho = lambda * phi + (1.0 - lambda) *
                       (identity(d * d) - phi) / (double(d * d) - 1.0);
    return make_density(rho, Bipartition{d, d});
}

MCSCoefficients make_mcs(const Matrix& tau, const Matrix& basis_a,
                         const Matrix& basis_b) {
    const Eigen::Index n = tau.rows();
    if (n < 1 || tau.cols() != n)
        throw std::invalid_argument("make_mcs: tau must be square");
    if (basis_a.rows() < n || basis_b.rows() < n)
        throw std::invalid_argument("make_mcs: bases smaller than tau");
    if (!is_unitary(basis_a) || !is_unitary(basis_b))
        throw std::invalid_argument("make_mcs: basis is not unitary");
    const Matrix h = hermitize(tau, 1e-10);
    if (std::abs(h.trace().real() - 1.0) > 1e-10)
        throw ValidationError("make_mcs: trace violated");
    if (hermitian_eigenvalues(h).minCoeff() < -1e-10)
        throw ValidationError("make_mcs: positivity violated");
    return MCSCoefficients{h, basis_a, basis_b};
}

MCSCoefficients make_mcs_computational(const Matrix& tau, Eigen::Index d_a,
                                       Eigen::Index d_b) {
    return make_mcs(tau, identity(d_a), identity(d_b));
}

DensityMatrix mcs_to_density(const MCSCoefficients& mcs) {
    const Eigen::Index n = mcs.tau.rows();
    const Eigen::Index da = mcs.basis_a.rows(), db = mcs.basis_b.rows();
    Matrix c(da * db, n);  // column i = a_i (x) b_i
    for (Eigen::Index i = 0; i < n; ++i)
        c.col(i) = kron(mcs.basis_a.col(i), mcs.basis_b.col(i));
    return make_density(c * mcs.tau * c.adjoint(), Bipartition{da, db});
}

DensityMatrix cq_state(const std::vector<double>& p, const Matrix& basis_a,
                       const std::vector<Matrix>& sigmas) {
    const Eigen::Index da = basis_a.rows();
    if (Eigen::Index(p.size()) != da || p.size() != sigmas.size())
        throw std::invalid_argument("cq_state: need one probability and one state per basis vector");
    if (!is_unitary(basis_a))
        throw std::invalid_argument("cq_state: basis is not unitary");
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("cq_state: probabilities do not sum to 1");
    const Eigen::Index db = sigmas.front().rows();
    Matrix rho = Matrix::Zero(da * db, da * db);
    for (Eigen::Index k = 0; k < da; ++k) {
        if (p[k] < -1e-12)
            throw std::invalid_argument("cq_state: negative probability");
        const Matrix pk = basis_a.col(k) * basis_a.col(k).adjoint();
        rho += p[k] * kron(pk, sigmas[k]);
    }
    return make_density(rho, Bipartition{da, db});
}

DensityMatrix cc_state(const Eigen::MatrixXd& joint_p, const Matrix& basis_a,
                       const Matrix& basis_b) {
    const Eigen::Index da = basis_a.rows(), db = basis_b.rows();
    if (joint_p.rows() != da || joint_p.cols() != db)
        throw std::invalid_argument("cc_state: joint distribution shape mismatch");
    if (!is_unitary(basis_a) || !is_unitary(basis_b))
        throw std::invalid_argument("cc_state: basis is not unitary");
    if (std::abs(joint_p.sum() - 1.0) > 1e-10)
        throw std::invalid_argument("cc_state: probabilities do not sum to 1");
    Matrix rho = Matrix::Zero(da * db, da * db);
    for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index l = 0; l < db; ++l) {
            if (joint_p(k, l) < -1e-12)
                throw std::invalid_argument("cc_state: negative probability");
            const Matrix pa = basis_a.col(k) * basis_a.col(k).adjoint();
            const Matrix pb = basis_b.col(l) * basis_b.col(l).adjoint();
            rho += joint_p(k, l) * kron(pa, pb);
        }
    return make_density(rho, Bipartition{da, db});
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
    if (rho.cut.dim_a != 2 || rho.cut.dim_b != 2)
        throw std::invalid_argument("correlation_matrix: requires a two-qubit state");
    CorrelationMatrix r;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            r(mu, nu) = (kron(pauli(mu), pauli(nu)) * rho.rho).trace().real();
    return r;
}

Matrix matrix_from_correlation(const CorrelationMatrix& r) {
    Matrix rho = Matrix::Zero(4, 4);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            rho += 0.25 * r(mu, nu) * kron(pauli(mu), pauli(nu));
    return rho;
}

DensityMatrix state_from_correlation(const CorrelationMatrix& r) {
    return make_density(matrix_from_correlation(r), Bipartition{2, 2});
}

BlochVector bloch_vector(const Matrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("bloch_vector: requires a qubit state");
    BlochVector n;
    for (int i = 0; i < 3; ++i) n(i) = (pauli(i + 1) * rho).trace().real();
    return n;
}

Matrix matrix_from_bloch(const BlochVector& n) {
    Matrix rho = 0.5 * identity(2);
    for (int i = 0; i < 3; ++i) rho += 0.5 * n(i) * pauli(i + 1);
    return rho;
}

DensityMatrix random_density(Eigen::Index d_a, Eigen::Index d_b,
                             Eigen::Index rank, Rng& rng) {
    const Eigen::Index d = d_a * d_b;
    if (d_a < 1 || d_b < 1)
        throw std::invalid_argument("random_density: dimensions must be positive");
    if (rank < 1 || rank > d)
        throw std::invalid_argument("random_density: rank must lie in 1..dim");
    const Matrix g = ginibre(d, rank, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return make_density(rho, Bipartition{d_a, d_b});
}

DensityMatrix random_density(Eigen::Index d_a, Eigen::Index d_b,
                             Eigen::Index rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(d_a, d_b, rank, rng);
}

}  // namespace noq

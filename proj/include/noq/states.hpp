// states.hpp -- validated bipartite density matrices, standard families
// (Bell-diagonal, Werner, isotropic, maximally correlated), classical
// states, Pauli correlation matrices and seeded random sampling.
#pragma once

#include "noq/linalg.hpp"

#include <array>
#include <vector>

namespace noq {

// A density matrix together with its tensor cut.  Construct via
// make_density, which enforces hermiticity / unit trace / positivity.
struct DensityMatrix {
    Matrix rho;
    Bipartition cut;
};

// Coefficient matrix tau of a maximally correlated state
// sum_ij tau_ij |a_i b_i><a_j b_j|, plus the local bases (columns).
struct MCSCoefficients {
    Matrix tau;      // n x n, Hermitian, PSD, unit trace
    Matrix basis_a;  // d_a x d_a unitary, n <= d_a
    Matrix basis_b;  // d_b x d_b unitary, n <= d_b
};

// Two-qubit Pauli correlation matrix R_{mu nu} = tr[(s_mu (x) s_nu) rho].
using CorrelationMatrix = Eigen::Matrix4d;
using BlochVector = Eigen::Vector3d;

// Validate and build: Hermitian to 1e-10 (then symmetrized), trace 1 to
// 1e-10, smallest eigenvalue >= -1e-10.  Throws ValidationError naming the
// violated invariant.
DensityMatrix make_density(const Matrix& rho, const Bipartition& cut);

// Two-qubit Bell-diagonal state sum_k p_k |B_k><B_k| with the Bell basis
// ordered by Pauli label, |B_k> = (s_k (x) I)|phi+>.
DensityMatrix bell_diagonal(const std::array<double, 4>& p);

// Bell-diagonal state from its correlation-matrix diagonal (r11, r22, r33);
// rejects points outside the simplex image (non-PSD states).
DensityMatrix bell_diagonal_from_r(double r11, double r22, double r33);

// Werner family (I + beta W)/(d^2 + d beta), W the swap, |beta| <= 1.
DensityMatrix werner(Eigen::Index d, double beta);

// Isotropic family lambda*phi + (1-lambda)*(I-phi)/(d^2-1), phi the
// maximally entangled projector, 0 <= lambda <= 1.
DensityMatrix isotropic(Eigen::Index d, double lambda);

// Maximally entangled projector |phi><phi|, |phi> = sum_i |ii>/sqrt(d).
DensityMatrix max_entangled(Eigen::Index d);

// Validate MCS coefficients (Hermitian, PSD, unit trace, unitary bases).
MCSCoefficients make_mcs(const Matrix& tau, const Matrix& basis_a,
                         const Matrix& basis_b);

// Convenience: MCS in the computational bases of a d_a x d_b space.
MCSCoefficients make_mcs_computational(const Matrix& tau, Eigen::Index d_a,
                                       Eigen::Index d_b);

// Embed the coefficients as a density matrix on the full product space.
DensityMatrix mcs_to_density(const MCSCoefficients& mcs);

// Classical-quantum state sum_k p_k |a_k><a_k| (x) sigma_k.
DensityMatrix cq_state(const std::vector<double>& p, const Matrix& basis_a,
                       const std::vector<Matrix>& sigmas);

// Classical-classical state sum_kl P_kl |a_k><a_k| (x) |b_l><b_l|.
DensityMatrix cc_state(const Eigen::MatrixXd& joint_p, const Matrix& basis_a,
                       const Matrix& basis_b);

// Pauli correlation matrix of a two-qubit state and its inverse
// reconstruction rho = (1/4) sum_{mu nu} R_{mu nu} s_mu (x) s_nu.
CorrelationMatrix correlation_matrix(const DensityMatrix& rho);
Matrix matrix_from_correlation(const CorrelationMatrix& r);
DensityMatrix state_from_correlation(const CorrelationMatrix& r);

// Bloch vector of a single-qubit density matrix and its inverse.
BlochVector bloch_vector(const Matrix& rho);
Matrix matrix_from_bloch(const BlochVector& n);

// Induced-measure random state: partial trace, over an environment of
// dimension `rank`, of a seeded Haar-random pure state.
DensityMatrix random_density(Eigen::Index d_a, Eigen::Index d_b,
                             Eigen::Index rank, std::uint64_t seed);
DensityMatrix random_density(Eigen::Index d_a, Eigen::Index d_b,
                             Eigen::Index rank, Rng& rng);

}  // namespace noq

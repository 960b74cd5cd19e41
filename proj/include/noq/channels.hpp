// channels.hpp -- qubit channels in Kraus form, their affine (T-matrix)
// representation on the Bloch ball, canonical form under local unitary
// conjugation, and the channel <-> maximally-mixed-marginal state duality.
#pragma once

#include "noq/linalg.hpp"
#include "noq/states.hpp"

#include <vector>

namespace noq {

// Completely positive trace-preserving qubit map sum_i K_i rho K_i^dag.
struct QubitChannel {
    std::vector<Matrix> kraus;

    Matrix apply(const Matrix& x) const;
};

// Affine action on Pauli components, T_{mu nu} = tr(s_mu Omega[s_nu])/2, so
// that the Bloch 4-vector (1, n) maps to T (1, n).  Trace preservation makes
// the first row (1, 0, 0, 0).
using ChannelTMatrix = Eigen::Matrix4d;

// T(U_A . Omega . U_B) = [[1, 0], [t, diag(lambda)]] with lambda_1,2 >= 0
// and the sign of det of the original 3x3 block carried by lambda_3.
struct CanonicalForm {
    Matrix u_a;             // 2x2 unitary applied after the channel
    Matrix u_b;             // 2x2 unitary applied before the channel
    Eigen::Vector3d t;      // translation of the canonical map
    Eigen::Vector3d lambda; // scaling of the canonical map
};

// Validate Kraus completeness sum K_i^dag K_i = I to 1e-10.
QubitChannel make_channel(const std::vector<Matrix>& kraus);

// Identity, as a channel.
QubitChannel identity_channel();

// sum_k p_k s_k rho s_k; p is a probability vector.
QubitChannel pauli_channel(const std::array<double, 4>& p);

// Amplitude damping with decay probability gamma in [0, 1].
QubitChannel amplitude_damping(double gamma);

ChannelTMatrix t_matrix(const QubitChannel& chan);

// Apply a channel through its T-matrix; agrees with Kraus application.
Matrix apply_via_t(const ChannelTMatrix& t, const Matrix& rho);

// Dual (Heisenberg-picture) map; represented by the transposed T-matrix,
// and always unital.
QubitChannel dual_channel(const QubitChannel& chan);

// Bloch rotation R(U)_{ij} = tr(s_i U s_j U^dag)/2 implemented by a qubit
// unitary, and the SU(2) lift of a rotation (inverse up to sign).
Eigen::Matrix3d rotation_from_unitary(const Matrix& u);
Matrix unitary_from_rotation(const Eigen::Matrix3d& r);

// Diagonalize the 3x3 block by sandwiching between unitary conjugations.
CanonicalForm canonical_form(const QubitChannel& chan);

// Rebuild the T-matrix of the original channel from its canonical data.
ChannelTMatrix t_from_canonical(const CanonicalForm& cf);

// State-channel duality: rho = (I (x) Omega)[phi+].  The output marginal on
// A is exactly I/2; conversely any two-qubit state with rho_A = I/2 defines
// a unique channel.
DensityMatrix channel_to_state(const QubitChannel& chan);
QubitChannel state_to_channel(const DensityMatrix& rho);

// Pauli correlation matrix of channel_to_state(chan), computed from the
// T-matrix alone: R_{mu nu} = (-1)^{delta_{mu 2}} T_{nu mu}.
CorrelationMatrix correlation_from_t(const ChannelTMatrix& t);

}  // namespace noq

#include "noq/channels.hpp"

#include <cmath>

namespace noq {

Matrix QubitChannel::apply(const Matrix& x) const {
    Matrix out = Matrix::Zero(2, 2);
    for (const Matrix& k : kraus) out += k * x * k.adjoint();
    return out;
}

QubitChannel make_channel(const std::vector<Matrix>& kraus) {
    if (kraus.empty())
        throw std::invalid_argument("make_channel: empty Kraus list");
    Matrix s = Matrix::Zero(2, 2);
    for (const Matrix& k : kraus) {
        if (k.rows() != 2 || k.cols() != 2)
            throw std::invalid_argument("make_channel: Kraus operators must be 2x2");
        s += k.adjoint() * k;
    }
    const double defect = (s - identity(2)).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
        throw ValidationError(
            "make_channel: completeness violated (sum K^dag K - I defect=" +
            std::to_string(defect) + ")");
    return QubitChannel{kraus};
}

QubitChannel identity_channel() { return QubitChannel{{identity(2)}}; }

QubitChannel pauli_channel(const std::array<double, 4>& p) {
    double sum = 0.0;
    for (double pk : p) {
        if (pk < -1e-12)
            throw std::invalid_argument("pauli_channel: negative probability");
        sum += pk;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("pauli_channel: probabilities do not sum to 1");
    std::vector<Matrix> kraus;
    for (int k = 0; k < 4; ++k)
        if (p[k] > 0.0) kraus.push_back(std::sqrt(p[k]) * pauli(k));
    return make_channel(kraus);
}

QubitChannel amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("amplitude_damping: gamma must lie in [0, 1]");
    Matrix k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    return make_channel({k0, k1});
}

ChannelTMatrix t_matrix(const QubitChannel& chan) {
    ChannelTMatrix t;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            t(mu, nu) = 0.5 * (pauli(mu) * chan.apply(pauli(nu))).trace().real();
    return t;
}

Matrix apply_via_t(const ChannelTMatrix& t, const Matrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("apply_via_t: requires a 2x2 matrix");
    Eigen::Vector4cd x;
    for (int mu = 0; mu < 4; ++mu) x(mu) = (pauli(mu) * rho).trace();
    const Eigen::Vector4cd y = t.cast<Complex>() * x;
    Matrix out = Matrix::Zero(2, 2);
    for (int mu = 0; mu < 4; ++mu) out += 0.5 * y(mu) * pauli(mu);
    return out;
}

QubitChannel dual_channel(const QubitChannel& chan) {
    // Heisenberg dual: Kraus adjoints.  Unital by construction; it is
    // trace-preserving only when the original channel is unital, so no
    // completeness validation here.
    std::vector<Matrix> kraus;
    for (const Matrix& k : chan.kraus) kraus.push_back(k.adjoint().eval());
    return QubitChannel{kraus};
}

Eigen::Matrix3d rotation_from_unitary(const Matrix& u) {
    if (!is_unitary(u) || u.rows() != 2)
        throw std::invalid_argument("rotation_from_unitary: requires a 2x2 unitary");
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) =
                0.5 * (pauli(i + 1) * u * pauli(j + 1) * u.adjoint()).trace().real();
    return r;
}

Matrix unitary_from_rotation(const Eigen::Matrix3d& r) {
    if ((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() >
            1e-8 ||
        r.determinant() < 0.0)
        throw std::invalid_argument("unitary_from_rotation: not a rotation matrix");
    // quaternion extraction (Shepperd), then U = w I - i v.sigma
    double w, x, y, z;
    const double tr = r.trace();
    if (tr > 0.0) {
        const double s = std::sqrt(tr + 1.0) * 2.0;
        w = 0.25 * s;
        x = (r(2, 1) - r(1, 2)) / s;
        y = (r(0, 2) - r(2, 0)) / s;
        z = (r(1, 0) - r(0, 1)) / s;
    } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
        const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
        w = (r(2, 1) - r(1, 2)) / s;
        x = 0.25 * s;
        y = (r(0, 1) + r(1, 0)) / s;
        z = (r(0, 2) + r(2, 0)) / s;
    } else if (r(1, 1) > r(2, 2)) {
        const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
        w = (r(0, 2) - r(2, 0)) / s;
        x = (r(0, 1) + r(1, 0)) / s;
        y = 0.25 * s;
        z = (r(1, 2) + r(2, 1)) / s;
    } else {
        const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
        w = (r(1, 0) - r(0, 1)) / s;
        x = (r(0, 2) + r(2, 0)) / s;
        y = (r(1, 2) + r(2, 1)) / s;
        z = 0.25 * s;
    }
    const Complex i(0.0, 1.0);
    return w * identity(2) - i * (x * pauli(1) + y * pauli(2) + z * pauli(3));
}

CanonicalForm canonical_form(const QubitChannel& chan) {
    const ChannelTMatrix t = t_matrix(chan);
    const Eigen::Vector3d t0 = t.block<3, 1>(1, 0);
    const Eigen::Matrix3d block = t.block<3, 3>(1, 1);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(
        block, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU(), v = svd.matrixV();
    const double du = u.determinant(), dv = v.determinant();
    u.col(2) *= du;  // force both factors into SO(3)
    v.col(2) *= dv;
    CanonicalForm cf;
    const Eigen::Matrix3d ra = u.transpose(), rb = v;
    cf.lambda = svd.singularValues();
    cf.lambda(2) *= du * dv;  // det sign of the block
    cf.t = ra * t0;
    cf.u_a = unitary_from_rotation(ra);
    cf.u_b = unitary_from_rotation(rb);
    return cf;
}

ChannelTMatrix t_from_canonical(const CanonicalForm& cf) {
    const Eigen::Matrix3d ra = rotation_from_unitary(cf.u_a);
    const Eigen::Matrix3d rb = rotation_from_unitary(cf.u_b);
    ChannelTMatrix t = ChannelTMatrix::Zero();
    t(0, 0) = 1.0;
    t.block<3, 1>(1, 0) = ra.transpose() * cf.t;
    t.block<3, 3>(1, 1) =
        ra.transpose() * cf.lambda.asDiagonal() * rb.transpose();
    return t;
}

DensityMatrix channel_to_state(const QubitChannel& chan) {
    // (I (x) Omega)[phi+] = (1/2) sum_ij |i><j| (x) Omega[|i><j|]
    Matrix rho(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Matrix e = Matrix::Zero(2, 2);
            e(i, j) = 1.0;
            rho.block(i * 2, j * 2, 2, 2) = 0.5 * chan.apply(e);
        }
    return make_density(rho, Bipartition{2, 2});
}

QubitChannel state_to_channel(const DensityMatrix& rho) {
    if (rho.cut.dim_a != 2 || rho.cut.dim_b != 2)
        throw std::invalid_argument("state_to_channel: requires a two-qubit state");
    const Matrix marginal = partial_trace(rho.rho, rho.cut, Side::A);
    if ((marginal - 0.5 * identity(2)).cwiseAbs().maxCoeff() > 1e-8)
        throw ValidationError(
            "state_to_channel: marginal on A is not maximally mixed");
    // 2*rho is the Choi matrix sum_ij |i><j| (x) Omega[|i><j|]; its
    // eigenvectors, reshaped, are the Kraus operators.
    Eigen::SelfAdjointEigenSolver<Matrix> es(2.0 * rho.rho);
    std::vector<Matrix> kraus;
    for (Eigen::Index k = 0; k < 4; ++k) {
        const double lam = es.eigenvalues()(k);
        if (lam < 1e-12) continue;
        const Vector v = es.eigenvectors().col(k);
        Matrix m(2, 2);  // v = sum_ab c_ab |a>|b>, K|a> = sqrt(lam) c_ab |b>
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) m(b, a) = v(a * 2 + b);
        kraus.push_back(std::sqrt(lam) * m);
    }
    if (kraus.empty())
        throw ValidationError("state_to_channel: state has no support");
    // whiten so completeness holds exactly despite the 1e-8 marginal slack
    Matrix s = Matrix::Zero(2, 2);
    for (const Matrix& k : kraus) s += k.adjoint() * k;
    Eigen::SelfAdjointEigenSolver<Matrix> ws(s);
    const Matrix s_inv_sqrt =
        ws.eigenvectors() *
        ws.eigenvalues().cwiseMax(1e-15).cwiseSqrt().cwiseInverse().asDiagonal() *
        ws.eigenvectors().adjoint();
    for (Matrix& k : kraus) k = (k * s_inv_sqrt).eval();
    return make_channel(kraus);
}

CorrelationMatrix correlation_from_t(const ChannelTMatrix& t) {
    CorrelationMatrix r;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            r(mu, nu) = (mu == 2 ? -1.0 : 1.0) * t(nu, mu);
    return r;
}

}  // namespace noq

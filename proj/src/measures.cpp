#include "noq/measures.hpp"

#include <algorithm>
#include <cmath>

namespace noq {

namespace {

// <u_i| rho |u_j> block on side A (a d_b x d_b operator)
Matrix a_side_block(const Matrix& rho, const Bipartition& cut, const Matrix& u,
                    Eigen::Index i, Eigen::Index j) {
    const Eigen::Index da = cut.dim_a, db = cut.dim_b;
    Matrix x = Matrix::Zero(db, db);
    for (Eigen::Index p = 0; p < da; ++p)
        for (Eigen::Index q = 0; q < da; ++q)
            x.noalias() +=
                std::conj(u(p, i)) * u(q, j) * rho.block(p * db, q * db, db, db);
    return x;
}

// rho with the B factor rotated into the u basis, block by block
Matrix rotate_b_side(const Matrix& rho, const Bipartition& cut,
                     const Matrix& u) {
    const Eigen::Index da = cut.dim_a, db = cut.dim_b;
    Matrix r(rho.rows(), rho.cols());
    for (Eigen::Index a = 0; a < da; ++a)
        for (Eigen::Index b = 0; b < da; ++b)
            r.block(a * db, b * db, db, db) =
                u.adjoint() * rho.block(a * db, b * db, db, db) * u;
    return r;
}

// <u_m| rho |u_n> block on side B (a d_a x d_a operator), rho pre-rotated
Matrix b_side_block(const Matrix& rotated, const Bipartition& cut,
                    Eigen::Index m, Eigen::Index n) {
    const Eigen::Index da = cut.dim_a, db = cut.dim_b;
    Matrix x(da, da);
    for (Eigen::Index r = 0; r < da; ++r)
        for (Eigen::Index c = 0; c < da; ++c)
            x(r, c) = rotated(r * db + m, c * db + n);
    return x;
}

Matrix marginal_eigenbasis(const DensityMatrix& rho, Side side) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        partial_trace(rho.rho, rho.cut, side));
    return es.eigenvectors();
}

MeasureReport report_from(const std::string& name, const OptResult& opt) {
    MeasureReport rep;
    rep.measure = name;
    rep.value = opt.value;
    rep.method = "numeric";
    rep.bases = opt.bases;
    rep.restarts = opt.stats.restarts_used;
    rep.evaluations = opt.stats.evaluations;
    rep.gap = opt.stats.gap;
    if (!opt.stats.converged) rep.warning = "max-evaluations-exhausted";
    return rep;
}

// rotated copy of rho with the diagonal blocks (on `side`) zeroed: the
// off-diagonal remainder rho - dephased(rho), expressed in the u basis
Matrix off_diagonal_part(const DensityMatrix& rho, Side side,
                         const Matrix& u) {
    const Eigen::Index da = rho.cut.dim_a, db = rho.cut.dim_b;
    if (side == Side::A) {
        const Matrix w = kron(u, identity(db));
        Matrix r = w.adjoint() * rho.rho * w;
        for (Eigen::Index i = 0; i < da; ++i)
            r.block(i * db, i * db, db, db).setZero();
        return r;
    }
    Matrix r = rotate_b_side(rho.rho, rho.cut, u);
    for (Eigen::Index m = 0; m < db; ++m)
        for (Eigen::Index r1 = 0; r1 < da; ++r1)
            for (Eigen::Index c1 = 0; c1 < da; ++c1)
                r(r1 * db + m, c1 * db + m) = 0.0;
    return r;
}

}  // namespace

double negativity(const DensityMatrix& rho) {
    return 0.5 * (trace_norm(partial_transpose(rho.rho, rho.cut, Side::B)) - 1.0);
}

std::vector<EigenPair> mcs_pt_spectrum(const MCSCoefficients& mcs) {
    const Eigen::Index n = mcs.tau.rows();
    const Eigen::Index da = mcs.basis_a.rows(), db = mcs.basis_b.rows();
    std::vector<EigenPair> spec;
    spec.reserve(da * db);
    // the transpose acts in the computational basis of B, so the B-side
    // vectors enter conjugated
    const Matrix bc = mcs.basis_b.conjugate();
    for (Eigen::Index i = 0; i < n; ++i)
        spec.push_back(
            {mcs.tau(i, i).real(), kron(mcs.basis_a.col(i), bc.col(i))});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
            const Vector hi = kron(mcs.basis_a.col(i), bc.col(j));
            const Vector lo = kron(mcs.basis_a.col(j), bc.col(i));
            const Complex t = mcs.tau(j, i);  // tau_ji, i > j
            const double mag = std::abs(t);
            if (mag < 1e-14) {
                spec.push_back({0.0, hi});
                spec.push_back({0.0, lo});
                continue;
            }
            const Complex phase = t / mag;
            spec.push_back({mag, inv_sqrt2 * (hi + phase * lo)});
            spec.push_back({-mag, inv_sqrt2 * (hi - phase * lo)});
        }
    // basis vectors outside the n x n support span the kernel
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < db; ++j)
            if (i >= n || j >= n)
                spec.push_back({0.0, kron(mcs.basis_a.col(i), bc.col(j))});
    return spec;
}

double negativity_mcs(const MCSCoefficients& mcs) {
    return 0.5 * (l1_norm(mcs.tau) - 1.0);
}

double one_sided_objective(const DensityMatrix& rho, Side side,
                           const Matrix& u) {
    const Eigen::Index da = rho.cut.dim_a, db = rho.cut.dim_b;
    const Eigen::Index m = (side == Side::A) ? da : db;
    if (u.rows() != m || u.cols() != m)
        throw std::invalid_argument("one_sided_objective: basis dimension mismatch");
    double sum = 0.0;
    if (side == Side::A) {
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i; j < m; ++j) {
                const double t = trace_norm(a_side_block(rho.rho, rho.cut, u, i, j));
                sum += (i == j) ? t : 2.0 * t;  // ||X^dag||_1 = ||X||_1
            }
    } else {
        const Matrix rotated = rotate_b_side(rho.rho, rho.cut, u);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i; j < m; ++j) {
                const double t = trace_norm(b_side_block(rotated, rho.cut, i, j));
                sum += (i == j) ? t : 2.0 * t;
            }
    }
    return 0.5 * (sum - 1.0);
}

double two_sided_objective(const DensityMatrix& rho, const Matrix& ua,
                           const Matrix& ub) {
    const Eigen::Index da = rho.cut.dim_a, db = rho.cut.dim_b;
    if (ua.rows() != da || ub.rows() != db)
        throw std::invalid_argument("two_sided_objective: basis dimension mismatch");
    const Matrix t = rotate_b_side(rho.rho, rho.cut, ub);
    double l1 = 0.0;
    Matrix x(db, db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = i; j < da; ++j) {
            x.setZero();
            for (Eigen::Index p = 0; p < da; ++p)
                for (Eigen::Index q = 0; q < da; ++q)
                    x.noalias() += std::conj(ua(p, i)) * ua(q, j) *
                                   t.block(p * db, q * db, db, db);
            const double s = x.cwiseAbs().sum();
            l1 += (i == j) ? s : 2.0 * s;
        }
    return 0.5 * (l1 - 1.0);
}

MeasureReport noq_one_sided(const DensityMatrix& rho, Side side,
                            const OptimizerConfig& config) {
    const Eigen::Index d = (side == Side::A) ? rho.cut.dim_a : rho.cut.dim_b;
    const auto objective = [&](const std::vector<Matrix>& u) {
        return one_sided_objective(rho, side, u[0]);
    };
    const std::vector<std::vector<Matrix>> starts = {
        {identity(d)}, {marginal_eigenbasis(rho, side)}};
    const OptResult opt = minimize_over_bases(objective, {d}, config, starts);
    return report_from(side == Side::A ? "noq-a" : "noq-b", opt);
}

MeasureReport noq_two_sided(const DensityMatrix& rho,
                            const OptimizerConfig& config) {
    const auto objective = [&](const std::vector<Matrix>& u) {
        return two_sided_objective(rho, u[0], u[1]);
    };
    const std::vector<std::vector<Matrix>> starts = {
        {identity(rho.cut.dim_a), identity(rho.cut.dim_b)},
        {marginal_eigenbasis(rho, Side::A), marginal_eigenbasis(rho, Side::B)}};
    const OptResult opt = minimize_over_bases(
        objective, {rho.cut.dim_a, rho.cut.dim_b}, config, starts);
    return report_from("noq-ab", opt);
}

double noq_bell_diagonal(double r11, double r22, double r33) {
    // tetrahedron membership <=> the Bell probabilities are nonnegative
    Eigen::Matrix4d m;
    m << 1, 1, 1, 1,
         1, 1, -1, -1,
        -1, 1, -1, 1,
         1, -1, -1, 1;
    const Eigen::Vector4d p =
        0.25 * (m.transpose() * Eigen::Vector4d(1.0, r11, r22, r33));
    if (p.minCoeff() < -1e-10)
        throw ValidationError(
            "noq_bell_diagonal: point outside the Bell-diagonal tetrahedron");
    std::array<double, 3> mag{std::abs(r11), std::abs(r22), std::abs(r33)};
    std::sort(mag.begin(), mag.end());
    return 0.5 * mag[1];
}

MeasureReport noq_bell_diagonal_report(const DensityMatrix& rho) {
    const CorrelationMatrix r = correlation_matrix(rho);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (mu != nu && std::abs(r(mu, nu)) > 1e-10)
                throw ValidationError(
                    "noq_bell_diagonal_report: state is not Bell-diagonal");
    MeasureReport rep;
    rep.measure = "noq-bell-diagonal";
    rep.method = "closed-form";
    rep.value = noq_bell_diagonal(r(1, 1), r(2, 2), r(3, 3));
    // measuring along the strongest correlation axis attains the minimum
    int axis = 1;
    for (int k = 2; k <= 3; ++k)
        if (std::abs(r(k, k)) > std::abs(r(axis, axis))) axis = k;
    Eigen::SelfAdjointEigenSolver<Matrix> es(pauli(axis));
    rep.bases = {es.eigenvectors()};
    return rep;
}

double noq_mixed_marginal(const DensityMatrix& rho) {
    if (rho.cut.dim_a != 2 || rho.cut.dim_b != 2)
        throw std::invalid_argument("noq_mixed_marginal: requires a two-qubit state");
    const Matrix ma = partial_trace(rho.rho, rho.cut, Side::A);
    if ((ma - 0.5 * identity(2)).cwiseAbs().maxCoeff() > 1e-8)
        throw ValidationError(
            "noq_mixed_marginal: marginal on A is not maximally mixed");
    const CorrelationMatrix r = correlation_matrix(rho);
    const Eigen::Vector3d s =
        Eigen::JacobiSVD<Eigen::Matrix3d>(r.block<3, 3>(1, 1)).singularValues();
    return 0.5 * s(1);
}

double noq_werner(Eigen::Index d, double beta) {
    if (d < 2) throw std::invalid_argument("noq_werner: d must be >= 2");
    if (std::abs(beta) > 1.0 + 1e-12)
        throw std::domain_error("noq_werner: beta must lie in [-1, 1]");
    return std::abs(beta) * double(d - 1) / (2.0 * (double(d) + beta));
}

double noq_isotropic(Eigen::Index d, double lambda) {
    if (d < 2) throw std::invalid_argument("noq_isotropic: d must be >= 2");
    if (lambda < -1e-12 || lambda > 1.0 + 1e-12)
        throw std::domain_error("noq_isotropic: lambda must lie in [0, 1]");
    return std::abs(lambda * double(d * d) - 1.0) / (2.0 * (double(d) + 1.0));
}

double noq_isotropic_alt(Eigen::Index d, double lambda) {
    return 2.0 * noq_isotropic(d, lambda);
}

MeasureReport trace_norm_disturbance(const DensityMatrix& rho, Side side,
                                     const OptimizerConfig& config) {
    const Eigen::Index d = (side == Side::A) ? rho.cut.dim_a : rho.cut.dim_b;
    const auto objective = [&](const std::vector<Matrix>& u) {
        return 0.5 * trace_norm(off_diagonal_part(rho, side, u[0]));
    };
    const std::vector<std::vector<Matrix>> starts = {
        {identity(d)}, {marginal_eigenbasis(rho, side)}};
    const OptResult opt = minimize_over_bases(objective, {d}, config, starts);
    return report_from(side == Side::A ? "trace-norm-disturbance-a"
                                       : "trace-norm-disturbance-b",
                       opt);
}

MeasureReport trace_distance_discord(const DensityMatrix& rho,
                                     const OptimizerConfig& config) {
    if (rho.cut.dim_a != 2)
        throw std::invalid_argument(
            "trace_distance_discord: unsupported dimension (measured side must "
            "be a qubit)");
    MeasureReport rep = trace_norm_disturbance(rho, Side::A, config);
    rep.measure = "trace-distance-discord";
    return rep;
}

MeasureReport geometric_discord(const DensityMatrix& rho,
                                const OptimizerConfig& config) {
    const Eigen::Index da = rho.cut.dim_a;
    const auto objective = [&](const std::vector<Matrix>& u) {
        // ||rho - dephased||_2^2 = 2 sum_{i<j} ||<u_i|rho|u_j>||_F^2
        double acc = 0.0;
        for (Eigen::Index i = 0; i < da; ++i)
            for (Eigen::Index j = i + 1; j < da; ++j)
                acc += 2.0 * a_side_block(rho.rho, rho.cut, u[0], i, j).squaredNorm();
        return acc;
    };
    const std::vector<std::vector<Matrix>> starts = {
        {identity(da)}, {marginal_eigenbasis(rho, Side::A)}};
    const OptResult opt = minimize_over_bases(objective, {da}, config, starts);
    return report_from("geometric-discord", opt);
}

MeasureReport deficit(const DensityMatrix& rho, DeficitSides sides,
                      const OptimizerConfig& config) {
    const Eigen::Index da = rho.cut.dim_a, db = rho.cut.dim_b;
    const double s_rho = von_neumann_entropy(rho.rho);
    OptResult opt;
    if (sides == DeficitSides::A) {
        const auto objective = [&](const std::vector<Matrix>& u) {
            RealVector pooled(da * db);
            for (Eigen::Index i = 0; i < da; ++i)
                pooled.segment(i * db, db) = hermitian_eigenvalues(
                    a_side_block(rho.rho, rho.cut, u[0], i, i));
            return shannon_entropy(pooled);
        };
        const std::vector<std::vector<Matrix>> starts = {
            {identity(da)}, {marginal_eigenbasis(rho, Side::A)}};
        opt = minimize_over_bases(objective, {da}, config, starts);
    } else {
        const auto objective = [&](const std::vector<Matrix>& u) {
            RealVector p(da * db);
            for (Eigen::Index i = 0; i < da; ++i) {
                const Matrix x = a_side_block(rho.rho, rho.cut, u[0], i, i);
                for (Eigen::Index m = 0; m < db; ++m)
                    p(i * db + m) =
                        (u[1].col(m).adjoint() * x * u[1].col(m))(0, 0).real();
            }
            return shannon_entropy(p);
        };
        const std::vector<std::vector<Matrix>> starts = {
            {identity(da), identity(db)},
            {marginal_eigenbasis(rho, Side::A),
             marginal_eigenbasis(rho, Side::B)}};
        opt = minimize_over_bases(objective, {da, db}, config, starts);
    }
    MeasureReport rep = report_from(
        sides == DeficitSides::A ? "deficit-a" : "deficit-ab", opt);
    rep.value = opt.value - s_rho;  // S(dephased) - S(rho), in bits
    return rep;
}

KhasinCheck khasin_bound_check(const DensityMatrix& rho,
                               const OptimizerConfig& config) {
    KhasinCheck check;
    check.negativity = negativity(rho);
    check.bound_report = noq_two_sided(rho, config);
    check.bound_report.measure = "khasin-bound";
    check.bound = check.bound_report.value;
    check.holds = check.negativity <= check.bound + 1e-8;
    return check;
}

double ru_disturbance(const DensityMatrix& rho, const Matrix& basis_a) {
    if (rho.cut.dim_a != 2)
        throw std::invalid_argument("ru_disturbance: side A must be a qubit");
    if (basis_a.rows() != 2 || !is_unitary(basis_a))
        throw std::invalid_argument("ru_disturbance: basis must be a 2x2 unitary");
    const Matrix v = basis_a.col(0) * basis_a.col(0).adjoint() -
                     basis_a.col(1) * basis_a.col(1).adjoint();
    const Matrix w = kron(v, identity(rho.cut.dim_b));
    const double half_reflect = 0.5 * trace_norm(rho.rho - w * rho.rho * w.adjoint());
    const double dephased =
        trace_norm(rho.rho - dephase(rho.rho, rho.cut, Side::A, basis_a));
    if (std::abs(half_reflect - dephased) > 1e-12)
        throw std::logic_error("ru_disturbance: reflection identity violated");
    return half_reflect;
}

}  // namespace noq

#include "noq/activation.hpp"

#include <cmath>

namespace noq {

namespace {

// copying isometry |u_k>|m> -> |u_k>|m>|k> for one measured factor
Matrix copy_isometry_a(const Matrix& u, Eigen::Index db) {
    const Eigen::Index da = u.rows();
    Matrix w = Matrix::Zero(da * db * da, da * db);
    for (Eigen::Index k = 0; k < da; ++k) {
        const Matrix p = u.col(k) * u.col(k).adjoint();
        Vector e = Vector::Zero(da);
        e(k) = 1.0;
        w += kron(kron(p, identity(db)), Matrix(e));
    }
    return w;
}

Matrix copy_isometry_b(const Matrix& v, Eigen::Index da) {
    const Eigen::Index db = v.rows();
    Matrix w = Matrix::Zero(da * db * db, da * db);
    for (Eigen::Index l = 0; l < db; ++l) {
        const Matrix p = v.col(l) * v.col(l).adjoint();
        Vector e = Vector::Zero(db);
        e(l) = 1.0;
        w += kron(kron(identity(da), p), Matrix(e));
    }
    return w;
}

Matrix copy_isometry_ab(const Matrix& u, const Matrix& v) {
    const Eigen::Index da = u.rows(), db = v.rows();
    Matrix w = Matrix::Zero(da * db * da * db, da * db);
    for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index l = 0; l < db; ++l) {
            const Matrix pa = u.col(k) * u.col(k).adjoint();
            const Matrix pb = v.col(l) * v.col(l).adjoint();
            Vector e = Vector::Zero(da * db);
            e(k * db + l) = 1.0;
            w += kron(kron(pa, pb), Matrix(e));
        }
    return w;
}

// dephase one factor of a multi-factor space in the given local basis
Matrix dephase_factor(const Matrix& x, const std::vector<Eigen::Index>& dims,
                      size_t factor, const Matrix& u) {
    Eigen::Index pre = 1, post = 1;
    for (size_t f = 0; f < dims.size(); ++f) {
        if (f < factor) pre *= dims[f];
        if (f > factor) post *= dims[f];
    }
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (Eigen::Index k = 0; k < dims[factor]; ++k) {
        const Matrix p = kron(kron(identity(pre), u.col(k) * u.col(k).adjoint()),
                              identity(post));
        out += p * x * p;
    }
    return out;
}

}  // namespace

PreMeasurementState measurement_interaction(const DensityMatrix& rho,
                                            MeasuredSides sides,
                                            const std::vector<Matrix>& bases) {
    const Eigen::Index da = rho.cut.dim_a, db = rho.cut.dim_b;
    const size_t expected = (sides == MeasuredSides::AB) ? 2 : 1;
    if (bases.size() != expected)
        throw std::invalid_argument(
            "measurement_interaction: one basis per measured side required");
    for (const Matrix& u : bases)
        if (!is_unitary(u))
            throw std::invalid_argument(
                "measurement_interaction: basis is not unitary");

    Matrix w;
    Eigen::Index apparatus = 0;
    switch (sides) {
        case MeasuredSides::A:
            if (bases[0].rows() != da)
                throw std::invalid_argument(
                    "measurement_interaction: basis dimension mismatch");
            w = copy_isometry_a(bases[0], db);
            apparatus = da;
            break;
        case MeasuredSides::B:
            if (bases[0].rows() != db)
                throw std::invalid_argument(
                    "measurement_interaction: basis dimension mismatch");
            w = copy_isometry_b(bases[0], da);
            apparatus = db;
            break;
        case MeasuredSides::AB:
            if (bases[0].rows() != da || bases[1].rows() != db)
                throw std::invalid_argument(
                    "measurement_interaction: basis dimension mismatch");
            w = copy_isometry_ab(bases[0], bases[1]);
            apparatus = da * db;
            break;
    }
    PreMeasurementState pre;
    pre.state = make_density(w * rho.rho * w.adjoint(),
                             Bipartition{da * db, apparatus});
    pre.original_cut = rho.cut;
    pre.sides = sides;
    pre.bases = bases;
    return pre;
}

double premeasurement_negativity(const DensityMatrix& rho, MeasuredSides sides,
                                 const std::vector<Matrix>& bases) {
    return negativity(measurement_interaction(rho, sides, bases).state);
}

ClosestSeparable closest_separable_to_mcs(const MCSCoefficients& mcs) {
    Matrix diag = Matrix::Zero(mcs.tau.rows(), mcs.tau.cols());
    diag.diagonal() = mcs.tau.diagonal().real().cast<Complex>();
    ClosestSeparable out;
    out.state = mcs_to_density(make_mcs(diag, mcs.basis_a, mcs.basis_b));
    out.distance = l1_norm(mcs.tau) - mcs.tau.diagonal().real().sum();
    return out;
}

ClosestCC closest_cc_diagnostic(const DensityMatrix& rho, const Matrix& ua,
                                const Matrix& ub) {
    const Matrix cc = dephase_product(rho.rho, rho.cut, ua, ub);
    ClosestCC out;
    out.state = make_density(cc, rho.cut);
    out.distance = l1_norm_in_basis(rho.rho - cc, kron(ua, ub));
    return out;
}

RelativeEntropyCheck relative_entropy_isometry_check(const DensityMatrix& rho,
                                                     const Matrix& ua,
                                                     const Matrix& ub) {
    RelativeEntropyCheck check;
    // S(rho || product-dephased rho) = S(dephased) - S(rho)
    const Matrix dephased = dephase_product(rho.rho, rho.cut, ua, ub);
    check.before = von_neumann_entropy(dephased) - von_neumann_entropy(rho.rho);

    const PreMeasurementState pre =
        measurement_interaction(rho, MeasuredSides::AB, {ua, ub});
    const std::vector<Eigen::Index> dims = {rho.cut.dim_a, rho.cut.dim_b,
                                            rho.cut.dim_a * rho.cut.dim_b};
    const Matrix lifted =
        dephase_factor(dephase_factor(pre.state.rho, dims, 0, ua), dims, 1, ub);
    check.after =
        von_neumann_entropy(lifted) - von_neumann_entropy(pre.state.rho);
    return check;
}

}  // namespace noq

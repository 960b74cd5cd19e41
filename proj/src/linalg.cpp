#include "noq/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace noq {

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix pauli(int mu) {
    Matrix s(2, 2);
    const Complex i(0.0, 1.0);
    switch (mu) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -i, i, 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: index must be 0..3");
    }
    return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Complex hilbert_schmidt_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hilbert_schmidt_inner: dimension mismatch");
    return (a.adjoint() * b).trace();
}

double schatten_norm(const Matrix& a, double p) {
    if (p < 1.0) throw std::invalid_argument("schatten_norm: p must be >= 1");
    if (p == 1.0) return trace_norm(a);
    if (p == 2.0) return a.norm();  // Frobenius
    const RealVector s = singular_values(a);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) acc += std::pow(s(k), p);
    return std::pow(acc, 1.0 / p);
}

double trace_norm(const Matrix& a) {
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    if (a.rows() == 2 && a.cols() == 2) {
        // s+ + s- = sqrt(||a||_F^2 + 2|det a|)
        const double f2 = a.squaredNorm();
        const double d = std::abs(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
        return std::sqrt(f2 + 2.0 * d);
    }
    return singular_values(a).sum();
}

double frobenius_norm(const Matrix& a) { return a.norm(); }

double l1_norm(const Matrix& a) { return a.cwiseAbs().sum(); }

double l1_norm_in_basis(const Matrix& a, const Matrix& u) {
    if (a.rows() != a.cols() || u.rows() != a.rows() || u.rows() != u.cols())
        throw std::invalid_argument("l1_norm_in_basis: dimension mismatch");
    if (!is_unitary(u))
        throw std::invalid_argument("l1_norm_in_basis: basis is not unitary");
    return l1_norm(u.adjoint() * a * u);
}

static void check_cut(const Matrix& rho, const Bipartition& cut,
                      const char* who) {
    if (cut.dim_a <= 0 || cut.dim_b <= 0 || rho.rows() != rho.cols() ||
        rho.rows() != cut.dim())
        throw std::invalid_argument(std::string(who) +
                                    ": cut does not match matrix dimension");
}

Matrix partial_transpose(const Matrix& rho, const Bipartition& cut,
                         Side side) {
    check_cut(rho, cut, "partial_transpose");
    const Eigen::Index da = cut.dim_a, db = cut.dim_b;
    Matrix out(rho.rows(), rho.cols());
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            for (Eigen::Index m = 0; m < db; ++m)
                for (Eigen::Index n = 0; n < db; ++n) {
                    if (side == Side::B)
                        out(i * db + m, j * db + n) = rho(i * db + n, j * db + m);
                    else
                        out(i * db + m, j * db + n) = rho(j * db + m, i * db + n);
                }
    return out;
}

Matrix partial_trace(const Matrix& rho, const Bipartition& cut, Side keep) {
    check_cut(rho, cut, "partial_trace");
    const Eigen::Index da = cut.dim_a, db = cut.dim_b;
    if (keep == Side::A) {
        Matrix out = Matrix::Zero(da, da);
        for (Eigen::Index i = 0; i < da; ++i)
            for (Eigen::Index j = 0; j < da; ++j)
                for (Eigen::Index m = 0; m < db; ++m)
                    out(i, j) += rho(i * db + m, j * db + m);
        return out;
    }
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index m = 0; m < db; ++m)
        for (Eigen::Index n = 0; n < db; ++n)
            for (Eigen::Index i = 0; i < da; ++i)
                out(m, n) += rho(i * db + m, i * db + n);
    return out;
}

Matrix block_extract(const Matrix& rho, const Bipartition& cut,
                     const Matrix& basis_a, Eigen::Index i, Eigen::Index j) {
    check_cut(rho, cut, "block_extract");
    if (basis_a.rows() != cut.dim_a || basis_a.cols() != cut.dim_a)
        throw std::invalid_argument("block_extract: basis dimension mismatch");
    if (i < 0 || j < 0 || i >= cut.dim_a || j >= cut.dim_a)
        throw std::invalid_argument("block_extract: block index out of range");
    const Eigen::Index da = cut.dim_a, db = cut.dim_b;
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index p = 0; p < da; ++p)
        for (Eigen::Index q = 0; q < da; ++q) {
            const Complex c = std::conj(basis_a(p, i)) * basis_a(q, j);
            if (c == Complex(0.0, 0.0)) continue;
            out += c * rho.block(p * db, q * db, db, db);
        }
    return out;
}

Matrix dephase(const Matrix& rho, const Bipartition& cut, Side side,
               const Matrix& u) {
    check_cut(rho, cut, "dephase");
    const Eigen::Index da = cut.dim_a, db = cut.dim_b;
    if (side == Side::A) {
        const Matrix w = kron(u, identity(db));
        Matrix r = w.adjoint() * rho * w;
        for (Eigen::Index i = 0; i < da; ++i)
            for (Eigen::Index j = 0; j < da; ++j)
                if (i != j) r.block(i * db, j * db, db, db).setZero();
        return w * r * w.adjoint();
    }
    const Matrix w = kron(identity(da), u);
    Matrix r = w.adjoint() * rho * w;
    for (Eigen::Index m = 0; m < db; ++m)
        for (Eigen::Index n = 0; n < db; ++n)
            if (m != n)
                for (Eigen::Index i = 0; i < da; ++i)
                    for (Eigen::Index j = 0; j < da; ++j)
                        r(i * db + m, j * db + n) = 0.0;
    return w * r * w.adjoint();
}

Matrix dephase_product(const Matrix& rho, const Bipartition& cut,
                       const Matrix& ua, const Matrix& ub) {
    check_cut(rho, cut, "dephase_product");
    const Matrix w = kron(ua, ub);
    Matrix r = (w.adjoint() * rho * w).eval();
    Matrix d = Matrix::Zero(rho.rows(), rho.cols());
    d.diagonal() = r.diagonal();
    return w * d * w.adjoint();
}

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff() <= tol;
}

Matrix hermitize(const Matrix& a, double tol) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("hermitize: matrix is not square");
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol)
        throw ValidationError("hermitize: hermiticity violated (asymmetry=" +
                              std::to_string(asym) + ")");
    return 0.5 * (a + a.adjoint());
}

RealVector hermitian_eigenvalues(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

RealVector singular_values(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues();
}

double shannon_entropy(const RealVector& p) {
    double h = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k)
        if (p(k) > 1e-15) h -= p(k) * std::log2(p(k));
    return h;
}

double von_neumann_entropy(const Matrix& rho) {
    return shannon_entropy(hermitian_eigenvalues(rho));
}

double Rng::uniform() {
    // 53 random bits -> [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Matrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return g;
}

Matrix haar_unitary(Eigen::Index n, Rng& rng) {
    const Matrix g = ginibre(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        q.col(k) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace noq

// linalg.hpp -- dense complex matrices: inner products, Schatten and
// entrywise norms, partial transpose/trace, block extraction, dephasing.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace noq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Raised when an object fails one of its declared invariants (hermiticity,
// trace, positivity, completeness, ...).  The message names the invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Side { A, B };

// Tensor cut of a bipartite operator; row/col index factors as i*dim_b + j.
struct Bipartition {
    Eigen::Index dim_a = 0;
    Eigen::Index dim_b = 0;
    Eigen::Index dim() const { return dim_a * dim_b; }
};

// ----- basic builders -----

Matrix identity(Eigen::Index n);

// Pauli matrices, mu = 0 (identity), 1 (x), 2 (y), 3 (z).
Matrix pauli(int mu);

// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

// ----- inner products and norms -----

// <a, b> = tr(a^dag b); sesquilinear, conjugate-symmetric.
Complex hilbert_schmidt_inner(const Matrix& a, const Matrix& b);

// (sum_i s_i^p)^(1/p) over singular values; p >= 1, p = inf not needed here.
double schatten_norm(const Matrix& a, double p);

// Trace norm ||a||_1 = sum of singular values (closed form for n <= 2).
double trace_norm(const Matrix& a);

double frobenius_norm(const Matrix& a);

// Entrywise l1 norm sum_ij |a_ij| (in the computational basis).
double l1_norm(const Matrix& a);

// Entrywise l1 norm of u^dag a u; u must be unitary to 1e-10.
double l1_norm_in_basis(const Matrix& a, const Matrix& u);

// ----- structural operations on a bipartite cut -----

// Partial transpose on the given side; involutive, trace- and
// hermiticity-preserving.
Matrix partial_transpose(const Matrix& rho, const Bipartition& cut,
                         Side side = Side::B);

// Trace out the complement of `keep`.
Matrix partial_trace(const Matrix& rho, const Bipartition& cut, Side keep);

// Operator block <a_i| rho |a_j> on side A (a d_b x d_b matrix); the basis
// vectors a_i are the columns of `basis_a`.
Matrix block_extract(const Matrix& rho, const Bipartition& cut,
                     const Matrix& basis_a, Eigen::Index i, Eigen::Index j);

// Projective rank-1 measurement (dephasing) in the given local basis:
// rho -> sum_k P_k rho P_k with P_k = |u_k><u_k| on `side`.
Matrix dephase(const Matrix& rho, const Bipartition& cut, Side side,
               const Matrix& u);

// Dephase both sides in a product basis.
Matrix dephase_product(const Matrix& rho, const Bipartition& cut,
                       const Matrix& ua, const Matrix& ub);

// ----- spectra and validation helpers -----

bool is_unitary(const Matrix& u, double tol = 1e-10);

// Symmetrize (a + a^dag)/2; rejects asymmetry above tol (max abs entry).
Matrix hermitize(const Matrix& a, double tol = 1e-10);

// Ascending eigenvalues of a Hermitian matrix.
RealVector hermitian_eigenvalues(const Matrix& a);

// Descending singular values.
RealVector singular_values(const Matrix& a);

// Shannon entropy, in bits, of a nonnegative vector (values below 1e-15
// contribute zero); the vector need not be normalized.
double shannon_entropy(const RealVector& p);

// Von Neumann entropy in bits of a Hermitian PSD matrix.
double von_neumann_entropy(const Matrix& rho);

// ----- seeded randomness (explicit algorithm so streams are reproducible) -----

// mt19937_64 driven uniform/gaussian source; Box-Muller for gaussians so the
// stream does not depend on the standard library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    // uniform in [0, 1)
    double uniform();
    double gaussian();
    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Matrix of iid standard complex gaussians.
Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with phase fixing).
Matrix haar_unitary(Eigen::Index n, Rng& rng);

}  // namespace noq

// optimizer.hpp -- derivative-free minimization over tuples of local
// measurement bases: angle/phase parametrization of unitaries, multi-start
// Nelder-Mead with deterministic seeding, and an exhaustive qubit-grid
// oracle for cross-checks.
#pragma once

#include "noq/linalg.hpp"

#include <functional>
#include <vector>

namespace noq {

struct OptimizerConfig {
    int restarts = 32;             // low-discrepancy starting points
    std::uint64_t seed = 0;        // jitter seed; fixed seed => fixed result
    long max_evaluations = 50000;  // per restart
    double convergence_tol = 1e-7; // simplex value-spread target
    int qubit_grid_resolution = 64;  // theta divisions (phi uses 2x)
};

// Bases are represented by the unitary whose columns are the basis vectors;
// column phases and ordering are irrelevant to every objective we optimize.
// dim 2: Bloch angles (theta, phi).  dim >= 3: a fixed chain of complex
// Givens rotations, one (theta, phi) pair per plane, d(d-1) parameters.
class BasisParametrization {
  public:
    explicit BasisParametrization(Eigen::Index dim);

    Eigen::Index dim() const { return dim_; }
    int param_count() const { return int(planes_.size()) * 2; }

    // Period of each parameter (theta entries pi, phase entries 2*pi);
    // decode() is total on R^n, the period is used for start-point scaling.
    std::vector<double> scales() const;

    Matrix decode(const std::vector<double>& params) const;

    // Inverse up to column phases: decode(encode(u)) spans the same basis.
    std::vector<double> encode(const Matrix& u) const;

  private:
    Eigen::Index dim_;
    std::vector<std::pair<int, int>> planes_;  // Givens planes, fixed order
};

struct OptStats {
    int restarts_used = 0;
    long evaluations = 0;
    double gap = 0.0;        // best vs second-best restart outcome
    bool converged = false;  // best restart met the tolerance
};

struct OptResult {
    double value = 0.0;
    std::vector<Matrix> bases;
    std::vector<double> params;
    OptStats stats;
};

using BasisObjective =
    std::function<double(const std::vector<Matrix>&)>;

// Minimize objective(u_1, ..., u_k) over tuples of local bases of the given
// dimensions.  Runs `extra_starts` (explicit bases, e.g. marginal
// eigenbases supplied by the caller), a qubit-grid seed when applicable,
// and config.restarts low-discrepancy starts; each start is polished by
// Nelder-Mead.  Deterministic for a fixed config.  The returned value is
// the objective re-evaluated at the returned bases, hence always an upper
// bound on the true minimum.
OptResult minimize_over_bases(const BasisObjective& objective,
                              const std::vector<Eigen::Index>& dims,
                              const OptimizerConfig& config = {},
                              const std::vector<std::vector<Matrix>>&
                                  extra_starts = {});

// Exhaustive (theta, phi) scan for a single qubit basis on the dyadic grid
// theta = i*pi/res (i = 0..res), phi = j*pi/res (j = 0..2res-1); refining
// res doubles the grid onto a superset, so the minimum is monotone
// non-increasing.  Resolutions below 8 are rejected.
double brute_force_qubit_oracle(
    const std::function<double(const Matrix&)>& objective, int resolution);

}  // namespace noq

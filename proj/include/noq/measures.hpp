// measures.hpp -- entanglement negativity and measurement-based
// nonclassicality measures: basis-minimized pre-measurement negativity
// (one- and two-sided), closed forms for Bell-diagonal / maximally-mixed-
// marginal / Werner / isotropic families, trace-distance and geometric
// discord, work deficits, and the l1 bound on negativity.
#pragma once

#include "noq/linalg.hpp"
#include "noq/optimizer.hpp"
#include "noq/states.hpp"

#include <utility>
#include <vector>

namespace noq {

// Result of one measure evaluation.  `bases` holds the achieving local
// bases for numeric minimizations (one entry per optimized side).
struct MeasureReport {
    std::string measure;
    double value = 0.0;
    std::string method;  // "closed-form" | "numeric"
    std::vector<Matrix> bases;
    int restarts = 0;
    long evaluations = 0;
    double gap = 0.0;
    std::string warning;  // empty when none
};

// ----- entanglement negativity -----

// N = (||rho^PT||_1 - 1)/2, partial transpose on B.
double negativity(const DensityMatrix& rho);

// Spectrum of the partial transpose of a maximally correlated state,
// assembled analytically: tau_ii with eigenvector |a_i b*_i>, and for each
// i > j the pair +-|tau_ij| with (|a_i b*_j> +- phase |a_j b*_i>)/sqrt(2),
// where b* denotes the conjugated B-side vector (the transpose is taken in
// the computational basis of B); vanishing tau_ij contributes the two
// product vectors with eigenvalue 0.
struct EigenPair {
    double value;
    Vector vector;
};
std::vector<EigenPair> mcs_pt_spectrum(const MCSCoefficients& mcs);

// (sum_ij |tau_ij| - 1)/2, from the coefficients alone.
double negativity_mcs(const MCSCoefficients& mcs);

// ----- basis-minimized measures (numeric) -----

// Objective value at a fixed basis: (sum_ij ||<u_i|rho|u_j>||_1 - 1)/2 for
// a measurement on `side` (blocks taken on that side).
double one_sided_objective(const DensityMatrix& rho, Side side,
                           const Matrix& u);

// Objective value at a fixed product basis: (l1 norm in that basis - 1)/2.
double two_sided_objective(const DensityMatrix& rho, const Matrix& ua,
                           const Matrix& ub);

// min over local bases of the one-sided objective (negativity generated
// with the apparatus copying `side`).
MeasureReport noq_one_sided(const DensityMatrix& rho, Side side = Side::A,
                            const OptimizerConfig& config = {});

// min over product bases of the two-sided objective.
MeasureReport noq_two_sided(const DensityMatrix& rho,
                            const OptimizerConfig& config = {});

// ----- closed forms -----

// Bell-diagonal states: half the second-smallest of |r11|, |r22|, |r33|.
// Validates the tetrahedron constraints.
double noq_bell_diagonal(double r11, double r22, double r33);
MeasureReport noq_bell_diagonal_report(const DensityMatrix& rho);

// Two-qubit states with maximally mixed marginal on A: half the second
// singular value of the 3x3 correlation block.
double noq_mixed_marginal(const DensityMatrix& rho);

// Werner family: |beta| (d-1) / (2 (d + beta)).
double noq_werner(Eigen::Index d, double beta);

// Isotropic family.  Two closed forms differing by a factor of two
// circulate for this family; noq_isotropic is the one consistent with the
// lambda = 1 pure-state limit (d-1)/2 and with brute-force optimization
// (see the acceptance suite, which discriminates between the two).
double noq_isotropic(Eigen::Index d, double lambda);
double noq_isotropic_alt(Eigen::Index d, double lambda);

// ----- other measures -----

// min over bases on `side` of (1/2)||rho - dephased rho||_1 for any local
// dimension; for a qubit side this equals the one-sided minimization.
MeasureReport trace_norm_disturbance(const DensityMatrix& rho, Side side,
                                     const OptimizerConfig& config = {});

// Trace-distance discord, measured side A; requires d_A = 2 (the
// identification with the one-sided minimization is only valid there).
MeasureReport trace_distance_discord(const DensityMatrix& rho,
                                     const OptimizerConfig& config = {});

// min over bases on A of ||rho - dephased rho||_2^2.
MeasureReport geometric_discord(const DensityMatrix& rho,
                                const OptimizerConfig& config = {});

enum class DeficitSides { A, AB };

// Work deficit in bits: min over bases of S(dephased rho) - S(rho); one-way
// dephases A only, zero-way dephases both sides in a product basis.
MeasureReport deficit(const DensityMatrix& rho, DeficitSides sides,
                      const OptimizerConfig& config = {});

// Negativity never exceeds the basis-minimized l1 disturbance.
struct KhasinCheck {
    double negativity = 0.0;
    double bound = 0.0;
    bool holds = false;
    MeasureReport bound_report;
};
KhasinCheck khasin_bound_check(const DensityMatrix& rho,
                               const OptimizerConfig& config = {});

// For qubit A: (1/2)||rho - V rho V^dag||_1 with V = P0 - P1 built from the
// basis; checked against ||rho - dephased rho||_1 to 1e-12 before returning.
double ru_disturbance(const DensityMatrix& rho, const Matrix& basis_a);

}  // namespace noq

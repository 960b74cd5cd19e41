// activation.hpp -- the measurement interaction |u_k> -> |u_k>|k> that
// copies measured sides onto apparatus registers, the negativity of the
// resulting system:apparatus state, and the closest-classical-state
// diagnostics that certify the basis-minimized measures.
#pragma once

#include "noq/linalg.hpp"
#include "noq/measures.hpp"
#include "noq/states.hpp"

namespace noq {

enum class MeasuredSides { A, B, AB };

// Pre-measurement state over (system factors) (x) (apparatus registers);
// the bipartition of `state` is (d_a d_b) : (product of apparatus dims).
struct PreMeasurementState {
    DensityMatrix state;
    Bipartition original_cut;
    MeasuredSides sides;
    std::vector<Matrix> bases;  // one interaction basis per measured side
};

// Apply the copying isometry for each measured side: for AB the output
// lives on A B A' B' with cut (d_a d_b):(d_a d_b).  Purity is preserved;
// tracing out the apparatus returns the dephased input.
PreMeasurementState measurement_interaction(const DensityMatrix& rho,
                                            MeasuredSides sides,
                                            const std::vector<Matrix>& bases);

// Negativity across the system:apparatus cut of the pre-measurement state.
double premeasurement_negativity(const DensityMatrix& rho, MeasuredSides sides,
                                 const std::vector<Matrix>& bases);

// The closest separable (indeed classical) state to a maximally correlated
// state is its diagonal part; returns it with the trace distance
// sum_{i != j} |tau_ij| = 2 x negativity.
struct ClosestSeparable {
    DensityMatrix state;
    double distance = 0.0;
};
ClosestSeparable closest_separable_to_mcs(const MCSCoefficients& mcs);

// Within a fixed product basis the closest classically correlated state is
// the dephased one; returns it with the basis-l1 distance (which equals
// twice the two-sided objective at that basis).
struct ClosestCC {
    DensityMatrix state;
    double distance = 0.0;
};
ClosestCC closest_cc_diagnostic(const DensityMatrix& rho, const Matrix& ua,
                                const Matrix& ub);

// Relative entropy to the product-dephased state, before and after the
// measurement interaction in the same bases; the isometry leaves it
// unchanged.
struct RelativeEntropyCheck {
    double before = 0.0;
    double after = 0.0;
};
RelativeEntropyCheck relative_entropy_isometry_check(const DensityMatrix& rho,
                                                     const Matrix& ua,
                                                     const Matrix& ub);

}  // namespace noq

#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "qwit/states.hpp"

// Two-qubit tomography by linear inversion, the per-element fit of the mixing
// parameter v, and the concurrence/tangle calculator built on the spin-flip
// spectrum.

namespace qwit {

struct TomographyRecord {
    // (i, j) in {0..3}^2 -> estimated Tr[rho sigma_i (x) sigma_j]; (0,0) is 1.
    std::map<std::pair<int, int>, double> expectations;
    std::uint64_t shots_per_basis = 0;
};

TomographyRecord exact_expectations(const TwoQubitState& rho);

// Multinomial sampling over the 4 sign outcomes of each of the 9 local Pauli
// basis pairs; single-qubit expectations are averaged over the three bases
// that contain the axis. Deterministic for a fixed seed.
TomographyRecord sample_expectations(const TwoQubitState& rho, std::uint64_t shots_per_basis,
                                     std::uint64_t seed);

struct Reconstruction {
    TwoQubitState state; // relaxed validation: may carry small negative eigenvalues
    bool physical;
    double min_eigenvalue;
};

// (1/4) sum_ij e_ij sigma_i (x) sigma_j. Exact expectations invert exactly;
// sampled ones may produce an unphysical matrix, which is flagged rather than
// rejected. Throws if expectation pairs are missing.
Reconstruction reconstruct(const TomographyRecord& record);

struct VFit {
    double v_r11;
    double v_r22;
    double v_r33;
    double v_r44;
    double v_r23;
    double mean;
    double spread; // sample standard deviation of the five estimates
};

// Per-element inversion of the rho_v entry formulas.
VFit fit_v(const TwoQubitState& rho);

struct TangleReport {
    std::array<double, 4> lambdas; // spin-flip spectrum, descending
    double concurrence;
    double tangle; // concurrence squared
};

// R = rho Sigma rho^T Sigma with Sigma the antidiagonal (-1, 1, 1, -1) flip;
// C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)). Throws if the
// spectrum is materially complex or negative (invalid input).
TangleReport tangle(const TwoQubitState& rho);

const ComplexMatrix& spin_flip_matrix();

} // namespace qwit

#pragma once

#include <array>

#include "qwit/states.hpp"

// The polarization witness I/2 - |Psi-><Psi-| and its two evaluation routes:
// a direct operator trace and the (1 + <xx> + <yy> + <zz>)/4 combination of
// locally measured correlations.

namespace qwit {

class WitnessOperator {
  public:
    explicit WitnessOperator(ComplexMatrix m);

    // I/2 - |Psi-><Psi-| = (1/4) sum_i sigma_i (x) sigma_i
    static const WitnessOperator& singlet();

    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    ComplexMatrix matrix_;
};

struct PauliCorrelations {
    double exx;
    double eyy;
    double ezz;
};

// Joint sign probabilities for one measurement axis.
struct AxisSignProbs {
    double pp;
    double pm;
    double mp;
    double mm;

    double correlation() const { return pp + mm - pm - mp; }
    double total() const { return pp + pm + mp + mm; }
};

double witness_value_exact(const TwoQubitState& rho);

// (1 + exx + eyy + ezz) / 4
double witness_value_from_correlations(const PauliCorrelations& c);

// Each component is Tr[rho (sigma_i (x) sigma_i)].
PauliCorrelations pauli_correlations(const TwoQubitState& rho);

// Joint +/- outcome probabilities for the x, y, z axes (in that order).
std::array<AxisSignProbs, 3> axis_sign_probabilities(const TwoQubitState& rho);

} // namespace qwit

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qwit/matrix.hpp"

// State constructors: Pauli operators, Bell states, the one-parameter mixed
// family rho_v, the eight ancilla preparation settings and the tilde
// (off-diagonal sign flip) transform.
//
// Computational basis ordering is |HH>, |HV>, |VH>, |VV> with H -> 0, V -> 1.
// Bell phases: |Psi-> = (|HV> - |VH>)/sqrt2, |Phi+-> = (|HH> +- |VV>)/sqrt2.

namespace qwit {

// sigma_0 = I, sigma_1 = x, sigma_2 = y, sigma_3 = z
const ComplexMatrix& pauli(int i);

enum class Bell { phi_plus, phi_minus, psi_plus, psi_minus };

std::array<cd, 4> bell_vector(Bell b);
ComplexMatrix bell_projector(Bell b);

// Validated 4x4 density matrix. "validated" enforces Hermiticity, unit trace
// and positivity; "relaxed" skips the positivity rejection and records the
// minimum eigenvalue instead (tomographic reconstructions can dip slightly
// negative).
class TwoQubitState {
  public:
    static TwoQubitState validated(ComplexMatrix m, std::string label);
    static TwoQubitState relaxed(ComplexMatrix m, std::string label);

    const ComplexMatrix& matrix() const { return matrix_; }
    const std::string& label() const { return label_; }
    bool physical() const { return physical_; }
    double min_eigenvalue() const { return min_eigenvalue_; }

  private:
    TwoQubitState(ComplexMatrix m, std::string label, bool physical, double min_eig)
        : matrix_(std::move(m)), label_(std::move(label)), physical_(physical),
          min_eigenvalue_(min_eig) {}

    ComplexMatrix matrix_;
    std::string label_;
    bool physical_;
    double min_eigenvalue_;
};

// (1-v)|Psi-><Psi-| + v/2 (|HH><HH| + |VV><VV|), v in [0, 1].
TwoQubitState rho_v(double v);

// rho_v conjugated by a bit flip (sigma_x) on qubit A: the family actually
// analyzed in the time-shift demonstration, where a 45-degree half-wave plate
// sits in one arm. At v = 1 this is (|HV><HV| + |VH><VH|)/2.
TwoQubitState rho_v_flipped(double v);

// v = cos^2(2 theta), theta in degrees.
double v_from_theta(double theta_deg);

struct MixingAngle {
    double theta_deg;
    double v;

    static MixingAngle from_theta(double theta_deg) {
        return {theta_deg, v_from_theta(theta_deg)};
    }
};

// Ancilla preparation settings. Indices 1..4 and 4' are pure Bloch states
// (I + n.sigma)/2; index 0 is maximally mixed.
enum class AncillaIndex { mixed0, x1, y2, z3, diag4, diag4p };

std::string ancilla_label(AncillaIndex idx);

class AncillaState {
  public:
    explicit AncillaState(AncillaIndex idx);

    AncillaIndex index() const { return index_; }
    const ComplexMatrix& matrix() const { return matrix_; }
    double purity() const;

  private:
    AncillaIndex index_;
    ComplexMatrix matrix_;
};

enum class PairClass { same_sign, mixed_sign };

// The six (tau, omega) preparation pairs that span the witness for one
// announced-outcome class. Union over both classes: eight distinct settings.
std::vector<std::pair<AncillaState, AncillaState>> ancilla_set(PairClass cls);

// <j|m~|i> = (-1)^(i+j) <j|m|i>: flips the sign of both off-diagonal entries.
ComplexMatrix tilde(const ComplexMatrix& m);

} // namespace qwit

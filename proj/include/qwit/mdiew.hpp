#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwit/detection.hpp"
#include "qwit/states.hpp"
#include "qwit/witness.hpp"

// Measurement-device-independent witness: Bell-state-measurement statistics
// p(a,b|tau_s, omega_t), the coefficient solver that expands the witness over
// ancilla preparations, the combined figure of merit J, and an adversarial
// harness where both measurement POVMs are arbitrary.
//
// Factor ordering for the 16-dimensional joint space is
// (Alice ancilla, system A, system B, Bob ancilla); Alice's BSM acts on
// factors 1-2, Bob's on factors 3-4. Announced sign + maps to the Phi+
// projection, - to Phi-; Psi outcomes are simulated but never announced.

namespace qwit {

enum class BsmSign { plus, minus };

struct BsmOutcome {
    BsmSign alice;
    BsmSign bob;
};

enum class OutcomeClass { pp, mm, pm, mp };

std::string outcome_class_label(OutcomeClass cls);
OutcomeClass outcome_class_of(BsmOutcome o);
constexpr std::array<OutcomeClass, 4> kOutcomeClasses{OutcomeClass::pp, OutcomeClass::mm,
                                                      OutcomeClass::pm, OutcomeClass::mp};

// Tr[(M^a (x) M^b)(tau (x) rho (x) omega)] with M the Phi+/Phi- projectors.
double bsm_probability(const TwoQubitState& rho, const AncillaState& tau,
                       const AncillaState& omega, BsmOutcome outcome);

// Same with an explicit Bell outcome on each side (all 16 combinations).
double bsm_probability_full(const TwoQubitState& rho, const AncillaState& tau,
                            const AncillaState& omega, Bell alice, Bell bob);

struct BetaEntry {
    AncillaIndex s;
    AncillaIndex t;
    double beta;
};

struct DecompositionError : std::runtime_error {
    DecompositionError(const std::string& what, double residual_norm)
        : std::runtime_error(what), residual(residual_norm) {}
    double residual;
};

// Witness expansion coefficients for one announced-outcome class.
struct CoefficientTable {
    OutcomeClass cls;
    std::vector<BetaEntry> entries;

    double beta(AncillaIndex s, AncillaIndex t) const;
};

// Least-squares solve of W = sum beta_st B_st where B_st is
// (transformed tau_s)^T (x) (transformed omega_t)^T and the transform applies
// the tilde flip on each side announcing a minus. Throws DecompositionError
// if the basis cannot express W (residual >= 1e-10).
CoefficientTable solve_beta(const WitnessOperator& w,
                            const std::vector<std::pair<AncillaState, AncillaState>>& basis,
                            OutcomeClass cls);

// Rebuild sum beta_st B_st from a table; used to check the reconstruction
// identity against W.
ComplexMatrix reconstruct_witness(const CoefficientTable& table);

struct MdiewTables {
    std::array<CoefficientTable, 4> tables; // indexed like kOutcomeClasses

    const CoefficientTable& for_class(OutcomeClass cls) const;

    // Six-setting decomposition per class (the eight distinct preparations).
    static const MdiewTables& standard();
    // Ten-term decomposition over the sigma-eigenstate settings {0..3}^2.
    static const MdiewTables& ten_term();
};

struct MdiewContribution {
    OutcomeClass cls;
    AncillaIndex s;
    AncillaIndex t;
    double beta;
    double probability;
};

struct MdiewResult {
    double j_value = 0.0;
    std::vector<MdiewContribution> contributions;
    std::optional<double> std_error;
};

// J for a single announced-outcome class: sum_st beta * p(a,b|s,t).
MdiewResult j_value_exact(const TwoQubitState& rho, const MdiewTables& tables,
                          OutcomeClass cls);

// All four classes averaged with the 1/4 prefactor.
MdiewResult j_value_combined(const TwoQubitState& rho, const MdiewTables& tables);

using SettingKey = std::pair<AncillaIndex, AncillaIndex>;

// One record per preparation setting; counts are keyed by announced class
// label ("++", "+-", "-+", "--"), discarded outcomes stay in the trials
// denominator.
std::map<SettingKey, CountRecord> simulate_mdiew_counts(const TwoQubitState& rho,
                                                        std::uint64_t trials_per_setting,
                                                        std::uint64_t seed);

// Count-based J estimate with binomial error propagation; single class when
// cls is set, combined otherwise. Throws if a setting with nonzero beta has
// no usable record.
MdiewResult j_value_from_counts(const std::map<SettingKey, CountRecord>& records,
                                const MdiewTables& tables,
                                std::optional<OutcomeClass> cls = std::nullopt);

// A four-outcome measurement per side with announced labels {+, -} and a
// discard element; elements positive semidefinite, summing to identity.
struct BsmPovm {
    ComplexMatrix plus;
    ComplexMatrix minus;
    ComplexMatrix discard;

    static BsmPovm validated(ComplexMatrix plus, ComplexMatrix minus, ComplexMatrix discard);
    static BsmPovm honest(); // Phi+ / Phi- / (Psi+ + Psi-)
    const ComplexMatrix& element(BsmSign sign) const;
};

// J when Eve's announced measurements are arbitrary POVMs instead of Bell
// projections; sigma should be a convex mixture of product states.
MdiewResult j_value_adversarial(const TwoQubitState& sigma, const BsmPovm& alice,
                                const BsmPovm& bob, const MdiewTables& tables,
                                std::optional<OutcomeClass> cls = std::nullopt);

// Random ensembles (full-support Gaussian constructions) shared by tests and
// the adversary sweep.
ComplexMatrix random_density_matrix(Rng& rng, std::size_t dim);
TwoQubitState random_product_state(Rng& rng);
TwoQubitState random_separable_state(Rng& rng);
ComplexMatrix random_unitary2(Rng& rng);
BsmPovm random_povm(Rng& rng);

struct AdversaryDraw {
    std::uint64_t index = 0;
    double j_combined = 0.0;
    std::array<double, 4> j_single{};
};

struct AdversarySweep {
    double min_combined = 0.0;
    double min_single = 0.0;
    std::vector<AdversaryDraw> draws;
};

// draws seeded (separable state, POVM pair) samples; per-draw substreams make
// the sweep order-independent.
AdversarySweep adversary_sweep(std::uint64_t draws, std::uint64_t seed,
                               const MdiewTables& tables);

} // namespace qwit

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "qwit/rng.hpp"
#include "qwit/witness.hpp"

// Detector-side model: Gaussian timing jitter against a hard coincidence
// gate, the outcome-dependent suppression an adversary gets by delaying one
// detector of each pair, and seeded Monte Carlo count generation.

namespace qwit {

// Operating point of the time-shift demonstration: a 4 ns gate, a 5.5 ns
// injected delay, and same-sign coincidences suppressed to 10.9% of their
// original rate.
inline constexpr double kDemoDeltaTNs = 5.5;
inline constexpr double kDemoWindowNs = 4.0;
inline constexpr double kDemoSuppression = 0.109;

enum class DetectorMode { honest, time_shift };

struct DetectorModel {
    double delta_t_ns = 0.0;      // relative delay injected between detector pairs
    double jitter_sigma_ns = 0.0; // per-detector Gaussian timing spread
    double window_ns = kDemoWindowNs;
    DetectorMode mode = DetectorMode::honest;
};

// Coincidence-acceptance probability per announced sign pair.
struct SuppressionProfile {
    double pp = 1.0;
    double pm = 1.0;
    double mp = 1.0;
    double mm = 1.0;
};

// P(|T1 - T2 + delta_t| <= window/2) with T1, T2 ~ N(0, jitter_sigma^2)
// independent. jitter_sigma = 0 degenerates to the indicator |delta_t| <= window/2.
double coincidence_efficiency(double delta_t_ns, double jitter_sigma_ns, double window_ns);

// Jitter spread solving coincidence_efficiency(5.5, sigma, 4) = 0.109 on the
// rising branch (bisection); the fitted stand-in for the demo's detector
// timing. Cached after the first call.
double fitted_jitter_sigma();

// honest -> all ones; time-shift -> same-sign pairs take the gate efficiency
// at delta_t, mixed-sign pairs stay at 1 (the shifted detectors share no
// same-sign coincidence path with the unshifted pair).
SuppressionProfile suppression_profile(const DetectorModel& model);

// Closed-form attack oracle: reweight each axis' joint sign probabilities by
// the profile, renormalize, recombine into (1 + e'xx + e'yy + e'zz)/4.
// Throws if some axis has no surviving coincidences.
double attacked_witness_value(const TwoQubitState& rho, const SuppressionProfile& profile);

struct CountRecord {
    std::string setting;
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t trials = 0;

    std::uint64_t total_counts() const;
};

// Per trial: draw an outcome from outcome_probs (an incomplete map leaves the
// remainder unannounced), then keep it with its efficiency. Missing
// efficiency entries default to 1. Deterministic for a fixed seed.
CountRecord sample_counts(const std::string& setting,
                          const std::map<std::string, double>& outcome_probs,
                          const std::map<std::string, double>& efficiencies,
                          std::uint64_t trials, std::uint64_t seed);

struct AttackEstimate {
    double witness = 0.0;
    double std_error = 0.0;
    std::array<double, 3> axis_correlations{};
};

// Monte Carlo counterpart of attacked_witness_value: trials_per_axis draws
// per measurement axis, correlations estimated from surviving counts.
AttackEstimate simulate_attacked_witness(const TwoQubitState& rho,
                                         const SuppressionProfile& profile,
                                         std::uint64_t trials_per_axis, std::uint64_t seed);

} // namespace qwit

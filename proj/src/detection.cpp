#include "qwit/detection.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qwit {

namespace {

double gauss_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

const char* kSignLabels[4] = {"++", "+-", "-+", "--"};

} // namespace

double coincidence_efficiency(double delta_t_ns, double jitter_sigma_ns, double window_ns) {
    if (!(window_ns > 0.0)) {
        throw std::invalid_argument("coincidence window must be positive");
    }
    if (jitter_sigma_ns < 0.0) {
        throw std::invalid_argument("jitter sigma must be nonnegative");
    }
    if (jitter_sigma_ns == 0.0) {
        return std::abs(delta_t_ns) <= window_ns / 2.0 ? 1.0 : 0.0;
    }
    // T1 - T2 spreads as sigma * sqrt(2)
    const double s = jitter_sigma_ns * std::sqrt(2.0);
    return gauss_cdf((window_ns / 2.0 - delta_t_ns) / s) -
           gauss_cdf((-window_ns / 2.0 - delta_t_ns) / s);
}

double fitted_jitter_sigma() {
    static const double sigma = [] {
        const auto f = [](double s) {
            return coincidence_efficiency(kDemoDeltaTNs, s, kDemoWindowNs);
        };
        // locate the efficiency peak, then bisect on the rising branch
        double lo = 1e-9, hi = 100.0;
        for (int i = 0; i < 200; ++i) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (f(m1) < f(m2)) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        const double peak = 0.5 * (lo + hi);
        if (f(peak) < kDemoSuppression) {
            throw std::runtime_error("suppression target above the efficiency peak");
        }
        double a = 1e-9, b = peak;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (a + b);
            if (f(mid) < kDemoSuppression) {
                a = mid;
            } else {
                b = mid;
            }
        }
        return 0.5 * (a + b);
    }();
    return sigma;
}

SuppressionProfile suppression_profile(const DetectorModel& model) {
    if (!(model.window_ns > 0.0) || model.jitter_sigma_ns < 0.0) {
        throw std::invalid_argument("invalid detector model");
    }
    SuppressionProfile p;
    if (model.mode == DetectorMode::honest) {
        return p;
    }
    const double eff =
        coincidence_efficiency(model.delta_t_ns, model.jitter_sigma_ns, model.window_ns);
    p.pp = eff;
    p.mm = eff;
    return p;
}

double attacked_witness_value(const TwoQubitState& rho, const SuppressionProfile& profile) {
    for (double e : {profile.pp, profile.pm, profile.mp, profile.mm}) {
        if (e < 0.0 || e > 1.0) {
            throw std::invalid_argument("suppression profile entries must lie in [0, 1]");
        }
    }
    const auto axes = axis_sign_probabilities(rho);
    double sum_corr = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const AxisSignProbs& p = axes[i];
        const AxisSignProbs w{p.pp * profile.pp, p.pm * profile.pm,
                              p.mp * profile.mp, p.mm * profile.mm};
        const double total = w.total();
        if (total <= 0.0) {
            throw std::runtime_error("no coincidences survive on axis " +
                                     std::string(1, "xyz"[i]));
        }
        sum_corr += w.correlation() / total;
    }
    return (1.0 + sum_corr) / 4.0;
}

std::uint64_t CountRecord::total_counts() const {
    std::uint64_t n = 0;
    for (const auto& [label, c] : counts) {
        n += c;
    }
    return n;
}

CountRecord sample_counts(const std::string& setting,
                          const std::map<std::string, double>& outcome_probs,
                          const std::map<std::string, double>& efficiencies,
                          std::uint64_t trials, std::uint64_t seed) {
    double total = 0.0;
    for (const auto& [label, p] : outcome_probs) {
        if (p < 0.0) {
            throw std::invalid_argument("negative probability for outcome " + label);
        }
        total += p;
    }
    if (total > 1.0 + 1e-12) {
        throw std::invalid_argument("outcome probabilities sum above 1");
    }
    std::vector<std::pair<std::string, double>> cumulative;
    cumulative.reserve(outcome_probs.size());
    std::vector<double> eff;
    double acc = 0.0;
    for (const auto& [label, p] : outcome_probs) {
        acc += p;
        cumulative.emplace_back(label, acc);
        const auto it = efficiencies.find(label);
        const double e = (it == efficiencies.end()) ? 1.0 : it->second;
        if (e < 0.0 || e > 1.0) {
            throw std::invalid_argument("efficiency outside [0, 1] for outcome " + label);
        }
        eff.push_back(e);
    }

    CountRecord rec;
    rec.setting = setting;
    rec.trials = trials;
    for (const auto& [label, p] : outcome_probs) {
        rec.counts[label] = 0;
    }
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double u = rng.next_double();
        std::size_t pick = cumulative.size();
        for (std::size_t k = 0; k < cumulative.size(); ++k) {
            if (u < cumulative[k].second) {
                pick = k;
                break;
            }
        }
        if (pick == cumulative.size()) {
            continue; // unannounced remainder
        }
        if (eff[pick] < 1.0 && rng.next_double() >= eff[pick]) {
            continue;
        }
        ++rec.counts[cumulative[pick].first];
    }
    return rec;
}

AttackEstimate simulate_attacked_witness(const TwoQubitState& rho,
                                         const SuppressionProfile& profile,
                                         std::uint64_t trials_per_axis, std::uint64_t seed) {
    if (trials_per_axis == 0) {
        throw std::invalid_argument("trials_per_axis must be positive");
    }
    const auto axes = axis_sign_probabilities(rho);
    const double prof[4] = {profile.pp, profile.pm, profile.mp, profile.mm};

    AttackEstimate est;
    double var_sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        std::map<std::string, double> probs;
        std::map<std::string, double> eff;
        const double raw[4] = {axes[i].pp, axes[i].pm, axes[i].mp, axes[i].mm};
        for (int k = 0; k < 4; ++k) {
            probs[kSignLabels[k]] = raw[k];
            eff[kSignLabels[k]] = prof[k];
        }
        const CountRecord rec = sample_counts(std::string(1, "xyz"[i]), probs, eff,
                                              trials_per_axis,
                                              derive_stream_seed(seed, i));
        const auto n = [&rec](const char* label) {
            return static_cast<double>(rec.counts.at(label));
        };
        const double survived = static_cast<double>(rec.total_counts());
        if (survived == 0.0) {
            throw std::runtime_error("no coincidences survive on axis " +
                                     std::string(1, "xyz"[i]));
        }
        const double corr = (n("++") + n("--") - n("+-") - n("-+")) / survived;
        est.axis_correlations[i] = corr;
        var_sum += (1.0 - corr * corr) / survived;
    }
    est.witness =
        (1.0 + est.axis_correlations[0] + est.axis_correlations[1] + est.axis_correlations[2]) /
        4.0;
    est.std_error = std::sqrt(var_sum) / 4.0;
    return est;
}

} // namespace qwit

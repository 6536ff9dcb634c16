#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace homeostat {

// Firing rates of every dynamic neuron (all layers after the input
// channels, flattened in layer order) over one trial.
struct TrialRecord {
    std::vector<double> rates;
    std::size_t steps = 0;
    std::size_t trial = 0;
    std::string condition = "base";
};

/// rate_i = count_i / steps. Throws EmptyTrialError for steps == 0 and
/// ConfigError when a count exceeds steps.
TrialRecord firing_rates(std::span<const std::size_t> counts, std::size_t steps);

struct HomeostasisMetrics {
    double hm_mean = 0.0;
    double hm_std = 0.0;
};

/// Mean and population std of |f_base - f_degraded| over all (neuron, trial)
/// pairs, trials paired by position. Throws PairingError on mismatch.
HomeostasisMetrics hm_metrics(std::span<const TrialRecord> base,
                              std::span<const TrialRecord> degraded);

struct LegacyMetrics {
    double fr_mean = 0.0;      // mean over trials of the per-trial mean rate
    double fr_std_mean = 0.0;  // mean over trials of the per-trial rate std
    double fr_std_std = 0.0;   // std over trials of the per-trial rate std
};

/// Throws EmptyTrialError when `trials` is empty.
LegacyMetrics legacy_fr_metrics(std::span<const TrialRecord> trials);

/// Population mean / std helpers shared with the experiment code.
double mean(std::span<const double> x);
double population_std(std::span<const double> x);

} // namespace homeostat

#include "homeostat/metrics.hpp"

#include "homeostat/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homeostat {

namespace {

// Sums in ascending order so that permuted inputs give bit-identical results.
double sorted_sum(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum;
}

} // namespace

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return sorted_sum({x.begin(), x.end()}) / static_cast<double>(x.size());
}

double population_std(std::span<const double> x) {
    if (x.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*lo == *hi) return 0.0;
    const double mu = mean(x);
    std::vector<double> sq;
    sq.reserve(x.size());
    for (double v : x) sq.push_back((v - mu) * (v - mu));
    return std::sqrt(sorted_sum(std::move(sq)) / static_cast<double>(x.size()));
}

TrialRecord firing_rates(std::span<const std::size_t> counts, std::size_t steps) {
    if (steps == 0) throw EmptyTrialError("firing_rates: trial has no steps");
    TrialRecord rec;
    rec.steps = steps;
    rec.rates.reserve(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > steps) {
            throw ConfigError("firing_rates: neuron " + std::to_string(i) + " has " +
                              std::to_string(counts[i]) + " spikes in " + std::to_string(steps) +
                              " steps");
        }
        rec.rates.push_back(static_cast<double>(counts[i]) / static_cast<double>(steps));
    }
    return rec;
}

HomeostasisMetrics hm_metrics(std::span<const TrialRecord> base,
                              std::span<const TrialRecord> degraded) {
    if (base.size() != degraded.size()) {
        throw PairingError("hm_metrics: " + std::to_string(base.size()) + " base trials vs " +
                           std::to_string(degraded.size()) + " degraded trials");
    }
    std::vector<double> diffs;
    for (std::size_t p = 0; p < base.size(); ++p) {
        const auto& a = base[p].rates;
        const auto& b = degraded[p].rates;
        if (a.size() != b.size()) {
            throw PairingError("hm_metrics: trial " + std::to_string(p) + " has " +
                               std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                               " neurons");
        }
        for (std::size_t i = 0; i < a.size(); ++i) diffs.push_back(std::abs(a[i] - b[i]));
    }
    return {mean(diffs), population_std(diffs)};
}

LegacyMetrics legacy_fr_metrics(std::span<const TrialRecord> trials) {
    if (trials.empty()) throw EmptyTrialError("legacy_fr_metrics: no trials");
    std::vector<double> means;
    std::vector<double> stds;
    for (const auto& t : trials) {
        means.push_back(mean(t.rates));
        stds.push_back(population_std(t.rates));
    }
    return {mean(means), mean(stds), population_std(stds)};
}

} // namespace homeostat

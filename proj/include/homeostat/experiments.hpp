#pragma once

#include "homeostat/checkpoint.hpp"
#include "homeostat/degradation.hpp"
#include "homeostat/metrics.hpp"
#include "homeostat/network.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace homeostat {

// ---------------------------------------------------------------------------
// Toy scenario: a small hand-wired network whose single output neuron is
// driven towards a firing rate near 1. The adapter acts on the output
// boundary only.
// ---------------------------------------------------------------------------

struct ToyScenario {
    std::vector<std::size_t> layer_sizes{4, 16, 1};
    double input_rate = 0.9;
    // Uniform weight per boundary, input side first.
    std::vector<double> boundary_weights{0.5, 0.1};
    std::size_t steps = 3000;
    NeuronKind neuron = NeuronKind::Lif;
    LifConfig lif;
    SrmConfig srm;
    AdapterConfig adapter;  // `kind` is overridden by run_toy
    std::uint64_t seed = 1;

    void validate() const;
};

struct TraceLog {
    AdapterKind kind = AdapterKind::None;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    std::vector<double> rate;         // output neuron running rate c(t)
    std::vector<double> theta;        // effective modification threshold
    std::vector<double> theta_m;      // sliding threshold (0 without adapter)
    std::vector<double> mean_weight;  // mean of the adapted output weights

    std::size_t size() const { return rate.size(); }
};

Checkpoint toy_checkpoint(const ToyScenario& scenario);

TraceLog run_toy(AdapterKind kind, const ToyScenario& scenario);

struct ClassifierConfig {
    std::size_t window = 500;
    double tol = 0.02;
    std::size_t min_crossings = 6;
    double min_amplitude = 0.1;
};

struct Converged {
    double final_rate = 0.0;
    double final_gap = 0.0;  // |c - theta| at the last step
    double mean_gap = 0.0;   // mean |c - theta| over the window
};

struct Oscillating {
    std::size_t crossings = 0;
    double amplitude = 0.0;
};

struct Undetermined {
    std::size_t crossings = 0;
    double amplitude = 0.0;
    double mean_gap = 0.0;
};

using StabilityVerdict = std::variant<Converged, Oscillating, Undetermined>;

/// Looks at the final `window` steps. Converged when the rate range and the
/// mean |c - theta| are both within tol; Oscillating when c crosses its
/// trailing window mean at least min_crossings times with peak-to-trough
/// amplitude >= min_amplitude; Undetermined otherwise. Needs >= 2 * window
/// steps (ConfigError otherwise).
StabilityVerdict classify_trace(std::span<const double> rate, std::span<const double> theta,
                                const ClassifierConfig& cfg);
StabilityVerdict classify_trace(const TraceLog& trace, const ClassifierConfig& cfg);

std::string verdict_name(const StabilityVerdict& v);

// ---------------------------------------------------------------------------
// Degradation suite
// ---------------------------------------------------------------------------

struct Condition {
    std::string name;
    std::optional<InputPerturbation> input;
    std::optional<WeightPerturbation> weights;
};

struct AdapterSetup {
    std::string name = "none";
    AdapterConfig weight;                   // kind None disables weight adaptation
    std::optional<BdettConfig> bdett;       // dynamic thresholds on every layer
    std::vector<std::size_t> boundaries;    // adapted boundaries; empty = all
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 10;
    std::size_t steps = 100;
    std::size_t bank_size = 0;  // 0: one observation per trial
    NeuronKind neuron = NeuronKind::Lif;
    LifConfig lif;
    SrmConfig srm;
    std::vector<std::size_t> layer_sizes;  // optional topology check
    std::vector<Condition> conditions;
    std::vector<AdapterSetup> adapters{AdapterSetup{}};

    void validate() const;
};

inline constexpr const char* kBaseCondition = "base";

struct TrialResult {
    std::string adapter;
    std::string condition;
    std::size_t trial = 0;
    std::uint64_t encode_seed = 0;
    std::uint64_t perturb_seed = 0;
    std::size_t steps = 0;
    std::vector<std::size_t> counts;          // dynamic neurons, layer order
    std::vector<std::vector<double>> layer_trace;  // [step][layer] mean rate
};

struct ConditionMetrics {
    std::string condition;
    HomeostasisMetrics hm;
    LegacyMetrics base;
    LegacyMetrics degraded;
    LegacyMetrics delta;  // degraded - base
};

struct MetricsReport {
    std::string adapter;
    std::vector<ConditionMetrics> conditions;

    const ConditionMetrics* find(const std::string& condition) const;
};

struct SuiteResult {
    std::vector<TrialResult> trials;  // adapter, condition, trial order
    std::vector<MetricsReport> reports;
};

/// Synthetic observation bank, uniform in [0, 1].
std::vector<std::vector<double>> observation_bank(std::size_t count, std::size_t dim,
                                                  std::uint64_t master_seed);

/// Runs base + every condition for every adapter, P trials each, on up to
/// `threads` workers. Output does not depend on the thread count.
SuiteResult run_degradation_suite(const Checkpoint& checkpoint, const SuiteConfig& cfg,
                                  std::size_t threads, bool keep_traces = false);

/// Groups trial results by adapter and condition and computes metrics of
/// each condition against the adapter's base trials.
std::vector<MetricsReport> build_reports(const std::vector<TrialResult>& trials);

struct CompareRow {
    std::string condition;
    bool ok = true;
    std::string error;
    double delta_hm_mean = 0.0;  // b - a
    double delta_hm_std = 0.0;
    std::string favors;          // "a", "b" or "tie"
};

/// Per-condition deltas b - a. A condition present in only one report
/// yields a row with ok = false.
std::vector<CompareRow> compare(const MetricsReport& a, const MetricsReport& b);

// ---------------------------------------------------------------------------
// Serialization of experiment artifacts
// ---------------------------------------------------------------------------

std::string trace_to_csv(const TraceLog& trace);
std::string trials_to_csv(const std::vector<TrialResult>& trials);
std::vector<TrialResult> trials_from_csv(const std::string& text);
std::string reports_to_json(const std::vector<MetricsReport>& reports);
std::vector<MetricsReport> reports_from_json(const std::string& text);
std::string reports_to_csv(const std::vector<MetricsReport>& reports);
std::string compare_to_csv(const std::string& name_a, const std::string& name_b,
                           const std::vector<CompareRow>& rows);
std::string layer_trace_to_csv(const std::vector<TrialResult>& trials);

/// Shortest round-trip decimal form of a double.
std::string format_number(double x);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

} // namespace homeostat

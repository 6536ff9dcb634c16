#pragma once

#include "homeostat/bdett.hpp"
#include "homeostat/homeostasis.hpp"
#include "homeostat/neuron.hpp"
#include "homeostat/spike.hpp"
#include "homeostat/weights.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace homeostat {

enum class ThresholdKind { Static, Bdett };

struct ThresholdConfig {
    ThresholdKind kind = ThresholdKind::Static;
    BdettConfig bdett;
};

struct NetworkConfig {
    NeuronKind neuron = NeuronKind::Lif;
    LifConfig lif;
    SrmConfig srm;
    // One entry per non-input layer; empty means static everywhere.
    std::vector<ThresholdConfig> thresholds;
    // One entry per layer boundary; empty means no weight adaptation.
    std::vector<AdapterConfig> adapters;
};

struct ForwardResult {
    SpikeTrain output;
    // rate_trace[t][l]: mean running rate of layer l (0 = input) after step t.
    std::vector<std::vector<double>> rate_trace;
};

// Fully connected feedforward SNN with per-layer threshold providers and
// per-boundary weight adapters. Within a timestep the layers propagate first,
// then rate trackers, modification thresholds and weights are updated in that
// order; new weights act from the next step on.
class Network {
public:
    Network(std::vector<WeightMatrix> weights, NetworkConfig cfg);

    std::size_t layer_count() const { return sizes_.size(); }
    const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
    std::size_t input_size() const { return sizes_.front(); }
    std::size_t output_size() const { return sizes_.back(); }
    const NetworkConfig& config() const { return cfg_; }

    /// One timestep; returns the output layer's spikes.
    std::span<const Spike> step(std::span<const Spike> input);

    /// Runs inputs.steps() timesteps from the current state.
    ForwardResult forward(const SpikeTrain& inputs);

    /// Clears potentials, histories, rate trackers, adapter and threshold
    /// state. Weights are left alone.
    void reset_state();

    const std::vector<WeightMatrix>& weights() const { return weights_; }
    void set_weights(std::vector<WeightMatrix> weights);

    /// Layer 0 is the input layer.
    const RateTracker& rates(std::size_t layer) const { return trackers_.at(layer); }
    const LayerState& layer_state(std::size_t layer) const { return states_.at(layer - 1); }
    std::span<const Spike> spikes(std::size_t layer) const;

    /// Weight adapter feeding `layer` (>= 1), if any.
    const WeightAdapter* adapter(std::size_t layer) const;

    /// Firing thresholds used in the last step for `layer` (>= 1).
    const std::vector<double>& firing_thresholds(std::size_t layer) const {
        return firing_thresholds_.at(layer - 1);
    }

    /// Effective modification threshold of `layer`; a layer without an
    /// adapter reports its own rates, the neutral point where phi = 0.
    const std::vector<double>& modification_thresholds(std::size_t layer) const;

    std::size_t elapsed() const { return trackers_.front().elapsed(); }

private:
    void validate_weights(const std::vector<WeightMatrix>& weights) const;

    NetworkConfig cfg_;
    std::vector<std::size_t> sizes_;
    std::vector<WeightMatrix> weights_;
    std::vector<LayerState> states_;
    std::vector<RateTracker> trackers_;
    std::vector<std::optional<WeightAdapter>> adapters_;
    std::vector<std::optional<BdettThreshold>> bdett_;
    std::vector<std::vector<double>> firing_thresholds_;
    std::vector<std::vector<Spike>> spikes_;
    std::vector<Spike> input_spikes_;
};

} // namespace homeostat

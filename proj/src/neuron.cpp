#include "homeostat/neuron.hpp"

#include "homeostat/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homeostat {

void WeightMatrix::validate() const {
    if (weights.size() != rows * cols) {
        throw TopologyError("weight matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " holds " + std::to_string(weights.size()) + " entries");
    }
    if (!bias.empty() && bias.size() != rows) {
        throw TopologyError("bias length " + std::to_string(bias.size()) + " != rows " +
                            std::to_string(rows));
    }
    for (double w : weights) {
        if (!std::isfinite(w)) throw NumericError("non-finite weight");
    }
    for (double b : bias) {
        if (!std::isfinite(b)) throw NumericError("non-finite bias");
    }
}

void LifConfig::validate() const {
    if (!(decay > 0.0 && decay <= 1.0)) throw ConfigError("LIF decay must lie in (0, 1]");
    if (!(threshold > 0.0)) throw ConfigError("LIF threshold must be positive");
}

void SrmConfig::validate() const {
    if (!(tau_s > 0.0) || !(tau_r > 0.0)) throw ConfigError("SRM time constants must be positive");
    if (!(threshold > 0.0)) throw ConfigError("SRM threshold must be positive");
    if (horizon < 1) throw ConfigError("SRM kernel horizon must be >= 1");
}

double srm_response(double t, double tau_s) {
    if (t <= 0.0) return 0.0;
    const double x = t / tau_s;
    return x * std::exp(1.0 - x);
}

double srm_refractory(double t, double tau_r, double threshold) {
    if (t <= 0.0) return 0.0;
    return -2.0 * threshold * std::exp(-t / tau_r);
}

void SpikeHistory::push(std::span<const Spike> spikes) {
    if (depth_ == 0) return;
    std::copy(spikes.begin(), spikes.end(), data_.begin() + head_ * width_);
    head_ = (head_ + 1) % depth_;
    if (size_ < depth_) ++size_;
}

std::span<const Spike> SpikeHistory::lag(std::size_t k) const {
    const std::size_t slot = (head_ + depth_ - k) % depth_;
    return {data_.data() + slot * width_, width_};
}

LayerState LayerState::lif(std::size_t neurons) {
    LayerState s;
    s.potential.assign(neurons, 0.0);
    s.prev_spikes.assign(neurons, 0);
    return s;
}

LayerState LayerState::srm(std::size_t neurons, std::size_t inputs, std::size_t horizon) {
    LayerState s = lif(neurons);
    s.input_history = SpikeHistory(inputs, horizon);
    s.output_history = SpikeHistory(neurons, horizon);
    return s;
}

void LayerState::reset() {
    std::fill(potential.begin(), potential.end(), 0.0);
    std::fill(prev_spikes.begin(), prev_spikes.end(), Spike{0});
    input_history.clear();
    output_history.clear();
}

namespace {

void check_shapes(const LayerState& state, std::span<const Spike> input,
                  const WeightMatrix& weights) {
    if (weights.rows != state.size() || weights.cols != input.size() ||
        weights.weights.size() != weights.rows * weights.cols) {
        throw TopologyError("layer step: weights " + std::to_string(weights.rows) + "x" +
                            std::to_string(weights.cols) + " vs state " +
                            std::to_string(state.size()) + " / input " +
                            std::to_string(input.size()));
    }
}

} // namespace

std::vector<double> lif_potential(const LayerState& state, std::span<const Spike> input,
                                  const WeightMatrix& weights, const LifConfig& cfg) {
    check_shapes(state, input, weights);
    if (!weights.bias.empty() && weights.bias.size() != weights.rows) {
        throw TopologyError("LIF bias length mismatch");
    }
    std::vector<double> v(state.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto w = weights.row(i);
        double drive = 0.0;
        for (std::size_t j = 0; j < input.size(); ++j) {
            if (input[j]) drive += w[j];
        }
        const double carry = state.prev_spikes[i] ? 0.0 : cfg.decay;
        v[i] = drive + state.potential[i] * carry + weights.bias_at(i);
    }
    return v;
}

std::vector<double> srm_potential(const LayerState& state, std::span<const Spike> input,
                                  const WeightMatrix& weights, const SrmConfig& cfg) {
    check_shapes(state, input, weights);
    if (state.input_history.width() != input.size() ||
        state.output_history.width() != state.size()) {
        throw TopologyError("SRM layer state was not initialised for this topology");
    }

    // Filtered presynaptic trace; the current input contributes eps(0) = 0.
    std::vector<double> trace(input.size(), 0.0);
    for (std::size_t k = 1; k <= state.input_history.size(); ++k) {
        const double eps = srm_response(static_cast<double>(k), cfg.tau_s);
        const auto past = state.input_history.lag(k);
        for (std::size_t j = 0; j < trace.size(); ++j) {
            if (past[j]) trace[j] += eps;
        }
    }

    std::vector<double> v(state.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto w = weights.row(i);
        double drive = 0.0;
        for (std::size_t j = 0; j < trace.size(); ++j) drive += w[j] * trace[j];
        v[i] = drive;
    }
    for (std::size_t k = 1; k <= state.output_history.size(); ++k) {
        const double ref = srm_refractory(static_cast<double>(k), cfg.tau_r, cfg.threshold);
        const auto past = state.output_history.lag(k);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (past[i]) v[i] += ref;
        }
    }
    return v;
}

std::vector<Spike> emit_spikes(std::span<const double> potential,
                               std::span<const double> thresholds) {
    if (potential.size() != thresholds.size()) {
        throw TopologyError("threshold count " + std::to_string(thresholds.size()) +
                            " != neuron count " + std::to_string(potential.size()));
    }
    std::vector<Spike> spikes(potential.size());
    for (std::size_t i = 0; i < spikes.size(); ++i) {
        spikes[i] = potential[i] >= thresholds[i] ? 1 : 0;
    }
    return spikes;
}

void commit_step(LayerState& state, std::span<const Spike> input,
                 std::vector<double> potential, std::span<const Spike> spikes) {
    for (double v : potential) {
        if (!std::isfinite(v)) throw NumericError("non-finite membrane potential");
    }
    state.potential = std::move(potential);
    state.prev_spikes.assign(spikes.begin(), spikes.end());
    if (state.input_history.depth() > 0) {
        state.input_history.push(input);
        state.output_history.push(spikes);
    }
}

std::vector<Spike> lif_step(LayerState& state, std::span<const Spike> input,
                            const WeightMatrix& weights, std::span<const double> thresholds,
                            const LifConfig& cfg) {
    auto v = lif_potential(state, input, weights, cfg);
    auto spikes = emit_spikes(v, thresholds);
    commit_step(state, input, std::move(v), spikes);
    return spikes;
}

std::vector<Spike> srm_step(LayerState& state, std::span<const Spike> input,
                            const WeightMatrix& weights, std::span<const double> thresholds,
                            const SrmConfig& cfg) {
    auto v = srm_potential(state, input, weights, cfg);
    auto spikes = emit_spikes(v, thresholds);
    commit_step(state, input, std::move(v), spikes);
    return spikes;
}

} // namespace homeostat

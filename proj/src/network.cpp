#include "homeostat/network.hpp"

#include "homeostat/error.hpp"

#include <algorithm>
#include <string>

namespace homeostat {

Network::Network(std::vector<WeightMatrix> weights, NetworkConfig cfg) : cfg_(std::move(cfg)) {
    if (weights.empty()) throw TopologyError("network needs at least two layers");
    sizes_.push_back(weights.front().cols);
    for (const auto& w : weights) sizes_.push_back(w.rows);
    validate_weights(weights);
    weights_ = std::move(weights);

    const std::size_t boundaries = weights_.size();
    if (cfg_.neuron == NeuronKind::Lif) {
        cfg_.lif.validate();
    } else {
        cfg_.srm.validate();
    }
    if (cfg_.thresholds.empty()) cfg_.thresholds.resize(boundaries);
    if (cfg_.adapters.empty()) cfg_.adapters.resize(boundaries);
    if (cfg_.thresholds.size() != boundaries || cfg_.adapters.size() != boundaries) {
        throw TopologyError("threshold/adapter assignments must cover all " +
                            std::to_string(boundaries) + " layer boundaries");
    }

    const double static_threshold =
        cfg_.neuron == NeuronKind::Lif ? cfg_.lif.threshold : cfg_.srm.threshold;

    for (std::size_t l = 1; l < sizes_.size(); ++l) {
        const std::size_t n = sizes_[l];
        if (cfg_.neuron == NeuronKind::Lif) {
            states_.push_back(LayerState::lif(n));
        } else {
            states_.push_back(LayerState::srm(n, sizes_[l - 1], cfg_.srm.horizon));
        }
        const auto& th = cfg_.thresholds[l - 1];
        if (th.kind == ThresholdKind::Bdett) {
            bdett_.emplace_back(BdettThreshold(th.bdett, n, static_threshold));
        } else {
            bdett_.emplace_back();
        }
        firing_thresholds_.emplace_back(n, static_threshold);
        spikes_.emplace_back(n, 0);
    }

    // Trackers keep enough history for the widest adapter reading them.
    std::vector<std::size_t> window(sizes_.size(), 1);
    for (std::size_t b = 0; b < boundaries; ++b) {
        const auto& a = cfg_.adapters[b];
        a.validate();
        if (a.kind != AdapterKind::None) window[b + 1] = std::max(window[b + 1], a.window);
    }
    for (std::size_t l = 0; l < sizes_.size(); ++l) trackers_.emplace_back(sizes_[l], window[l]);
    for (std::size_t b = 0; b < boundaries; ++b) {
        const auto& a = cfg_.adapters[b];
        if (a.kind == AdapterKind::None) {
            adapters_.emplace_back();
        } else {
            adapters_.emplace_back(WeightAdapter(a, sizes_[b + 1]));
        }
    }
    input_spikes_.assign(sizes_.front(), 0);
}

void Network::validate_weights(const std::vector<WeightMatrix>& weights) const {
    if (weights.size() + 1 != sizes_.size()) throw TopologyError("layer count changed");
    for (std::size_t b = 0; b < weights.size(); ++b) {
        const auto& w = weights[b];
        w.validate();
        if (w.cols != sizes_[b] || w.rows != sizes_[b + 1]) {
            throw TopologyError("boundary " + std::to_string(b) + " is " +
                                std::to_string(w.rows) + "x" + std::to_string(w.cols) +
                                ", expected " + std::to_string(sizes_[b + 1]) + "x" +
                                std::to_string(sizes_[b]));
        }
        if (cfg_.neuron == NeuronKind::Srm &&
            std::any_of(w.bias.begin(), w.bias.end(), [](double b) { return b != 0.0; })) {
            throw TopologyError("SRM layers carry no bias");
        }
    }
    for (std::size_t l = 0; l < sizes_.size(); ++l) {
        if (sizes_[l] == 0) throw TopologyError("layer " + std::to_string(l) + " is empty");
    }
}

void Network::set_weights(std::vector<WeightMatrix> weights) {
    validate_weights(weights);
    weights_ = std::move(weights);
}

std::span<const Spike> Network::spikes(std::size_t layer) const {
    if (layer == 0) return input_spikes_;
    return spikes_.at(layer - 1);
}

const WeightAdapter* Network::adapter(std::size_t layer) const {
    const auto& a = adapters_.at(layer - 1);
    return a ? &*a : nullptr;
}

const std::vector<double>& Network::modification_thresholds(std::size_t layer) const {
    if (const auto* a = adapter(layer)) return a->theta();
    return trackers_.at(layer).rates();
}

std::span<const Spike> Network::step(std::span<const Spike> input) {
    if (input.size() != sizes_.front()) {
        throw TopologyError("input has " + std::to_string(input.size()) + " channels, expected " +
                            std::to_string(sizes_.front()));
    }
    input_spikes_.assign(input.begin(), input.end());

    std::span<const Spike> pre = input_spikes_;
    for (std::size_t b = 0; b < weights_.size(); ++b) {
        auto& state = states_[b];
        auto v = cfg_.neuron == NeuronKind::Lif ? lif_potential(state, pre, weights_[b], cfg_.lif)
                                                : srm_potential(state, pre, weights_[b], cfg_.srm);
        if (bdett_[b]) firing_thresholds_[b] = bdett_[b]->advance(v);
        spikes_[b] = emit_spikes(v, firing_thresholds_[b]);
        commit_step(state, pre, std::move(v), spikes_[b]);
        pre = spikes_[b];
    }

    trackers_[0].update(input_spikes_);
    for (std::size_t l = 1; l < sizes_.size(); ++l) trackers_[l].update(spikes_[l - 1]);
    for (std::size_t b = 0; b < adapters_.size(); ++b) {
        if (adapters_[b]) adapters_[b]->update_thresholds(trackers_[b + 1]);
    }
    for (std::size_t b = 0; b < adapters_.size(); ++b) {
        if (adapters_[b]) adapters_[b]->update_weights(weights_[b], trackers_[b + 1], trackers_[b]);
    }
    return spikes_.back();
}

ForwardResult Network::forward(const SpikeTrain& inputs) {
    if (inputs.channels() != sizes_.front()) {
        throw TopologyError("input train has " + std::to_string(inputs.channels()) +
                            " channels, expected " + std::to_string(sizes_.front()));
    }
    ForwardResult result;
    result.output = SpikeTrain(sizes_.back(), inputs.steps());
    result.rate_trace.reserve(inputs.steps());
    for (std::size_t t = 0; t < inputs.steps(); ++t) {
        const auto out = step(inputs.step(t));
        std::copy(out.begin(), out.end(), result.output.step(t).begin());
        std::vector<double> means(sizes_.size());
        for (std::size_t l = 0; l < sizes_.size(); ++l) {
            double sum = 0.0;
            for (double r : trackers_[l].rates()) sum += r;
            means[l] = sum / static_cast<double>(sizes_[l]);
        }
        result.rate_trace.push_back(std::move(means));
    }
    return result;
}

void Network::reset_state() {
    const double static_threshold =
        cfg_.neuron == NeuronKind::Lif ? cfg_.lif.threshold : cfg_.srm.threshold;
    for (auto& s : states_) s.reset();
    for (auto& t : trackers_) t.reset();
    for (auto& a : adapters_) {
        if (a) a->reset();
    }
    for (std::size_t b = 0; b < bdett_.size(); ++b) {
        if (bdett_[b]) bdett_[b]->reset();
        std::fill(firing_thresholds_[b].begin(), firing_thresholds_[b].end(), static_threshold);
        std::fill(spikes_[b].begin(), spikes_[b].end(), Spike{0});
    }
    std::fill(input_spikes_.begin(), input_spikes_.end(), Spike{0});
}

} // namespace homeostat

#pragma once

#include "homeostat/spike.hpp"
#include "homeostat/weights.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace homeostat {

enum class NeuronKind { Lif, Srm };

struct LifConfig {
    double decay = 0.75;     // D, carried fraction of v when the neuron did not spike
    double threshold = 1.0;  // static threshold

    void validate() const;
};

struct SrmConfig {
    double tau_s = 1.0;       // response kernel time constant
    double tau_r = 1.0;       // refractory kernel time constant
    double threshold = 1.0;   // static threshold, also scales the refractory kernel
    std::size_t horizon = 16; // kernel truncation K

    void validate() const;
};

/// Response kernel (t / tau_s) * exp(1 - t / tau_s) for t > 0, else 0.
double srm_response(double t, double tau_s);

/// Refractory kernel -2 * threshold * exp(-t / tau_r) for t > 0, else 0.
double srm_refractory(double t, double tau_r, double threshold);

// Fixed-depth history of binary vectors; lag 1 is the most recent push.
class SpikeHistory {
public:
    SpikeHistory() = default;
    SpikeHistory(std::size_t width, std::size_t depth)
        : width_(width), depth_(depth), data_(width * depth, 0) {}

    void push(std::span<const Spike> spikes);
    std::span<const Spike> lag(std::size_t k) const;  // 1 <= k <= size()

    std::size_t size() const { return size_; }
    std::size_t depth() const { return depth_; }
    std::size_t width() const { return width_; }
    void clear() { size_ = 0; head_ = 0; }

private:
    std::size_t width_ = 0;
    std::size_t depth_ = 0;
    std::size_t size_ = 0;
    std::size_t head_ = 0;  // slot of the next push
    std::vector<Spike> data_;
};

struct LayerState {
    std::vector<double> potential;
    std::vector<Spike> prev_spikes;
    SpikeHistory input_history;   // SRM only
    SpikeHistory output_history;  // SRM only

    static LayerState lif(std::size_t neurons);
    static LayerState srm(std::size_t neurons, std::size_t inputs, std::size_t horizon);

    std::size_t size() const { return potential.size(); }
    void reset();
};

/// v(t) = W s(t) + v(t-1) f_d(s(t-1)) + b, without touching the state.
std::vector<double> lif_potential(const LayerState& state, std::span<const Spike> input,
                                  const WeightMatrix& weights, const LifConfig& cfg);

/// v(t) = sum_j w_ij (eps * s_j)(t) + (refractory * s_i)(t - 1), kernels truncated at K.
std::vector<double> srm_potential(const LayerState& state, std::span<const Spike> input,
                                  const WeightMatrix& weights, const SrmConfig& cfg);

/// Spike iff v >= threshold.
std::vector<Spike> emit_spikes(std::span<const double> potential,
                               std::span<const double> thresholds);

/// Stores v(t) and s(t) (and, for SRM, the input) as the new layer state.
void commit_step(LayerState& state, std::span<const Spike> input,
                 std::vector<double> potential, std::span<const Spike> spikes);

/// One LIF timestep with externally supplied thresholds. Updates `state`.
std::vector<Spike> lif_step(LayerState& state, std::span<const Spike> input,
                            const WeightMatrix& weights, std::span<const double> thresholds,
                            const LifConfig& cfg);

/// One SRM timestep with externally supplied thresholds. Updates `state`.
std::vector<Spike> srm_step(LayerState& state, std::span<const Spike> input,
                            const WeightMatrix& weights, std::span<const double> thresholds,
                            const SrmConfig& cfg);

} // namespace homeostat

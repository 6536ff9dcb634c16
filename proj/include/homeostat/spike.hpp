#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace homeostat {

using Spike = std::uint8_t;

// Binary spike events for a group of neurons sharing one time axis.
// Storage is step-major: events[t * channels + i].
class SpikeTrain {
public:
    SpikeTrain() = default;
    SpikeTrain(std::size_t channels, std::size_t steps)
        : channels_(channels), steps_(steps), events_(channels * steps, 0) {}

    std::size_t channels() const { return channels_; }
    std::size_t steps() const { return steps_; }

    Spike at(std::size_t step, std::size_t channel) const {
        return events_[step * channels_ + channel];
    }
    void set(std::size_t step, std::size_t channel, bool fired) {
        events_[step * channels_ + channel] = fired ? 1 : 0;
    }

    std::span<const Spike> step(std::size_t t) const {
        return {events_.data() + t * channels_, channels_};
    }
    std::span<Spike> step(std::size_t t) {
        return {events_.data() + t * channels_, channels_};
    }

    /// Spike count per channel.
    std::vector<std::size_t> counts() const;

    bool operator==(const SpikeTrain&) const = default;

private:
    std::size_t channels_ = 0;
    std::size_t steps_ = 0;
    std::vector<Spike> events_;
};

/// Rate coding: one Bernoulli(value) draw per channel per step. Values must
/// already be normalized to [0, 1]; anything else throws InputRangeError.
SpikeTrain poisson_encode(std::span<const double> values, std::size_t steps,
                          std::mt19937_64& rng);

/// Spike count / T per channel. Throws EmptyTrialError when T == 0.
std::vector<double> decode_rate(const SpikeTrain& train);

} // namespace homeostat

#include "homeostat/spike.hpp"

#include "homeostat/error.hpp"

#include <string>

namespace homeostat {

std::vector<std::size_t> SpikeTrain::counts() const {
    std::vector<std::size_t> out(channels_, 0);
    for (std::size_t t = 0; t < steps_; ++t) {
        const Spike* row = events_.data() + t * channels_;
        for (std::size_t i = 0; i < channels_; ++i) out[i] += row[i];
    }
    return out;
}

SpikeTrain poisson_encode(std::span<const double> values, std::size_t steps,
                          std::mt19937_64& rng) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputRangeError("poisson_encode: channel " + std::to_string(i) +
                                  " value " + std::to_string(v) + " outside [0, 1]");
        }
    }
    SpikeTrain train(values.size(), steps);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::size_t t = 0; t < steps; ++t) {
        auto row = train.step(t);
        for (std::size_t i = 0; i < values.size(); ++i) {
            // One draw per channel regardless of value, so streams stay aligned
            // across conditions that share a seed.
            const double u = uniform(rng);
            row[i] = (values[i] >= 1.0 || u < values[i]) ? 1 : 0;
        }
    }
    return train;
}

std::vector<double> decode_rate(const SpikeTrain& train) {
    if (train.steps() == 0) throw EmptyTrialError("decode_rate: empty trial (T = 0)");
    const auto counts = train.counts();
    std::vector<double> rates(counts.size());
    const double steps = static_cast<double>(train.steps());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        rates[i] = static_cast<double>(counts[i]) / steps;
    }
    return rates;
}

} // namespace homeostat

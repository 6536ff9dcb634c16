#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace homeostat {

// Dense weights for one layer boundary, post-neurons x pre-neurons, row-major.
// `bias` is either empty or one entry per post-neuron (LIF only).
struct WeightMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    WeightMatrix() = default;
    WeightMatrix(std::size_t post, std::size_t pre, double fill = 0.0)
        : rows(post), cols(pre), weights(post * pre, fill) {}
    WeightMatrix(std::size_t post, std::size_t pre, std::vector<double> w,
                 std::vector<double> b = {})
        : rows(post), cols(pre), weights(std::move(w)), bias(std::move(b)) {}

    double& at(std::size_t i, std::size_t j) { return weights[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return weights[i * cols + j]; }

    std::span<const double> row(std::size_t i) const { return {weights.data() + i * cols, cols}; }
    std::span<double> row(std::size_t i) { return {weights.data() + i * cols, cols}; }

    double bias_at(std::size_t i) const { return bias.empty() ? 0.0 : bias[i]; }

    /// Throws TopologyError on inconsistent shape, NumericError on NaN/Inf.
    void validate() const;

    bool operator==(const WeightMatrix&) const = default;
};

} // namespace homeostat

#pragma once

#include "homeostat/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace homeostat {

// Weight checkpoint, stored as JSON:
//
//   {
//     "format": "homeostat-checkpoint",
//     "version": 1,
//     "layer_sizes": [n0, n1, ..., nL],
//     "layers": [
//       {"rows": n1, "cols": n0, "weights": [row-major n1*n0], "bias": [n1] or []},
//       ...
//     ]
//   }
//
// Numbers are written with round-trip precision, so load(save(c)) == c.
struct Checkpoint {
    std::vector<std::size_t> layer_sizes;
    std::vector<WeightMatrix> layers;

    /// Throws TopologyError / NumericError if sizes and matrices disagree.
    void validate() const;

    bool operator==(const Checkpoint&) const = default;
};

std::string checkpoint_to_json(const Checkpoint& ckpt);
Checkpoint checkpoint_from_json(const std::string& text);

Checkpoint load_checkpoint(const std::filesystem::path& path);
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);

/// Random checkpoint for experiments: w ~ N(mean_gain / fan_in, spread / sqrt(fan_in)).
Checkpoint random_checkpoint(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed,
                             double mean_gain = 2.0, double spread = 1.0);

} // namespace homeostat

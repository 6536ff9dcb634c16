#pragma once

#include "homeostat/weights.hpp"

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace homeostat {

// Input perturbations. Observations are perturbed before encoding; the
// caller normalizes the result back into the encoder's range.

/// Overwrite fixed channels, e.g. beams {2, 8, 14} with 0.2 or 6.0.
struct FixChannels {
    std::vector<std::size_t> indices;
    double value = 0.0;
};

/// Independent N(0, sigma^2) added to every channel.
struct GaussianObs {
    double sigma = 1.0;
};

enum class Extreme { Min, Max };

/// One uniformly chosen channel per trial is replaced by -magnitude (Min)
/// or +magnitude (Max). The finite sentinel stands in for +-inf.
struct ReplaceRandomDim {
    Extreme extreme = Extreme::Min;
    double magnitude = 1.0;
};

using InputPerturbation = std::variant<FixChannels, GaussianObs, ReplaceRandomDim>;

// Weight perturbations, applied per layer; biases are never touched.

struct Loihi8Bit {};

struct GaussianWeights {
    double sigma = 0.05;
};

struct ZeroFraction {
    double fraction = 0.3;
};

using WeightPerturbation = std::variant<Loihi8Bit, GaussianWeights, ZeroFraction>;

std::vector<double> perturb_input(std::span<const double> obs, const InputPerturbation& p,
                                  std::mt19937_64& rng);

/// Symmetric per-layer quantization to integers in [-127, 127]:
/// s = max|w| / 127, w' = round_half_away(w / s) * s. The max-magnitude
/// entries are kept bit-exact so that quantization is idempotent.
WeightMatrix quantize_loihi8(const WeightMatrix& w);

WeightMatrix gn_weights(const WeightMatrix& w, double sigma, std::mt19937_64& rng);

/// Sets exactly floor(fraction * count) distinct entries to zero.
WeightMatrix zero_mask(const WeightMatrix& w, double fraction, std::mt19937_64& rng);

/// Applies a weight perturbation to every layer.
std::vector<WeightMatrix> perturb_weights(const std::vector<WeightMatrix>& layers,
                                          const WeightPerturbation& p, std::mt19937_64& rng);

void validate(const InputPerturbation& p);
void validate(const WeightPerturbation& p);

std::string describe(const InputPerturbation& p);
std::string describe(const WeightPerturbation& p);

} // namespace homeostat

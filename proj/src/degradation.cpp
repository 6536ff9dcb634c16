#include "homeostat/degradation.hpp"

#include "homeostat/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace homeostat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

void validate(const InputPerturbation& p) {
    std::visit(overloaded{
                   [](const FixChannels& f) {
                       if (!std::isfinite(f.value)) throw ConfigError("fix: value must be finite");
                   },
                   [](const GaussianObs& g) {
                       if (!(g.sigma >= 0.0)) throw ConfigError("gaussian: sigma must be >= 0");
                   },
                   [](const ReplaceRandomDim& r) {
                       if (!std::isfinite(r.magnitude)) {
                           throw ConfigError("replace: sentinel magnitude must be finite");
                       }
                   },
               },
               p);
}

void validate(const WeightPerturbation& p) {
    std::visit(overloaded{
                   [](const Loihi8Bit&) {},
                   [](const GaussianWeights& g) {
                       if (!(g.sigma >= 0.0)) throw ConfigError("gaussian: sigma must be >= 0");
                   },
                   [](const ZeroFraction& z) {
                       if (!(z.fraction >= 0.0 && z.fraction <= 1.0)) {
                           throw ConfigError("zero: fraction must lie in [0, 1]");
                       }
                   },
               },
               p);
}

std::vector<double> perturb_input(std::span<const double> obs, const InputPerturbation& p,
                                  std::mt19937_64& rng) {
    if (obs.empty()) throw ConfigError("perturb_input: empty observation");
    validate(p);
    std::vector<double> out(obs.begin(), obs.end());
    std::visit(overloaded{
                   [&](const FixChannels& f) {
                       for (std::size_t i : f.indices) {
                           if (i >= out.size()) {
                               throw ConfigError("fix: channel " + std::to_string(i) +
                                                 " out of range for " +
                                                 std::to_string(out.size()) + " channels");
                           }
                           out[i] = f.value;
                       }
                   },
                   [&](const GaussianObs& g) {
                       if (g.sigma == 0.0) return;
                       std::normal_distribution<double> noise(0.0, g.sigma);
                       for (double& x : out) x += noise(rng);
                   },
                   [&](const ReplaceRandomDim& r) {
                       std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
                       out[pick(rng)] = r.extreme == Extreme::Min ? -r.magnitude : r.magnitude;
                   },
               },
               p);
    return out;
}

WeightMatrix quantize_loihi8(const WeightMatrix& w) {
    WeightMatrix out = w;
    double max_abs = 0.0;
    for (double x : w.weights) max_abs = std::max(max_abs, std::abs(x));
    if (max_abs == 0.0) return out;
    const double scale = max_abs / 127.0;
    for (double& x : out.weights) {
        if (std::abs(x) == max_abs) continue;
        const double q = std::round(x / scale);  // halves round away from zero
        if (std::abs(q) >= 127.0) {
            x = std::copysign(max_abs, q);
        } else {
            x = q * scale;
        }
    }
    return out;
}

WeightMatrix gn_weights(const WeightMatrix& w, double sigma, std::mt19937_64& rng) {
    if (!(sigma >= 0.0)) throw ConfigError("gn_weights: sigma must be >= 0");
    WeightMatrix out = w;
    if (sigma == 0.0) return out;
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& x : out.weights) x += noise(rng);
    return out;
}

WeightMatrix zero_mask(const WeightMatrix& w, double fraction, std::mt19937_64& rng) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw ConfigError("zero_mask: fraction must lie in [0, 1]");
    }
    WeightMatrix out = w;
    const std::size_t count = out.weights.size();
    // The epsilon keeps exact products such as 0.3 * 10 from flooring to 2.
    const auto k = std::min<std::size_t>(
        count, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + 1e-9)));
    if (k == 0) return out;
    std::vector<std::size_t> index(count);
    std::iota(index.begin(), index.end(), std::size_t{0});
    // Partial Fisher-Yates: the first k slots become a uniform sample.
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, count - 1);
        std::swap(index[i], index[pick(rng)]);
    }
    for (std::size_t i = 0; i < k; ++i) out.weights[index[i]] = 0.0;
    return out;
}

std::vector<WeightMatrix> perturb_weights(const std::vector<WeightMatrix>& layers,
                                          const WeightPerturbation& p, std::mt19937_64& rng) {
    validate(p);
    std::vector<WeightMatrix> out;
    out.reserve(layers.size());
    for (const auto& w : layers) {
        out.push_back(std::visit(overloaded{
                                     [&](const Loihi8Bit&) { return quantize_loihi8(w); },
                                     [&](const GaussianWeights& g) {
                                         return gn_weights(w, g.sigma, rng);
                                     },
                                     [&](const ZeroFraction& z) {
                                         return zero_mask(w, z.fraction, rng);
                                     },
                                 },
                                 p));
    }
    return out;
}

std::string describe(const InputPerturbation& p) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const FixChannels& f) {
                       os << "fix(";
                       for (std::size_t i = 0; i < f.indices.size(); ++i) {
                           os << (i ? "," : "") << f.indices[i];
                       }
                       os << "=" << num(f.value) << ")";
                   },
                   [&](const GaussianObs& g) { os << "gaussian-obs(" << num(g.sigma) << ")"; },
                   [&](const ReplaceRandomDim& r) {
                       os << (r.extreme == Extreme::Min ? "min(" : "max(") << num(r.magnitude) << ")";
                   },
               },
               p);
    return os.str();
}

std::string describe(const WeightPerturbation& p) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Loihi8Bit&) { os << "loihi8"; },
                   [&](const GaussianWeights& g) { os << "gaussian-weights(" << num(g.sigma) << ")"; },
                   [&](const ZeroFraction& z) { os << "zero(" << num(z.fraction) << ")"; },
               },
               p);
    return os.str();
}

} // namespace homeostat

#include "homeostat/bdett.hpp"

#include "homeostat/error.hpp"

#include <algorithm>
#include <cmath>

namespace homeostat {

void BdettConfig::validate() const {
    if (!(psi > 0.0)) throw ConfigError("BDETT psi must be positive");
    if (!(c > 0.0)) throw ConfigError("BDETT C must be positive");
    if (!std::isfinite(eta)) throw ConfigError("BDETT eta must be finite");
}

double layer_reference(std::span<const double> x) {
    if (x.empty()) throw TopologyError("BDETT: empty layer");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum / static_cast<double>(x.size()) - 0.2 * (*hi - *lo);
}

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

std::vector<double> bdett_det(std::span<const double> potential,
                              std::span<const double> prev_thresholds, const BdettConfig& cfg) {
    if (potential.size() != prev_thresholds.size()) {
        throw TopologyError("BDETT: potential / threshold size mismatch");
    }
    const double vm = layer_reference(potential);
    const double vt = layer_reference(prev_thresholds);
    std::vector<double> e(potential.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double d = potential[i] - vm;
        e[i] = cfg.eta * d + vt + softplus(d / cfg.psi);
    }
    return e;
}

double bdett_dtt_from_mean(double v_now, double v_next, double prev_threshold_mean, double c) {
    const double a = -std::exp(-std::abs(prev_threshold_mean));
    return a + std::exp(-(v_next - v_now) / c);
}

double bdett_dtt(double v_now, double v_next, std::span<const double> prev_thresholds,
                 double c) {
    if (prev_thresholds.empty()) throw TopologyError("BDETT: empty layer");
    double sum = 0.0;
    for (double t : prev_thresholds) sum += t;
    return bdett_dtt_from_mean(v_now, v_next, sum / static_cast<double>(prev_thresholds.size()),
                               c);
}

double bdett_threshold(double energy, double temporal) { return 0.5 * (energy + temporal); }

BdettThreshold::BdettThreshold(const BdettConfig& cfg, std::size_t neurons,
                               double initial_threshold)
    : cfg_(cfg), initial_(initial_threshold) {
    cfg_.validate();
    if (neurons == 0) throw TopologyError("BDETT: empty layer");
    v_.assign(neurons, 0.0);
    reset();
}

void BdettThreshold::reset() {
    std::fill(v_.begin(), v_.end(), 0.0);
    theta_.assign(v_.size(), initial_);
    energy_ = bdett_det(v_, theta_, cfg_);
}

const std::vector<double>& BdettThreshold::advance(std::span<const double> potential) {
    if (potential.size() != v_.size()) throw TopologyError("BDETT: layer size changed");
    double sum = 0.0;
    for (double t : theta_) sum += t;
    const double mean = sum / static_cast<double>(theta_.size());
    for (std::size_t i = 0; i < theta_.size(); ++i) {
        const double temporal = bdett_dtt_from_mean(v_[i], potential[i], mean, cfg_.c);
        theta_[i] = bdett_threshold(energy_[i], temporal);
    }
    v_.assign(potential.begin(), potential.end());
    energy_ = bdett_det(v_, theta_, cfg_);
    return theta_;
}

} // namespace homeostat

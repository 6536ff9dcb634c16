#include "homeostat/homeostasis.hpp"

#include "homeostat/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homeostat {

RateTracker::RateTracker(std::size_t neurons, std::size_t window)
    : window_(std::max<std::size_t>(window, 1)), counts_(neurons, 0), rates_(neurons, 0.0) {}

void RateTracker::update(std::span<const Spike> spikes) {
    if (spikes.size() != counts_.size()) {
        throw TopologyError("rate tracker expects " + std::to_string(counts_.size()) +
                            " neurons, got " + std::to_string(spikes.size()));
    }
    ++elapsed_;
    const double t = static_cast<double>(elapsed_);
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        counts_[i] += spikes[i];
        rates_[i] = static_cast<double>(counts_[i]) / t;
    }
    if (history_.size() == window_) {
        // Reuse the evicted row.
        auto row = std::move(history_.front());
        history_.pop_front();
        row = rates_;
        history_.push_back(std::move(row));
    } else {
        history_.push_back(rates_);
    }
}

void RateTracker::reset() {
    elapsed_ = 0;
    std::fill(counts_.begin(), counts_.end(), 0);
    std::fill(rates_.begin(), rates_.end(), 0.0);
    history_.clear();
}

std::vector<double> RateTracker::window(std::size_t neuron, std::size_t last) const {
    const std::size_t n = std::min(last, history_.size());
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = history_.size() - n; k < history_.size(); ++k) {
        out.push_back(history_[k][neuron]);
    }
    return out;
}

double theta_bio_update(double theta_m, double rate, double alpha) {
    return (1.0 - alpha) * theta_m + alpha * rate * rate;
}

std::optional<double> coefficient_of_variation(std::span<const double> window) {
    if (window.empty()) return std::nullopt;
    const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
    if (*lo == *hi) return 0.0;  // constant activity, exactly
    double sum = 0.0;
    for (double x : window) sum += x;
    const double n = static_cast<double>(window.size());
    const double mean = sum / n;
    if (mean == 0.0) return 0.0;
    double ss = 0.0;
    for (double x : window) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / n) / mean;
}

double dwam_mixing(double cv, double zeta_cv, double lo, double hi) {
    return std::clamp(zeta_cv * cv, lo, hi);
}

double dwam_theta(double theta_m, double rate, double cv, double zeta_cv, double lo,
                  double hi) {
    const double m = dwam_mixing(cv, zeta_cv, lo, hi);
    return m * theta_m + (1.0 - m) * rate;
}

double phi(double post_rate, double theta) { return post_rate * (post_rate - theta); }

void dwam_weight_update(WeightMatrix& weights, std::span<const double> phi_post,
                        std::span<const double> pre_rates, double psi_scale) {
    if (phi_post.size() != weights.rows || pre_rates.size() != weights.cols) {
        throw TopologyError("dwam_weight_update: shape mismatch");
    }
    for (std::size_t i = 0; i < weights.rows; ++i) {
        const double p = phi_post[i];
        if (p == 0.0) continue;
        auto row = weights.row(i);
        for (std::size_t j = 0; j < weights.cols; ++j) {
            const double delta = p * pre_rates[j] * std::abs(row[j]) * psi_scale;
            if (delta == 0.0) continue;
            const double w = row[j] + delta;
            if (!std::isfinite(w)) {
                throw NumericError("dwam_weight_update: non-finite weight at (" +
                                   std::to_string(i) + ", " + std::to_string(j) + ")");
            }
            row[j] = w;
        }
    }
}

void AdapterConfig::validate() const {
    if (kind == AdapterKind::None) return;
    if (!(psi_scale > 0.0) || !std::isfinite(psi_scale)) {
        throw ConfigError("adapter psi_scale must be positive");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("adapter alpha must lie in (0, 1]");
    if (!(zeta_cv > 0.0)) throw ConfigError("adapter zeta_cv must be positive");
    if (window < 1) throw ConfigError("adapter window n must be >= 1");
    if (!(mix_lo >= 0.0 && mix_lo <= mix_hi && mix_hi <= 1.0)) {
        throw ConfigError("adapter clamp bounds must satisfy 0 <= lo <= hi <= 1");
    }
}

WeightAdapter::WeightAdapter(const AdapterConfig& cfg, std::size_t post_neurons)
    : cfg_(cfg),
      theta_m_(post_neurons, 0.0),
      theta_(post_neurons, 0.0),
      mixing_(post_neurons, 1.0) {
    cfg_.validate();
}

void WeightAdapter::update_thresholds(const RateTracker& post) {
    if (post.size() != theta_m_.size()) throw TopologyError("adapter / layer size mismatch");
    if (post.filled() == 0) return;  // nothing observed yet
    const auto& c = post.rates();
    for (std::size_t i = 0; i < theta_m_.size(); ++i) {
        theta_m_[i] = theta_bio_update(theta_m_[i], c[i], cfg_.alpha);
        if (cfg_.kind == AdapterKind::Dwam) {
            // Before n steps have elapsed the CV covers the steps seen so far.
            const double cv = coefficient_of_variation(post.window(i, cfg_.window)).value_or(0.0);
            mixing_[i] = dwam_mixing(cv, cfg_.zeta_cv, cfg_.mix_lo, cfg_.mix_hi);
        } else {
            mixing_[i] = 1.0;
        }
        const double m = mixing_[i];
        theta_[i] = m * theta_m_[i] + (1.0 - m) * c[i];
    }
}

void WeightAdapter::update_weights(WeightMatrix& weights, const RateTracker& post,
                                   const RateTracker& pre) const {
    if (post.filled() == 0 || pre.filled() == 0) return;
    const auto& c = post.rates();
    std::vector<double> p(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) p[i] = phi(c[i], theta_[i]);
    dwam_weight_update(weights, p, pre.rates(), cfg_.psi_scale);
}

void WeightAdapter::reset() {
    std::fill(theta_m_.begin(), theta_m_.end(), 0.0);
    std::fill(theta_.begin(), theta_.end(), 0.0);
    std::fill(mixing_.begin(), mixing_.end(), 1.0);
}

} // namespace homeostat

#pragma once

#include "homeostat/spike.hpp"
#include "homeostat/weights.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace homeostat {

// Per-neuron cumulative firing rate c = count / t, plus the last `window`
// rates of every neuron for the coefficient of variation.
class RateTracker {
public:
    RateTracker() = default;
    RateTracker(std::size_t neurons, std::size_t window);

    void update(std::span<const Spike> spikes);
    void reset();

    std::size_t size() const { return counts_.size(); }
    std::size_t elapsed() const { return elapsed_; }
    std::size_t capacity() const { return window_; }
    std::size_t filled() const { return history_.size(); }

    const std::vector<double>& rates() const { return rates_; }
    const std::vector<std::size_t>& counts() const { return counts_; }

    /// The most recent min(last, filled()) rates of one neuron, oldest first.
    std::vector<double> window(std::size_t neuron, std::size_t last) const;
    std::vector<double> window(std::size_t neuron) const { return window(neuron, window_); }

private:
    std::size_t window_ = 1;
    std::size_t elapsed_ = 0;
    std::vector<std::size_t> counts_;
    std::vector<double> rates_;
    std::deque<std::vector<double>> history_;
};

/// Sliding modification threshold: (1 - alpha) * theta_m + alpha * c^2.
double theta_bio_update(double theta_m, double rate, double alpha);

/// Population sigma / mu of the window; 0 when mu == 0. An empty window
/// yields nullopt, which callers treat as "still warming up".
std::optional<double> coefficient_of_variation(std::span<const double> window);

/// Mixing coefficient clamp(zeta_cv * cv, lo, hi).
double dwam_mixing(double cv, double zeta_cv, double lo = 0.0, double hi = 1.0);

/// m * theta_m + (1 - m) * c with m = clamp(zeta_cv * cv, lo, hi).
double dwam_theta(double theta_m, double rate, double cv, double zeta_cv,
                  double lo = 0.0, double hi = 1.0);

/// Modification function c * (c - theta).
double phi(double post_rate, double theta);

/// w_ij += phi_i * c_pre_j * |w_ij| * psi_scale for every entry at once.
/// Throws TopologyError on shape mismatch and NumericError on non-finite results.
void dwam_weight_update(WeightMatrix& weights, std::span<const double> phi_post,
                        std::span<const double> pre_rates, double psi_scale);

enum class AdapterKind { None, BioDwam, Dwam };

struct AdapterConfig {
    AdapterKind kind = AdapterKind::None;
    double psi_scale = 0.00005;
    double alpha = 0.5;
    double zeta_cv = 2.0;
    std::size_t window = 5;
    double mix_lo = 0.0;
    double mix_hi = 1.0;

    void validate() const;
};

// BioDWAM / DWAM state for one layer boundary. Thresholds belong to the
// postsynaptic layer; theta_m starts at 0.
class WeightAdapter {
public:
    WeightAdapter() = default;
    WeightAdapter(const AdapterConfig& cfg, std::size_t post_neurons);

    /// Advances theta_m and the effective threshold from the post-layer rates.
    void update_thresholds(const RateTracker& post);

    /// Applies the weight rule using the thresholds from the last update.
    void update_weights(WeightMatrix& weights, const RateTracker& post,
                        const RateTracker& pre) const;

    void reset();

    const AdapterConfig& config() const { return cfg_; }
    const std::vector<double>& theta_m() const { return theta_m_; }
    const std::vector<double>& theta() const { return theta_; }
    const std::vector<double>& mixing() const { return mixing_; }

private:
    AdapterConfig cfg_;
    std::vector<double> theta_m_;
    std::vector<double> theta_;
    std::vector<double> mixing_;
};

} // namespace homeostat

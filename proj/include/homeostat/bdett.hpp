#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace homeostat {

// Dynamic energy-temporal threshold parameters. `psi` is the softplus
// temperature of the energy term (4.0 for obstacle avoidance, 6.0 for control).
struct BdettConfig {
    double eta = 0.01;
    double psi = 4.0;
    double c = 3.0;

    void validate() const;
};

/// mean(x) - 0.2 * (max(x) - min(x)) over a layer.
double layer_reference(std::span<const double> x);

/// Numerically safe ln(1 + e^x).
double softplus(double x);

/// Energy threshold E_i = eta (v_i - V_m) + V_theta + ln(1 + e^{(v_i - V_m) / psi}).
std::vector<double> bdett_det(std::span<const double> potential,
                              std::span<const double> prev_thresholds, const BdettConfig& cfg);

/// Temporal threshold a + e^{-(v_next - v_now) / C}, a = -e^{-|mean(prev thresholds)|}.
double bdett_dtt(double v_now, double v_next, std::span<const double> prev_thresholds,
                 double c);

/// Same as above with the threshold mean already reduced.
double bdett_dtt_from_mean(double v_now, double v_next, double prev_threshold_mean, double c);

/// (E + T) / 2.
double bdett_threshold(double energy, double temporal);

// Per-layer BDETT state. Holds v(t), Theta(t) and E(t) so that the
// threshold for t + 1 can be formed once v(t + 1) is known.
class BdettThreshold {
public:
    BdettThreshold() = default;
    BdettThreshold(const BdettConfig& cfg, std::size_t neurons, double initial_threshold);

    /// Thresholds for the step whose potentials are `potential`; advances state.
    const std::vector<double>& advance(std::span<const double> potential);

    void reset();

    const std::vector<double>& thresholds() const { return theta_; }
    const BdettConfig& config() const { return cfg_; }

private:
    BdettConfig cfg_;
    double initial_ = 1.0;
    std::vector<double> v_;
    std::vector<double> theta_;
    std::vector<double> energy_;
};

} // namespace homeostat

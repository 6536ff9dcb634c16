#include "homeostat/error.hpp"
#include "homeostat/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace homeostat;

namespace {

TrialRecord rec(std::vector<double> rates, std::size_t trial = 0) {
    TrialRecord r;
    r.rates = std::move(rates);
    r.steps = 100;
    r.trial = trial;
    return r;
}

} // namespace

TEST_CASE("identical conditions give zero") {
    const std::vector<TrialRecord> base{rec({0.1, 0.2}), rec({0.3, 0.4}, 1)};
    const auto hm = hm_metrics(base, base);
    CHECK(hm.hm_mean == 0.0);
    CHECK(hm.hm_std == 0.0);
}

TEST_CASE("four-neuron two-trial example") {
    const std::vector<TrialRecord> base{rec({0.3, 0.5, 0.5, 0.7}), rec({0.2, 0.5, 0.5, 0.8}, 1)};
    const std::vector<TrialRecord> degraded{rec({0.7, 0.5, 0.5, 0.3}),
                                            rec({0.8, 0.5, 0.5, 0.2}, 1)};
    // eight absolute differences
    const std::vector<double> d{0.4, 0.0, 0.0, 0.4, 0.6, 0.0, 0.0, 0.6};
    double m = 0.0;
    for (double x : d) m += x;
    m /= 8.0;
    double v = 0.0;
    for (double x : d) v += (x - m) * (x - m);
    const double s = std::sqrt(v / 8.0);

    const auto hm = hm_metrics(base, degraded);
    CHECK(hm.hm_mean == doctest::Approx(m).epsilon(1e-12));
    CHECK(hm.hm_std == doctest::Approx(s).epsilon(1e-12));
    CHECK(std::abs(hm.hm_mean - 0.25) <= 1e-6);
    CHECK(std::abs(hm.hm_std - 0.259808) <= 1e-6);

    const auto lb = legacy_fr_metrics(base);
    const auto ld = legacy_fr_metrics(degraded);
    CHECK(ld.fr_mean - lb.fr_mean == 0.0);
    CHECK(ld.fr_std_mean - lb.fr_std_mean == 0.0);
    CHECK(ld.fr_std_std - lb.fr_std_std == 0.0);
}

TEST_CASE("single neuron single trial") {
    const std::vector<TrialRecord> base{rec({0.4})};
    const std::vector<TrialRecord> degraded{rec({0.6})};
    const auto hm = hm_metrics(base, degraded);
    CHECK(hm.hm_mean == doctest::Approx(0.2));
    CHECK(hm.hm_std == 0.0);
}

TEST_CASE("pairing errors") {
    const std::vector<TrialRecord> one{rec({0.4, 0.5})};
    const std::vector<TrialRecord> two{rec({0.4, 0.5}), rec({0.4, 0.5}, 1)};
    const std::vector<TrialRecord> narrow{rec({0.4})};
    CHECK_THROWS_AS(hm_metrics(one, two), PairingError);
    CHECK_THROWS_AS(hm_metrics(one, narrow), PairingError);
    const auto empty = hm_metrics(std::vector<TrialRecord>{}, std::vector<TrialRecord>{});
    CHECK(empty.hm_mean == 0.0);
    CHECK(empty.hm_std == 0.0);
}

TEST_CASE("legacy metrics") {
    const std::vector<TrialRecord> single{rec({0.1, 0.3})};
    const auto l1 = legacy_fr_metrics(single);
    CHECK(l1.fr_mean == doctest::Approx(0.2));
    CHECK(l1.fr_std_mean == doctest::Approx(0.1));
    CHECK(l1.fr_std_std == 0.0);

    const std::vector<TrialRecord> flat{rec({0.7, 0.7, 0.7}), rec({0.7, 0.7, 0.7}, 1)};
    const auto l2 = legacy_fr_metrics(flat);
    CHECK(l2.fr_mean == doctest::Approx(0.7));
    CHECK(l2.fr_std_mean == 0.0);
    CHECK(l2.fr_std_std == 0.0);

    CHECK_THROWS_AS(legacy_fr_metrics(std::vector<TrialRecord>{}), EmptyTrialError);
}

TEST_CASE("firing rates from counts") {
    const std::vector<std::size_t> counts{0, 10, 5};
    const auto r = firing_rates(counts, 10);
    CHECK(r.rates == std::vector<double>{0.0, 1.0, 0.5});
    CHECK(firing_rates(std::vector<std::size_t>{}, 10).rates.empty());
    CHECK_THROWS_AS(firing_rates(std::vector<std::size_t>{11}, 10), ConfigError);
    CHECK_THROWS_AS(firing_rates(counts, 0), EmptyTrialError);
}

TEST_CASE("sums are order independent") {
    const std::vector<double> a{0.1, 0.7, 0.2, 1e-17, 0.3};
    const std::vector<double> b{1e-17, 0.3, 0.2, 0.7, 0.1};
    CHECK(mean(a) == mean(b));
    CHECK(population_std(a) == population_std(b));
}

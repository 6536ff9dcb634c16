#include "homeostat/error.hpp"
#include "homeostat/homeostasis.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace homeostat;

namespace {

void feed(RateTracker& t, std::initializer_list<int> pattern) {
    for (int s : pattern) {
        const std::vector<Spike> v{static_cast<Spike>(s)};
        t.update(v);
    }
}

} // namespace

TEST_CASE("rate tracker") {
    RateTracker always(1, 5);
    for (int i = 0; i < 10; ++i) feed(always, {1});
    CHECK(always.rates()[0] == 1.0);

    RateTracker never(1, 5);
    for (int i = 0; i < 10; ++i) feed(never, {0});
    CHECK(never.rates()[0] == 0.0);

    RateTracker alt(1, 3);
    feed(alt, {1, 0, 1, 0});
    CHECK(alt.rates()[0] == 0.5);
    CHECK(alt.elapsed() == 4);
    CHECK(alt.filled() == 3);
    const auto w = alt.window(0);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == 0.5);
    CHECK(w[1] == doctest::Approx(2.0 / 3.0));
    CHECK(w[2] == 0.5);

    alt.reset();
    CHECK(alt.elapsed() == 0);
    CHECK(alt.filled() == 0);
}

TEST_CASE("sliding threshold update") {
    CHECK(theta_bio_update(0.2, 0.6, 0.5) == doctest::Approx(0.5 * 0.2 + 0.5 * 0.36));
    CHECK(theta_bio_update(0.25, 0.5, 0.5) == 0.25);

    double tm = 1.0;
    for (int i = 0; i < 200; ++i) tm = theta_bio_update(tm, 0.0, 0.5);
    CHECK(tm < 1e-50);
}

TEST_CASE("coefficient of variation") {
    const std::vector<double> flat{0.5, 0.5, 0.5, 0.5, 0.5};
    const std::vector<double> silent{0, 0, 0, 0, 0};
    const std::vector<double> mixed{0.2, 0.4, 0.6, 0.4, 0.4};
    CHECK(*coefficient_of_variation(flat) == 0.0);
    CHECK(*coefficient_of_variation(silent) == 0.0);

    double mu = 0.0;
    for (double x : mixed) mu += x;
    mu /= 5.0;
    double var = 0.0;
    for (double x : mixed) var += (x - mu) * (x - mu);
    const double sigma = std::sqrt(var / 5.0);
    CHECK(sigma == doctest::Approx(0.12649).epsilon(1e-4));
    CHECK(*coefficient_of_variation(mixed) == doctest::Approx(sigma / mu).epsilon(1e-12));
    CHECK(*coefficient_of_variation(mixed) == doctest::Approx(0.31623).epsilon(1e-4));

    CHECK_FALSE(coefficient_of_variation(std::vector<double>{}).has_value());
}

TEST_CASE("adaptive threshold mixing") {
    CHECK(dwam_theta(0.36, 0.6, 0.0, 2.0) == 0.6);
    CHECK(dwam_theta(0.36, 0.6, 0.5, 2.0) == 0.36);
    CHECK(dwam_theta(0.36, 0.6, 3.0, 2.0) == 0.36);
    const double m = 2.0 * 0.25;
    CHECK(dwam_theta(0.36, 0.6, 0.25, 2.0) == doctest::Approx(m * 0.36 + (1 - m) * 0.6));
    CHECK(dwam_theta(0.36, 0.6, 0.25, 2.0) == doctest::Approx(0.48));
    CHECK(dwam_mixing(0.25, 2.0, 0.1, 0.3) == 0.3);
    CHECK(dwam_mixing(0.0, 2.0, 0.1, 0.3) == 0.1);
}

TEST_CASE("modification function") {
    CHECK(phi(0.5, 0.5) == 0.0);
    CHECK(phi(0.0, 0.9) == 0.0);
    CHECK(phi(0.0, -3.0) == 0.0);
    CHECK(phi(0.8, 0.5) == doctest::Approx(0.8 * 0.3));
}

TEST_CASE("weight update") {
    SUBCASE("hand example") {
        WeightMatrix w{1, 1, {0.5}, {}};
        const std::vector<double> p{0.24}, pre{1.0};
        dwam_weight_update(w, p, pre, 0.00005);
        CHECK(w.weights[0] == doctest::Approx(0.5 + 0.24 * 1.0 * 0.5 * 0.00005).epsilon(1e-15));
        CHECK(w.weights[0] == doctest::Approx(0.500006));
    }
    SUBCASE("silent presynaptic layer is the identity") {
        WeightMatrix w{2, 3, {0.1, -0.2, 0.3, 0.4, -0.5, 0.6}, {}};
        const WeightMatrix before = w;
        const std::vector<double> p{0.3, -0.7}, pre{0.0, 0.0, 0.0};
        dwam_weight_update(w, p, pre, 1.0);
        CHECK(w == before);
    }
    SUBCASE("zero weights are absorbing") {
        WeightMatrix w{1, 2, {0.0, 0.5}, {}};
        const std::vector<double> p{0.9}, pre{1.0, 1.0};
        for (int i = 0; i < 100; ++i) dwam_weight_update(w, p, pre, 0.1);
        CHECK(w.weights[0] == 0.0);
        CHECK(w.weights[1] > 0.5);
    }
    SUBCASE("negative weights move away from zero when phi > 0") {
        WeightMatrix w{1, 1, {-0.5}, {}};
        const std::vector<double> p{0.2}, pre{1.0};
        dwam_weight_update(w, p, pre, 0.1);
        CHECK(w.weights[0] == doctest::Approx(-0.5 + 0.2 * 0.5 * 0.1));
    }
    SUBCASE("errors") {
        WeightMatrix w{1, 2, {0.1, 0.2}, {}};
        const std::vector<double> p{0.1}, pre{1.0};
        CHECK_THROWS_AS(dwam_weight_update(w, p, pre, 1.0), TopologyError);
        const std::vector<double> big{std::numeric_limits<double>::max()}, pre2{1.0, 1.0};
        w.weights = {std::numeric_limits<double>::max(), 0.2};
        CHECK_THROWS_AS(dwam_weight_update(w, big, pre2, 10.0), NumericError);
    }
}

TEST_CASE("weight adapter on a steadily firing neuron") {
    AdapterConfig cfg;
    cfg.kind = AdapterKind::Dwam;
    cfg.window = 3;
    WeightAdapter ad(cfg, 1);
    RateTracker post(1, 3), pre(1, 3);
    WeightMatrix w{1, 1, {0.7}, {}};

    // nothing observed yet: no change at all
    ad.update_thresholds(post);
    ad.update_weights(w, post, pre);
    CHECK(ad.theta_m()[0] == 0.0);
    CHECK(w.weights[0] == 0.7);

    for (int t = 0; t < 6; ++t) {
        feed(post, {1});
        feed(pre, {1});
        ad.update_thresholds(post);
        // a constant window has CV = 0, so the threshold is the rate itself
        CHECK(ad.mixing()[0] == 0.0);
        CHECK(ad.theta()[0] == 1.0);
        ad.update_weights(w, post, pre);
        CHECK(w.weights[0] == 0.7);
    }
    CHECK(ad.theta_m()[0] == doctest::Approx(1.0 - std::pow(0.5, 6)));
}

TEST_CASE("weight adapter with a partial window") {
    AdapterConfig cfg;
    cfg.kind = AdapterKind::Dwam;
    cfg.window = 5;
    WeightAdapter ad(cfg, 1);
    RateTracker post(1, 5);
    feed(post, {1, 0});
    ad.update_thresholds(post);  // theta_m after two steps: 0.5 * 0.5 + 0.5 * 0.25
    const std::vector<double> win{1.0, 0.5};
    const double cv = *coefficient_of_variation(win);
    const double m = std::min(1.0, 2.0 * cv);
    CHECK(ad.mixing()[0] == doctest::Approx(m));
    CHECK(ad.theta()[0] == doctest::Approx(m * ad.theta_m()[0] + (1.0 - m) * 0.5));
}

TEST_CASE("biodwam threshold is the sliding threshold") {
    AdapterConfig cfg;
    cfg.kind = AdapterKind::BioDwam;
    WeightAdapter ad(cfg, 1);
    RateTracker post(1, 5);
    feed(post, {1, 0, 1});
    for (int i = 0; i < 3; ++i) ad.update_thresholds(post);
    CHECK(ad.mixing()[0] == 1.0);
    CHECK(ad.theta()[0] == ad.theta_m()[0]);
}

TEST_CASE("adapter config validation") {
    AdapterConfig cfg;
    cfg.kind = AdapterKind::Dwam;
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.alpha = 0.5;
    cfg.window = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.window = 5;
    cfg.mix_lo = 0.8;
    cfg.mix_hi = 0.2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("a disabled adapter needs no valid parameters") {
    AdapterConfig cfg;
    cfg.alpha = -1.0;
    CHECK_NOTHROW(cfg.validate());
}

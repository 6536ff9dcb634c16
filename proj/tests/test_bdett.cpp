#include "homeostat/bdett.hpp"
#include "homeostat/error.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace homeostat;

TEST_CASE("layer reference") {
    const std::vector<double> v{0.0, 1.0};
    CHECK(layer_reference(v) == doctest::Approx(0.3));
    const std::vector<double> flat{2.0, 2.0, 2.0};
    CHECK(layer_reference(flat) == 2.0);
}

TEST_CASE("energy threshold, equal potentials") {
    const std::vector<double> v{0.4, 0.4, 0.4};
    const std::vector<double> prev{1.3, 1.3, 1.3};
    const auto e = bdett_det(v, prev, BdettConfig{});
    for (double x : e) CHECK(x == doctest::Approx(1.3 + std::log(2.0)));

    BdettConfig no_eta;
    no_eta.eta = 0.0;
    const auto e0 = bdett_det(v, prev, no_eta);
    for (double x : e0) CHECK(x == doctest::Approx(1.3 + std::log(2.0)));
}

TEST_CASE("energy threshold, two neurons") {
    const std::vector<double> v{0.0, 1.0};
    const std::vector<double> prev{1.0, 1.0};
    const auto e = bdett_det(v, prev, BdettConfig{0.01, 4.0, 3.0});
    const double vm = 0.5 - 0.2 * 1.0;
    const double e1 = 0.01 * (0.0 - vm) + 1.0 + std::log(1.0 + std::exp((0.0 - vm) / 4.0));
    const double e2 = 0.01 * (1.0 - vm) + 1.0 + std::log(1.0 + std::exp((1.0 - vm) / 4.0));
    CHECK(e[0] == doctest::Approx(e1).epsilon(1e-14));
    CHECK(e[1] == doctest::Approx(e2).epsilon(1e-14));
    CHECK(e[0] == doctest::Approx(1.6533501408267952).epsilon(1e-14));
}

TEST_CASE("temporal threshold") {
    const std::vector<double> zero{0.0, 0.0};
    CHECK(bdett_dtt(0.3, 0.3, zero, 3.0) == doctest::Approx(0.0));
    const std::vector<double> one{1.0, 1.0};
    CHECK(bdett_dtt(0.2, 0.8, one, 3.0) ==
          doctest::Approx(-std::exp(-1.0) + std::exp(-0.6 / 3.0)).epsilon(1e-14));
    CHECK(bdett_dtt(0.2, 0.8, one, 3.0) == doctest::Approx(0.4508).epsilon(1e-4));
    CHECK(bdett_dtt(0.2, 0.9, one, 3.0) < bdett_dtt(0.2, 0.8, one, 3.0));
    const std::vector<double> neg{-1.0, -1.0};
    CHECK(bdett_dtt(0.2, 0.8, neg, 3.0) == bdett_dtt(0.2, 0.8, one, 3.0));
}

TEST_CASE("combined threshold") {
    CHECK(bdett_threshold(1.0, 1.0) == 1.0);
    CHECK(bdett_threshold(1.2, 0.8) == doctest::Approx(1.0));
    CHECK(bdett_threshold(0.0, 0.0) == 0.0);
}

TEST_CASE("softplus is stable") {
    CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)));
    CHECK(softplus(1000.0) == 1000.0);
    CHECK(softplus(-1000.0) == 0.0);
    CHECK(softplus(2.0) == doctest::Approx(std::log1p(std::exp(2.0))));
}

TEST_CASE("stateful threshold") {
    BdettConfig cfg;
    BdettThreshold th(cfg, 2, 1.0);
    CHECK(th.thresholds() == std::vector<double>{1.0, 1.0});

    const std::vector<double> v1{0.0, 1.0};
    const auto& t1 = th.advance(v1);
    // from rest: E(0) over zero potentials, T from v(0)=0 to v(1)
    const double e0 = 1.0 + std::log(2.0);
    const double a = -std::exp(-1.0);
    CHECK(t1[0] == doctest::Approx(0.5 * (e0 + a + 1.0)));
    CHECK(t1[1] == doctest::Approx(0.5 * (e0 + a + std::exp(-1.0 / 3.0))));

    const std::vector<double> t1_copy = t1;
    const std::vector<double> v2{0.5, 0.5};
    const auto& t2 = th.advance(v2);
    const auto e1 = bdett_det(v1, t1_copy, cfg);
    const double mean1 = 0.5 * (t1_copy[0] + t1_copy[1]);
    CHECK(t2[0] == doctest::Approx(0.5 * (e1[0] + bdett_dtt_from_mean(0.0, 0.5, mean1, 3.0))));
    CHECK(t2[1] == doctest::Approx(0.5 * (e1[1] + bdett_dtt_from_mean(1.0, 0.5, mean1, 3.0))));

    th.reset();
    CHECK(th.thresholds() == std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS(th.advance(std::vector<double>{1.0}), TopologyError);
}

TEST_CASE("config validation") {
    BdettConfig cfg;
    cfg.psi = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

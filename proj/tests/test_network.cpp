#include "homeostat/checkpoint.hpp"
#include "homeostat/error.hpp"
#include "homeostat/network.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace homeostat;

namespace {

SpikeTrain random_train(std::size_t channels, std::size_t steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::vector<double> rates(channels, 0.6);
    return poisson_encode(rates, steps, rng);
}

} // namespace

TEST_CASE("no adapters leaves weights untouched") {
    const auto ckpt = random_checkpoint({6, 8, 3}, 4);
    Network net(ckpt.layers, NetworkConfig{});
    const auto out = net.forward(random_train(6, 200, 9));
    CHECK(net.weights() == ckpt.layers);
    CHECK(out.output.steps() == 200);
    CHECK(out.rate_trace.size() == 200);
    CHECK(out.rate_trace.back().size() == 3);
}

TEST_CASE("empty run") {
    const auto ckpt = random_checkpoint({3, 4, 2}, 1);
    Network net(ckpt.layers, NetworkConfig{});
    const auto out = net.forward(SpikeTrain(3, 0));
    CHECK(out.output.steps() == 0);
    CHECK(out.rate_trace.empty());
    CHECK(net.elapsed() == 0);
    CHECK(net.layer_state(1).potential == std::vector<double>(4, 0.0));
}

TEST_CASE("replay is deterministic for both neuron models and all adapters") {
    const auto ckpt = random_checkpoint({5, 7, 7, 2}, 12);
    for (NeuronKind kind : {NeuronKind::Lif, NeuronKind::Srm}) {
        NetworkConfig cfg;
        cfg.neuron = kind;
        AdapterConfig dwam;
        dwam.kind = AdapterKind::Dwam;
        dwam.psi_scale = 0.01;
        cfg.adapters = {dwam, dwam, dwam};
        ThresholdConfig bd;
        bd.kind = ThresholdKind::Bdett;
        cfg.thresholds = {bd, ThresholdConfig{}, bd};
        Network a(ckpt.layers, cfg), b(ckpt.layers, cfg);
        const auto in = random_train(5, 150, 3);
        const auto ra = a.forward(in);
        const auto rb = b.forward(in);
        CHECK(ra.output == rb.output);
        CHECK(ra.rate_trace == rb.rate_trace);
        CHECK(a.weights() == b.weights());
        CHECK(a.weights() != ckpt.layers);

        // reset_state restores the initial dynamics for the same weights
        Network c(a.weights(), cfg);
        a.reset_state();
        CHECK(a.forward(in).output == c.forward(in).output);
    }
}

TEST_CASE("weight changes take effect from the next step") {
    // one input, one output, pure weight growth
    WeightMatrix w{1, 1, {0.6}, {}};
    NetworkConfig cfg;
    AdapterConfig ad;
    ad.kind = AdapterKind::BioDwam;
    ad.psi_scale = 0.5;
    ad.window = 1;
    cfg.adapters = {ad};
    Network net({w}, cfg);
    const std::vector<Spike> on{1};

    net.step(on);
    // v = 0.6 below threshold: no output, c_post = 0, phi = 0, unchanged
    CHECK(net.layer_state(1).potential[0] == doctest::Approx(0.6));
    CHECK(net.weights()[0].weights[0] == 0.6);
    net.step(on);
    // v = 0.6 + 0.45 = 1.05 spikes; c_post = 0.5, theta_m = 0.125
    const double theta_m = 0.5 * 0.0 + 0.5 * 0.25;
    const double expected_w = 0.6 + 0.5 * (0.5 - theta_m) * 1.0 * 0.6 * 0.5;
    CHECK(net.spikes(1)[0] == 1);
    CHECK(net.adapter(1)->theta_m()[0] == doctest::Approx(theta_m));
    CHECK(net.weights()[0].weights[0] == doctest::Approx(expected_w));
    net.step(on);
    // the new weight drives this step; carry was reset by the spike
    CHECK(net.layer_state(1).potential[0] == doctest::Approx(expected_w));
}

TEST_CASE("modification threshold without an adapter is the rate itself") {
    const auto ckpt = random_checkpoint({3, 4}, 2);
    Network net(ckpt.layers, NetworkConfig{});
    net.forward(random_train(3, 20, 1));
    CHECK(net.adapter(1) == nullptr);
    CHECK(net.modification_thresholds(1) == net.rates(1).rates());
}

TEST_CASE("topology errors") {
    const auto ckpt = random_checkpoint({3, 4, 2}, 1);
    Network net(ckpt.layers, NetworkConfig{});
    CHECK_THROWS_AS(net.step(std::vector<Spike>{1, 0}), TopologyError);
    CHECK_THROWS_AS(net.forward(SpikeTrain(2, 5)), TopologyError);

    auto bad = ckpt.layers;
    bad[1] = WeightMatrix{2, 3, std::vector<double>(6, 0.1), {}};
    CHECK_THROWS_AS(Network(bad, NetworkConfig{}), TopologyError);
    CHECK_THROWS_AS(net.set_weights(bad), TopologyError);

    NetworkConfig cfg;
    cfg.adapters.resize(1);
    CHECK_THROWS_AS(Network(ckpt.layers, cfg), TopologyError);

    auto biased = ckpt.layers;
    biased[0].bias.assign(4, 0.1);
    NetworkConfig srm;
    srm.neuron = NeuronKind::Srm;
    CHECK_THROWS_AS(Network(biased, srm), TopologyError);
    CHECK_NOTHROW(Network(biased, NetworkConfig{}));
}

TEST_CASE("checkpoint round trip") {
    auto ckpt = random_checkpoint({4, 5, 3}, 77);
    ckpt.layers[0].bias = {0.1, -0.2, 1e-300, 0.0, 3.5};
    const auto text = checkpoint_to_json(ckpt);
    CHECK(checkpoint_from_json(text) == ckpt);
    CHECK(checkpoint_to_json(checkpoint_from_json(text)) == text);
}

TEST_CASE("checkpoint parse errors") {
    CHECK_THROWS_AS(checkpoint_from_json("{not json"), ParseError);
    CHECK_THROWS_AS(checkpoint_from_json("{\"format\":\"other\"}"), ParseError);
    auto ckpt = random_checkpoint({2, 2}, 1);
    auto text = checkpoint_to_json(ckpt);
    const auto pos = text.find("\"rows\": 2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 9, "\"rows\": 3");
    CHECK_THROWS_AS(checkpoint_from_json(text), Error);
    CHECK_THROWS_AS(load_checkpoint("/nonexistent/ckpt.json"), Error);
}

TEST_CASE("random checkpoint is seeded") {
    CHECK(random_checkpoint({3, 4, 2}, 5) == random_checkpoint({3, 4, 2}, 5));
    CHECK_FALSE(random_checkpoint({3, 4, 2}, 5) == random_checkpoint({3, 4, 2}, 6));
}

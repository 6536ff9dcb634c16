#include "homeostat/error.hpp"
#include "homeostat/spike.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace homeostat;

TEST_CASE("poisson encoding of the extreme rates") {
    std::mt19937_64 rng(3);
    const std::vector<double> zero{0.0};
    const std::vector<double> one{1.0};
    auto z = poisson_encode(zero, 100, rng);
    auto o = poisson_encode(one, 100, rng);
    CHECK(z.counts()[0] == 0);
    CHECK(o.counts()[0] == 100);
}

TEST_CASE("poisson encoding of 0.5 over 10000 steps") {
    std::mt19937_64 rng(11);
    const std::vector<double> half{0.5};
    auto train = poisson_encode(half, 10000, rng);
    std::size_t n = 0;
    for (std::size_t t = 0; t < train.steps(); ++t) n += train.at(t, 0);
    CHECK(std::abs(static_cast<double>(n) / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("poisson encoding is reproducible and rejects out-of-range values") {
    const std::vector<double> v{0.1, 0.7, 0.3};
    std::mt19937_64 a(5), b(5);
    CHECK(poisson_encode(v, 50, a) == poisson_encode(v, 50, b));

    std::mt19937_64 rng(1);
    const std::vector<double> bad{0.5, 1.5};
    CHECK_THROWS_AS(poisson_encode(bad, 10, rng), InputRangeError);
    const std::vector<double> neg{-0.1};
    CHECK_THROWS_AS(poisson_encode(neg, 10, rng), InputRangeError);
    const std::vector<double> nan{std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(poisson_encode(nan, 10, rng), InputRangeError);
}

TEST_CASE("decode rate") {
    SpikeTrain zeros(1, 10);
    CHECK(decode_rate(zeros)[0] == 0.0);

    SpikeTrain ones(1, 10);
    for (std::size_t t = 0; t < 10; ++t) ones.set(t, 0, true);
    CHECK(decode_rate(ones)[0] == 1.0);

    SpikeTrain three(1, 8);
    three.set(1, 0, true);
    three.set(4, 0, true);
    three.set(7, 0, true);
    CHECK(decode_rate(three)[0] == 0.375);

    CHECK_THROWS_AS(decode_rate(SpikeTrain(2, 0)), EmptyTrialError);
}

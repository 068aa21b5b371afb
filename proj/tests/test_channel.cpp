#include <doctest.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "r1dual/channel.hpp"

using namespace r1dual;

TEST_CASE("BPSK mapping") {
    CHECK(modulate_bpsk({0, 1, 0}) == std::vector<double>{1.0, -1.0, 1.0});
    CHECK(modulate_bpsk({}).empty());
    CHECK(modulate_bpsk({1, 1, 1}) == std::vector<double>{-1.0, -1.0, -1.0});
}

TEST_CASE("noise variance follows the Eb/N0 convention") {
    const ChannelParams p = ChannelParams::from_ebn0_db(0.0);
    CHECK(p.sigma == doctest::Approx(std::sqrt(0.5)));
    const ChannelParams q = ChannelParams::from_ebn0_db(10.0);
    CHECK(q.sigma == doctest::Approx(std::sqrt(0.05)));
}

TEST_CASE("soft estimates saturate as noise vanishes") {
    const ChannelParams p = ChannelParams::from_ebn0_db(40.0);
    FrameRng rng(1, 0);
    const SoftSeq soft = awgn_soft_estimates({1.0, -1.0, 1.0}, p, rng);
    CHECK(soft[0] > 0.999);
    CHECK(soft[1] < -0.999);
    for (double v : soft) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("erasure at the decision boundary") {
    // y = 0 gives tanh(0) = 0 regardless of sigma
    CHECK(std::tanh(0.0) == 0.0);
}

TEST_CASE("frame streams are reproducible and decorrelated") {
    FrameRng a(42, 0), b(42, 0), c(42, 1);
    const double first = a.gaussian();
    CHECK(first == b.gaussian());
    CHECK(first != c.gaussian());
    FrameRng d(43, 0);
    CHECK(first != d.gaussian());
}

TEST_CASE("first draw from seed 42 matches the frozen value") {
    std::ifstream golden(std::string(R1DUAL_GOLDEN_DIR) +
                         "/gaussian_seed42.txt");
    REQUIRE(golden.good());
    double expected = 0.0;
    golden >> expected;
    FrameRng rng(42, 0);
    CHECK(rng.gaussian() == expected);  // bit-exact determinism
}

TEST_CASE("uniform draws stay in range") {
    FrameRng rng(7, 3);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform_pos();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        const double v = rng.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("sigma must be positive") {
    ChannelParams p;
    p.sigma = 0.0;
    FrameRng rng(1, 1);
    CHECK_THROWS_AS(awgn_soft_estimates({1.0}, p, rng), std::invalid_argument);
}

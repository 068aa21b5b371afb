#pragma once

#include <vector>

#include "r1dual/bcjr.hpp"
#include "r1dual/codes.hpp"
#include "r1dual/rng.hpp"

namespace r1dual {

/// AWGN channel setup for rate-1 BPSK with unit symbol energy:
/// sigma^2 = 1 / (2 * 10^(EbN0/10)).
struct ChannelParams {
    double ebn0_db = 0.0;
    double sigma = 1.0;

    static ChannelParams from_ebn0_db(double ebn0_db);
};

/// Bit 0 -> +1.0, bit 1 -> -1.0.
std::vector<double> modulate_bpsk(const BitSeq& bits);

/// Adds Gaussian noise from the given stream and converts each received
/// value to the soft coded estimate tanh(y / sigma^2).
SoftSeq awgn_soft_estimates(const std::vector<double>& symbols,
                            const ChannelParams& params, FrameRng& rng);

}  // namespace r1dual

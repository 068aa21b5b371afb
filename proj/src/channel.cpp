#include "r1dual/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace r1dual {

double FrameRng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

ChannelParams ChannelParams::from_ebn0_db(double ebn0_db) {
    ChannelParams p;
    p.ebn0_db = ebn0_db;
    p.sigma = std::sqrt(1.0 / (2.0 * std::pow(10.0, ebn0_db / 10.0)));
    return p;
}

std::vector<double> modulate_bpsk(const BitSeq& bits) {
    std::vector<double> out(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? -1.0 : 1.0;
    return out;
}

SoftSeq awgn_soft_estimates(const std::vector<double>& symbols,
                            const ChannelParams& params, FrameRng& rng) {
    if (!(params.sigma > 0.0))
        throw std::invalid_argument("awgn_soft_estimates: sigma must be positive");
    const double inv_var = 1.0 / (params.sigma * params.sigma);
    SoftSeq out(symbols.size());
    for (size_t i = 0; i < symbols.size(); ++i) {
        const double y = symbols[i] + params.sigma * rng.gaussian();
        out[i] = std::tanh(y * inv_var);
    }
    return out;
}

}  // namespace r1dual

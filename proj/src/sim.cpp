#include "r1dual/sim.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <thread>

#include "r1dual/channel.hpp"
#include "r1dual/combine.hpp"
#include "r1dual/dualsiso.hpp"

namespace r1dual {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Everything a decoder needs, prepared once per simulation point so the
/// per-frame path stays free of derivations and table builds.
struct PreparedDecoder {
    DecoderKind kind;
    CodeSpec spec;
    std::optional<Trellis> trellis;
    std::optional<DualSpec> fwd_dual;
    std::optional<DualSpec> bwd_dual;
    std::optional<WeightCode> profile;

    PreparedDecoder(const CodeSpec& code, DecoderKind k) : kind(k), spec(code) {
        switch (kind) {
            case DecoderKind::BcjrBidir:
                trellis = build_trellis(spec);
                break;
            case DecoderKind::DualForward:
                if (spec.cls != CodeClass::Fbc)
                    throw std::invalid_argument(
                        "dual-forward is a full MAP decoder only for FBC "
                        "codes (1/q); use dual-sum or dual-combined for " +
                        spec.to_string());
                fwd_dual = derive_forward_dual(spec);
                break;
            case DecoderKind::DualSum:
                fwd_dual = derive_forward_dual(spec);
                bwd_dual = derive_backward_dual(spec);
                break;
            case DecoderKind::DualCombined:
                profile = weight_code_for(spec);
                if (!profile)
                    throw std::invalid_argument(
                        "dual-combined has no tabulated weights for code " +
                        spec.to_string());
                fwd_dual = derive_forward_dual(spec);
                bwd_dual = derive_backward_dual(spec);
                break;
        }
    }

    SoftSeq forward(const SoftSeq& coded) const {
        return from_log_domain(
            run_dual_register(*fwd_dual, to_log_domain(coded)));
    }

    SoftSeq backward(const SoftSeq& coded) const {
        if (spec.cls == CodeClass::Fbc) return SoftSeq(coded.size(), 0.0);
        std::vector<SoftSymbol> symbols = to_log_domain(coded);
        std::reverse(symbols.begin(), symbols.end());
        std::vector<SoftSymbol> out = run_dual_register(*bwd_dual, symbols);
        std::reverse(out.begin(), out.end());
        return from_log_domain(out);
    }

    SoftSeq decode(const SoftSeq& coded) const {
        switch (kind) {
            case DecoderKind::BcjrBidir:
                return bidirectional_decode(*trellis, soft_to_prob(coded),
                                            kCombineReferenceInit);
            case DecoderKind::DualForward:
                return forward(coded);
            case DecoderKind::DualSum: {
                SoftSeq fwd = forward(coded);
                const SoftSeq bwd = backward(coded);
                for (size_t i = 0; i < fwd.size(); ++i) {
                    double v = fwd[i] + bwd[i];
                    fwd[i] = std::clamp(v, -1.0, 1.0);
                }
                return fwd;
            }
            case DecoderKind::DualCombined: {
                const SoftSeq fwd = forward(coded);
                const SoftSeq bwd = backward(coded);
                const WeightSet set = compute_weights(*profile, coded);
                return combine_outputs(fwd, bwd, set.weights);
            }
        }
        throw std::logic_error("decode: bad decoder kind");
    }
};

// Encodes the frame and appends the n tail inputs that return the encoder
// to the all-zero state. The decoders close on that state, so transmitted
// frames carry the termination; only the information bits are scored.
BitSeq encode_terminated(const CodeSpec& spec, const BitSeq& info) {
    CodeStepper stepper(spec);
    BitSeq coded;
    coded.reserve(info.size() + static_cast<size_t>(stepper.order));
    uint32_t state = 0;
    for (uint8_t b : info) {
        const auto s = stepper.step(state, b);
        coded.push_back(s.out);
        state = s.next;
    }
    for (int t = 0; t < stepper.order; ++t) {
        const uint8_t tail =
            static_cast<uint8_t>(std::popcount(state & stepper.fb_mask) & 1);
        const auto s = stepper.step(state, tail);
        coded.push_back(s.out);
        state = s.next;
    }
    return coded;
}

long long count_frame_errors(const PreparedDecoder& decoder,
                             const CodeSpec& spec, int frame_len,
                             const ChannelParams& params, uint64_t seed,
                             long long frame) {
    FrameRng rng(seed, static_cast<uint64_t>(frame));
    BitSeq info(static_cast<size_t>(frame_len));
    for (auto& b : info) b = rng.bit();
    const BitSeq coded = encode_terminated(spec, info);
    const SoftSeq soft =
        awgn_soft_estimates(modulate_bpsk(coded), params, rng);
    const SoftSeq decoded = decoder.decode(soft);
    long long errors = 0;
    for (size_t i = 0; i < info.size(); ++i) {
        const uint8_t hard = decoded[i] >= 0.0 ? 0 : 1;  // ties decide 0
        errors += (hard != info[i]);
    }
    return errors;
}

}  // namespace

const char* to_string(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::BcjrBidir: return "bcjr-bidir";
        case DecoderKind::DualForward: return "dual-forward";
        case DecoderKind::DualSum: return "dual-sum";
        case DecoderKind::DualCombined: return "dual-combined";
    }
    return "?";
}

DecoderKind parse_decoder(const std::string& text) {
    for (DecoderKind kind : {DecoderKind::BcjrBidir, DecoderKind::DualForward,
                             DecoderKind::DualSum, DecoderKind::DualCombined})
        if (text == to_string(kind)) return kind;
    throw std::invalid_argument("unknown decoder '" + text +
                                "' (expected bcjr-bidir, dual-forward, "
                                "dual-sum or dual-combined)");
}

std::vector<BerRecord> run_ber(const SimConfig& config) {
    if (config.frames < 1) throw std::invalid_argument("run_ber: frames < 1");
    if (config.frame_len < 1)
        throw std::invalid_argument("run_ber: frame_len < 1");
    if (config.ebn0_list.empty())
        throw std::invalid_argument("run_ber: empty Eb/N0 list");
    const CodeSpec spec = CodeSpec::parse(config.code);
    const PreparedDecoder decoder(spec, config.decoder);  // validates pairing
    const int threads =
        std::max(1, std::min<int>(config.threads,
                                  static_cast<int>(config.frames)));
    std::vector<BerRecord> records;
    for (double ebn0 : config.ebn0_list) {
        const ChannelParams params = ChannelParams::from_ebn0_db(ebn0);
        std::vector<long long> partial(static_cast<size_t>(threads), 0);
        auto worker = [&](int t) {
            long long local = 0;
            for (long long f = t; f < config.frames; f += threads)
                local += count_frame_errors(decoder, spec, config.frame_len,
                                            params, config.seed, f);
            partial[static_cast<size_t>(t)] = local;
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<size_t>(threads));
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        long long bit_errors = 0;
        for (long long p : partial) bit_errors += p;
        BerRecord rec;
        rec.code = config.code;
        rec.decoder = to_string(config.decoder);
        rec.ebn0_db = ebn0;
        rec.frames = config.frames;
        rec.bit_errors = bit_errors;
        rec.ber = static_cast<double>(bit_errors) /
                  (static_cast<double>(config.frames) * config.frame_len);
        rec.seed = config.seed;
        records.push_back(std::move(rec));
    }
    return records;
}

std::string records_to_csv(const std::vector<BerRecord>& records) {
    std::string out = "code,decoder,ebn0_db,frames,bit_errors,ber,seed\n";
    for (const auto& r : records) {
        out += r.code;
        out += ',';
        out += r.decoder;
        out += ',';
        out += format_double(r.ebn0_db);
        out += ',';
        out += std::to_string(r.frames);
        out += ',';
        out += std::to_string(r.bit_errors);
        out += ',';
        out += format_double(r.ber);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

std::vector<BenchRow> benchmark_complexity(const std::vector<int>& orders,
                                           int frame_len, int reps) {
    if (frame_len < 1 || reps < 1)
        throw std::invalid_argument("benchmark_complexity: bad setup");
    using Clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    for (int order : orders) {
        if (order < 1 || order > 16)
            throw std::invalid_argument(
                "benchmark_complexity: memory order out of range");
        // 1/(x^n + x + 1), or 1/(x+1) for order 1.
        std::vector<uint8_t> q(static_cast<size_t>(order) + 1, 0);
        q[0] = 1;
        q[static_cast<size_t>(order)] = 1;
        if (order > 1) q[1] = 1;
        const CodeSpec spec =
            CodeSpec::make(Gf2Poly::one(), Gf2Poly::from_coeffs(q));
        const Trellis trellis = build_trellis(spec);
        const DualSpec dual = derive_forward_dual(spec);

        FrameRng rng(0xb0a710adULL, static_cast<uint64_t>(order));
        BitSeq info(static_cast<size_t>(frame_len));
        for (auto& b : info) b = rng.bit();
        const SoftSeq soft = awgn_soft_estimates(
            modulate_bpsk(encode(spec, info)),
            ChannelParams::from_ebn0_db(2.0), rng);
        const std::vector<ProbPair> probs = soft_to_prob(soft);
        const std::vector<SoftSymbol> symbols = to_log_domain(soft);

        volatile double sink = 0.0;  // keeps the decode loops alive
        auto time_median = [&](auto&& body) {
            body();  // warmup
            std::vector<double> us(static_cast<size_t>(reps));
            for (int r = 0; r < reps; ++r) {
                const auto start = Clock::now();
                body();
                const auto stop = Clock::now();
                us[static_cast<size_t>(r)] =
                    std::chrono::duration<double, std::micro>(stop - start)
                        .count();
            }
            std::sort(us.begin(), us.end());
            return us[us.size() / 2];
        };

        BenchRow bcjr_row;
        bcjr_row.order = order;
        bcjr_row.decoder = to_string(DecoderKind::BcjrBidir);
        bcjr_row.median_us_per_frame = time_median([&] {
            SoftSeq out = bidirectional_decode(trellis, probs);
            sink = sink + out.back();
        });
        rows.push_back(std::move(bcjr_row));

        BenchRow dual_row;
        dual_row.order = order;
        dual_row.decoder = to_string(DecoderKind::DualForward);
        dual_row.median_us_per_frame = time_median([&] {
            std::vector<SoftSymbol> out = run_dual_register(dual, symbols);
            sink = sink + out.back().logmag;
        });
        rows.push_back(std::move(dual_row));
    }
    return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
    std::string out = "order,decoder,median_us_per_frame\n";
    for (const auto& r : rows) {
        out += std::to_string(r.order);
        out += ',';
        out += r.decoder;
        out += ',';
        out += format_double(r.median_us_per_frame);
        out += '\n';
    }
    return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{}
                                          : s.substr(a, b - a + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (!key.empty()) out[key] = value;
    }
    return out;
}

}  // namespace r1dual

// Command-line front end: BER simulation, decoder equivalence checks,
// combining-weight verification and the complexity benchmark.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "r1dual/bcjr.hpp"
#include "r1dual/channel.hpp"
#include "r1dual/combine.hpp"
#include "r1dual/dualsiso.hpp"
#include "r1dual/sim.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("expected a comma-separated list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

void write_output(const std::string& csv, const std::string& path) {
    if (path.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << csv;
}

int run_equiv(const std::string& code_text, int frame_len, int trials,
              uint64_t seed) {
    using namespace r1dual;
    const CodeSpec spec = CodeSpec::parse(code_text);
    const Trellis trellis = build_trellis(spec);
    const std::optional<WeightCode> profile = weight_code_for(spec);
    double max_fwd = 0.0, max_bwd = 0.0, max_full = 0.0;
    for (int t = 0; t < trials; ++t) {
        FrameRng rng(seed, static_cast<uint64_t>(t));
        SoftSeq coded(static_cast<size_t>(frame_len));
        for (double& v : coded) {
            const double mag = 0.05 + 0.9 * rng.uniform();
            v = rng.bit() ? -mag : mag;
        }
        const auto probs = soft_to_prob(coded);
        const SoftSeq fwd = forward_decode(spec, coded);
        const SoftSeq fwd_ref = forward_pass(trellis, probs).soft;
        const SoftSeq bwd = backward_decode(spec, coded);
        const SoftSeq bwd_ref =
            backward_pass(trellis, probs, StateInit::ZeroState).soft;
        for (int k = 0; k < frame_len; ++k) {
            max_fwd = std::max(max_fwd, std::abs(fwd[k] - fwd_ref[k]));
            max_bwd = std::max(max_bwd, std::abs(bwd[k] - bwd_ref[k]));
        }
        if (spec.cls == CodeClass::Fbc) {
            const SoftSeq full =
                bidirectional_decode(trellis, probs, StateInit::Uniform);
            for (int k = 0; k < frame_len; ++k)
                max_full = std::max(max_full, std::abs(fwd[k] - full[k]));
        } else if (profile) {
            const WeightSet set = compute_weights(*profile, coded);
            const SoftSeq combined = combine_outputs(fwd, bwd, set.weights);
            const SoftSeq full =
                bidirectional_decode(trellis, probs, kCombineReferenceInit);
            for (int k = 0; k < frame_len; ++k)
                max_full = std::max(max_full, std::abs(combined[k] - full[k]));
        }
    }
    const double tol = 1e-9;
    bool ok = true;
    auto report = [&](const char* name, double err, bool applicable) {
        if (!applicable) {
            std::printf("%-22s skipped\n", name);
            return;
        }
        const bool pass = err <= tol;
        ok = ok && pass;
        std::printf("%-22s max_error=%.3e  %s\n", name, err,
                    pass ? "ok" : "FAIL");
    };
    std::printf("code %s (%s), frame_len=%d, trials=%d\n", code_text.c_str(),
                to_string(spec.cls), frame_len, trials);
    report("forward vs reference", max_fwd, true);
    report("backward vs reference", max_bwd, true);
    report("full MAP vs reference", max_full,
           spec.cls == CodeClass::Fbc || profile.has_value());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate-1 convolutional code dual-decoder toolkit"};
    app.require_subcommand(1);

    // --- ber ---
    auto* ber = app.add_subcommand("ber", "Monte-Carlo BER over BPSK/AWGN");
    std::string ber_config_path;
    std::string ber_code = "5/7";
    std::string ber_decoder = "bcjr-bidir";
    int ber_frame_len = 128;
    long long ber_frames = 1000;
    std::string ber_ebn0 = "0,1,2,3";
    uint64_t ber_seed = 1;
    int ber_threads = 1;
    std::string ber_out;
    ber->add_option("--config", ber_config_path,
                    "key=value file mirroring the flags; flags override");
    auto* opt_code = ber->add_option("--code", ber_code, "code in octal, e.g. 5/7");
    auto* opt_dec = ber->add_option(
        "--decoder", ber_decoder,
        "bcjr-bidir | dual-forward | dual-sum | dual-combined");
    auto* opt_len = ber->add_option("--frame-len", ber_frame_len, "bits per frame");
    auto* opt_frames = ber->add_option("--frames", ber_frames, "frames per point");
    auto* opt_ebn0 = ber->add_option("--ebn0", ber_ebn0, "comma list of Eb/N0 [dB]");
    auto* opt_seed = ber->add_option("--seed", ber_seed, "simulation seed");
    auto* opt_threads = ber->add_option("--threads", ber_threads, "worker threads");
    ber->add_option("--out", ber_out, "CSV output path (default stdout)");

    // --- equiv ---
    auto* equiv = app.add_subcommand(
        "equiv", "check dual decoders against the trellis reference");
    std::string eq_code = "5/7";
    int eq_frame_len = 32;
    int eq_trials = 100;
    uint64_t eq_seed = 7;
    equiv->add_option("--code", eq_code, "code in octal");
    equiv->add_option("--frame-len", eq_frame_len, "bits per frame");
    equiv->add_option("--trials", eq_trials, "random frames to test");
    equiv->add_option("--seed", eq_seed, "seed");

    // --- weights-verify ---
    auto* wv = app.add_subcommand(
        "weights-verify", "verify combining weights against the reference");
    std::string wv_code;
    int wv_trials = 100;
    int wv_frame_len = 16;
    uint64_t wv_seed = 11;
    wv->add_option("--code", wv_code,
                   "profile id (GC_5_7, FFC_5, FFC_7, FFC_17, GC_15_13); "
                   "default: all");
    wv->add_option("--trials", wv_trials, "random frames");
    wv->add_option("--frame-len", wv_frame_len, "bits per frame");
    wv->add_option("--seed", wv_seed, "seed");

    // --- bench ---
    auto* bench = app.add_subcommand(
        "bench", "time the reference decoder against the dual register");
    std::string bench_orders = "2,4,6,8";
    int bench_frame_len = 4096;
    int bench_reps = 5;
    std::string bench_out;
    bench->add_option("--orders", bench_orders, "comma list of memory orders");
    bench->add_option("--frame-len", bench_frame_len, "bits per frame");
    bench->add_option("--reps", bench_reps, "repetitions per decoder");
    bench->add_option("--out", bench_out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ber->parsed()) {
            if (!ber_config_path.empty()) {
                const auto file = r1dual::load_config_file(ber_config_path);
                auto apply = [&](const char* key, CLI::Option* opt, auto& target) {
                    auto it = file.find(key);
                    if (it == file.end() || opt->count() > 0) return;
                    std::stringstream ss(it->second);
                    ss >> target;
                    if (ss.fail())
                        throw std::runtime_error(std::string("bad value for ") +
                                                 key + " in config file");
                };
                apply("code", opt_code, ber_code);
                apply("decoder", opt_dec, ber_decoder);
                apply("frame-len", opt_len, ber_frame_len);
                apply("frames", opt_frames, ber_frames);
                apply("ebn0", opt_ebn0, ber_ebn0);
                apply("seed", opt_seed, ber_seed);
                apply("threads", opt_threads, ber_threads);
            }
            r1dual::SimConfig config;
            config.code = ber_code;
            config.decoder = r1dual::parse_decoder(ber_decoder);
            config.frame_len = ber_frame_len;
            config.frames = ber_frames;
            config.ebn0_list = parse_double_list(ber_ebn0);
            config.seed = ber_seed;
            config.threads = ber_threads;
            write_output(r1dual::records_to_csv(r1dual::run_ber(config)), ber_out);
            return 0;
        }
        if (equiv->parsed())
            return run_equiv(eq_code, eq_frame_len, eq_trials, eq_seed);
        if (wv->parsed()) {
            using r1dual::WeightCode;
            std::vector<WeightCode> codes;
            if (wv_code.empty()) {
                codes = {WeightCode::Gc57, WeightCode::Ffc5, WeightCode::Ffc7,
                         WeightCode::Ffc17, WeightCode::Gc1513};
            } else {
                auto parsed = r1dual::parse_weight_code(wv_code);
                if (!parsed)
                    throw std::runtime_error("unknown profile id " + wv_code);
                codes = {*parsed};
            }
            bool ok = true;
            for (WeightCode code : codes) {
                const auto report = r1dual::verify_weights(
                    r1dual::code_spec_for(code), code, wv_trials, wv_frame_len,
                    wv_seed);
                std::cout << report.to_string(code) << "\n";
                ok = ok && report.max_error <= 1e-9;
            }
            return ok ? 0 : 1;
        }
        if (bench->parsed()) {
            const auto rows = r1dual::benchmark_complexity(
                parse_int_list(bench_orders), bench_frame_len, bench_reps);
            write_output(r1dual::bench_to_csv(rows), bench_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

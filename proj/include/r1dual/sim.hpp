#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "r1dual/codes.hpp"

namespace r1dual {

enum class DecoderKind {
    BcjrBidir,     // reference trellis decoder
    DualForward,   // forward dual register (full MAP for FBC codes)
    DualSum,       // forward + backward dual outputs, unweighted
    DualCombined,  // weighted combination, exact MAP for tabulated codes
};

const char* to_string(DecoderKind kind);
DecoderKind parse_decoder(const std::string& text);

struct SimConfig {
    std::string code = "5/7";
    DecoderKind decoder = DecoderKind::BcjrBidir;
    int frame_len = 128;
    long long frames = 1000;
    std::vector<double> ebn0_list = {0.0};
    uint64_t seed = 1;
    int threads = 1;
};

struct BerRecord {
    std::string code;
    std::string decoder;
    double ebn0_db = 0.0;
    long long frames = 0;
    long long bit_errors = 0;
    double ber = 0.0;
    uint64_t seed = 0;
};

/// Monte-Carlo BER measurement. Deterministic for a given config at any
/// thread count: every frame draws from its own (seed, frame) substream
/// and the error counts reduce by integer addition.
std::vector<BerRecord> run_ber(const SimConfig& config);

/// CSV with the fixed column set; decimal formatting is locale-free.
std::string records_to_csv(const std::vector<BerRecord>& records);

struct BenchRow {
    int order = 0;
    std::string decoder;
    double median_us_per_frame = 0.0;
};

/// Times the reference decoder against the forward dual register on FBC
/// codes 1/(x^n+x+1) across memory orders.
std::vector<BenchRow> benchmark_complexity(const std::vector<int>& orders,
                                           int frame_len, int reps);

std::string bench_to_csv(const std::vector<BenchRow>& rows);

/// Flat key=value config file ('#' starts a comment). Keys mirror the CLI
/// flag names; flags given on the command line take precedence.
std::map<std::string, std::string> load_config_file(const std::string& path);

}  // namespace r1dual

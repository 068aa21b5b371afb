#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "r1dual/bcjr.hpp"
#include "r1dual/codes.hpp"

namespace r1dual {

/// Codes with tabulated combining rules that turn forward+backward dual
/// outputs into the exact bidirectional MAP output.
enum class WeightCode { Gc57, Ffc5, Ffc7, Ffc17, Gc1513 };

const char* to_string(WeightCode code);
std::optional<WeightCode> parse_weight_code(const std::string& text);

/// Generator of the code a weight rule belongs to.
CodeSpec code_spec_for(WeightCode code);

/// Weight rule supported by a given code, if any.
std::optional<WeightCode> weight_code_for(const CodeSpec& spec);

struct WeightPair {
    double fwd = 0.5;
    double bwd = 0.5;
};

struct WeightSet {
    std::vector<WeightPair> weights;
    long long clamp_count = 0;  // divisions rescued by the 1e-12 guard
};

/// The tabulated rules as printed reproduce the *unnormalized* combined
/// a-posteriori difference: they are short by the total probability mass
/// of the all-zero terminal-state constraint (a frame-global factor), and
/// the two 8-state rules additionally carry defective product windows.
/// The amended variant derives every coefficient from the parity-check
/// expansion of the terminal constraint and matches the normalized
/// reference decoder to machine precision; the verbatim variant follows
/// the printed text.
enum class WeightVariant { Verbatim, Amended };

/// Per-position combining coefficients computed from the received soft
/// coded estimates. Indices outside [1, K] contribute the neutral value 1
/// to every product.
WeightSet compute_weights(WeightCode code, const SoftSeq& coded,
                          WeightVariant variant = WeightVariant::Amended);

/// w_fwd*fwd + w_bwd*bwd, clipped to [-1, 1].
SoftSeq combine_outputs(const SoftSeq& fwd, const SoftSeq& bwd,
                        const std::vector<WeightPair>& weights);

/// Terminal-state convention under which the tabulated weights reproduce
/// the bidirectional reference exactly (determined empirically and pinned
/// by the verification suite). With a uniform terminal distribution the
/// bidirectional pass of an unterminated rate-1 code collapses to the
/// forward pass, so the zero-state convention is the informative one.
inline constexpr StateInit kCombineReferenceInit = StateInit::ZeroState;

struct WeightReport {
    double max_error = 0.0;   // amended weights against the reference
    double mean_error = 0.0;
    long long clamp_count = 0;
    double verbatim_max_error = 0.0;    // rules exactly as printed
    double direct_sum_max_error = 0.0;  // plain fwd+bwd against the reference
    int trials = 0;
    int frame_len = 0;

    std::string to_string(WeightCode code) const;
};

/// Runs seeded random frames with |x| in [0.05, 0.95] through the dual
/// decoders, combines them with the tabulated weights and reports the
/// worst deviation from bidirectional_decode.
WeightReport verify_weights(const CodeSpec& spec, WeightCode code, int trials,
                            int frame_len, uint64_t seed);

}  // namespace r1dual

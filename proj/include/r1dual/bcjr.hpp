#pragma once

#include <vector>

#include "r1dual/codes.hpp"

namespace r1dual {

/// Soft symbol estimates in [-1, 1], one per trellis step.
using SoftSeq = std::vector<double>;

/// A posteriori probabilities of a binary symbol.
struct ProbPair {
    double p0 = 0.5;
    double p1 = 0.5;
};

/// x -> ((1+x)/2, (1-x)/2). Throws when |x| > 1 (beyond a 1e-12 slack).
ProbPair soft_to_prob(double soft);

/// Exact inverse of soft_to_prob: p0 - p1.
double prob_to_soft(const ProbPair& p);

std::vector<ProbPair> soft_to_prob(const SoftSeq& soft);

enum class StateInit {
    ZeroState,  // point mass on the all-zero state
    Uniform,
};

/// State distribution per step, normalized to sum 1.
using StateDistSeq = std::vector<std::vector<double>>;

struct ForwardResult {
    SoftSeq soft;        // forward-only symbol estimates
    StateDistSeq alpha;  // alpha[k] = distribution after step k, alpha[0] = start
};

struct BackwardResult {
    SoftSeq soft;       // backward-only symbol estimates
    StateDistSeq beta;  // beta[k] = distribution at time k, beta[K] = init
};

/// Forward recursion from the all-zero state. `normalize` exists so small
/// frames can validate that per-step scaling leaves the outputs unchanged.
ForwardResult forward_pass(const Trellis& trellis,
                           const std::vector<ProbPair>& coded,
                           bool normalize = true);

BackwardResult backward_pass(const Trellis& trellis,
                             const std::vector<ProbPair>& coded,
                             StateInit init = StateInit::ZeroState,
                             bool normalize = true);

/// Full alpha*gamma*beta combination; the reference MAP decoder.
SoftSeq bidirectional_decode(const Trellis& trellis,
                             const std::vector<ProbPair>& coded,
                             StateInit init = StateInit::ZeroState);

}  // namespace r1dual

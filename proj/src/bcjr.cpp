#include "r1dual/bcjr.hpp"

#include <cmath>
#include <stdexcept>

namespace r1dual {

namespace {

constexpr double kSoftSlack = 1e-12;
constexpr double kProbFloor = 1e-300;  // keeps gamma products away from 0*inf

double clamp_prob(double p) {
    if (p < kProbFloor) return kProbFloor;
    if (p > 1.0 - kProbFloor) return 1.0 - kProbFloor;
    return p;
}

void normalize_dist(std::vector<double>& dist) {
    double sum = 0.0;
    for (double v : dist) sum += v;
    if (sum > 0.0)
        for (double& v : dist) v /= sum;
}

std::vector<double> initial_dist(int num_states, StateInit init) {
    std::vector<double> dist(static_cast<size_t>(num_states), 0.0);
    if (init == StateInit::ZeroState)
        dist[0] = 1.0;
    else
        dist.assign(dist.size(), 1.0 / num_states);
    return dist;
}

void check_input(const std::vector<ProbPair>& coded) {
    if (coded.empty()) throw std::invalid_argument("bcjr: empty input sequence");
}

}  // namespace

ProbPair soft_to_prob(double soft) {
    if (std::abs(soft) > 1.0 + kSoftSlack)
        throw std::invalid_argument("soft_to_prob: estimate outside [-1, 1]");
    ProbPair p;
    p.p0 = (1.0 + soft) / 2.0;
    p.p1 = (1.0 - soft) / 2.0;
    return p;
}

double prob_to_soft(const ProbPair& p) { return p.p0 - p.p1; }

std::vector<ProbPair> soft_to_prob(const SoftSeq& soft) {
    std::vector<ProbPair> out;
    out.reserve(soft.size());
    for (double v : soft) out.push_back(soft_to_prob(v));
    return out;
}

ForwardResult forward_pass(const Trellis& trellis,
                           const std::vector<ProbPair>& coded, bool normalize) {
    check_input(coded);
    const size_t K = coded.size();
    const int S = trellis.num_states;
    ForwardResult res;
    res.soft.resize(K);
    res.alpha.reserve(K + 1);
    res.alpha.push_back(initial_dist(S, StateInit::ZeroState));
    std::vector<double> next(static_cast<size_t>(S));
    for (size_t k = 0; k < K; ++k) {
        const double pc[2] = {clamp_prob(coded[k].p0), clamp_prob(coded[k].p1)};
        const auto& alpha = res.alpha.back();
        next.assign(next.size(), 0.0);
        double pb[2] = {0.0, 0.0};
        for (int m = 0; m < S; ++m) {
            if (alpha[static_cast<size_t>(m)] == 0.0) continue;
            for (int w = 0; w < 2; ++w) {
                const auto& e = trellis.edges[static_cast<size_t>(m)][w];
                const double g = alpha[static_cast<size_t>(m)] * pc[e.out];
                next[e.next] += g;
                pb[w] += g;
            }
        }
        res.soft[k] = (pb[0] - pb[1]) / (pb[0] + pb[1]);
        if (normalize) normalize_dist(next);
        res.alpha.push_back(next);
    }
    return res;
}

BackwardResult backward_pass(const Trellis& trellis,
                             const std::vector<ProbPair>& coded, StateInit init,
                             bool normalize) {
    check_input(coded);
    const size_t K = coded.size();
    const int S = trellis.num_states;
    BackwardResult res;
    res.soft.resize(K);
    res.beta.assign(K + 1, {});
    res.beta[K] = initial_dist(S, init);
    std::vector<double> prev(static_cast<size_t>(S));
    for (size_t k = K; k-- > 0;) {
        const double pc[2] = {clamp_prob(coded[k].p0), clamp_prob(coded[k].p1)};
        const auto& beta = res.beta[k + 1];
        prev.assign(prev.size(), 0.0);
        double pb[2] = {0.0, 0.0};
        for (int m = 0; m < S; ++m) {
            for (int w = 0; w < 2; ++w) {
                const auto& e = trellis.edges[static_cast<size_t>(m)][w];
                if (beta[e.next] == 0.0) continue;
                const double g = pc[e.out] * beta[e.next];
                prev[static_cast<size_t>(m)] += g;
                pb[w] += g;
            }
        }
        res.soft[k] = (pb[0] - pb[1]) / (pb[0] + pb[1]);
        if (normalize) normalize_dist(prev);
        res.beta[k] = prev;
    }
    return res;
}

SoftSeq bidirectional_decode(const Trellis& trellis,
                             const std::vector<ProbPair>& coded,
                             StateInit init) {
    check_input(coded);
    const size_t K = coded.size();
    const int S = trellis.num_states;
    ForwardResult fwd = forward_pass(trellis, coded);
    BackwardResult bwd = backward_pass(trellis, coded, init);
    SoftSeq soft(K);
    for (size_t k = 0; k < K; ++k) {
        const double pc[2] = {clamp_prob(coded[k].p0), clamp_prob(coded[k].p1)};
        const auto& alpha = fwd.alpha[k];
        const auto& beta = bwd.beta[k + 1];
        double pb[2] = {0.0, 0.0};
        for (int m = 0; m < S; ++m) {
            if (alpha[static_cast<size_t>(m)] == 0.0) continue;
            for (int w = 0; w < 2; ++w) {
                const auto& e = trellis.edges[static_cast<size_t>(m)][w];
                pb[w] += alpha[static_cast<size_t>(m)] * pc[e.out] * beta[e.next];
            }
        }
        soft[k] = (pb[0] - pb[1]) / (pb[0] + pb[1]);
    }
    return soft;
}

}  // namespace r1dual

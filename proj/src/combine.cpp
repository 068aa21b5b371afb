#include "r1dual/combine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "r1dual/dualsiso.hpp"
#include "r1dual/rng.hpp"

namespace r1dual {

namespace {

constexpr double kDivGuard = 1e-12;

// Modulo with a nonnegative result, <Z>_N in the weight rules.
int mod_pos(int z, int n) { return ((z % n) + n) % n; }

// Smallest integer not less than a/b, for b > 0 and either sign of a.
int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Integer closest to k/d with ties rounded up, for k >= 0.
int round_half_up(int k, int d) { return (2 * k + d) / (2 * d); }

struct GuardedMath {
    long long clamps = 0;

    double div(double num, double den) {
        if (std::abs(den) < kDivGuard) {
            ++clamps;
            den = den < 0.0 ? -kDivGuard : kDivGuard;
        }
        return num / den;
    }
};

// Soft coded estimate by 1-based position; anything outside the frame is
// the neutral factor 1.
struct FrameView {
    const SoftSeq& coded;
    int frame_len;

    double operator()(int index) const {
        if (index < 1 || index > frame_len) return 1.0;
        return coded[static_cast<size_t>(index - 1)];
    }
};

// ---------------------------------------------------------------------
// Rules as printed: forward and backward products combined per position,
// scaled by 1/2^(state bits + 1) style constants.
// ---------------------------------------------------------------------

WeightSet verbatim_gc57(const FrameView& xc, int K) {
    GuardedMath gm;
    const int half = ceil_div(K, 2);
    double odd = 1.0, even = 1.0;
    for (int l = 1; l <= half; ++l) {
        odd *= xc(2 * l - 1);
        even *= xc(2 * l);
    }
    WeightSet set;
    set.weights.resize(static_cast<size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double prod = (k % 2 == 1) ? odd : even;
        const double w = (1.0 + gm.div(prod, xc(k) * xc(k))) / 4.0;
        set.weights[static_cast<size_t>(k - 1)] = WeightPair{w, w};
    }
    set.clamp_count = gm.clamps;
    return set;
}

WeightSet verbatim_ffc5(const FrameView& xc, int K) {
    const int half = ceil_div(K, 2);
    double odd = 1.0, even = 1.0;
    for (int l = 1; l <= half; ++l) {
        odd *= xc(2 * l - 1);
        even *= xc(2 * l);
    }
    WeightSet set;
    set.weights.resize(static_cast<size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double w = (1.0 + ((k % 2 == 1) ? even : odd)) / 4.0;
        set.weights[static_cast<size_t>(k - 1)] = WeightPair{w, w};
    }
    return set;
}

WeightSet verbatim_ffc7(const FrameView& xc, int K) {
    GuardedMath gm;
    const int top = ceil_div(K, 3);
    auto I = [&](int d, int l) { return xc(3 * l - mod_pos(3 - d, 3)); };
    WeightSet set;
    set.weights.resize(static_cast<size_t>(K));
    for (int k = 1; k <= K; ++k) {
        double p = 1.0;
        for (int l = 0; l <= top; ++l) p *= I(mod_pos(k - 2, 3), l);
        const int split = round_half_up(k, 3);
        const int dq = mod_pos(k - 1, 3);
        double q_num = 1.0, q_den = 1.0;
        for (int i = split + 1; i <= top; ++i) q_num *= I(dq, i);
        for (int j = 0; j <= split; ++j) q_den *= I(dq, j);
        const double q = gm.div(q_num, q_den);
        set.weights[static_cast<size_t>(k - 1)] =
            WeightPair{(1.0 + p * q) / 4.0, (1.0 + gm.div(p, q)) / 4.0};
    }
    set.clamp_count = gm.clamps;
    return set;
}

WeightSet verbatim_ffc17(const FrameView& xc, int K) {
    GuardedMath gm;
    const int top = ceil_div(K, 4);
    auto M = [&](int d, int l) { return xc(4 * l - mod_pos(4 - d, 4)); };
    auto R = [&](int k) {
        double r = 1.0;
        for (int l = 0; l <= top; ++l) r *= M(mod_pos(k - 3, 4), l);
        return r;
    };
    auto ratio = [&](int d, int k) {
        const int split = round_half_up(k, 4);
        double num = 1.0, den = 1.0;
        for (int i = split + 1; i <= top; ++i) num *= M(d, i);
        for (int j = 0; j <= split + 1; ++j) den *= M(d, j);
        return gm.div(num, den);
    };
    WeightSet set;
    set.weights.resize(static_cast<size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double rk = R(k);
        const double rnext = R(mod_pos(k, 4) + 1);
        const bool y_branch = (k % 4 == 1) || (k % 4 == 0);
        const double s = y_branch ? ratio(0, k) : ratio(2, k);
        const double base = 1.0 + rk * rnext;
        set.weights[static_cast<size_t>(k - 1)] =
            WeightPair{(base + (rk + rnext) * s) / 8.0,
                       (base + gm.div(rk + rnext, s)) / 8.0};
    }
    set.clamp_count = gm.clamps;
    return set;
}

// The second coefficient equation of this rule is printed with the forward
// arrow as well; it is treated as the backward coefficient by symmetry with
// the other rules.
WeightSet verbatim_gc1513(const FrameView& xc, int K) {
    GuardedMath gm;
    const int top = ceil_div(K, 7) + 1;
    auto N = [&](int d, int l) { return xc(7 * (l - 1) + d); };
    auto G = [&](int k) {
        double g = 1.0;
        for (int l = 0; l <= top; ++l) g *= N(mod_pos(k - 3, 7), l);
        return g;
    };
    auto W = [&](int k) {
        const int d = mod_pos(k + 1, 7);
        const int split = ceil_div(k - d, 7);
        double num = 1.0, den = 1.0;
        for (int i = split + 1; i <= top; ++i) num *= N(d, i);
        for (int u = 0; u <= split; ++u) den *= N(d, u);
        return gm.div(num, den);
    };
    WeightSet set;
    set.weights.resize(static_cast<size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double g1 = G(k);
        const double g2 = G(mod_pos(k, 7) + 1);
        const double g3 = G(mod_pos(k, 7) + 3);
        const double w1 = W(k), w2 = W(k + 2), w3 = W(k + 5);
        const double x = xc(k);
        const double fwd = (1.0 + g1 * g2 * w1 * w2 +
                            gm.div(g1 * g3 * w1 * w3, x) +
                            gm.div(g2 * g3 * w2 * w3, x)) /
                           8.0;
        const double bwd = (1.0 + gm.div(g1 * g2, w1 * w2) +
                            gm.div(g1 * g3, w1 * w3 * x) +
                            gm.div(g2 * g3, w2 * w3 * x)) /
                           8.0;
        set.weights[static_cast<size_t>(k - 1)] = WeightPair{fwd, bwd};
    }
    set.clamp_count = gm.clamps;
    return set;
}

// ---------------------------------------------------------------------
// Amended rules. The reference decoder starts from the all-zero state and
// closes on the all-zero state, so its output is the posterior of
//   b_k = (XOR of a position window)  given  n terminal parity checks,
// each check being an XOR of residue classes of code positions. Expanding
// the 2^n check subsets into products of per-class factors yields exact
// forward/backward coefficients; the products below are those factors.
//
//   gamma_c    product of all estimates in residue class c
//   lo_c(k)    product of class-c estimates at positions <= k
//   flip_c(k)  gamma with the in-window part of class c inverted
//
// The forward window holds full class prefixes (offsets `window`) plus,
// for the recursive codes, the lone current symbol; the backward dual
// output equals the subset that flips exactly the window classes.
// ---------------------------------------------------------------------

struct ClassStructure {
    int modulus;                          // residue classes of positions
    bool own_singleton;                   // window has {k} from its own class
    std::vector<int> window;              // class offsets with full prefixes
    std::vector<std::vector<int>> checks; // terminal checks, offsets from K
};

ClassStructure class_structure(WeightCode code) {
    switch (code) {
        case WeightCode::Gc57:
            return {2, true, {1}, {{0}, {1}}};
        case WeightCode::Ffc5:
            return {2, false, {0}, {{0}, {1}}};
        case WeightCode::Ffc7:
            return {3, false, {0, 1}, {{0, 1}, {1, 2}}};
        case WeightCode::Ffc17:
            return {4, false, {0, 1}, {{0, 1}, {1, 2}, {2, 3}}};
        case WeightCode::Gc1513:
            return {7, true, {1, 2, 3, 6}, {{0, 2, 3, 4}, {1, 3, 4, 5}, {2, 4, 5, 6}}};
    }
    throw std::logic_error("class_structure: bad enum");
}

WeightSet amended_weights(WeightCode code, const SoftSeq& coded) {
    GuardedMath gm;
    const ClassStructure cs = class_structure(code);
    const int K = static_cast<int>(coded.size());
    const int m = cs.modulus;
    const int subsets = 1 << cs.checks.size();

    std::vector<double> gamma(static_cast<size_t>(m), 1.0);
    for (int i = 1; i <= K; ++i)
        gamma[static_cast<size_t>(i % m)] *= coded[static_cast<size_t>(i - 1)];

    // Classes touched by each subset of terminal checks (an XOR of checks
    // drops classes appearing an even number of times).
    std::vector<std::vector<int>> subset_classes(static_cast<size_t>(subsets));
    double denom = 0.0;
    for (int t = 0; t < subsets; ++t) {
        std::vector<int> odd(static_cast<size_t>(m), 0);
        for (size_t j = 0; j < cs.checks.size(); ++j)
            if (t >> j & 1)
                for (int off : cs.checks[j]) odd[static_cast<size_t>(mod_pos(K - off, m))] ^= 1;
        double x = 1.0;
        for (int c = 0; c < m; ++c)
            if (odd[static_cast<size_t>(c)]) {
                subset_classes[static_cast<size_t>(t)].push_back(c);
                x *= gamma[static_cast<size_t>(c)];
            }
        denom += x;
    }

    WeightSet set;
    set.weights.resize(static_cast<size_t>(K));
    std::vector<double> lo(static_cast<size_t>(m), 1.0);
    std::vector<double> flip(static_cast<size_t>(m));
    std::vector<int> in_window(static_cast<size_t>(m), 0);
    for (int k = 1; k <= K; ++k) {
        const double xk = coded[static_cast<size_t>(k - 1)];
        lo[static_cast<size_t>(k % m)] *= xk;
        std::fill(in_window.begin(), in_window.end(), 0);
        for (int off : cs.window) in_window[static_cast<size_t>(mod_pos(k - off, m))] = 1;
        int mirror = 0;  // subset index flipping exactly the window classes
        for (int t = 1; t < subsets; ++t) {
            const auto& cls = subset_classes[static_cast<size_t>(t)];
            if (cls.size() != cs.window.size()) continue;
            bool match = true;
            for (int c : cls) match = match && in_window[static_cast<size_t>(c)];
            if (match) {
                mirror = t;
                break;
            }
        }
        if (mirror == 0)
            throw std::logic_error(
                "amended_weights: no check subset flips the window classes");
        for (int c = 0; c < m; ++c) {
            if (cs.own_singleton && c == k % m)
                flip[static_cast<size_t>(c)] =
                    gm.div(gamma[static_cast<size_t>(c)], xk * xk);
            else if (in_window[static_cast<size_t>(c)])
                flip[static_cast<size_t>(c)] =
                    gm.div(gamma[static_cast<size_t>(c)],
                           lo[static_cast<size_t>(c)] * lo[static_cast<size_t>(c)]);
            else
                flip[static_cast<size_t>(c)] = gamma[static_cast<size_t>(c)];
        }
        double flip_mirror = 1.0;
        for (int c : subset_classes[static_cast<size_t>(mirror)])
            flip_mirror *= flip[static_cast<size_t>(c)];
        double w_fwd = 0.0, w_bwd = 0.0;
        for (int t = 0; t < subsets; ++t) {
            double f = 1.0;
            for (int c : subset_classes[static_cast<size_t>(t)])
                f *= flip[static_cast<size_t>(c)];
            // pair t with t^mirror; the smaller index rides on the forward
            // output, its partner on the backward output
            if ((t ^ mirror) > t)
                w_fwd += f;
            else
                w_bwd += gm.div(f, flip_mirror);
        }
        set.weights[static_cast<size_t>(k - 1)] =
            WeightPair{gm.div(w_fwd, denom), gm.div(w_bwd, denom)};
    }
    set.clamp_count = gm.clamps;
    return set;
}

}  // namespace

const char* to_string(WeightCode code) {
    switch (code) {
        case WeightCode::Gc57: return "GC_5_7";
        case WeightCode::Ffc5: return "FFC_5";
        case WeightCode::Ffc7: return "FFC_7";
        case WeightCode::Ffc17: return "FFC_17";
        case WeightCode::Gc1513: return "GC_15_13";
    }
    return "?";
}

std::optional<WeightCode> parse_weight_code(const std::string& text) {
    for (WeightCode code : {WeightCode::Gc57, WeightCode::Ffc5, WeightCode::Ffc7,
                            WeightCode::Ffc17, WeightCode::Gc1513})
        if (text == to_string(code)) return code;
    return std::nullopt;
}

CodeSpec code_spec_for(WeightCode code) {
    switch (code) {
        case WeightCode::Gc57: return CodeSpec::parse("5/7");
        case WeightCode::Ffc5: return CodeSpec::parse("5");
        case WeightCode::Ffc7: return CodeSpec::parse("7");
        case WeightCode::Ffc17: return CodeSpec::parse("17");
        case WeightCode::Gc1513: return CodeSpec::parse("15/13");
    }
    throw std::logic_error("code_spec_for: bad enum");
}

std::optional<WeightCode> weight_code_for(const CodeSpec& spec) {
    for (WeightCode code : {WeightCode::Gc57, WeightCode::Ffc5, WeightCode::Ffc7,
                            WeightCode::Ffc17, WeightCode::Gc1513}) {
        CodeSpec ref = code_spec_for(code);
        if (ref.numerator == spec.numerator && ref.denominator == spec.denominator)
            return code;
    }
    return std::nullopt;
}

WeightSet compute_weights(WeightCode code, const SoftSeq& coded,
                          WeightVariant variant) {
    if (coded.empty())
        throw std::invalid_argument("compute_weights: empty input");
    for (double v : coded)
        if (std::abs(v) > 1.0 + 1e-12)
            throw std::invalid_argument(
                "compute_weights: estimate outside [-1, 1]");
    if (variant == WeightVariant::Amended) return amended_weights(code, coded);
    const int K = static_cast<int>(coded.size());
    const FrameView xc{coded, K};
    switch (code) {
        case WeightCode::Gc57: return verbatim_gc57(xc, K);
        case WeightCode::Ffc5: return verbatim_ffc5(xc, K);
        case WeightCode::Ffc7: return verbatim_ffc7(xc, K);
        case WeightCode::Ffc17: return verbatim_ffc17(xc, K);
        case WeightCode::Gc1513: return verbatim_gc1513(xc, K);
    }
    throw std::logic_error("compute_weights: bad enum");
}

SoftSeq combine_outputs(const SoftSeq& fwd, const SoftSeq& bwd,
                        const std::vector<WeightPair>& weights) {
    if (fwd.size() != bwd.size() || fwd.size() != weights.size())
        throw std::invalid_argument("combine_outputs: length mismatch");
    SoftSeq out(fwd.size());
    for (size_t k = 0; k < fwd.size(); ++k) {
        double v = weights[k].fwd * fwd[k] + weights[k].bwd * bwd[k];
        if (v > 1.0) v = 1.0;
        if (v < -1.0) v = -1.0;
        out[k] = v;
    }
    return out;
}

std::string WeightReport::to_string(WeightCode code) const {
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "%s frame_len=%d trials=%d max_error=%.3e mean_error=%.3e "
                  "clamp_count=%lld verbatim_max_error=%.3e "
                  "direct_sum_max_error=%.3e",
                  r1dual::to_string(code), frame_len, trials, max_error,
                  mean_error, clamp_count, verbatim_max_error,
                  direct_sum_max_error);
    return buf;
}

WeightReport verify_weights(const CodeSpec& spec, WeightCode code, int trials,
                            int frame_len, uint64_t seed) {
    const CodeSpec ref = code_spec_for(code);
    if (!(ref.numerator == spec.numerator && ref.denominator == spec.denominator))
        throw std::invalid_argument("verify_weights: spec does not match profile");
    if (trials < 1 || frame_len < 1)
        throw std::invalid_argument("verify_weights: bad trial setup");
    const Trellis trellis = build_trellis(spec);
    const std::vector<WeightPair> unit(static_cast<size_t>(frame_len),
                                       WeightPair{1.0, 1.0});
    WeightReport report;
    report.trials = trials;
    report.frame_len = frame_len;
    double abs_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        FrameRng rng(seed, static_cast<uint64_t>(t));
        SoftSeq coded(static_cast<size_t>(frame_len));
        for (double& v : coded) {
            const double mag = 0.05 + 0.9 * rng.uniform();
            v = rng.bit() ? -mag : mag;
        }
        const SoftSeq fwd = forward_decode(spec, coded);
        const SoftSeq bwd = backward_decode(spec, coded);
        const WeightSet amended = compute_weights(code, coded);
        const WeightSet verbatim =
            compute_weights(code, coded, WeightVariant::Verbatim);
        const SoftSeq combined = combine_outputs(fwd, bwd, amended.weights);
        const SoftSeq printed = combine_outputs(fwd, bwd, verbatim.weights);
        const SoftSeq direct = combine_outputs(fwd, bwd, unit);
        const SoftSeq oracle =
            bidirectional_decode(trellis, soft_to_prob(coded), kCombineReferenceInit);
        report.clamp_count += amended.clamp_count + verbatim.clamp_count;
        for (size_t k = 0; k < oracle.size(); ++k) {
            const double err = std::abs(combined[k] - oracle[k]);
            report.max_error = std::max(report.max_error, err);
            abs_sum += err;
            report.verbatim_max_error = std::max(
                report.verbatim_max_error, std::abs(printed[k] - oracle[k]));
            report.direct_sum_max_error = std::max(
                report.direct_sum_max_error, std::abs(direct[k] - oracle[k]));
        }
    }
    report.mean_error = abs_sum / (static_cast<double>(trials) * frame_len);
    return report;
}

}  // namespace r1dual

#include "r1dual/dualsiso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace r1dual {

namespace {

constexpr double kSoftSlack = 1e-12;
// Smallest log-magnitude fed into the registers; exp(-745) underflows to 0
// so an exact-zero estimate stays zero after the exponential module.
constexpr double kZeroLogMag = -745.0;

}  // namespace

SoftSymbol SoftSymbol::from_estimate(double x) {
    if (std::abs(x) > 1.0 + kSoftSlack)
        throw std::invalid_argument("SoftSymbol: estimate outside [-1, 1]");
    SoftSymbol s;
    if (x == 0.0) {
        s.logmag = kZeroLogMag;
        s.sign = 1;
        return s;
    }
    s.sign = x < 0.0 ? -1 : 1;
    s.logmag = std::log(std::abs(x));
    if (s.logmag > 0.0) s.logmag = 0.0;  // |x| within the slack above 1
    if (s.logmag < kZeroLogMag) s.logmag = kZeroLogMag;
    return s;
}

double SoftSymbol::to_estimate() const { return sign * std::exp(logmag); }

std::vector<SoftSymbol> to_log_domain(const SoftSeq& soft) {
    std::vector<SoftSymbol> out;
    out.reserve(soft.size());
    for (double v : soft) out.push_back(SoftSymbol::from_estimate(v));
    return out;
}

SoftSeq from_log_domain(const std::vector<SoftSymbol>& symbols) {
    SoftSeq out;
    out.reserve(symbols.size());
    for (const auto& s : symbols) out.push_back(s.to_estimate());
    return out;
}

DualSpec derive_forward_dual(const CodeSpec& spec) {
    DualSpec dual;
    dual.source = spec;
    dual.reversed = false;
    switch (spec.cls) {
        case CodeClass::Fbc:
            dual.numerator = spec.denominator;
            dual.denominator = Gf2Poly::one();
            dual.z = Gf2Poly::one();
            dual.l = 0;
            break;
        case CodeClass::Ffc: {
            if (spec.numerator.is_one()) {  // memory-order-0 passthrough
                dual.numerator = Gf2Poly::one();
                dual.denominator = Gf2Poly::one();
                dual.z = Gf2Poly::one();
                dual.l = 0;
                break;
            }
            auto mc = min_complementary(spec.numerator);
            dual.numerator = mc.z;
            dual.denominator = spec.numerator * mc.z;  // x^(n+l) + 1
            dual.z = mc.z;
            dual.l = mc.l;
            break;
        }
        case CodeClass::Gc: {
            auto mc = min_complementary(spec.numerator);
            dual.numerator = spec.denominator * mc.z;
            dual.denominator = spec.numerator * mc.z;
            dual.z = mc.z;
            dual.l = mc.l;
            break;
        }
    }
    return dual;
}

DualSpec derive_backward_dual(const CodeSpec& spec) {
    DualSpec dual = derive_forward_dual(spec);
    dual.reversed = true;
    return dual;
}

DualSpec make_dual(Gf2Poly numerator, Gf2Poly denominator, bool reversed) {
    if (numerator.is_zero() || denominator.is_zero())
        throw std::invalid_argument("make_dual: zero polynomial");
    DualSpec dual;
    dual.numerator = std::move(numerator);
    dual.denominator = std::move(denominator);
    dual.reversed = reversed;
    return dual;
}

DualTaps::DualTaps(const DualSpec& dual) {
    order = dual.order();
    Gf2Poly num = dual.numerator;
    Gf2Poly den = dual.denominator;
    if (dual.reversed) {
        // Reverse memory-labeling mirrors every tap position across the
        // register chain. A trivial denominator has no feedback to mirror.
        num = num.reciprocal(order);
        if (!den.is_one()) den = den.reciprocal(order);
    }
    for (int j = 1; j <= order; ++j)
        if (den.coeff(j)) feedback.push_back(j);
    if (num.coeff(0)) {
        // Output = input plus interior taps: realizing num/den as
        // 1 + (num+den)/den keeps every register tapped at most once.
        direct_input = true;
        Gf2Poly taps = num + den;
        for (int j = 1; j <= order; ++j)
            if (taps.coeff(j)) output.push_back(j);
    } else {
        direct_input = false;
        for (int j = 1; j <= order; ++j)
            if (num.coeff(j)) output.push_back(j);
    }
}

std::vector<SoftSymbol> run_dual_register(const DualSpec& dual,
                                          const std::vector<SoftSymbol>& input) {
    const DualTaps taps(dual);
    std::vector<SoftSymbol> regs(static_cast<size_t>(taps.order),
                                 SoftSymbol::identity());
    std::vector<SoftSymbol> out;
    out.reserve(input.size());
    for (const SoftSymbol& in : input) {
        SoftSymbol fed = in;
        for (int j : taps.feedback) fed = fed * regs[static_cast<size_t>(j - 1)];
        SoftSymbol o = taps.direct_input ? in : SoftSymbol::identity();
        for (int j : taps.output) o = o * regs[static_cast<size_t>(j - 1)];
        out.push_back(o);
        for (size_t j = regs.size(); j-- > 1;) regs[j] = regs[j - 1];
        if (!regs.empty()) regs[0] = fed;
    }
    return out;
}

SoftSeq forward_decode(const CodeSpec& spec, const SoftSeq& coded) {
    if (coded.empty()) throw std::invalid_argument("forward_decode: empty input");
    return from_log_domain(
        run_dual_register(derive_forward_dual(spec), to_log_domain(coded)));
}

SoftSeq backward_decode(const CodeSpec& spec, const SoftSeq& coded) {
    if (coded.empty()) throw std::invalid_argument("backward_decode: empty input");
    if (spec.cls == CodeClass::Fbc) {
        // The backward pass of an FBC code is uninformative: every branch
        // set mixes both code symbols evenly, so the estimates are all
        // exactly zero. (The reverse-labeled register would not reproduce
        // this; see the decoder notes in the README.)
        for (double v : coded) SoftSymbol::from_estimate(v);  // range check
        return SoftSeq(coded.size(), 0.0);
    }
    std::vector<SoftSymbol> symbols = to_log_domain(coded);
    std::reverse(symbols.begin(), symbols.end());
    std::vector<SoftSymbol> out =
        run_dual_register(derive_backward_dual(spec), symbols);
    std::reverse(out.begin(), out.end());
    return from_log_domain(out);
}

SoftSeq fbc_full_map(const CodeSpec& spec, const SoftSeq& coded) {
    if (spec.cls != CodeClass::Fbc)
        throw std::invalid_argument(
            "fbc_full_map: forward decoding is the full MAP answer only for "
            "FBC codes; got class " + std::string(to_string(spec.cls)));
    return forward_decode(spec, coded);
}

std::string IndependenceReport::to_string() const {
    if (passed) return "independent";
    return "dependent at step " + std::to_string(step) + ": " + location +
           " holds coefficient " + std::to_string(coefficient) +
           " on input " + std::to_string(symbol);
}

IndependenceReport symbolic_independence_check(const DualSpec& dual,
                                               int horizon) {
    const DualTaps taps(dual);
    if (horizon < 2 * dual.denominator.degree())
        throw std::invalid_argument(
            "symbolic_independence_check: horizon shorter than twice the "
            "denominator degree");
    using Poly = std::vector<long long>;  // coefficient per input symbol, 1-based
    const size_t width = static_cast<size_t>(horizon) + 1;
    std::vector<Poly> regs(static_cast<size_t>(taps.order), Poly(width, 0));
    auto add_into = [](Poly& dst, const Poly& src) {
        for (size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    };
    auto first_bad = [](const Poly& p) {
        for (size_t i = 0; i < p.size(); ++i)
            if (p[i] != 0 && p[i] != 1) return static_cast<int>(i);
        return -1;
    };
    IndependenceReport report;
    for (int k = 1; k <= horizon; ++k) {
        Poly in(width, 0);
        in[static_cast<size_t>(k)] = 1;
        Poly fed = in;
        for (int j : taps.feedback) add_into(fed, regs[static_cast<size_t>(j - 1)]);
        Poly out(width, 0);
        if (taps.direct_input) add_into(out, in);
        for (int j : taps.output) add_into(out, regs[static_cast<size_t>(j - 1)]);
        for (size_t j = regs.size(); j-- > 1;) regs[j] = regs[j - 1];
        if (!regs.empty()) regs[0] = fed;
        if (int bad = first_bad(out); bad >= 0) {
            report.passed = false;
            report.step = k;
            report.location = "output";
            report.symbol = bad;
            report.coefficient = out[static_cast<size_t>(bad)];
            return report;
        }
        for (size_t r = 0; r < regs.size(); ++r) {
            if (int bad = first_bad(regs[r]); bad >= 0) {
                report.passed = false;
                report.step = k;
                report.location = "register " + std::to_string(r + 1);
                report.symbol = bad;
                report.coefficient = regs[r][static_cast<size_t>(bad)];
                return report;
            }
        }
    }
    return report;
}

}  // namespace r1dual

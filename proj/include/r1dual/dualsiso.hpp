#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "r1dual/bcjr.hpp"
#include "r1dual/codes.hpp"
#include "r1dual/gf2poly.hpp"

namespace r1dual {

/// Soft symbol estimate x in [-1, 1] held as sign and log-magnitude.
/// The register "addition in the complex field" multiplies the underlying
/// estimates: signs multiply, log-magnitudes add, which tracks the
/// imaginary part of the complex logarithm as a sign parity.
struct SoftSymbol {
    double logmag = 0.0;  // ln|x|, always <= 0
    int8_t sign = 1;      // +1 or -1

    static SoftSymbol identity() { return SoftSymbol{}; }

    /// Throws when |x| > 1 beyond a 1e-12 slack. x = 0 maps to the
    /// saturated log-magnitude -745 (below double exp range) with sign +1,
    /// since an exact zero carries no sign information.
    static SoftSymbol from_estimate(double x);

    double to_estimate() const;

    friend SoftSymbol operator*(SoftSymbol a, SoftSymbol b) {
        return SoftSymbol{a.logmag + b.logmag,
                          static_cast<int8_t>(a.sign * b.sign)};
    }
};

std::vector<SoftSymbol> to_log_domain(const SoftSeq& soft);
SoftSeq from_log_domain(const std::vector<SoftSymbol>& symbols);

/// Dual encoder of a SISO decoder: numerator/denominator of the dual
/// generator polynomial plus the memory-labeling direction.
struct DualSpec {
    Gf2Poly numerator;
    Gf2Poly denominator;
    bool reversed = false;
    CodeSpec source;
    Gf2Poly z;  // minimum complementary polynomial of the source numerator
    int l = 0;

    /// Register count of the dual encoder.
    int order() const {
        return std::max(numerator.degree(), denominator.degree());
    }
};

/// Dual generator for forward decoding:
///   FBC 1/q(x)   ->  q(x)
///   FFC a(x)     ->  z(x) / (x^(n+l)+1)
///   GC  a(x)/q(x) -> q(x)z(x) / (x^(n+l)+1)
/// with z(x) the minimum complementary polynomial of a(x).
DualSpec derive_forward_dual(const CodeSpec& spec);

/// Same polynomials with reverse memory-labeling, for backward decoding.
DualSpec derive_backward_dual(const CodeSpec& spec);

/// Tap structure of the dual register. The output never reuses a register
/// that also feeds the same step's adder twice, so log-domain contents
/// stay sums of distinct input terms.
struct DualTaps {
    int order = 0;
    bool direct_input = false;     // output includes the current input
    std::vector<int> feedback;     // register indices feeding the input adder
    std::vector<int> output;       // register indices feeding the output adder

    explicit DualTaps(const DualSpec& dual);

    /// Work per symbol, for complexity accounting.
    int weight() const {
        return static_cast<int>(feedback.size() + output.size()) +
               (direct_input ? 1 : 0);
    }
};

/// Runs the dual encoder over the given log-domain inputs. Registers start
/// at the identity (x = 1, the certain zero bit).
std::vector<SoftSymbol> run_dual_register(const DualSpec& dual,
                                          const std::vector<SoftSymbol>& input);

/// Forward SISO MAP decoding as log -> dual register -> exp. Matches
/// forward_pass of the BCJR reference on the same inputs.
SoftSeq forward_decode(const CodeSpec& spec, const SoftSeq& coded);

/// Backward SISO MAP decoding: reverse the inputs, run the reverse-labeled
/// dual register, reverse the outputs. Matches backward_pass with
/// zero-state initialization. For FBC codes the backward pass carries no
/// information and the result is identically zero.
SoftSeq backward_decode(const CodeSpec& spec, const SoftSeq& coded);

/// Full MAP decoding of an FBC code via its forward dual (forward decoding
/// already equals the bidirectional reference there). Throws on non-FBC.
SoftSeq fbc_full_map(const CodeSpec& spec, const SoftSeq& coded);

/// Result of running the dual register on formal symbols with integer
/// coefficients. The structure is sound when every register content and
/// output keeps all coefficients in {0, 1}; a doubled term means two
/// statistically dependent contributions would be combined.
struct IndependenceReport {
    bool passed = true;
    int step = 0;          // 1-based step of the first violation
    std::string location;  // "output" or "register <j>"
    int symbol = 0;        // 1-based input symbol index
    long long coefficient = 0;

    std::string to_string() const;
};

IndependenceReport symbolic_independence_check(const DualSpec& dual, int horizon);

/// Assembles a DualSpec directly from polynomials; used to probe structures
/// that the derivation rules would not produce.
DualSpec make_dual(Gf2Poly numerator, Gf2Poly denominator, bool reversed = false);

}  // namespace r1dual

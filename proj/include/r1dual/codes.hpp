#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "r1dual/gf2poly.hpp"

namespace r1dual {

using BitSeq = std::vector<uint8_t>;

enum class CodeClass { Fbc, Ffc, Gc };

/// Rate-1 convolutional code a(x)/q(x). FBC codes have numerator 1, FFC
/// codes denominator 1, GC codes two nontrivial polynomials of equal
/// degree. Both polynomials must have unit constant term.
struct CodeSpec {
    CodeClass cls = CodeClass::Ffc;
    Gf2Poly numerator;    // a(x)
    Gf2Poly denominator;  // q(x)

    /// Memory order: number of shift registers in the canonical encoder.
    int memory() const;

    static CodeSpec make(Gf2Poly numerator, Gf2Poly denominator);

    /// Text form "a/q" in octal, class inferred from which side is "1":
    /// "1/7" is FBC, "7" is FFC, "5/7" is GC.
    static CodeSpec parse(const std::string& text);

    std::string to_string() const;
};

const char* to_string(CodeClass cls);

/// Marker for a code whose encoder uses reverse memory-labeling: register
/// k is relabeled n-k and the tap coefficients are mirrored accordingly.
struct ReverseLabeled {
    CodeSpec spec;
};

ReverseLabeled reverse_label(const CodeSpec& spec);

/// One encoder register update. States are integers whose binary digits
/// are the register contents S_1..S_n with S_1 in the highest bit.
struct CodeStepper {
    int order = 0;
    bool reversed = false;
    uint32_t state_mask = 0;
    uint32_t fb_mask = 0;   // feedback taps on the state bits
    uint32_t ff_mask = 0;   // feed-forward taps on the state bits
    uint8_t ff_on_v = 0;    // output coefficient on the freshly fed value

    explicit CodeStepper(const CodeSpec& spec, bool reversed = false);

    struct Step {
        uint32_t next;
        uint8_t out;
    };
    Step step(uint32_t state, uint8_t input) const;
};

/// Explicit state-transition table over 2^n states.
struct Trellis {
    int order = 0;
    int num_states = 1;
    bool reversed = false;

    struct Edge {
        uint32_t next;
        uint8_t out;
    };
    std::vector<std::array<Edge, 2>> edges;  // indexed by [state][input]

    /// Branch set U(w): every (previous state, next state) pair reached
    /// with input bit w.
    std::vector<std::pair<uint32_t, uint32_t>> branches(uint8_t input) const;
};

/// Tabulates the transitions of the (optionally reverse-labeled) encoder.
/// Throws when the memory order exceeds 16.
Trellis build_trellis(const CodeSpec& spec, bool reversed = false);
Trellis build_trellis(const ReverseLabeled& labeled);

/// Runs the binary encoder from the all-zero state; no termination tail.
BitSeq encode(const CodeSpec& spec, const BitSeq& info);

/// Recovers the information bits of a codeword produced from the all-zero
/// state; the inverse filter is the encoder of q(x)/a(x).
BitSeq binary_inverse_decode(const CodeSpec& spec, const BitSeq& codeword);

}  // namespace r1dual

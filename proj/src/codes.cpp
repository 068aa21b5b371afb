#include "r1dual/codes.hpp"

#include <bit>
#include <stdexcept>

namespace r1dual {

namespace {

void validate_side(const Gf2Poly& p, const char* side) {
    if (p.is_zero())
        throw std::invalid_argument(std::string("CodeSpec: zero ") + side);
    if (!p.has_unit_constant())
        throw std::invalid_argument(std::string("CodeSpec: ") + side + " " +
                                    p.to_string() + " lacks unit constant term");
}

}  // namespace

int CodeSpec::memory() const {
    return std::max(numerator.degree(), denominator.degree());
}

CodeSpec CodeSpec::make(Gf2Poly numerator, Gf2Poly denominator) {
    validate_side(numerator, "numerator");
    validate_side(denominator, "denominator");
    CodeSpec spec;
    spec.numerator = std::move(numerator);
    spec.denominator = std::move(denominator);
    const bool num_one = spec.numerator.is_one();
    const bool den_one = spec.denominator.is_one();
    if (num_one && den_one) {
        spec.cls = CodeClass::Ffc;  // memory-order-0 passthrough
    } else if (num_one) {
        spec.cls = CodeClass::Fbc;
    } else if (den_one) {
        spec.cls = CodeClass::Ffc;
    } else {
        spec.cls = CodeClass::Gc;
        if (spec.numerator.degree() != spec.denominator.degree())
            throw std::invalid_argument(
                "CodeSpec: GC codes require equal-degree numerator and "
                "denominator, got " + spec.to_string());
    }
    return spec;
}

CodeSpec CodeSpec::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return make(Gf2Poly::from_octal(text), Gf2Poly::one());
    return make(Gf2Poly::from_octal(text.substr(0, slash)),
                Gf2Poly::from_octal(text.substr(slash + 1)));
}

std::string CodeSpec::to_string() const {
    if (denominator.is_one()) return numerator.to_octal();
    return numerator.to_octal() + "/" + denominator.to_octal();
}

const char* to_string(CodeClass cls) {
    switch (cls) {
        case CodeClass::Fbc: return "FBC";
        case CodeClass::Ffc: return "FFC";
        case CodeClass::Gc: return "GC";
    }
    return "?";
}

ReverseLabeled reverse_label(const CodeSpec& spec) { return ReverseLabeled{spec}; }

CodeStepper::CodeStepper(const CodeSpec& spec, bool rev)
    : order(spec.memory()), reversed(rev) {
    state_mask = order > 0 ? ((1u << order) - 1u) : 0u;
    const Gf2Poly& a = spec.numerator;
    const Gf2Poly& q = spec.denominator;
    // Register p (1-based) lives in state bit order-p. Forward labeling
    // taps coefficient index p; reverse labeling taps index p-1 and the
    // fed value carries the leading coefficient instead of the constant.
    for (int p = 1; p <= order; ++p) {
        const int bit = order - p;
        const int idx = reversed ? p - 1 : p;
        if (q.coeff(idx)) fb_mask |= 1u << bit;
        if (a.coeff(idx)) ff_mask |= 1u << bit;
    }
    ff_on_v = reversed ? static_cast<uint8_t>(a.coeff(order))
                       : static_cast<uint8_t>(a.coeff(0));
}

CodeStepper::Step CodeStepper::step(uint32_t state, uint8_t input) const {
    if (order == 0) return Step{0, static_cast<uint8_t>(input & 1)};
    const uint8_t fb = static_cast<uint8_t>(std::popcount(state & fb_mask) & 1);
    const uint8_t v = static_cast<uint8_t>((input ^ fb) & 1);
    const uint8_t ff = static_cast<uint8_t>(std::popcount(state & ff_mask) & 1);
    const uint8_t out = static_cast<uint8_t>(((ff_on_v & v) ^ ff) & 1);
    uint32_t next;
    if (reversed)
        next = ((state << 1) & state_mask) | v;
    else
        next = (state >> 1) | (static_cast<uint32_t>(v) << (order - 1));
    return Step{next, out};
}

Trellis build_trellis(const CodeSpec& spec, bool reversed) {
    if (spec.memory() > 16)
        throw std::invalid_argument("build_trellis: memory order " +
                                    std::to_string(spec.memory()) +
                                    " exceeds the tabulation limit 16");
    CodeStepper stepper(spec, reversed);
    Trellis trellis;
    trellis.order = stepper.order;
    trellis.num_states = 1 << stepper.order;
    trellis.reversed = reversed;
    trellis.edges.resize(static_cast<size_t>(trellis.num_states));
    for (uint32_t m = 0; m < static_cast<uint32_t>(trellis.num_states); ++m) {
        for (uint8_t w = 0; w < 2; ++w) {
            auto s = stepper.step(m, w);
            trellis.edges[m][w] = Trellis::Edge{s.next, s.out};
        }
    }
    return trellis;
}

Trellis build_trellis(const ReverseLabeled& labeled) {
    return build_trellis(labeled.spec, true);
}

std::vector<std::pair<uint32_t, uint32_t>> Trellis::branches(uint8_t input) const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    out.reserve(static_cast<size_t>(num_states));
    for (uint32_t m = 0; m < static_cast<uint32_t>(num_states); ++m)
        out.emplace_back(m, edges[m][input & 1].next);
    return out;
}

BitSeq encode(const CodeSpec& spec, const BitSeq& info) {
    if (info.empty()) throw std::invalid_argument("encode: empty input");
    CodeStepper stepper(spec);
    BitSeq out(info.size());
    uint32_t state = 0;
    for (size_t k = 0; k < info.size(); ++k) {
        auto s = stepper.step(state, info[k]);
        out[k] = s.out;
        state = s.next;
    }
    return out;
}

BitSeq binary_inverse_decode(const CodeSpec& spec, const BitSeq& codeword) {
    if (codeword.empty())
        throw std::invalid_argument("binary_inverse_decode: empty input");
    return encode(CodeSpec::make(spec.denominator, spec.numerator), codeword);
}

}  // namespace r1dual

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "r1dual/dualsiso.hpp"
#include "r1dual/rng.hpp"

using namespace r1dual;

namespace {

const char* kSuite[] = {"1/7", "1/13", "5", "7", "17", "15",
                        "5/7", "15/13"};

SoftSeq random_soft(FrameRng& rng, size_t n, double lo = 0.05, double hi = 0.95) {
    SoftSeq out(n);
    for (double& v : out) {
        const double mag = lo + (hi - lo) * rng.uniform();
        v = rng.bit() ? -mag : mag;
    }
    return out;
}

double max_abs_diff(const SoftSeq& a, const SoftSeq& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("soft symbols in the sign/log-magnitude domain") {
    const SoftSymbol a = SoftSymbol::from_estimate(0.8);
    const SoftSymbol b = SoftSymbol::from_estimate(-0.5);
    CHECK(a.to_estimate() == doctest::Approx(0.8));
    CHECK((a * b).to_estimate() == doctest::Approx(-0.4));
    CHECK((a * b).sign == -1);
    CHECK(SoftSymbol::identity().to_estimate() == 1.0);
    // exact zero saturates instead of producing -inf
    const SoftSymbol z = SoftSymbol::from_estimate(0.0);
    CHECK(z.sign == 1);
    CHECK(z.logmag == -745.0);
    CHECK(z.to_estimate() <= 5.1e-324);  // saturated, vanishes under exp
    CHECK((z * a).to_estimate() <= 5.1e-324);
    CHECK_THROWS_AS(SoftSymbol::from_estimate(1.01), std::invalid_argument);
}

TEST_CASE("dual generator polynomials") {
    SUBCASE("FBC dual drops the feedback") {
        const DualSpec d = derive_forward_dual(CodeSpec::parse("1/7"));
        CHECK(d.numerator == Gf2Poly::from_octal("7"));
        CHECK(d.denominator == Gf2Poly::one());
        CHECK_FALSE(d.reversed);
    }
    SUBCASE("FFC 7 gets (x+1)/(x^3+1)") {
        const DualSpec d = derive_forward_dual(CodeSpec::parse("7"));
        CHECK(d.numerator == Gf2Poly::from_octal("3"));
        CHECK(d.denominator == Gf2Poly::from_octal("11"));
        CHECK(d.l == 1);
    }
    SUBCASE("GC 5/7 gets (x^4+x^3+x+1)/(x^4+1)") {
        const DualSpec d = derive_forward_dual(CodeSpec::parse("5/7"));
        CHECK(d.numerator == Gf2Poly::from_octal("33"));
        CHECK(d.denominator == Gf2Poly::from_octal("21"));
        CHECK(d.z == Gf2Poly::from_octal("5"));
        CHECK(d.l == 2);
        CHECK(d.order() == 4);
    }
    SUBCASE("backward duals only flip the labeling") {
        const DualSpec f = derive_forward_dual(CodeSpec::parse("15/13"));
        const DualSpec b = derive_backward_dual(CodeSpec::parse("15/13"));
        CHECK(b.numerator == f.numerator);
        CHECK(b.denominator == f.denominator);
        CHECK(b.reversed);
    }
    SUBCASE("per-symbol work scales with the polynomial weight only") {
        const DualTaps taps(derive_forward_dual(CodeSpec::parse("5/7")));
        // numerator+denominator interior terms: x^3 + x
        CHECK(taps.output.size() == 2);
        CHECK(taps.feedback.size() == 1);
        CHECK(taps.direct_input);
        const DualTaps fir(derive_forward_dual(CodeSpec::parse("1/7")));
        CHECK(fir.feedback.empty());
        CHECK(fir.weight() == 3);
    }
}

TEST_CASE("dual register reproduces the tabulated log-domain sums") {
    // dual of the FFC code x^2+x+1; outputs are sums over distinct inputs
    const DualSpec dual = derive_forward_dual(CodeSpec::parse("7"));
    FrameRng rng(0x7ab, 0);
    const SoftSeq coded = random_soft(rng, 5);
    auto symbols = to_log_domain(coded);
    const auto out = run_dual_register(dual, symbols);
    auto ln = [&](int i) { return symbols[static_cast<size_t>(i - 1)].logmag; };
    auto sg = [&](int i) { return symbols[static_cast<size_t>(i - 1)].sign; };
    CHECK(out[0].logmag == doctest::Approx(ln(1)));
    CHECK(out[1].logmag == doctest::Approx(ln(2) + ln(1)));
    CHECK(out[2].logmag == doctest::Approx(ln(3) + ln(2)));
    CHECK(out[3].logmag == doctest::Approx(ln(4) + ln(3) + ln(1)));
    CHECK(out[4].logmag == doctest::Approx(ln(5) + ln(4) + ln(2) + ln(1)));
    CHECK(out[4].sign == sg(5) * sg(4) * sg(2) * sg(1));
}

TEST_CASE("FBC dual register sums a sliding window") {
    const DualSpec dual = derive_forward_dual(CodeSpec::parse("1/7"));
    const std::vector<SoftSymbol> in = {SoftSymbol::from_estimate(0.8),
                                        SoftSymbol::from_estimate(0.5),
                                        SoftSymbol::from_estimate(-0.5)};
    const auto out = run_dual_register(dual, in);
    CHECK(out[2].sign == -1);
    CHECK(out[2].logmag ==
          doctest::Approx(std::log(0.8) + std::log(0.5) + std::log(0.5)));
    CHECK(out[2].to_estimate() == doctest::Approx(-0.2));
    // identity in, identity out
    const auto idle = run_dual_register(
        dual, std::vector<SoftSymbol>(4, SoftSymbol::identity()));
    for (const auto& s : idle) CHECK(s.to_estimate() == 1.0);
}

TEST_CASE("forward decoding equals the forward reference") {
    FrameRng rng(0xfd, 1);
    for (const char* code : kSuite) {
        const CodeSpec spec = CodeSpec::parse(code);
        const Trellis trellis = build_trellis(spec);
        for (size_t K : {8, 16, 32}) {
            for (int t = 0; t < 10; ++t) {
                const SoftSeq coded = random_soft(rng, K);
                const SoftSeq dual = forward_decode(spec, coded);
                const SoftSeq ref = forward_pass(trellis, soft_to_prob(coded)).soft;
                CHECK(max_abs_diff(dual, ref) <= 1e-9);
            }
        }
    }
}

TEST_CASE("backward decoding equals the zero-state backward reference") {
    FrameRng rng(0xdb, 2);
    for (const char* code : kSuite) {
        const CodeSpec spec = CodeSpec::parse(code);
        const Trellis trellis = build_trellis(spec);
        for (size_t K : {8, 16, 32}) {
            for (int t = 0; t < 10; ++t) {
                const SoftSeq coded = random_soft(rng, K);
                const SoftSeq dual = backward_decode(spec, coded);
                const SoftSeq ref =
                    backward_pass(trellis, soft_to_prob(coded)).soft;
                CHECK(max_abs_diff(dual, ref) <= 1e-9);
            }
        }
    }
}

TEST_CASE("palindromic dual taps decode backward by time reversal") {
    // codes whose dual numerator and denominator are both self-reciprocal
    FrameRng rng(0x9d, 3);
    for (const char* code : {"5/7", "7/7"}) {
        const CodeSpec spec = CodeSpec::parse(code);
        for (int t = 0; t < 5; ++t) {
            SoftSeq coded = random_soft(rng, 12);
            const SoftSeq bwd = backward_decode(spec, coded);
            SoftSeq flipped(coded.rbegin(), coded.rend());
            SoftSeq fwd = forward_decode(spec, flipped);
            std::reverse(fwd.begin(), fwd.end());
            CHECK(max_abs_diff(bwd, fwd) <= 1e-12);
        }
    }
}

TEST_CASE("full MAP via the forward dual, FBC only") {
    FrameRng rng(0x3ac, 4);
    for (const char* code : {"1/7", "1/13"}) {
        const CodeSpec spec = CodeSpec::parse(code);
        const Trellis trellis = build_trellis(spec);
        for (int t = 0; t < 20; ++t) {
            const SoftSeq coded = random_soft(rng, 32);
            const SoftSeq dual = fbc_full_map(spec, coded);
            const SoftSeq ref = bidirectional_decode(trellis, soft_to_prob(coded),
                                                     StateInit::Uniform);
            CHECK(max_abs_diff(dual, ref) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(fbc_full_map(CodeSpec::parse("7"), SoftSeq(4, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("dual outputs never leave [-1, 1]") {
    FrameRng rng(0xcafe, 5);
    for (const char* code : kSuite) {
        const CodeSpec spec = CodeSpec::parse(code);
        const SoftSeq coded = random_soft(rng, 40, 0.0, 1.0);
        for (double v : forward_decode(spec, coded)) CHECK(std::abs(v) <= 1.0);
        for (double v : backward_decode(spec, coded)) CHECK(std::abs(v) <= 1.0);
    }
}

TEST_CASE("perfect inputs reproduce the binary inverse") {
    FrameRng rng(0xbeef, 6);
    const CodeSpec spec = CodeSpec::parse("5/7");
    BitSeq info(12);
    for (auto& b : info) b = rng.bit();
    const BitSeq coded = encode(spec, info);
    SoftSeq soft(coded.size());
    for (size_t i = 0; i < coded.size(); ++i) soft[i] = coded[i] ? -1.0 : 1.0;
    const SoftSeq out = forward_decode(spec, soft);
    const BitSeq inverse = binary_inverse_decode(spec, coded);
    for (size_t i = 0; i < out.size(); ++i) {
        CHECK(std::abs(out[i]) == doctest::Approx(1.0));
        CHECK((out[i] < 0.0 ? 1 : 0) == inverse[i]);
    }
}

TEST_CASE("symbolic independence check") {
    SUBCASE("derived FFC/GC duals stay 0/1") {
        for (const char* code : {"5", "7", "17", "15", "5/7", "15/13"}) {
            const DualSpec dual = derive_forward_dual(CodeSpec::parse(code));
            const auto report = symbolic_independence_check(dual, 40);
            INFO(code << ": " << report.to_string());
            CHECK(report.passed);
        }
    }
    SUBCASE("all FFC/GC duals up to degree 4 stay 0/1") {
        for (int deg = 1; deg <= 4; ++deg) {
            for (int num = 0; num < (1 << (deg - 1)); ++num) {
                std::vector<uint8_t> a(static_cast<size_t>(deg) + 1, 0);
                a[0] = 1;
                a[static_cast<size_t>(deg)] = 1;
                for (int d = 1; d < deg; ++d)
                    a[static_cast<size_t>(d)] = (num >> (d - 1)) & 1;
                const Gf2Poly ap = Gf2Poly::from_coeffs(a);
                if (ap.is_one()) continue;
                // FFC
                const DualSpec ffc =
                    derive_forward_dual(CodeSpec::make(ap, Gf2Poly::one()));
                CHECK(symbolic_independence_check(ffc, 4 * ffc.order()).passed);
                // one GC partner per numerator keeps the sweep cheap
                std::vector<uint8_t> q(static_cast<size_t>(deg) + 1, 0);
                q[0] = 1;
                q[static_cast<size_t>(deg)] = 1;
                if (deg > 1) q[1] = a[1] ^ 1;
                const Gf2Poly qp = Gf2Poly::from_coeffs(q);
                if (qp == ap) continue;
                const DualSpec gc = derive_forward_dual(CodeSpec::make(ap, qp));
                CHECK(symbolic_independence_check(gc, 4 * gc.order()).passed);
            }
        }
    }
    SUBCASE("naive feedback dual doubles an input at step 3") {
        // applying the feedback-free rule to the FFC code x^2+x+1
        const DualSpec naive =
            make_dual(Gf2Poly::one(), Gf2Poly::from_octal("7"));
        const auto report = symbolic_independence_check(naive, 12);
        CHECK_FALSE(report.passed);
        CHECK(report.step == 3);
        CHECK(report.symbol == 1);
        CHECK(report.coefficient == 2);
        CHECK(report.location == "output");
    }
    SUBCASE("feed-forward duals trivially pass") {
        const DualSpec fir = derive_forward_dual(CodeSpec::parse("1/7"));
        CHECK(symbolic_independence_check(fir, 12).passed);
    }
    SUBCASE("horizon precondition") {
        const DualSpec dual = derive_forward_dual(CodeSpec::parse("7"));
        CHECK_THROWS_AS(symbolic_independence_check(dual, 3),
                        std::invalid_argument);
    }
}

TEST_CASE("reversed duals of the suite stay structurally independent") {
    for (const char* code : {"5", "7", "17", "15", "5/7", "15/13"}) {
        const DualSpec dual = derive_backward_dual(CodeSpec::parse(code));
        const auto report = symbolic_independence_check(dual, 40);
        INFO(code << ": " << report.to_string());
        CHECK(report.passed);
    }
}

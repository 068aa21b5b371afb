#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace r1dual {

/// Polynomial over GF(2), stored as one coefficient byte per degree
/// (index 0 = constant term). The empty vector represents the zero
/// polynomial; otherwise the top coefficient is always 1.
class Gf2Poly {
public:
    Gf2Poly() = default;

    /// Builds x^d.
    static Gf2Poly x_power(int d);

    static Gf2Poly one() { return x_power(0); }

    /// Coefficient bits given lowest-degree first, e.g. {1,1,1} = x^2+x+1.
    static Gf2Poly from_coeffs(std::vector<uint8_t> coeffs);

    /// Octal text with the most significant digit holding the highest
    /// degree, e.g. "7" = x^2+x+1, "15" = x^3+x^2+1.
    static Gf2Poly from_octal(const std::string& text);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return degree() == 0; }

    /// Degree of the polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    bool coeff(int d) const {
        return d >= 0 && d <= degree() && coeffs_[static_cast<size_t>(d)] != 0;
    }

    /// True when the constant term is 1 (every code-defining polynomial
    /// must satisfy this; monicity is implied by the representation).
    bool has_unit_constant() const { return coeff(0); }

    /// Number of nonzero coefficients.
    int weight() const;

    /// Reciprocal with respect to `size`: coefficient of x^j moves to
    /// x^(size-j). Requires degree() <= size.
    Gf2Poly reciprocal(int size) const;

    std::string to_octal() const;

    /// Algebraic form such as "x^3+x+1", mainly for messages.
    std::string to_string() const;

    friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b);  // XOR
    friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
    friend bool operator==(const Gf2Poly& a, const Gf2Poly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Gf2Poly& a, const Gf2Poly& b) {
        return !(a == b);
    }

private:
    void trim();

    std::vector<uint8_t> coeffs_;
};

struct DivModResult {
    Gf2Poly quotient;
    Gf2Poly remainder;
};

/// Long division: a = b*quotient + remainder with deg remainder < deg b.
/// Throws std::invalid_argument when b is zero.
DivModResult poly_divmod(const Gf2Poly& a, const Gf2Poly& b);

Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b);

struct MinComplementary {
    Gf2Poly z;
    int l = 0;
};

/// Smallest l >= 1 (and the matching z of degree l) with
/// a*z = x^(deg a + l) + 1. Exists for every monic polynomial with unit
/// constant term; the search is bounded by 2^deg(a) - 1.
MinComplementary min_complementary(const Gf2Poly& a);

}  // namespace r1dual

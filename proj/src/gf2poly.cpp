#include "r1dual/gf2poly.hpp"

#include <stdexcept>

namespace r1dual {

void Gf2Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Gf2Poly Gf2Poly::x_power(int d) {
    if (d < 0) throw std::invalid_argument("x_power: negative degree");
    Gf2Poly p;
    p.coeffs_.assign(static_cast<size_t>(d) + 1, 0);
    p.coeffs_.back() = 1;
    return p;
}

Gf2Poly Gf2Poly::from_coeffs(std::vector<uint8_t> coeffs) {
    Gf2Poly p;
    p.coeffs_ = std::move(coeffs);
    for (auto& c : p.coeffs_) c = (c != 0) ? 1 : 0;
    p.trim();
    return p;
}

Gf2Poly Gf2Poly::from_octal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("from_octal: empty string");
    // Most significant octal digit carries the highest degrees.
    std::vector<uint8_t> bits;  // lowest degree first
    for (auto it = text.rbegin(); it != text.rend(); ++it) {
        char ch = *it;
        if (ch < '0' || ch > '7')
            throw std::invalid_argument("from_octal: bad digit in '" + text + "'");
        int digit = ch - '0';
        bits.push_back(static_cast<uint8_t>(digit & 1));
        bits.push_back(static_cast<uint8_t>((digit >> 1) & 1));
        bits.push_back(static_cast<uint8_t>((digit >> 2) & 1));
    }
    return from_coeffs(std::move(bits));
}

int Gf2Poly::weight() const {
    int w = 0;
    for (auto c : coeffs_) w += c;
    return w;
}

Gf2Poly Gf2Poly::reciprocal(int size) const {
    if (degree() > size)
        throw std::invalid_argument("reciprocal: size smaller than degree");
    std::vector<uint8_t> out(static_cast<size_t>(size) + 1, 0);
    for (int d = 0; d <= degree(); ++d)
        if (coeff(d)) out[static_cast<size_t>(size - d)] = 1;
    return from_coeffs(std::move(out));
}

std::string Gf2Poly::to_octal() const {
    if (is_zero()) return "0";
    std::string out;
    for (int d = ((degree() / 3) * 3); d >= 0; d -= 3) {
        int digit = (coeff(d + 2) << 2) | (coeff(d + 1) << 1) | coeff(d);
        out.push_back(static_cast<char>('0' + digit));
    }
    return out;
}

std::string Gf2Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
        if (!coeff(d)) continue;
        if (!out.empty()) out += "+";
        if (d == 0)
            out += "1";
        else if (d == 1)
            out += "x";
        else
            out += "x^" + std::to_string(d);
    }
    return out;
}

Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
    std::vector<uint8_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        uint8_t ca = i < a.coeffs_.size() ? a.coeffs_[i] : 0;
        uint8_t cb = i < b.coeffs_.size() ? b.coeffs_[i] : 0;
        out[i] = ca ^ cb;
    }
    return Gf2Poly::from_coeffs(std::move(out));
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
    if (a.is_zero() || b.is_zero()) return Gf2Poly{};
    std::vector<uint8_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (!a.coeffs_[i]) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] ^= b.coeffs_[j];
    }
    return Gf2Poly::from_coeffs(std::move(out));
}

Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b) { return a * b; }

DivModResult poly_divmod(const Gf2Poly& a, const Gf2Poly& b) {
    if (b.is_zero())
        throw std::invalid_argument("poly_divmod: division by zero polynomial");
    DivModResult res;
    res.remainder = a;
    if (a.degree() < b.degree()) return res;
    std::vector<uint8_t> q(static_cast<size_t>(a.degree() - b.degree()) + 1, 0);
    Gf2Poly rem = a;
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        q[static_cast<size_t>(shift)] = 1;
        rem = rem + b * Gf2Poly::x_power(shift);
    }
    res.quotient = Gf2Poly::from_coeffs(std::move(q));
    res.remainder = rem;
    return res;
}

MinComplementary min_complementary(const Gf2Poly& a) {
    if (a.degree() < 1 || !a.has_unit_constant())
        throw std::invalid_argument(
            "min_complementary: need a monic polynomial with unit constant "
            "term and degree >= 1, got " +
            a.to_string());
    const int n = a.degree();
    const long long bound = (1LL << n) - 1;
    for (long long l = 1; l <= bound; ++l) {
        Gf2Poly target = Gf2Poly::x_power(n + static_cast<int>(l)) + Gf2Poly::one();
        DivModResult dm = poly_divmod(target, a);
        if (dm.remainder.is_zero())
            return MinComplementary{dm.quotient, static_cast<int>(l)};
    }
    // a(x) with unit constant always divides x^(2^n - 1) + 1, so the loop
    // cannot fall through.
    throw std::logic_error("min_complementary: search bound exceeded for " +
                           a.to_string());
}

}  // namespace r1dual

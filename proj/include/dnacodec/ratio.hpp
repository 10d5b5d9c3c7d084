#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dnacodec {

// Exact rational with small integer parts. Used for constraint windows and
// tolerances where floating point would round the comparison boundaries
// (e.g. 0.45*200 is not exactly 90 in binary floating point).
struct Ratio {
    long long num = 0;
    long long den = 1;

    Ratio() = default;
    Ratio(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("ratio: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Ratio& a, const Ratio& b) {
        return a.num * b.den <= b.num * a.den;
    }

    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Parses "0.05", "5e-2", "1e-4", "1/20" or plain integers into an exact ratio.
inline Ratio parse_ratio(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("ratio: empty string");
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        long long n = std::stoll(std::string(text.substr(0, slash)));
        long long d = std::stoll(std::string(text.substr(slash + 1)));
        return Ratio(n, d);
    }
    bool neg = false;
    size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    long long mantissa = 0;
    int frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    long long exponent = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else if (c == '.') {
            if (seen_dot) throw std::invalid_argument("ratio: bad number");
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            exponent = std::stoll(std::string(text.substr(i + 1)));
            break;
        } else {
            throw std::invalid_argument("ratio: bad character in number");
        }
    }
    if (!seen_digit) throw std::invalid_argument("ratio: no digits");
    long long e = exponent - frac_digits;
    long long n = neg ? -mantissa : mantissa;
    long long d = 1;
    for (; e > 0; --e) n *= 10;
    for (; e < 0; ++e) d *= 10;
    return Ratio(n, d);
}

}  // namespace dnacodec

#pragma once

// Exact rationals over int64, just wide enough for the counting formulas
// here (numerators stay below q^3 with q <= 2^32 never combined, so 64 bits
// is ample). Always stored normalized: gcd(num, den) = 1, den > 0.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kloo {

struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        normalize_();
    }

    bool is_integer() const { return den == 1; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }

    std::string str() const {
        return is_integer() ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

private:
    void normalize_() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }
};

}  // namespace kloo

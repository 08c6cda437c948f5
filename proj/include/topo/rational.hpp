#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace topo {

// Exact ratio of two int64 values, kept in lowest terms with positive
// denominator.  Comparisons cross-multiply in 128 bits, so guarantee factors
// like (3k-2)/(2k) stay exact for any k that fits.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace topo

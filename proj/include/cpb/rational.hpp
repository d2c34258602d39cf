#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "cpb/errors.hpp"

namespace cpb {

/// Exact rational on 64-bit integers, always normalized with den > 0.
/// Magnitudes in this artifact stay far below the int64 range.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw MathError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw MathError("rational division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a == b || a < b;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Renders a non-negative rational with exactly `decimals` digits after the
/// point, rounding ties to even so that e.g. 21/32 at 4 decimals is 0.6562.
std::string render_fixed(const Rational& v, int decimals);

}  // namespace cpb

#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace corrclust {

// Exact rational on 64-bit num/den with 128-bit intermediates. Denominator is
// always positive and the fraction is kept reduced. Intended for estimator
// values whose denominators are small sample lengths; throws on overflow
// rather than losing exactness.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
    Rat(long long n, long long d) { *this = make(n, d); }

    static Rat make(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r;
        r.num = checked_ll(n);
        r.den = checked_ll(d);
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                    static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                    static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::domain_error("rational division by zero");
        return make(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
    }
    Rat operator-() const { return make(-static_cast<__int128>(num), den); }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    Rat abs() const { return num < 0 ? -*this : *this; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
    static long long checked_ll(__int128 v) {
        if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
            throw std::overflow_error("rational overflow");
        return static_cast<long long>(v);
    }
};

}  // namespace corrclust

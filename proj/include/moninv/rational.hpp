#pragma once

#include <string>

#include "moninv/common.hpp"

/**
 * Exact rational arithmetic on 64-bit numerator/denominator.
 *
 * Invariants: denominator > 0, gcd(|num|, den) = 1.  All operations reduce
 * through 128-bit intermediates and throw InternalError if a reduced result
 * no longer fits in 64 bits.  This is ample for elasticity values, which are
 * ratios of factorization lengths.
 */
namespace moninv {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) { assign(n, d); }

    void assign(long long n, long long d) {
        if (d == 0) throw InternalError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        long long g = gcd_ll(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num = n;
        den = d;
    }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw InternalError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        const __int128 lo = std::numeric_limits<long long>::min();
        const __int128 hi = std::numeric_limits<long long>::max();
        if (n < lo || n > hi || d > hi) throw InternalError("rational overflow");
        Rational r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128((__int128)a.num * b.den + (__int128)b.num * a.den,
                         (__int128)a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128((__int128)a.num * b.den - (__int128)b.num * a.den,
                         (__int128)a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw InternalError("rational division by zero");
        return from_i128((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /** Smallest integer >= this value. */
    long long ceil() const {
        long long q = num / den;
        if (num > 0 && num % den != 0) ++q;
        return q;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace moninv

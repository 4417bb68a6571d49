#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <sstream>
#include <string>

namespace aps {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

inline double to_double(const Rat& r) { return static_cast<double>(r); }

inline Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int b = 1;
    for (int i = 0; i < k; ++i) { b *= (n - i); b /= (i + 1); }
    return b;
}

// Generalized binomial (x choose k) for rational x, integer k >= 0.
inline Rat binomial_rat(const Rat& x, int k) {
    Rat b = 1;
    for (int i = 0; i < k; ++i) { b *= (x - i); b /= (i + 1); }
    return b;
}

inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Exponent with denominator <= 2, exact and order-comparable.
struct HalfInt {
    int twice = 0;  // value = twice/2

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int t) : twice(t) {}
    static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }
    static constexpr HalfInt half(int t) { return HalfInt(t); }

    double value() const { return 0.5 * twice; }
    bool is_integer() const { return twice % 2 == 0; }

    friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice + b.twice); }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice - b.twice); }
    friend HalfInt operator-(HalfInt a) { return HalfInt(-a.twice); }
    friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
    friend bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
    friend bool operator>(HalfInt a, HalfInt b) { return a.twice > b.twice; }
    friend bool operator<=(HalfInt a, HalfInt b) { return a.twice <= b.twice; }
    friend bool operator>=(HalfInt a, HalfInt b) { return a.twice >= b.twice; }

    std::string str() const {
        std::ostringstream os;
        if (twice % 2 == 0) os << twice / 2;
        else os << twice << "/2";
        return os.str();
    }
};

using Cplx = std::complex<double>;

inline Cplx ipow(Cplx z, int p) {
    if (p < 0) return 1.0 / ipow(z, -p);
    Cplx r = 1.0;
    while (p) {
        if (p & 1) r *= z;
        z *= z;
        p >>= 1;
    }
    return r;
}

}  // namespace aps

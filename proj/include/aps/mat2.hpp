#pragma once

#include <array>
#include <string>

namespace aps {

// 2x2 matrix over a commutative ring (used for the doubled first-order system).
template <class T>
struct Mat2 {
    std::array<T, 4> e{};  // row-major: e[0]=11, e[1]=12, e[2]=21, e[3]=22

    Mat2() = default;
    Mat2(T a11, T a12, T a21, T a22) : e{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {}

    static Mat2 diag(const T& d) { return Mat2(d, T(), T(), d); }

    T& operator()(int i, int j) { return e[2 * i + j]; }
    const T& operator()(int i, int j) const { return e[2 * i + j]; }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return Mat2(x.e[0] + y.e[0], x.e[1] + y.e[1], x.e[2] + y.e[2], x.e[3] + y.e[3]);
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return Mat2(x.e[0] - y.e[0], x.e[1] - y.e[1], x.e[2] - y.e[2], x.e[3] - y.e[3]);
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
                    x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]);
    }
    friend Mat2 operator*(const T& s, const Mat2& x) {
        return Mat2(s * x.e[0], s * x.e[1], s * x.e[2], s * x.e[3]);
    }
    friend bool operator==(const Mat2& x, const Mat2& y) { return x.e == y.e; }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

    T trace() const { return e[0] + e[3]; }

    template <class F>
    auto map(F&& f) const -> Mat2<decltype(f(e[0]))> {
        return {f(e[0]), f(e[1]), f(e[2]), f(e[3])};
    }

    std::string str() const {
        return "[[" + e[0].str() + ", " + e[1].str() + "], [" + e[2].str() + ", " + e[3].str() +
               "]]";
    }
};

}  // namespace aps

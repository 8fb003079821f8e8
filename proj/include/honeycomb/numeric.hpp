#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace honeycomb {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Reduce into [0, 2*pi).
inline double mod_two_pi(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    return r;
}

// Open arc (2*pi/3, 4*pi/3), the momentum window where the root counts flip.
inline bool in_inner_interval(double k) {
    double r = mod_two_pi(k);
    return r > two_pi / 3.0 && r < 2.0 * two_pi / 3.0;
}

namespace detail {

// Golden-section minimization of a unimodal function on [a, b] to absolute
// argument tolerance `tol`. Returns the argument of the minimum.
template <typename F>
double golden_min(F&& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498948482;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Bisection for a continuous function with f(a) and f(b) of opposite sign,
// run until the bracket is narrower than `tol`.
template <typename F>
double bisect(F&& f, double a, double b, double tol) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if ((fa <= 0 && fm <= 0) || (fa > 0 && fm > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// z^n for integer n (z != 0 when n < 0).
inline cplx pow_int(cplx z, long n) {
    if (n < 0) return 1.0 / pow_int(z, -n);
    cplx r = 1.0, base = z;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

// In-place radix-2 transform, x.size() a power of two:
// x[u] <- sum_s x[s] exp(sign * 2*pi*i * s*u / n).
inline void fft_pow2(std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * two_pi / double(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w = 1.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = x[i + j];
                cplx v = x[i + j + len / 2] * w;
                x[i + j] = u + v;
                x[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

} // namespace detail
} // namespace honeycomb

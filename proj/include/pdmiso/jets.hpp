#ifndef PDMISO_JETS_HPP
#define PDMISO_JETS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <limits>

namespace pdmiso {

using Complex = std::complex<double>;

// Truncated Taylor data of a function at a point: value and derivatives up
// to order 5.  Entry d[k] holds the k-th derivative.  Operations follow the
// Leibniz / Faa di Bruno rules; an entry that is no longer meaningful after
// a shift is set to NaN so it cannot be consumed silently.
struct Jet {
    static constexpr int kOrder = 5;
    std::array<Complex, kOrder + 1> d{};

    Complex value() const { return d[0]; }
    Complex d1() const { return d[1]; }
    Complex d2() const { return d[2]; }
    Complex d3() const { return d[3]; }
    Complex d4() const { return d[4]; }

    static Jet constant(Complex v) {
        Jet j;
        j.d[0] = v;
        return j;
    }
    // The identity coordinate x at a point.
    static Jet variable(double x) {
        Jet j;
        j.d[0] = x;
        j.d[1] = 1.0;
        return j;
    }
};

namespace detail {
// Pascal triangle rows up to n = 5.
inline constexpr int kBinom[6][6] = {
    {1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},  {1, 2, 1, 0, 0, 0},
    {1, 3, 3, 1, 0, 0},  {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1},
};
}  // namespace detail

inline Jet operator+(const Jet& u, const Jet& v) {
    Jet w;
    for (int k = 0; k <= Jet::kOrder; ++k) w.d[k] = u.d[k] + v.d[k];
    return w;
}

inline Jet operator-(const Jet& u, const Jet& v) {
    Jet w;
    for (int k = 0; k <= Jet::kOrder; ++k) w.d[k] = u.d[k] - v.d[k];
    return w;
}

inline Jet operator-(const Jet& u) {
    Jet w;
    for (int k = 0; k <= Jet::kOrder; ++k) w.d[k] = -u.d[k];
    return w;
}

inline Jet operator*(const Jet& u, const Jet& v) {
    Jet w;
    for (int k = 0; k <= Jet::kOrder; ++k) {
        Complex s = 0.0;
        for (int j = 0; j <= k; ++j)
            s += double(detail::kBinom[k][j]) * u.d[j] * v.d[k - j];
        w.d[k] = s;
    }
    return w;
}

inline Jet operator*(Complex s, const Jet& u) {
    Jet w;
    for (int k = 0; k <= Jet::kOrder; ++k) w.d[k] = s * u.d[k];
    return w;
}

inline Jet operator*(const Jet& u, Complex s) { return s * u; }

inline Jet operator+(const Jet& u, Complex s) {
    Jet w = u;
    w.d[0] += s;
    return w;
}

inline Jet operator+(Complex s, const Jet& u) { return u + s; }

inline Jet operator-(const Jet& u, Complex s) { return u + (-s); }

inline Jet operator-(Complex s, const Jet& u) { return (-u) + s; }

// Division solves u = w * v for w order by order.
inline Jet operator/(const Jet& u, const Jet& v) {
    Jet w;
    for (int k = 0; k <= Jet::kOrder; ++k) {
        Complex s = u.d[k];
        for (int j = 0; j < k; ++j)
            s -= double(detail::kBinom[k][j]) * w.d[j] * v.d[k - j];
        w.d[k] = s / v.d[0];
    }
    return w;
}

inline Jet operator/(const Jet& u, Complex s) { return (1.0 / s) * u; }

inline Jet operator/(Complex s, const Jet& v) {
    return Jet::constant(s) / v;
}

// exp of a jet: E^(k) = sum_j C(k-1,j) q^(k-j) E^(j).
inline Jet jet_exp(const Jet& q) {
    Jet e;
    e.d[0] = std::exp(q.d[0]);
    for (int k = 1; k <= Jet::kOrder; ++k) {
        Complex s = 0.0;
        for (int j = 0; j < k; ++j)
            s += double(detail::kBinom[k - 1][j]) * q.d[k - j] * e.d[j];
        e.d[k] = s;
    }
    return e;
}

// Composition h = F(g) where fd[k] = F^{(k)} evaluated at g.d[0]
// (Faa di Bruno through order 5).
inline Jet jet_compose(const std::array<Complex, Jet::kOrder + 1>& fd,
                       const Jet& g) {
    const Complex g1 = g.d[1], g2 = g.d[2], g3 = g.d[3], g4 = g.d[4],
                  g5 = g.d[5];
    Jet h;
    h.d[0] = fd[0];
    h.d[1] = fd[1] * g1;
    h.d[2] = fd[2] * g1 * g1 + fd[1] * g2;
    h.d[3] = fd[3] * g1 * g1 * g1 + 3.0 * fd[2] * g1 * g2 + fd[1] * g3;
    h.d[4] = fd[4] * g1 * g1 * g1 * g1 + 6.0 * fd[3] * g1 * g1 * g2 +
             fd[2] * (3.0 * g2 * g2 + 4.0 * g1 * g3) + fd[1] * g4;
    h.d[5] = fd[5] * g1 * g1 * g1 * g1 * g1 +
             10.0 * fd[4] * g1 * g1 * g1 * g2 +
             fd[3] * (15.0 * g1 * g2 * g2 + 10.0 * g1 * g1 * g3) +
             fd[2] * (10.0 * g2 * g3 + 5.0 * g1 * g4) + fd[1] * g5;
    return h;
}

// sqrt of a jet: solve w * w = u order by order.
inline Jet jet_sqrt(const Jet& u) {
    Jet w;
    w.d[0] = std::sqrt(u.d[0]);
    for (int k = 1; k <= Jet::kOrder; ++k) {
        Complex s = u.d[k];
        for (int j = 1; j < k; ++j)
            s -= double(detail::kBinom[k][j]) * w.d[j] * w.d[k - j];
        w.d[k] = s / (2.0 * w.d[0]);
    }
    return w;
}

// Jet of the derivative function.  The top order is lost; it is filled
// with NaN rather than a fake zero.
inline Jet jet_d(const Jet& u) {
    Jet w;
    for (int k = 0; k < Jet::kOrder; ++k) w.d[k] = u.d[k + 1];
    w.d[Jet::kOrder] = Complex(std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN());
    return w;
}

// Real part viewed as a jet (for quantities that are real by construction).
inline std::array<double, Jet::kOrder + 1> jet_real(const Jet& u) {
    std::array<double, Jet::kOrder + 1> r{};
    for (int k = 0; k <= Jet::kOrder; ++k) r[k] = u.d[k].real();
    return r;
}

}  // namespace pdmiso

#endif

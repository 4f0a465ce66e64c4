// Gauss 2F1 with complex parameters on z in [0,1), Jacobi polynomials,
// and complex log-gamma / digamma.
//
// 2F1 evaluation scheme:
//   * terminating (polynomial) parameter sets are summed exactly for any z;
//   * z <= 0.5: defining power series, compensated summation;
//   * z >  0.5: connection formula in w = 1-z; when c-a-b is within 1e-8
//     of an integer the Gamma coefficients of the standard formula blow up
//     and the psi-series expansion of the logarithmic case is used instead.
// All paths treat a and b symmetrically and commute with complex
// conjugation of the parameters.

#include "pdmiso/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pdmiso::specialfn {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kIntegerTol = 1e-8;   // c-a-b near-integer switch
constexpr double kPoleTol = 1e-12;     // pole / polynomial detection

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLogPi = 1.14472988584940017414342735135305871;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;

bool near_real_integer(Complex z, double tol, long& m) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    if (std::abs(z.real() - r) > tol) return false;
    m = static_cast<long>(r);
    return true;
}

// Degree of the terminating series when a parameter is a non-positive
// integer; -1 otherwise.
long poly_degree(Complex a, Complex b) {
    long m;
    long deg = -1;
    if (near_real_integer(a, kPoleTol, m) && m <= 0) deg = -m;
    if (near_real_integer(b, kPoleTol, m) && m <= 0)
        deg = (deg < 0) ? -m : std::min(deg, -m);
    return deg;
}

// Lanczos coefficients, g = 607/128.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

Complex log_gamma_lanczos(Complex z) {
    // Valid for Re z >= 1/2.
    Complex s = kLanczos[0];
    for (int k = 1; k < 15; ++k) s += kLanczos[k] / (z - 1.0 + double(k));
    const Complex t = z - 0.5 + kLanczosG;
    return kHalfLog2Pi + (z - 0.5) * std::log(t) - t + std::log(s);
}

// Compensated complex accumulator (Kahan).
struct Accum {
    Complex sum{0.0, 0.0};
    Complex carry{0.0, 0.0};
    void add(Complex term) {
        const Complex y = term - carry;
        const Complex t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct Piece {
    // log-magnitude plus mantissa; value = mantissa * exp(log_re).
    Complex mantissa{0.0, 0.0};
    double log_re = 0.0;
    bool present = false;
};

Scaled2F1 combine(const Piece& p1, const Piece& p2, bool log_branch,
                  int terms) {
    Scaled2F1 r;
    r.log_branch = log_branch;
    r.converged = true;
    r.terms = terms;
    double s = -std::numeric_limits<double>::infinity();
    if (p1.present) s = std::max(s, p1.log_re);
    if (p2.present) s = std::max(s, p2.log_re);
    if (!std::isfinite(s)) {  // both pieces vanish
        r.mantissa = 0.0;
        r.log_scale = 0.0;
        return r;
    }
    Complex v = 0.0;
    if (p1.present) v += p1.mantissa * std::exp(p1.log_re - s);
    if (p2.present) v += p2.mantissa * std::exp(p2.log_re - s);
    r.mantissa = v;
    r.log_scale = s;
    return r;
}

// Defining series sum_{k} (a)_k (b)_k / ((c)_k k!) z^k.
// degree >= 0 requests exact truncation after that many ratio steps.
// Accumulates in extended precision: the terminating (polynomial) sums
// alternate in sign and lose ~5 digits in plain double.
Complex power_series(Complex a, Complex b, Complex c, double z, long degree,
                     double tol, int& terms_used, bool& ok) {
    using CL = std::complex<long double>;
    const CL al(a.real(), a.imag()), bl(b.real(), b.imag()),
        cl(c.real(), c.imag());
    CL u = 1.0L, s = 1.0L;
    double prev_mag = 1.0;
    int quiet = 0;
    ok = false;
    const long cap = (degree >= 0) ? degree : kMaxTerms;
    for (long k = 0; k < cap; ++k) {
        u *= (al + (long double)k) * (bl + (long double)k) * (long double)z /
             ((cl + (long double)k) * (long double)(k + 1));
        s += u;
        const double um = double(std::abs(u));
        const double sm = double(std::abs(s));
        if (degree < 0) {
            if (sm > 0.0 && um <= tol * sm) {
                if (++quiet >= 2) {
                    terms_used = int(k) + 2;
                    ok = true;
                    return Complex(double(s.real()), double(s.imag()));
                }
            } else {
                quiet = 0;
            }
            // term-ratio stagnation guard
            if (k > 2000 && (k % 256) == 0) {
                if (um >= prev_mag) {
                    terms_used = int(k);
                    return Complex(double(s.real()), double(s.imag()));
                }
                prev_mag = um;
            }
        }
    }
    terms_used = int(cap) + 1;
    ok = (degree >= 0);
    return Complex(double(s.real()), double(s.imag()));
}

// Logarithmic connection case: c - a - b within tolerance of the integer m.
// Series in w = 1 - z with digamma terms (the psi expansion of the
// connection formula).  Treats the offset from the exact integer as zero.
Scaled2F1 log_case(Complex a, Complex b, Complex c, double w, long m,
                   double tol) {
    const double lw = std::log(w);
    Piece p1, p2;
    int terms = 0;

    if (m >= 0) {
        // c = a + b + m
        const Complex am = a + double(m), bm = b + double(m);
        if (m >= 1 && !is_nonpositive_integer(am, kPoleTol) &&
            !is_nonpositive_integer(bm, kPoleTol)) {
            Accum s;
            Complex t = 1.0;
            s.add(t);
            for (long n = 1; n < m; ++n) {
                t *= (a + double(n - 1)) * (b + double(n - 1)) * w /
                     (double(n) * (1.0 - double(m) + double(n - 1)));
                s.add(t);
            }
            p1.mantissa = s.sum;
            const Complex lg = log_gamma(c) - (log_gamma(am) + log_gamma(bm));
            p1.log_re = std::lgamma(double(m)) + lg.real();
            p1.mantissa *= std::exp(Complex(0.0, lg.imag()));
            p1.present = true;
            terms += int(m);
        }
        if (!is_nonpositive_integer(a, kPoleTol) &&
            !is_nonpositive_integer(b, kPoleTol)) {
            // sum over n of (a+m)_n (b+m)_n / (n! (n+m)!) w^n *
            //   [ln w - psi(n+1) - psi(n+m+1) + psi(a+m+n) + psi(b+m+n)]
            Accum s;
            Complex poch = 1.0;
            double psi1 = digamma(Complex(1.0, 0.0)).real();
            double psim = digamma(Complex(double(m + 1), 0.0)).real();
            Complex psia = digamma(am);
            Complex psib = digamma(bm);
            double invfact = 1.0;  // m! / (n+m)! running factor handled below
            // factor 1/m! goes into the log piece
            for (long n = 0; n < kMaxTerms; ++n) {
                const Complex bracket = (lw - psi1 - psim) + (psia + psib);
                const Complex term = poch * invfact * bracket;
                s.add(term);
                if (n > 1 && std::abs(term) <= tol * std::abs(s.sum) &&
                    std::abs(poch * invfact) <= tol * std::abs(s.sum)) {
                    terms += int(n);
                    break;
                }
                poch *= (am + double(n)) * (bm + double(n)) * w;
                invfact /= (double(n + 1) * double(n + 1 + m));
                psi1 += 1.0 / double(n + 1);
                psim += 1.0 / double(n + 1 + m);
                psia += 1.0 / (am + double(n));
                psib += 1.0 / (bm + double(n));
            }
            const Complex lg = log_gamma(c) - (log_gamma(a) + log_gamma(b));
            p2.log_re = lg.real() + double(m) * lw - std::lgamma(double(m + 1));
            const double sign = (m % 2 == 0) ? -1.0 : 1.0;
            p2.mantissa = sign * s.sum * std::exp(Complex(0.0, lg.imag()));
            p2.present = true;
        }
    } else {
        // c = a + b - mh with mh = -m > 0
        const long mh = -m;
        const Complex amh = a - double(mh), bmh = b - double(mh);
        {
            Accum s;
            Complex t = 1.0;
            s.add(t);
            for (long n = 1; n < mh; ++n) {
                t *= (amh + double(n - 1)) * (bmh + double(n - 1)) * w /
                     (double(n) * (1.0 - double(mh) + double(n - 1)));
                s.add(t);
            }
            const Complex lg = log_gamma(c) - (log_gamma(a) + log_gamma(b));
            p1.log_re =
                std::lgamma(double(mh)) + lg.real() - double(mh) * lw;
            p1.mantissa = s.sum * std::exp(Complex(0.0, lg.imag()));
            p1.present = true;
            terms += int(mh);
        }
        if (!is_nonpositive_integer(amh, kPoleTol) &&
            !is_nonpositive_integer(bmh, kPoleTol)) {
            Accum s;
            Complex poch = 1.0;
            double psi1 = digamma(Complex(1.0, 0.0)).real();
            double psim = digamma(Complex(double(mh + 1), 0.0)).real();
            Complex psia = digamma(a);
            Complex psib = digamma(b);
            double invfact = 1.0;
            for (long n = 0; n < kMaxTerms; ++n) {
                const Complex bracket = (lw - psi1 - psim) + (psia + psib);
                const Complex term = poch * invfact * bracket;
                s.add(term);
                if (n > 1 && std::abs(term) <= tol * std::abs(s.sum) &&
                    std::abs(poch * invfact) <= tol * std::abs(s.sum)) {
                    terms += int(n);
                    break;
                }
                poch *= (a + double(n)) * (b + double(n)) * w;
                invfact /= (double(n + 1) * double(n + 1 + mh));
                psi1 += 1.0 / double(n + 1);
                psim += 1.0 / double(n + 1 + mh);
                psia += 1.0 / (a + double(n));
                psib += 1.0 / (b + double(n));
            }
            const Complex lg =
                log_gamma(c) - (log_gamma(amh) + log_gamma(bmh));
            p2.log_re = lg.real() - std::lgamma(double(mh + 1));
            const double sign = (mh % 2 == 0) ? -1.0 : 1.0;
            p2.mantissa = sign * s.sum * std::exp(Complex(0.0, lg.imag()));
            p2.present = true;
        }
    }
    return combine(p1, p2, true, terms);
}

// Standard connection formula in w = 1 - z (c-a-b away from integers).
Scaled2F1 connection(Complex a, Complex b, Complex c, double w, double tol) {
    const Complex d = c - (a + b);
    const double lw = std::log(w);
    Piece p1, p2;
    int terms = 0;

    if (!is_nonpositive_integer(c - a, kPoleTol) &&
        !is_nonpositive_integer(c - b, kPoleTol)) {
        int t = 0;
        bool ok = false;
        const Complex f =
            power_series(a, b, 1.0 - d, w, poly_degree(a, b), tol, t, ok);
        if (!ok) throw NonConvergence("2F1 connection series (first term)");
        const Complex lg = log_gamma(c) + log_gamma(d) -
                           (log_gamma(c - a) + log_gamma(c - b));
        p1.log_re = lg.real();
        p1.mantissa = f * std::exp(Complex(0.0, lg.imag()));
        p1.present = true;
        terms += t;
    }
    if (!is_nonpositive_integer(a, kPoleTol) &&
        !is_nonpositive_integer(b, kPoleTol)) {
        int t = 0;
        bool ok = false;
        const Complex f = power_series(c - a, c - b, 1.0 + d, w,
                                       poly_degree(c - a, c - b), tol, t, ok);
        if (!ok) throw NonConvergence("2F1 connection series (second term)");
        const Complex lg = log_gamma(c) + log_gamma(-d) -
                           (log_gamma(a) + log_gamma(b));
        const Complex full = lg + d * lw;
        p2.log_re = full.real();
        p2.mantissa = f * std::exp(Complex(0.0, full.imag()));
        p2.present = true;
        terms += t;
    }
    return combine(p1, p2, false, terms);
}

}  // namespace

bool is_nonpositive_integer(Complex z, double tol) {
    long m;
    return near_real_integer(z, tol, m) && m <= 0;
}

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z, kPoleTol))
        throw PoleAtNonPositiveInteger("log_gamma pole at z = " +
                                       std::to_string(z.real()));
    if (z.real() >= 0.5) return log_gamma_lanczos(z);
    // reflection; the branch is consistent with exp(log_gamma) = Gamma
    const Complex s = std::sin(kPi * z);
    return kLogPi - std::log(s) - log_gamma_lanczos(1.0 - z);
}

Complex reciprocal_gamma(Complex z) {
    if (is_nonpositive_integer(z, kPoleTol)) return Complex(0.0, 0.0);
    return std::exp(-log_gamma(z));
}

Complex digamma(Complex z) {
    if (is_nonpositive_integer(z, kPoleTol))
        throw PoleAtNonPositiveInteger("digamma pole at z = " +
                                       std::to_string(z.real()));
    Complex shift = 0.0;
    // reflection keeps the recurrence short for far-left arguments
    if (z.real() < -30.0) {
        // psi(z) = psi(1-z) - pi*cot(pi*z)
        const Complex zc = 1.0 - z;
        const Complex cot = std::cos(kPi * z) / std::sin(kPi * z);
        return digamma(zc) - kPi * cot;
    }
    while (z.real() < 12.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    // asymptotic expansion with Bernoulli coefficients
    static const double kB[7] = {1.0 / 12.0,   -1.0 / 120.0, 1.0 / 252.0,
                                 -1.0 / 240.0, 1.0 / 132.0,  -691.0 / 32760.0,
                                 1.0 / 12.0};
    Complex series = 0.0;
    Complex p = inv2;
    for (int k = 0; k < 7; ++k) {
        series += kB[k] * p;
        p *= inv2;
    }
    return shift + std::log(z) - 0.5 * inv - series;
}

Scaled2F1 gauss_2f1_scaled(Complex a, Complex b, Complex c, double z,
                           double one_minus_z, double rel_tol) {
    const bool have_w = one_minus_z > 0.0;
    if (!(z >= 0.0 && z <= 1.0) || (z == 1.0 && !have_w))
        throw DomainError("2F1 argument outside [0,1): z = " +
                          std::to_string(z));
    const double w = have_w ? one_minus_z : (1.0 - z);

    const long degree = poly_degree(a, b);
    // c at a non-positive integer is a pole unless the series terminates
    // strictly before the offending factor.
    long cm;
    if (near_real_integer(c, kPoleTol, cm) && cm <= 0) {
        if (degree < 0 || degree >= -cm + 1)
            throw PoleAtC("2F1 pole: c is a non-positive integer");
    }

    Scaled2F1 r;
    if (degree >= 0 || z <= 0.5) {
        int t = 0;
        bool ok = false;
        r.mantissa = power_series(a, b, c, z, degree, rel_tol, t, ok);
        r.log_scale = 0.0;
        r.terms = t;
        r.converged = ok;
        r.log_branch = false;
        if (!ok) throw NonConvergence("2F1 power series did not converge");
        return r;
    }

    long m;
    if (near_real_integer(c - (a + b), kIntegerTol, m))
        return log_case(a, b, c, w, m, rel_tol);
    return connection(a, b, c, w, rel_tol);
}

Complex gauss_2f1(Complex a, Complex b, Complex c, double z) {
    const Scaled2F1 r = gauss_2f1_scaled(a, b, c, z);
    return r.mantissa * std::exp(r.log_scale);
}

Complex gauss_2f1_dz(Complex a, Complex b, Complex c, double z) {
    return (a * b / c) * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z);
}

double jacobi_p(int n, double sigma, double delta, double x) {
    if (n < 0) throw DomainError("jacobi_p: negative degree");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = 0.5 * (sigma - delta) + 0.5 * (sigma + delta + 2.0) * x;
    for (int k = 2; k <= n; ++k) {
        const double s = sigma + delta;
        const double a1 = 2.0 * k * (k + s) * (2.0 * k + s - 2.0);
        const double a2 = (2.0 * k + s - 1.0) *
                          ((2.0 * k + s) * (2.0 * k + s - 2.0) * x +
                           sigma * sigma - delta * delta);
        const double a3 =
            2.0 * (k + sigma - 1.0) * (k + delta - 1.0) * (2.0 * k + s);
        const double next = (a2 * p - a3 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    return p;
}

double jacobi_p_derivative(int n, double sigma, double delta, double x,
                           int order) {
    if (order < 0) throw DomainError("jacobi_p_derivative: negative order");
    if (order == 0) return jacobi_p(n, sigma, delta, x);
    if (order > n) return 0.0;
    double factor = 1.0;
    for (int j = 0; j < order; ++j)
        factor *= 0.5 * (n + sigma + delta + 1.0 + j);
    return factor *
           jacobi_p(n - order, sigma + order, delta + order, x);
}

}  // namespace pdmiso::specialfn

#ifndef PDMISO_SPECIALFN_HPP
#define PDMISO_SPECIALFN_HPP

#include <complex>

#include "pdmiso/errors.hpp"

namespace pdmiso::specialfn {

using Complex = std::complex<double>;

// Result of a scaled 2F1 evaluation: value = mantissa * exp(log_scale).
// The split keeps intermediate magnitudes representable when the
// connection-formula terms individually overflow a double.
struct Scaled2F1 {
    Complex mantissa{};
    double log_scale = 0.0;
    bool converged = false;
    bool log_branch = false;  // psi-series used (c-a-b within 1e-8 of an integer)
    int terms = 0;
};

// Gauss hypergeometric 2F1(a,b;c;z) for complex parameters and real
// z in [0,1).  `one_minus_z` may be supplied when the caller can compute
// 1-z without cancellation (z very close to 1); pass a negative value to
// let the routine form it as 1.0-z.
//
// Throws DomainError (z outside [0,1)), PoleAtC (c a non-positive integer
// and the series does not terminate first), NonConvergence.
Scaled2F1 gauss_2f1_scaled(Complex a, Complex b, Complex c, double z,
                           double one_minus_z = -1.0, double rel_tol = 5e-15);

// Plain-value front ends.
Complex gauss_2f1(Complex a, Complex b, Complex c, double z);

// d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z).
Complex gauss_2f1_dz(Complex a, Complex b, Complex c, double z);

// Jacobi polynomial P_n^(sigma,delta)(x) by the three-term recurrence,
// and its order-th derivative (derivatives of a Jacobi polynomial are
// Jacobi polynomials with shifted weights).
double jacobi_p(int n, double sigma, double delta, double x);
double jacobi_p_derivative(int n, double sigma, double delta, double x,
                           int order = 1);

// Principal-branch log Gamma for complex argument (Lanczos; reflection
// for Re z < 1/2).  Throws PoleAtNonPositiveInteger.
Complex log_gamma(Complex z);

// Digamma for complex argument (upward recurrence + asymptotic series).
Complex digamma(Complex z);

// 1/Gamma(z); returns exactly 0 at non-positive-integer poles.
Complex reciprocal_gamma(Complex z);

// True if z is within tol of a non-positive integer on the real axis.
bool is_nonpositive_integer(Complex z, double tol = 1e-12);

}  // namespace pdmiso::specialfn

#endif

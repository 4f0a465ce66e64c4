#ifndef PDMISO_MODEL_HPP
#define PDMISO_MODEL_HPP

#include <complex>

#include "pdmiso/errors.hpp"
#include "pdmiso/jets.hpp"

namespace pdmiso::model {

using pdmiso::Complex;
using pdmiso::Jet;

// Parameters of the solvable hypergeometric system.  a, b, c are the
// hypergeometric parameters, p and lam fix the mass profile
// M(x) = (p lam^2 / 4) sech^2(p lam x / 2), alpha/beta weight the two
// solution branches of the seed, and nu shifts (a, b) -> (a+nu, b-nu),
// which leaves the Hamiltonian invariant but moves the factorization
// energy.
struct ModelParams {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
    double p = 1.0;
    double lam = 1.0;
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    double nu = 0.0;

    Complex sigma() const { return c - 1.0; }          // read-only derived
    Complex delta() const { return a + b - c; }        // read-only derived
    double theta() const { return p * lam; }

    // Bound states are normalizable iff Re(c) > 1/2 and Re(a+b-c) > -1/2.
    bool physical() const {
        return c.real() > 0.5 && delta().real() + 0.5 > 0.0;
    }
    bool real_parameters(double tol = 1e-12) const;
    void validate() const;  // p > 0, lam > 0, weights not both zero
};

// ---- background quantities -------------------------------------------------

double mass(const ModelParams& mp, double x);
Jet mass_jet(const ModelParams& mp, double x);

Complex potential_complex(const ModelParams& mp, double x);
// Throws NonRealPotential when the imaginary part exceeds 1e-10 relative.
double potential(const ModelParams& mp, double x);
Jet potential_jet(const ModelParams& mp, double x);

// E_n = p [ n^2 + n (sigma+delta+1) + (sigma+1)(delta+1)/2 ].
// Throws UnphysicalParameters when the discrete spectrum does not exist.
double energy(const ModelParams& mp, int n);

// ---- bound states ----------------------------------------------------------

struct BoundState {
    int n = 0;
    double energy = 0.0;
    double norm = 1.0;           // numerically determined (used by eval)
    double analytic_norm = 1.0;  // closed-form prefactor, informational

    // value and derivatives through order 5 (all real; returned as a Jet)
    Jet jet(double x, int order = Jet::kOrder) const;
    double value(double x) const { return jet(x, 0).value().real(); }
    double derivative(double x) const { return jet(x, 1).d1().real(); }

    // internals
    double theta = 1.0, k1 = 0.0, k2 = 0.0, sigma = 0.0, delta = 0.0;
};

BoundState bound_state(const ModelParams& mp, int n);

// ---- seed solutions --------------------------------------------------------

enum class Asymptote { VanishesAtEnd, UnboundedAtEnd, BoundedNonzero };

// A solution of the position-dependent-mass equation at the factorization
// energy mu, generally non-normalizable.  Both branches are combined with
// the stored weights; derivatives are analytic through order 5.
struct SeedSolution {
    ModelParams params;
    Complex a_eff{0.0, 0.0}, b_eff{0.0, 0.0};  // shifted (a+nu, b-nu)
    Complex mu{0.0, 0.0};
    Asymptote left_asymptote = Asymptote::BoundedNonzero;
    Asymptote right_asymptote = Asymptote::BoundedNonzero;
    bool left_marginal = false;
    bool right_marginal = false;
    bool real_valued = false;

    Jet jet(double x, int order = Jet::kOrder) const;
    Complex value(double x) const { return jet(x, 0).value(); }
    Complex derivative(double x) const { return jet(x, 1).d1(); }

    // Seed with conjugated parameters and weights; evaluates to the exact
    // complex conjugate of this seed at every x.
    SeedSolution conjugate() const;

    // internals: branch data
    struct Branch {
        bool active = false;
        Complex weight{0.0, 0.0};
        Complex k1{0.0, 0.0}, k2{0.0, 0.0};  // prefactor exponents
        Complex A{0.0, 0.0}, B{0.0, 0.0}, C{0.0, 0.0};
    };
    Branch branch1, branch2;
    double theta = 1.0;
};

// Builds the general seed for the stored (alpha, beta, nu).
// Throws SecondBranchPole when beta != 0 and c is an integer.
SeedSolution seed(const ModelParams& mp);

// The n-th bound state viewed as a seed: the shift with a+nu = -n truncates
// the first branch to the bound-state solution (beta is dropped).
SeedSolution bound_state_seed(const ModelParams& mp, int n);

// ---- spectral-modification classification ----------------------------------

enum class Modification { DeleteGround, StrictIso, CreateBelowGround, Invalid };

const char* to_string(Modification m);

// Classifies what a first-order transform built on this seed does to the
// spectrum.  Requires a real-valued seed with real mu <= E_0 (throws
// MuAboveGround above the ground state, DomainError for complex input).
Modification classify_modification(const SeedSolution& s);

}  // namespace pdmiso::model

#endif

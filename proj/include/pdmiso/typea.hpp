#ifndef PDMISO_TYPEA_HPP
#define PDMISO_TYPEA_HPP

#include "pdmiso/intertwine1.hpp"

namespace pdmiso::typea {

using pdmiso::Complex;
using pdmiso::Jet;
using intertwine1::Background;

// One-fold superpotential extracted from a seed (jets taken at the same
// point): W = -(ln u)' + M'/(4M), derivatives through order 3.
// Throws SeedHasNode at a zero of u.
Jet superpotential_jet(const Jet& useed, const Jet& mass);
double superpotential_from_seed(const model::SeedSolution& s, double x);

// Potential difference generated by an N-fold superpotential:
//   2 N ( W'/M - M' W / (2 M^2) ).
double potential_diff(const Background& bg, const Jet& w, double x, int nfold);

// Two seeds of one Hamiltonian feeding the two-fold checks.  z = u2/u1 and
// the gauge function is -ln u1.
struct TypeAPair {
    Background bg;
    model::SeedSolution u1, u2;

    Jet z_jet(double x) const;  // valid through order 4
    // W(x) = -tau1 - z''/(2 z') + M'/(2M), derivatives through order 2
    Jet superpotential2_jet(double x) const;
    // eta = 2 W / M - M'/M^2
    double eta_from_superpotential(double x) const;
    // coefficient of the first-derivative term of the gauged operator,
    // evaluated pointwise; linear in z with slope mu1 - mu2 when both seeds
    // solve the equation
    double gauge_coefficient(double x) const;
};

TypeAPair make_pair(const model::SeedSolution& u1,
                    const model::SeedSolution& u2);

// Affine fit of the gauge coefficient against z over a window where z is
// strictly monotone (throws NonMonotoneZ otherwise).
struct BzFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_deviation = 0.0;
    bool pass = false;
};

BzFit bz_linearity(const TypeAPair& p, double lo = -5.0, double hi = 5.0,
                   int samples = 201, double rel_tol = 1e-6);

}  // namespace pdmiso::typea

#endif

#ifndef PDMISO_INTERTWINE1_HPP
#define PDMISO_INTERTWINE1_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "pdmiso/jets.hpp"
#include "pdmiso/model.hpp"
#include "pdmiso/numspec.hpp"

namespace pdmiso::intertwine1 {

using pdmiso::Complex;
using pdmiso::Jet;
using JetFn = std::function<Jet(double)>;

// Mass and potential with analytic derivatives.  The intertwining
// operators are written against this interface, not against the solvable
// model, so constant-mass sanity checks can inject M = 1 directly.
struct Background {
    JetFn mass_jet;       // real-valued
    JetFn potential_jet;  // complex-capable
};

Background model_background(const model::ModelParams& mp);
Background constant_mass_background(JetFn potential_jet);

// Result of the widening-window normalizability test: integrals of the
// probability density over [-10,10], [-20,20], [-40,40].  Normalizable if
// the last pair agrees to 1e-6 relative, divergent if a step grows by more
// than a factor 10, otherwise InconclusiveNormalizability is thrown.
struct NormVerdict {
    bool normalizable = false;
    std::array<double, 3> integrals{};
};

NormVerdict check_normalizability(const std::function<double(double)>& density);

// First-order intertwining data: a nodeless seed at factorization energy mu
// defines the superpotential, the partner potential, the mapped
// wavefunctions and the missing state.
struct FirstOrderPartner {
    Background bg;
    JetFn seed;
    double mu = 0.0;
    std::optional<model::Modification> modification;

    // A(x) = -u' / (sqrt(M) u); derivatives through order 3 are analytic.
    Jet superpotential_jet(double x) const;
    double superpotential(double x) const;

    double partner_potential(double x) const;
    Complex partner_potential_complex(double x) const;
    // partner potential with derivatives (valid through order 3), usable as
    // the background of a further transform
    Jet partner_potential_jet(double x) const;

    // (L psi) = (psi' - (u'/u) psi)/sqrt(M); the result jet carries one
    // derivative less than the input jet.
    Jet apply_L(const Jet& psi, double x) const;
    // adjoint: (1/sqrt(M)) (-psi' - (u'/u) psi + (M'/2M) psi)
    Jet apply_L_dagger(const Jet& psi, double x) const;

    // missing partner state sqrt(M)/u at the factorization energy
    Jet missing_state_jet(double x) const;
    double missing_state(double x) const;
    NormVerdict missing_state_normalizability() const;

    // H f and Hbar f at a point, from a jet of f (two derivatives used)
    Complex apply_H(const Jet& f, double x) const;
    Complex apply_H_partner(const Jet& f, double x) const;

    // spectral rule implied by the classification (requires classified)
    numspec::IsospectralLaw law() const;
};

// Raw construction from background + seed jet; no classification.
FirstOrderPartner first_order_partner(Background bg, JetFn seed, double mu);

// Construction from a model seed: classifies the modification and refuses
// seeds with nodes (SeedHasNode).
FirstOrderPartner first_order_partner(const model::SeedSolution& s);

// Max-norm of the two factorization identities applied to test functions,
// normalized by the largest participating term at each point.
struct FactorizationReport {
    double max_residual_LdagL = 0.0;  // (Ldag L - (H - mu)) phi
    double max_residual_LLdag = 0.0;  // (L Ldag - (Hbar - mu)) phi
};

FactorizationReport factorization_residuals(const FirstOrderPartner& p,
                                            const std::vector<JetFn>& tests,
                                            double lo, double hi, int samples);

}  // namespace pdmiso::intertwine1

#endif

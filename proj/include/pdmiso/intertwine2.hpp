#ifndef PDMISO_INTERTWINE2_HPP
#define PDMISO_INTERTWINE2_HPP

#include <optional>
#include <utility>

#include "pdmiso/intertwine1.hpp"

namespace pdmiso::intertwine2 {

using pdmiso::Complex;
using pdmiso::Jet;
using intertwine1::Background;
using intertwine1::JetFn;
using intertwine1::NormVerdict;

enum class PairKind { RealDistinct, ComplexConjugate };
enum class Modification2 { DeleteTwo, StrictIso, CreateTwo, Invalid };

const char* to_string(Modification2 m);

// Second-order intertwining built directly from two seed solutions at
// distinct factorization energies (or one complex seed and its conjugate).
// The operator is psi -> psi''/M + eta psi' + gamma psi; eta comes from the
// log-derivative of the seed Wronskian and gamma from the first integral of
// the intertwining system.
struct SecondOrderPartner {
    Background bg;
    model::SeedSolution u1, u2;
    Complex mu1{0.0, 0.0}, mu2{0.0, 0.0};
    double c1 = 0.0;        // (mu1 + mu2)/2, real in both cases
    Complex c2{0.0, 0.0};   // ((mu1 - mu2)/2)^2; nonzero by construction
    Complex xi{0.0, 0.0};   // mu2 - mu1, the ansatz constant paired with u1
    PairKind kind = PairKind::RealDistinct;
    Modification2 modification = Modification2::Invalid;

    // W = u1 u2' - u1' u2 and derivatives through order 4.  `order` bounds
    // the seed evaluations actually performed (entries above it are NaN).
    Jet wronskian_jet(double x, int order = Jet::kOrder) const;
    Complex wronskian(double x) const;

    // eta = -W' / (M W): real by construction; derivatives through order 3
    Jet eta_jet(double x, int order = 3) const;
    double eta(double x) const;

    // gamma = M eta^2/2 + M' eta/(2M) - eta'/2 - V + M'^2/M^3 - M''/(2M^2) + C1
    Jet gamma_jet(double x) const;  // valid through order 2
    double gamma_fn(double x) const;

    // Vbar = V + 2 eta' + (M'/M) eta - 3 M'^2/M^3 + 2 M''/M^2
    double partner_potential(double x) const;
    Complex partner_potential_complex(double x) const;

    Jet apply_L2(const Jet& psi, double x) const;         // valid to order-2 less
    Jet apply_L2_dagger(const Jet& psi, double x) const;

    Complex apply_H(const Jet& f, double x) const;
    Complex apply_H_partner(const Jet& f, double x) const;

    // zero modes of the adjoint: which = 1 -> M u2 / W (energy mu1),
    // which = 2 -> M u1 / W (energy mu2)
    Jet zero_mode_jet(int which, double x) const;
    std::pair<NormVerdict, NormVerdict> zero_mode_normalizability() const;

    // complex case: w = W / (M (mu - conj mu)); real, non-decreasing,
    // w' = |u|^2
    double monotone_weight(double x) const;

    numspec::IsospectralLaw law() const;
};

// Real distinct factorization energies.  Throws DegenerateFactorization for
// equal energies, MuAboveGround for energies above the ground state that are
// not the two lowest bound states, DomainError for mismatched backgrounds.
SecondOrderPartner second_order_partner(const model::SeedSolution& u1,
                                        const model::SeedSolution& u2);

// Complex-conjugate pair built from a single seed; the conjugate partner is
// constructed by conjugating parameters, never by conjugating samples.
SecondOrderPartner second_order_partner_conjugate(const model::SeedSolution& u);

}  // namespace pdmiso::intertwine2

#endif

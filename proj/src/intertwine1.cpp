// First-order intertwining: superpotential, partner potential, mapped
// states and the factorization identities, over an arbitrary mass profile.

#include "pdmiso/intertwine1.hpp"

#include <cmath>

namespace pdmiso::intertwine1 {

namespace {

constexpr double kRealTol = 1e-10;

void check_finite(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw SeedHasNode(std::string(what) +
                          ": evaluation at or near a zero of the seed");
}

double real_checked(Complex v, const char* what) {
    if (std::abs(v.imag()) > kRealTol * std::max(1.0, std::abs(v.real())))
        throw NonRealPotential(std::string(what) +
                               ": non-negligible imaginary part");
    return v.real();
}

}  // namespace

Background model_background(const model::ModelParams& mp) {
    Background bg;
    bg.mass_jet = [mp](double x) { return model::mass_jet(mp, x); };
    bg.potential_jet = [mp](double x) { return model::potential_jet(mp, x); };
    return bg;
}

Background constant_mass_background(JetFn potential_jet) {
    Background bg;
    bg.mass_jet = [](double) { return Jet::constant(1.0); };
    bg.potential_jet = std::move(potential_jet);
    return bg;
}

NormVerdict check_normalizability(
    const std::function<double(double)>& density) {
    NormVerdict v;
    const double windows[3] = {10.0, 20.0, 40.0};
    for (int i = 0; i < 3; ++i) {
        v.integrals[i] =
            numspec::quad(density, -windows[i], windows[i], 4000).value;
    }
    const double g1 = v.integrals[1] / v.integrals[0];
    const double g2 = v.integrals[2] / v.integrals[1];
    if (g1 > 10.0 || g2 > 10.0 || !std::isfinite(g2)) {
        v.normalizable = false;
        return v;
    }
    if (std::abs(g2 - 1.0) <= 1e-6) {
        v.normalizable = true;
        return v;
    }
    throw InconclusiveNormalizability(
        "missing-state normalizability: window integrals neither settle nor "
        "diverge");
}

Jet FirstOrderPartner::superpotential_jet(double x) const {
    const Jet u = seed(x);
    const Jet tau = jet_d(u) / u;
    const Jet sm = jet_sqrt(bg.mass_jet(x));
    Jet a = -(tau / sm);
    check_finite(a.value(), "superpotential");
    return a;
}

double FirstOrderPartner::superpotential(double x) const {
    return real_checked(superpotential_jet(x).value(), "superpotential");
}

Complex FirstOrderPartner::partner_potential_complex(double x) const {
    const Jet u = seed(x);
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1(), m2 = M.d2();
    const Complex u0 = u.value(), u1 = u.d1(), u2 = u.d2();
    const Complex v = bg.potential_jet(x).value();
    const Complex vbar = v - 2.0 * u2 / (m * u0) +
                         2.0 * u1 * u1 / (m * u0 * u0) +
                         m1 * u1 / (m * m * u0) + m2 / (2.0 * m * m) -
                         3.0 * m1 * m1 / (4.0 * m * m * m);
    check_finite(vbar, "partner_potential");
    return vbar;
}

double FirstOrderPartner::partner_potential(double x) const {
    return real_checked(partner_potential_complex(x), "partner_potential");
}

Jet FirstOrderPartner::partner_potential_jet(double x) const {
    const Jet u = seed(x);
    const Jet M = bg.mass_jet(x);
    const Jet v = bg.potential_jet(x);
    const Jet u1 = jet_d(u), u2 = jet_d(u1);
    const Jet m1 = jet_d(M), m2 = jet_d(m1);
    const Complex two(2.0, 0.0), half(0.5, 0.0);
    Jet vbar = v - two * (u2 / (M * u)) + two * (u1 * u1 / (M * u * u)) +
               m1 * u1 / (M * M * u) + half * (m2 / (M * M)) -
               Complex(0.75, 0.0) * (m1 * m1 / (M * M * M));
    check_finite(vbar.value(), "partner_potential_jet");
    return vbar;
}

Jet FirstOrderPartner::apply_L(const Jet& psi, double x) const {
    const Jet u = seed(x);
    const Jet tau = jet_d(u) / u;
    const Jet sm = jet_sqrt(bg.mass_jet(x));
    Jet out = (jet_d(psi) - tau * psi) / sm;
    check_finite(out.value(), "apply_L");
    return out;
}

Jet FirstOrderPartner::apply_L_dagger(const Jet& psi, double x) const {
    const Jet u = seed(x);
    const Jet M = bg.mass_jet(x);
    const Jet tau = jet_d(u) / u;
    const Jet sm = jet_sqrt(M);
    const Jet half_logM = jet_d(M) / M * Complex(0.5, 0.0);
    Jet out = (-(jet_d(psi)) - tau * psi + half_logM * psi) / sm;
    check_finite(out.value(), "apply_L_dagger");
    return out;
}

Jet FirstOrderPartner::missing_state_jet(double x) const {
    const Jet u = seed(x);
    const Jet sm = jet_sqrt(bg.mass_jet(x));
    Jet out = sm / u;
    check_finite(out.value(), "missing_state");
    return out;
}

double FirstOrderPartner::missing_state(double x) const {
    return real_checked(missing_state_jet(x).value(), "missing_state");
}

NormVerdict FirstOrderPartner::missing_state_normalizability() const {
    return check_normalizability([this](double x) {
        const Complex v = missing_state_jet(x).value();
        return std::norm(v);
    });
}

Complex FirstOrderPartner::apply_H(const Jet& f, double x) const {
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1();
    const Complex v = bg.potential_jet(x).value();
    return -f.d2() / m + (m1 / (m * m)) * f.d1() + v * f.value();
}

Complex FirstOrderPartner::apply_H_partner(const Jet& f, double x) const {
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1();
    const Complex vbar = partner_potential_complex(x);
    return -f.d2() / m + (m1 / (m * m)) * f.d1() + vbar * f.value();
}

numspec::IsospectralLaw FirstOrderPartner::law() const {
    if (!modification)
        throw DomainError("law: partner built without classification");
    switch (*modification) {
        case model::Modification::DeleteGround:
            return numspec::IsospectralLaw::shift_by_one();
        case model::Modification::StrictIso:
            return numspec::IsospectralLaw::equal();
        case model::Modification::CreateBelowGround:
            return numspec::IsospectralLaw::insert_one(mu);
        case model::Modification::Invalid:
            break;
    }
    throw SeedHasNode("law: invalid seed classification");
}

FirstOrderPartner first_order_partner(Background bg, JetFn seed, double mu) {
    FirstOrderPartner p;
    p.bg = std::move(bg);
    p.seed = std::move(seed);
    p.mu = mu;
    return p;
}

FirstOrderPartner first_order_partner(const model::SeedSolution& s) {
    const auto kind = model::classify_modification(s);
    if (kind == model::Modification::Invalid)
        throw SeedHasNode(
            "first_order_partner: seed has nodes or sits on a classification "
            "boundary");
    FirstOrderPartner p;
    p.bg = model_background(s.params);
    p.seed = [s](double x) { return s.jet(x); };
    p.mu = s.mu.real();
    p.modification = kind;
    return p;
}

FactorizationReport factorization_residuals(const FirstOrderPartner& p,
                                            const std::vector<JetFn>& tests,
                                            double lo, double hi,
                                            int samples) {
    FactorizationReport rep;
    for (const auto& phi : tests) {
        for (int i = 0; i < samples; ++i) {
            const double x = lo + (hi - lo) * i / (samples - 1);
            const Jet f = phi(x);
            const Complex ldl =
                p.apply_L_dagger(p.apply_L(f, x), x).value();
            const Complex hf = p.apply_H(f, x) - p.mu * f.value();
            const double s1 =
                std::max(1.0, std::abs(ldl) + std::abs(hf));
            rep.max_residual_LdagL =
                std::max(rep.max_residual_LdagL, std::abs(ldl - hf) / s1);

            const Complex lld =
                p.apply_L(p.apply_L_dagger(f, x), x).value();
            const Complex hbf = p.apply_H_partner(f, x) - p.mu * f.value();
            const double s2 =
                std::max(1.0, std::abs(lld) + std::abs(hbf));
            rep.max_residual_LLdag =
                std::max(rep.max_residual_LLdag, std::abs(lld - hbf) / s2);
        }
    }
    return rep;
}

}  // namespace pdmiso::intertwine1

// Direct second-order intertwining for real distinct and complex-conjugate
// factorization energies: Wronskian, eta/gamma coefficients, partner
// potential, zero modes and the monotone weight of the complex case.

#include "pdmiso/intertwine2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pdmiso::intertwine2 {

namespace {

constexpr double kRealTol = 1e-10;
constexpr double kDegenerateTol = 1e-9;

void check_finite(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw WronskianNode(std::string(what) +
                            ": evaluation at or near a Wronskian node");
}

double real_checked(Complex v, double tol, const char* what) {
    if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v.real())))
        throw NonRealEta(std::string(what) +
                         ": non-negligible imaginary part");
    return v.real();
}

bool same_background(const model::ModelParams& p, const model::ModelParams& q) {
    const auto close = [](Complex a, Complex b) {
        return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
    };
    return close(p.a + p.b, q.a + q.b) && close(p.c, q.c) &&
           std::abs(p.p - q.p) <= 1e-15 && std::abs(p.lam - q.lam) <= 1e-15;
}

// Certifies that f keeps one sign over [-30, 30]; the seed asymptotics own
// the tails beyond the window.
bool sign_definite(const std::function<double(double)>& f) {
    const int n = 4001;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = -30.0 + 60.0 * i / (n - 1);
        const double v = f(x);
        if (i > 0 && ((v < 0.0) != (prev < 0.0))) return false;
        prev = v;
    }
    return true;
}

}  // namespace

const char* to_string(Modification2 m) {
    switch (m) {
        case Modification2::DeleteTwo:
            return "delete-two";
        case Modification2::StrictIso:
            return "strict-isospectral";
        case Modification2::CreateTwo:
            return "create-two";
        case Modification2::Invalid:
            return "invalid";
    }
    return "?";
}

Jet SecondOrderPartner::wronskian_jet(double x, int order) const {
    const Jet a = u1.jet(x, std::min(order + 1, int(Jet::kOrder)));
    const Jet b = u2.jet(x, std::min(order + 1, int(Jet::kOrder)));
    // Only the order-0 value is formed as a difference.  Derivatives come
    // from the identity W' = (M'/M) W + (mu1 - mu2) M u1 u2 (both seeds
    // solve the equation), which avoids the e^{-|x|} relative cancellation
    // that differencing the jet directly would inject into eta'.
    const Jet M = bg.mass_jet(x);
    const Jet R = jet_d(M) / M;
    const Jet P = M * (a * b);
    const Complex dmu = mu1 - mu2;
    Jet W;
    W.d[0] = (a * jet_d(b) - jet_d(a) * b).d[0];
    for (int k = 0; k < Jet::kOrder; ++k) {
        Complex s = dmu * P.d[k];
        for (int j = 0; j <= k; ++j)
            s += double(detail::kBinom[k][j]) * R.d[j] * W.d[k - j];
        W.d[k + 1] = s;
    }
    // For a conjugate pair the Wronskian is purely imaginary; the real
    // parts are summation-order noise amplified by the seed magnitudes, so
    // they are projected out rather than carried into eta.
    if (kind == PairKind::ComplexConjugate)
        for (auto& d : W.d) d = Complex(0.0, d.imag());
    return W;
}

Complex SecondOrderPartner::wronskian(double x) const {
    return wronskian_jet(x, 0).value();
}

Jet SecondOrderPartner::eta_jet(double x, int order) const {
    const Jet W = wronskian_jet(x, order + 1);
    const Jet M = bg.mass_jet(x);
    Jet e = -(jet_d(W) / (M * W));
    check_finite(e.value(), "eta");
    real_checked(e.value(), kRealTol, "eta");
    return e;
}

double SecondOrderPartner::eta(double x) const {
    return eta_jet(x).value().real();
}

Jet SecondOrderPartner::gamma_jet(double x) const {
    const Jet e = eta_jet(x);
    const Jet M = bg.mass_jet(x);
    const Jet v = bg.potential_jet(x);
    const Jet m1 = jet_d(M), m2 = jet_d(m1);
    const Complex half(0.5, 0.0);
    Jet g = half * (M * e * e) + half * (m1 * e / M) - half * jet_d(e) - v +
            m1 * m1 / (M * M * M) - half * (m2 / (M * M)) +
            Jet::constant(Complex(c1, 0.0));
    check_finite(g.value(), "gamma");
    return g;
}

double SecondOrderPartner::gamma_fn(double x) const {
    return real_checked(gamma_jet(x).value(), kRealTol, "gamma");
}

Complex SecondOrderPartner::partner_potential_complex(double x) const {
    const Jet e = eta_jet(x, 1);
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1(), m2 = M.d2();
    const Complex v = bg.potential_jet(x).value();
    const Complex vbar = v + 2.0 * e.d1() + (m1 / m) * e.value() -
                         3.0 * m1 * m1 / (m * m * m) + 2.0 * m2 / (m * m);
    check_finite(vbar, "partner_potential");
    return vbar;
}

double SecondOrderPartner::partner_potential(double x) const {
    const Complex v = partner_potential_complex(x);
    if (std::abs(v.imag()) > kRealTol * std::max(1.0, std::abs(v.real())))
        throw NonRealPotential("second-order partner potential not real");
    return v.real();
}

Jet SecondOrderPartner::apply_L2(const Jet& psi, double x) const {
    const Jet M = bg.mass_jet(x);
    const Jet e = eta_jet(x);
    const Jet g = gamma_jet(x);
    const Jet p1 = jet_d(psi), p2 = jet_d(p1);
    Jet out = p2 / M + e * p1 + g * psi;
    check_finite(out.value(), "apply_L2");
    return out;
}

Jet SecondOrderPartner::apply_L2_dagger(const Jet& psi, double x) const {
    const Jet M = bg.mass_jet(x);
    const Jet e = eta_jet(x);
    const Jet g = gamma_jet(x);
    const Jet m1 = jet_d(M), m2 = jet_d(m1);
    const Jet p1 = jet_d(psi), p2 = jet_d(p1);
    const Complex two(2.0, 0.0);
    Jet out = p2 / M - (e + two * (m1 / (M * M))) * p1 +
              (two * (m1 * m1 / (M * M * M)) - m2 / (M * M) - jet_d(e) + g) *
                  psi;
    check_finite(out.value(), "apply_L2_dagger");
    return out;
}

Complex SecondOrderPartner::apply_H(const Jet& f, double x) const {
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1();
    return -f.d2() / m + (m1 / (m * m)) * f.d1() +
           bg.potential_jet(x).value() * f.value();
}

Complex SecondOrderPartner::apply_H_partner(const Jet& f, double x) const {
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1();
    return -f.d2() / m + (m1 / (m * m)) * f.d1() +
           partner_potential_complex(x) * f.value();
}

Jet SecondOrderPartner::zero_mode_jet(int which, double x) const {
    if (which != 1 && which != 2)
        throw DomainError("zero_mode_jet: which must be 1 or 2");
    const Jet M = bg.mass_jet(x);
    const Jet a = u1.jet(x), b = u2.jet(x);
    {
        const Jet other = (which == 1) ? b : a;
        const Jet out = M * other / (a * jet_d(b) - jet_d(a) * b);
        if (std::isfinite(out.value().real()) &&
            std::isfinite(out.value().imag()))
            return out;
    }
    // The direct ratio overflows once both seeds grow; in that regime the
    // log-derivative form W = u1 u2 (tau2 - tau1) is safe:
    // M u_other / W = (M / u_own) / (tau2 - tau1).
    const Jet tau_diff = jet_d(b) / b - jet_d(a) / a;
    const Jet own = (which == 1) ? a : b;
    Jet out = (M / own) / tau_diff;
    check_finite(out.value(), "zero_mode");
    return out;
}

std::pair<NormVerdict, NormVerdict>
SecondOrderPartner::zero_mode_normalizability() const {
    if (kind != PairKind::RealDistinct)
        throw DomainError(
            "zero_mode_normalizability: defined for the real case");

    // The zero modes are M u_other / W.  Differencing W directly loses all
    // significance wherever |W| falls below roundoff of its defining
    // products, so S = W/M is propagated through the window by quadrature
    // of the exact relation S' = (mu1 - mu2) u1 u2, anchored where the
    // direct difference is well-conditioned.  When S cancels below the
    // accumulated envelope, the true S is vanishing toward that end and
    // both zero modes diverge there.
    constexpr double kHalfWidth = 40.0;
    constexpr int kIntervals = 8000;  // h = 0.01
    const double h = 2.0 * kHalfWidth / kIntervals;
    const int npts = kIntervals + 1;

    std::vector<double> v1(npts), v2(npts), prod(npts), msample(npts);
    std::vector<double> d1w(npts), d2w(npts);
    for (int i = 0; i < npts; ++i) {
        const double x = -kHalfWidth + i * h;
        const Jet a = u1.jet(x, 1);
        const Jet b = u2.jet(x, 1);
        v1[i] = a.value().real();
        v2[i] = b.value().real();
        prod[i] = v1[i] * v2[i];
        msample[i] = bg.mass_jet(x).value().real();
        d1w[i] = a.d1().real();
        d2w[i] = b.d1().real();
    }

    // anchor where the Wronskian difference carries the most significance
    int anchor = npts / 2;
    double best = 0.0;
    for (int i = npts / 2 - 200; i <= npts / 2 + 200; i += 10) {
        const double wnum = v1[i] * d2w[i] - d1w[i] * v2[i];
        const double scale =
            std::abs(v1[i] * d2w[i]) + std::abs(d1w[i] * v2[i]);
        if (scale > 0.0 && std::abs(wnum) / scale > best) {
            best = std::abs(wnum) / scale;
            anchor = i;
        }
    }
    if (best < 1e-10)
        throw WronskianNode(
            "zero_mode_normalizability: no well-conditioned anchor for the "
            "Wronskian");

    // cumulative Simpson for S, outward from the anchor; the envelope
    // tracks the accumulated magnitude to expose cancellation
    const double dmu = (mu1 - mu2).real();
    std::vector<double> S(npts), env(npts);
    S[anchor] = (v1[anchor] * d2w[anchor] - d1w[anchor] * v2[anchor]) /
                msample[anchor];
    env[anchor] = std::abs(S[anchor]);
    const auto step_forward = [&](int i) {  // fills i+1 (and i+2 if present)
        if (i + 2 < npts) {
            S[i + 1] = S[i] + dmu * h / 12.0 *
                                  (5.0 * prod[i] + 8.0 * prod[i + 1] -
                                   prod[i + 2]);
            S[i + 2] = S[i] + dmu * h / 3.0 *
                                  (prod[i] + 4.0 * prod[i + 1] + prod[i + 2]);
        } else {
            S[i + 1] = S[i] + dmu * 0.5 * h * (prod[i] + prod[i + 1]);
        }
    };
    const auto step_backward = [&](int i) {  // fills i-1 (and i-2 if present)
        if (i - 2 >= 0) {
            S[i - 1] = S[i] - dmu * h / 12.0 *
                                  (5.0 * prod[i] + 8.0 * prod[i - 1] -
                                   prod[i - 2]);
            S[i - 2] = S[i] - dmu * h / 3.0 *
                                  (prod[i] + 4.0 * prod[i - 1] + prod[i - 2]);
        } else {
            S[i - 1] = S[i] - dmu * 0.5 * h * (prod[i] + prod[i - 1]);
        }
    };
    for (int i = anchor; i + 1 < npts; i += 2) step_forward(i);
    for (int i = anchor; i - 1 >= 0; i -= 2) step_backward(i);
    for (int i = anchor + 1; i < npts; ++i)
        env[i] = env[i - 1] + std::abs(dmu) * 0.5 * h *
                                  (std::abs(prod[i - 1]) + std::abs(prod[i]));
    for (int i = anchor - 1; i >= 0; --i)
        env[i] = env[i + 1] + std::abs(dmu) * 0.5 * h *
                                  (std::abs(prod[i + 1]) + std::abs(prod[i]));

    // Beyond the point where |S| leaves the double range the zero modes are
    // vanishingly small; saturate with the sign preserved so the densities
    // become exact zeros and the sign scan stays meaningful.
    const auto saturate = [&](int from, int step) {
        for (int i = from; i >= 0 && i < npts; i += step) {
            if (std::isfinite(S[i]) && std::abs(S[i]) < 1e290 &&
                std::isfinite(env[i]))
                continue;
            const double sign = (S[i - step] < 0.0) ? -1.0 : 1.0;
            for (int j = i; j >= 0 && j < npts; j += step) {
                S[j] = sign * std::numeric_limits<double>::infinity();
                env[j] = std::numeric_limits<double>::infinity();
            }
            break;
        }
    };
    saturate(anchor + 1, +1);
    saturate(anchor - 1, -1);

    bool sub_resolution = false;
    int prev_sign = 0;
    for (int i = 0; i < npts; ++i) {
        if (std::isnan(S[i]))
            throw WronskianNode(
                "zero_mode_normalizability: Wronskian propagation failed");
        if (std::isfinite(S[i]) && std::abs(S[i]) <= 1e-6 * env[i]) {
            sub_resolution = true;
            continue;
        }
        const int s = S[i] < 0.0 ? -1 : 1;
        if (prev_sign != 0 && s != prev_sign)
            throw WronskianNode(
                "zero_mode_normalizability: Wronskian changes sign inside "
                "the window");
        prev_sign = s;
    }

    NormVerdict n1, n2;
    if (sub_resolution) {
        // W/M vanishes toward an end faster than double precision can
        // represent; both adjoint zero modes blow up there.
        n1.normalizable = false;
        n2.normalizable = false;
        auto inf = std::numeric_limits<double>::infinity();
        n1.integrals = {inf, inf, inf};
        n2.integrals = {inf, inf, inf};
        return {n1, n2};
    }

    // Simpson over nested windows [-10,10], [-20,20], [-40,40]
    const auto window_integral = [&](const std::vector<double>& dens,
                                     double half) {
        const int i0 = int(std::lround((kHalfWidth - half) / h));
        const int i1 = npts - 1 - i0;
        double s = dens[i0] + dens[i1];
        for (int i = i0 + 1; i < i1; ++i)
            s += dens[i] * (((i - i0) % 2 == 1) ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    std::vector<double> dens1(npts), dens2(npts);
    for (int i = 0; i < npts; ++i) {
        dens1[i] = v2[i] / S[i] * (v2[i] / S[i]);
        dens2[i] = v1[i] / S[i] * (v1[i] / S[i]);
    }
    const double halves[3] = {10.0, 20.0, 40.0};
    for (int k = 0; k < 3; ++k) {
        n1.integrals[k] = window_integral(dens1, halves[k]);
        n2.integrals[k] = window_integral(dens2, halves[k]);
    }
    const auto settle = [](NormVerdict& n) {
        const double g1 = n.integrals[1] / n.integrals[0];
        const double g2 = n.integrals[2] / n.integrals[1];
        if (g1 > 10.0 || g2 > 10.0 || !std::isfinite(g2)) {
            n.normalizable = false;
            return;
        }
        if (std::abs(g2 - 1.0) <= 1e-6) {
            n.normalizable = true;
            return;
        }
        throw InconclusiveNormalizability(
            "zero-mode normalizability: window integrals neither settle nor "
            "diverge");
    };
    settle(n1);
    settle(n2);
    return {n1, n2};
}

double SecondOrderPartner::monotone_weight(double x) const {
    if (kind != PairKind::ComplexConjugate)
        throw DomainError("monotone_weight: defined for the complex case");
    const Complex W = wronskian(x);
    const Complex denom = bg.mass_jet(x).value() * (mu1 - mu2);
    return real_checked(W / denom, 1e-9, "monotone_weight");
}

numspec::IsospectralLaw SecondOrderPartner::law() const {
    switch (modification) {
        case Modification2::DeleteTwo:
            return numspec::IsospectralLaw::shift_by_two();
        case Modification2::StrictIso:
            return numspec::IsospectralLaw::equal();
        case Modification2::CreateTwo:
            return numspec::IsospectralLaw::insert_two(mu1.real(), mu2.real());
        case Modification2::Invalid:
            break;
    }
    throw WronskianNode("law: invalid second-order construction");
}

SecondOrderPartner second_order_partner(const model::SeedSolution& u1,
                                        const model::SeedSolution& u2) {
    if (!same_background(u1.params, u2.params))
        throw DomainError(
            "second_order_partner: seeds describe different Hamiltonians");
    if (!u1.real_valued || !u2.real_valued)
        throw DomainError(
            "second_order_partner: real case requires real-valued seeds");

    SecondOrderPartner p;
    p.bg = intertwine1::model_background(u1.params);
    p.u1 = u1;
    p.u2 = u2;
    p.mu1 = u1.mu;
    p.mu2 = u2.mu;
    p.kind = PairKind::RealDistinct;

    const Complex half_diff = 0.5 * (p.mu1 - p.mu2);
    p.c2 = half_diff * half_diff;
    const double scale =
        std::max(1.0, std::max(std::abs(p.mu1), std::abs(p.mu2)));
    if (std::abs(p.mu1 - p.mu2) <= kDegenerateTol * scale)
        throw DegenerateFactorization(
            "second_order_partner: equal factorization energies are not "
            "supported");
    p.c1 = 0.5 * (p.mu1 + p.mu2).real();
    p.xi = p.mu2 - p.mu1;

    // energies above the ground state are allowed only for the deletion
    // pair {E0, E1}
    const double e0 = model::energy(u1.params, 0);
    const double e1 = model::energy(u1.params, 1);
    const double m1 = p.mu1.real(), m2 = p.mu2.real();
    const double tol = 1e-9 * std::max(1.0, std::abs(e1));
    const bool deletion_pair = std::abs(m1 - e0) <= tol &&
                               std::abs(m2 - e1) <= tol;
    if (!deletion_pair && (m1 > e0 + tol || m2 > e0 + tol))
        throw MuAboveGround(
            "second_order_partner: factorization energy above the ground "
            "state");

    const bool nodeless = sign_definite(
        [&p](double x) { return p.wronskian(x).real(); });
    if (!nodeless) {
        p.modification = Modification2::Invalid;
        return p;
    }

    if (deletion_pair) {
        p.modification = Modification2::DeleteTwo;
        return p;
    }
    const auto verdicts = p.zero_mode_normalizability();
    if (verdicts.first.normalizable && verdicts.second.normalizable)
        p.modification = Modification2::CreateTwo;
    else if (!verdicts.first.normalizable && !verdicts.second.normalizable)
        p.modification = Modification2::StrictIso;
    else
        p.modification = Modification2::Invalid;
    return p;
}

SecondOrderPartner second_order_partner_conjugate(
    const model::SeedSolution& u) {
    if (std::abs(u.mu.imag()) <= kDegenerateTol)
        throw DegenerateFactorization(
            "second_order_partner_conjugate: factorization energy must have "
            "a nonzero imaginary part");
    SecondOrderPartner p;
    p.bg = intertwine1::model_background(u.params);
    p.u1 = u;
    p.u2 = u.conjugate();
    p.mu1 = u.mu;
    p.mu2 = std::conj(u.mu);
    p.kind = PairKind::ComplexConjugate;
    const Complex half_diff = 0.5 * (p.mu1 - p.mu2);
    p.c2 = half_diff * half_diff;  // negative real
    p.c1 = p.mu1.real();
    p.xi = p.mu2 - p.mu1;

    // the initial potential must be real for the construction to make sense
    for (double x = -10.0; x <= 10.0; x += 0.5)
        (void)model::potential(u.params, x);

    const bool nodeless = sign_definite(
        [&p](double x) { return p.wronskian(x).imag(); });
    p.modification = nodeless ? Modification2::StrictIso
                              : Modification2::Invalid;
    return p;
}

}  // namespace pdmiso::intertwine2

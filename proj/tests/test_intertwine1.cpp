#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pdmiso/intertwine1.hpp"

using namespace pdmiso;
using namespace pdmiso::intertwine1;
using model::ModelParams;

namespace {

ModelParams params_re(double a, double b, double c, double alpha = 1.0,
                      double beta = 0.0, double nu = 0.0) {
    ModelParams mp;
    mp.a = a;
    mp.b = b;
    mp.c = c;
    mp.alpha = alpha;
    mp.beta = beta;
    mp.nu = nu;
    return mp;
}

JetFn gaussian_jet(double center = 0.0, double width = 1.0) {
    return [=](double x) {
        const double t = (x - center) / width;
        Jet q;
        q.d[0] = -t * t;
        q.d[1] = -2.0 * t / width;
        q.d[2] = -2.0 / (width * width);
        return jet_exp(q);
    };
}

// Riccati residual A'/sqrt(M) - A M'/(2 M^(3/2)) - A^2 + V - mu,
// normalized by the largest term.
double riccati_residual(const FirstOrderPartner& p, double x) {
    const Jet A = p.superpotential_jet(x);
    const Jet M = p.bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1();
    const Complex v = p.bg.potential_jet(x).value();
    const Complex sm = std::sqrt(m);
    const Complex t1 = A.d1() / sm;
    const Complex t2 = -A.value() * m1 / (2.0 * m * sm);
    const Complex t3 = -A.value() * A.value();
    const Complex t4 = v - p.mu;
    const double scale = std::max(1.0, std::abs(t1) + std::abs(t2) +
                                           std::abs(t3) + std::abs(t4));
    return std::abs(t1 + t2 + t3 + t4) / scale;
}

// derivative form of the Riccati relation (one more derivative of A)
double riccati_derivative_residual(const FirstOrderPartner& p, double x) {
    const Jet A = p.superpotential_jet(x);
    const Jet M = p.bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1(), m2 = M.d2();
    const Complex v1 = p.bg.potential_jet(x).d1();
    const Complex sm = std::sqrt(m);
    const Complex a0 = A.value(), a1 = A.d1(), a2 = A.d2();
    const Complex t1 = a2 / sm;
    const Complex t2 = -a1 * m1 / (m * sm);
    const Complex t3 = -a0 * m2 / (2.0 * m * sm);
    const Complex t4 = 3.0 * a0 * m1 * m1 / (4.0 * m * m * sm);
    const Complex t5 = -2.0 * a0 * a1;
    const Complex t6 = v1;
    const double scale =
        std::max(1.0, std::abs(t1) + std::abs(t2) + std::abs(t3) +
                          std::abs(t4) + std::abs(t5) + std::abs(t6));
    return std::abs(t1 + t2 + t3 + t4 + t5 + t6) / scale;
}

double intertwining_residual(const FirstOrderPartner& p, const Jet& psi,
                             double energy, double x) {
    const Jet lp = p.apply_L(psi, x);
    const Complex lhs = p.apply_H_partner(lp, x);
    const Complex rhs = energy * lp.value();
    const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
    return std::abs(lhs - rhs) / scale;
}

}  // namespace

TEST_CASE("superpotential of the ground-state seed") {
    const ModelParams mp = params_re(5, 0, 3);
    const auto p = first_order_partner(seed(mp));
    CHECK(p.modification == model::Modification::DeleteGround);
    CHECK(std::abs(p.superpotential(0.0)) < 1e-12);
    // analytic: A = -(c/2 - (a+b+1)/2 g)/sqrt(M)
    for (double x : {-2.0, 0.7, 3.0}) {
        const double g = 1.0 / (1.0 + std::exp(-x));
        const double want = -(1.5 - 3.0 * g) / std::sqrt(model::mass(mp, x));
        CHECK(p.superpotential(x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("constant-mass sanity: ordinary superpotential and partner") {
    // M = 1, V = 0, seed cosh(x) at mu = -1
    auto bg = constant_mass_background(
        [](double) { return Jet::constant(0.0); });
    JetFn u = [](double x) {
        Jet j;
        j.d[0] = std::cosh(x);
        j.d[1] = std::sinh(x);
        j.d[2] = std::cosh(x);
        j.d[3] = std::sinh(x);
        j.d[4] = std::cosh(x);
        j.d[5] = std::sinh(x);
        return j;
    };
    const auto p = first_order_partner(bg, u, -1.0);
    for (double x : {-3.0, -0.5, 0.0, 1.0, 2.5}) {
        CHECK(std::abs(p.superpotential(x) + std::tanh(x)) < 1e-12);
        const double sech = 1.0 / std::cosh(x);
        CHECK(std::abs(p.partner_potential(x) + 2.0 * sech * sech) < 1e-12);
        CHECK(riccati_residual(p, x) < 1e-12);
    }
}

TEST_CASE("Riccati residuals vanish for model seeds") {
    for (const auto& mp :
         {params_re(5, 0, 3), params_re(3, 5, 4),
          params_re(2.8, 20, 4.4, 1, 1), params_re(3, 5, 4, 1, 0, 1.0)}) {
        const auto p = first_order_partner(seed(mp));
        for (double x = -8.0; x <= 8.0; x += 0.5) {
            CHECK(riccati_residual(p, x) < 1e-8);
            CHECK(riccati_derivative_residual(p, x) < 1e-7);
        }
    }
}

TEST_CASE("partner potential of the deletion seed: closed form and shape shift") {
    const ModelParams mp = params_re(5, 0, 3);
    const auto p = first_order_partner(seed(mp));
    CHECK(p.partner_potential(0.0) == doctest::Approx(6.5).epsilon(1e-12));
    // closed form (c^2-1)/4 e^-x + (a+b-c)(2+a+b-c)/4 e^x + (a+b)/2
    for (double x = -10.0; x <= 10.0; x += 0.25) {
        const double want = 2.0 * std::exp(-x) + 2.0 * std::exp(x) + 2.5;
        CHECK(std::abs(p.partner_potential(x) - want) <
              1e-8 * std::max(1.0, std::abs(want)));
    }
    // same thing as the original potential at shifted parameters plus a
    // constant
    const ModelParams shifted = params_re(6, 1, 4);
    for (double x = -10.0; x <= 10.0; x += 0.5) {
        const double diff =
            p.partner_potential(x) - model::potential(shifted, x);
        CHECK(std::abs(diff - 2.5) < 1e-10 * std::max(1.0, std::abs(diff)));
    }
}

TEST_CASE("partner potential of the strict-isospectral seed: closed form") {
    const auto p = first_order_partner(seed(params_re(3, 5, 4)));
    for (double x = -10.0; x <= 10.0; x += 0.25) {
        const double ex = std::exp(x);
        const double want = 15.0 * std::exp(-x) / 4.0 + 2.0 * ex +
                            (4.0 + ex - 3.0 * ex * ex) /
                                ((4.0 + 3.0 * ex) * (4.0 + 3.0 * ex));
        CHECK(std::abs(p.partner_potential(x) - want) <
              1e-8 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("L annihilates its seed and maps eigenstates to eigenstates") {
    for (const auto& mp : {params_re(5, 0, 3), params_re(3, 5, 4),
                           params_re(2.8, 20, 4.4, 1, 1)}) {
        const model::SeedSolution s = seed(mp);
        const auto p = first_order_partner(s);
        for (double x = -6.0; x <= 6.0; x += 0.47) {
            const Jet u = s.jet(x);
            const Complex lu = p.apply_L(u, x).value();
            const double scale =
                std::max(1.0, std::abs(u.d1()) / std::sqrt(model::mass(mp, x)));
            CHECK(std::abs(lu) / scale < 1e-8);
        }
        const bool deletes =
            p.modification == model::Modification::DeleteGround;
        for (int n = deletes ? 1 : 0; n <= 3; ++n) {
            const auto psi = model::bound_state(mp, n);
            for (double x = -6.0; x <= 6.0; x += 0.39)
                CHECK(intertwining_residual(p, psi.jet(x), psi.energy, x) <
                      1e-6);
        }
    }
}

TEST_CASE("mapped states match the shifted-parameter bound states") {
    // deletion partner equals the shifted model, so L psi_{n+1} must be
    // proportional to the shifted bound state psi_n
    const ModelParams mp = params_re(5, 0, 3);
    const ModelParams shifted = params_re(6, 1, 4);
    const auto p = first_order_partner(seed(mp));
    for (int n = 0; n <= 2; ++n) {
        const auto src = model::bound_state(mp, n + 1);
        const auto dst = model::bound_state(shifted, n);
        const double r0 =
            p.apply_L(src.jet(0.3), 0.3).value().real() / dst.value(0.3);
        for (double x : {-4.0, -1.1, 0.9, 2.6}) {
            const double r =
                p.apply_L(src.jet(x), x).value().real() / dst.value(x);
            CHECK(std::abs(r - r0) < 1e-8 * std::abs(r0));
        }
    }
}

TEST_CASE("missing state: adjoint kernel and normalizability verdicts") {
    // deletion: sqrt(M)/psi_0 diverges
    const auto pdel = first_order_partner(seed(params_re(5, 0, 3)));
    CHECK_FALSE(pdel.missing_state_normalizability().normalizable);
    // strict isospectral: diverges at the left end
    const auto piso = first_order_partner(seed(params_re(3, 5, 4)));
    CHECK_FALSE(piso.missing_state_normalizability().normalizable);
    // creation: normalizable missing state
    const auto pcre = first_order_partner(seed(params_re(2.8, 20, 4.4, 1, 1)));
    CHECK(pcre.missing_state_normalizability().normalizable);
    // L_dagger annihilates the missing state
    for (const auto* pp : {&pdel, &piso, &pcre}) {
        for (double x = -5.0; x <= 5.0; x += 0.61) {
            const Jet ms = pp->missing_state_jet(x);
            const Complex r = pp->apply_L_dagger(ms, x).value();
            const double scale = std::max(1.0, std::abs(ms.d1()));
            CHECK(std::abs(r) / scale < 1e-8);
        }
    }
}

TEST_CASE("factorization identities hold on test functions") {
    for (const auto& mp : {params_re(5, 0, 3), params_re(3, 5, 4),
                           params_re(2.8, 20, 4.4, 1, 1)}) {
        const auto p = first_order_partner(seed(mp));
        std::vector<JetFn> tests;
        tests.push_back(gaussian_jet(0.0, 1.0));
        tests.push_back(gaussian_jet(-1.5, 2.0));
        const auto psi0 = model::bound_state(mp, 0);
        tests.push_back([psi0](double x) { return psi0.jet(x); });
        const auto rep = factorization_residuals(p, tests, -8.0, 8.0, 161);
        CHECK(rep.max_residual_LdagL < 1e-6);
        CHECK(rep.max_residual_LLdag < 1e-6);
    }
}

TEST_CASE("partner spectrum law matches the classification") {
    CHECK(first_order_partner(seed(params_re(5, 0, 3))).law().kind ==
          numspec::IsospectralLaw::ShiftByOne);
    CHECK(first_order_partner(seed(params_re(3, 5, 4))).law().kind ==
          numspec::IsospectralLaw::Equal);
    const auto law =
        first_order_partner(seed(params_re(2.8, 20, 4.4, 1, 1))).law();
    CHECK(law.kind == numspec::IsospectralLaw::InsertOne);
    CHECK(law.mu1 == doctest::Approx(-13.32).epsilon(1e-12));
}

TEST_CASE("partner potential has no poles over the certification window") {
    for (const auto& mp : {params_re(5, 0, 3), params_re(3, 5, 4),
                           params_re(2.8, 20, 4.4, 1, 1)}) {
        const auto p = first_order_partner(seed(mp));
        const auto v = model::potential(mp, 20.0);
        (void)v;
        for (double x = -20.0; x <= 20.0; x += 0.1) {
            const double vb = p.partner_potential(x);
            CHECK(std::isfinite(vb));
            CHECK(std::abs(vb) < 1e12);
        }
    }
}

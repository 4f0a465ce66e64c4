// The verification battery: every claimed spectral modification is checked
// against the independent eigensolver, every operator identity against a
// plug-in residual, at pinned tolerances.  The command-line `verify` and
// the acceptance suite both run these checks.

#include "pdmiso/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>

#include "json.hpp"
#include "pdmiso/intertwine1.hpp"
#include "pdmiso/intertwine2.hpp"
#include "pdmiso/model.hpp"
#include "pdmiso/numspec.hpp"
#include "pdmiso/presets.hpp"
#include "pdmiso/specialfn.hpp"
#include "pdmiso/typea.hpp"

namespace pdmiso::checks {

namespace {

using njson = nlohmann::json;
using model::ModelParams;
using intertwine1::JetFn;
namespace sf = pdmiso::specialfn;

constexpr double kBoxLo = -12.0, kBoxHi = 12.0;

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

JetFn gaussian_jet(double center, double width) {
    return [=](double x) {
        const double t = (x - center) / width;
        Jet q;
        q.d[0] = -t * t;
        q.d[1] = -2.0 * t / width;
        q.d[2] = -2.0 / (width * width);
        return jet_exp(q);
    };
}

double rel_dev(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

numspec::Spectrum model_spectrum(const ModelParams& mp, int k,
                                 const CheckContext& ctx) {
    return numspec::compute_spectrum(
        [mp](double x) { return model::mass(mp, x); },
        [mp](double x) { return model::potential(mp, x); }, kBoxLo, kBoxHi,
        ctx.grid_n, k, ctx.exec);
}

template <class PotFn>
numspec::Spectrum partner_spectrum(const ModelParams& mp, PotFn pot, int k,
                                   const CheckContext& ctx) {
    return numspec::compute_spectrum(
        [mp](double x) { return model::mass(mp, x); }, pot, kBoxLo, kBoxHi,
        ctx.grid_n, k, ctx.exec);
}

struct Metric {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass() const { return value <= bound; }
};

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

CheckResult finish(const std::string& name, std::vector<Metric> metrics,
                   const CheckContext& ctx, njson extra = njson::object()) {
    CheckResult r;
    r.name = name;
    r.pass = true;
    std::ostringstream os;
    njson jm = njson::array();
    for (const auto& m : metrics) {
        r.pass = r.pass && m.pass();
        os << m.name << "=" << m.value << " (<=" << m.bound << ") ";
        jm.push_back({{"metric", m.name},
                      {"value", m.value},
                      {"bound", m.bound},
                      {"pass", m.pass()}});
    }
    r.detail = os.str();
    njson inputs;
    inputs["check"] = name;
    inputs["grid_n"] = ctx.grid_n;
    inputs["tol_scale"] = ctx.tol_scale;
    extra["name"] = name;
    extra["inputs"] = inputs;
    extra["inputs_digest"] = fnv1a_hex(inputs.dump());
    extra["metrics"] = jm;
    extra["pass"] = r.pass;
    r.json = extra.dump();
    return r;
}

Metric spectrum_metric(const std::string& name,
                       const std::vector<double>& got,
                       const std::vector<double>& want, double bound) {
    double worst = 0.0;
    for (std::size_t i = 0; i < want.size() && i < got.size(); ++i)
        worst = std::max(worst, rel_dev(got[i], want[i]));
    if (got.size() < want.size()) worst = 1.0;
    return {name, worst, bound};
}

// ---- residual oracles ------------------------------------------------------

double riccati_residual(const intertwine1::FirstOrderPartner& p, double x) {
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

double riccati_derivative_residual(const intertwine1::FirstOrderPartner& p,
                                   double x) {
    const Jet A = p.superpotential_jet(x);
    const Jet M = p.bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1(), m2 = M.d2();
    const Complex v1 = p.bg.potential_jet(x).d1();
    const Complex sm = std::sqrt(m);
    const Complex a0 = A.value(), a1 = A.d1(), a2 = A.d2();
    const Complex terms[] = {a2 / sm,
                             -a1 * m1 / (m * sm),
                             -a0 * m2 / (2.0 * m * sm),
                             3.0 * a0 * m1 * m1 / (4.0 * m * m * sm),
                             -2.0 * a0 * a1,
                             v1};
    Complex sum = 0.0;
    double scale = 1.0;
    for (Complex t : terms) {
        sum += t;
        scale += std::abs(t);
    }
    return std::abs(sum) / scale;
}

double intertwine1_residual(const intertwine1::FirstOrderPartner& p,
                            const Jet& psi, double energy, double x) {
    const Jet lp = p.apply_L(psi, x);
    const Complex lhs = p.apply_H_partner(lp, x);
    const Complex rhs = energy * lp.value();
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs) + std::abs(rhs));
}

Complex seed_tau(const model::SeedSolution& s, double x) {
    const Jet u = s.jet(x, 1);
    return u.d1() / u.value();
}

double ansatz_residual(const intertwine2::SecondOrderPartner& p,
                       const model::SeedSolution& s, Complex xi, double x) {
    const Jet e = p.eta_jet(x);
    const Jet M = p.bg.mass_jet(x);
    const Complex tau = seed_tau(s, x);
    const Complex m = M.value(), m1 = M.d1(), m2 = M.d2();
    const Complex e0 = e.value(), e1 = e.d1();
    const Complex terms[] = {e1,
                             -m * e0 * e0,
                             -2.0 * (e0 + m1 / (m * m)) * tau,
                             -(m1 / m) * e0,
                             -2.0 * m1 * m1 / (m * m * m),
                             m2 / (m * m),
                             -xi};
    Complex sum = 0.0;
    double scale = 1.0;
    for (Complex t : terms) {
        sum += t;
        scale += std::abs(t);
    }
    return std::abs(sum) / scale;
}

double invariant_residual(const intertwine2::SecondOrderPartner& p,
                          double x) {
    const Jet ej = p.eta_jet(x);
    const Jet Mj = p.bg.mass_jet(x);
    const Complex e = ej.value(), e1 = ej.d1(), e2 = ej.d2();
    const Complex M = Mj.value(), M1 = Mj.d1(), M2 = Mj.d2(), M3 = Mj.d3();
    const Complex V = p.bg.potential_jet(x).value();
    const Complex C1 = p.c1, C2 = p.c2;
    const Complex terms[] = {
        e * e2 / 2.0,
        -e1 * e1 / 4.0,
        -e1 * e * e * M,
        e * e * e * e * M * M / 4.0,
        -M * e * e * V,
        C1 * M * e * e,
        C1 * M1 * M1 / (M * M * M),
        2.0 * C1 * M1 * e / M,
        -2.0 * M1 * V * e / M,
        -M1 * M1 * V / (M * M * M),
        -M2 * e * e / (2.0 * M),
        M1 * e * e * e / 2.0,
        5.0 * M1 * M1 * M1 * e / (M * M * M * M),
        -2.0 * M1 * e * e1 / M,
        5.0 * M1 * M1 * e * e / (4.0 * M * M),
        M1 * e2 / (2.0 * M * M),
        -M2 * e1 / (2.0 * M * M),
        M3 * e / (2.0 * M * M),
        -4.0 * M1 * M2 * e / (M * M * M),
        3.0 * M1 * M1 * M1 * M1 / (M * M * M * M * M * M),
        -5.0 * M1 * M1 * M2 / (2.0 * M * M * M * M * M),
        -M2 * M2 / (4.0 * M * M * M * M),
        M1 * M3 / (2.0 * M * M * M * M),
        C2,
    };
    Complex sum = 0.0;
    double scale = 1.0;
    for (const Complex& t : terms) {
        sum += t;
        scale += std::abs(t);
    }
    return std::abs(sum) / scale;
}

double kernel_residual(const intertwine2::SecondOrderPartner& p,
                       const model::SeedSolution& s, double x) {
    const Jet u = s.jet(x);
    const Complex lu = p.apply_L2(u, x).value();
    const Complex m = p.bg.mass_jet(x).value();
    const double scale = std::max(1.0, std::abs(u.d2() / m));
    return std::abs(lu) / scale;
}

double intertwine2_commutator_residual(
    const intertwine2::SecondOrderPartner& p, const JetFn& phi, double x) {
    const Jet f = phi(x);
    const Jet M = p.bg.mass_jet(x);
    const Jet V = p.bg.potential_jet(x);
    const Jet m1 = jet_d(M);
    // H f as a jet (two valid derivatives)
    const Jet Hf =
        -(jet_d(jet_d(f)) / M) + (m1 / (M * M)) * jet_d(f) + V * f;
    const Complex lhs = p.apply_L2(Hf, x).value();
    const Jet Lf = p.apply_L2(f, x);
    const Complex m = M.value(), md = M.d1();
    const Complex rhs = -Lf.d2() / m + (md / (m * m)) * Lf.d1() +
                        p.partner_potential_complex(x) * Lf.value();
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs) + std::abs(rhs));
}

double gamma_consistency_residual(const intertwine2::SecondOrderPartner& p,
                                  double x) {
    const Jet g = p.gamma_jet(x);
    const Jet e = p.eta_jet(x);
    const Jet M = p.bg.mass_jet(x);
    const Jet v = p.bg.potential_jet(x);
    const Complex m = M.value(), m1 = M.d1(), m2 = M.d2();
    const Complex terms[] = {
        g.value() * (2.0 * e.d1() + m1 * e.value() / m -
                     3.0 * m1 * m1 / (m * m * m) + 2.0 * m2 / (m * m)),
        m1 * g.d1() / (m * m),
        -g.d2() / m,
        -e.value() * v.d1(),
        -v.d2() / m,
    };
    Complex sum = 0.0;
    double scale = 1.0;
    for (Complex t : terms) {
        sum += t;
        scale += std::abs(t);
    }
    return std::abs(sum) / scale;
}

// ---- the checks ------------------------------------------------------------

CheckResult c01_model_spectrum(const CheckContext& ctx) {
    const ModelParams mp = params_re(5, 0, 3);
    const auto spec = model_spectrum(mp, 3, ctx);
    const std::vector<double> want = {4.5, 10.5, 18.5};
    std::vector<Metric> m;
    m.push_back(spectrum_metric("model-spectrum-rel-dev", spec.eigenvalues,
                                want, 1e-3 * ctx.tol_scale));
    m.push_back({"refinement-order-low", 1.5 - spec.observed_order, 0.0});
    m.push_back({"refinement-order-high", spec.observed_order - 2.9, 0.0});
    njson extra;
    extra["eigenvalues"] = spec.eigenvalues;
    extra["observed_order"] = spec.observed_order;
    extra["grid_n"] = ctx.grid_n;
    extra["converged"] = spec.converged;
    auto r = finish("c01_model_spectrum", m, ctx, extra);
    r.pass = r.pass && spec.converged;
    return r;
}

CheckResult c02_first_order_deletion(const CheckContext& ctx) {
    const ModelParams mp = params_re(5, 0, 3);
    const auto p = intertwine1::first_order_partner(
        model::bound_state_seed(mp, 0));
    double vdev = 0.0;
    for (int i = 0; i <= 800; ++i) {
        const double x = -10.0 + 20.0 * i / 800.0;
        const double want =
            2.0 * std::exp(-x) + 2.0 * std::exp(x) + 2.5;
        vdev = std::max(vdev, rel_dev(p.partner_potential(x), want));
    }
    const auto base = model_spectrum(mp, 4, ctx);
    const auto part = partner_spectrum(
        mp, [&p](double x) { return p.partner_potential(x); }, 3, ctx);
    const auto law =
        numspec::verify_isospectral(base, part, p.law(), 1e-3 * ctx.tol_scale);
    std::vector<Metric> m;
    m.push_back({"partner-potential-vs-closed-form", vdev,
                 1e-8 * ctx.tol_scale});
    m.push_back(spectrum_metric("partner-spectrum-rel-dev", part.eigenvalues,
                                {10.5, 18.5, 28.5}, 1e-3 * ctx.tol_scale));
    m.push_back({"law-shift-by-one-max-dev", law.max_rel_dev,
                 1e-3 * ctx.tol_scale});
    njson extra;
    extra["partner_eigenvalues"] = part.eigenvalues;
    extra["base_eigenvalues"] = base.eigenvalues;
    extra["law"] = p.law().name();
    return finish("c02_first_order_deletion", m, ctx, extra);
}

CheckResult c03_first_order_strict_iso(const CheckContext& ctx) {
    const ModelParams mp = params_re(3, 5, 4);
    const auto p = intertwine1::first_order_partner(model::seed(mp));
    const auto base = model_spectrum(mp, 4, ctx);
    const auto part = partner_spectrum(
        mp, [&p](double x) { return p.partner_potential(x); }, 4, ctx);
    const auto law =
        numspec::verify_isospectral(base, part, p.law(), 1e-3 * ctx.tol_scale);
    std::vector<Metric> m;
    m.push_back(spectrum_metric("partner-spectrum-rel-dev", part.eigenvalues,
                                {10.0, 19.0, 30.0, 43.0},
                                1e-3 * ctx.tol_scale));
    m.push_back(spectrum_metric("base-spectrum-rel-dev", base.eigenvalues,
                                {10.0, 19.0, 30.0, 43.0},
                                1e-3 * ctx.tol_scale));
    m.push_back({"law-equal-max-dev", law.max_rel_dev, 1e-3 * ctx.tol_scale});
    njson extra;
    extra["partner_eigenvalues"] = part.eigenvalues;
    extra["base_eigenvalues"] = base.eigenvalues;
    return finish("c03_first_order_strict_iso", m, ctx, extra);
}

CheckResult c04_first_order_creation(const CheckContext& ctx) {
    const ModelParams mp = params_re(2.8, 20, 4.4, 1, 1);
    const auto p = intertwine1::first_order_partner(model::seed(mp));
    const auto base = model_spectrum(mp, 4, ctx);
    const auto part = partner_spectrum(
        mp, [&p](double x) { return p.partner_potential(x); }, 4, ctx);
    const auto law =
        numspec::verify_isospectral(base, part, p.law(), 1e-3 * ctx.tol_scale);
    const auto verdict = p.missing_state_normalizability();
    std::vector<Metric> m;
    m.push_back(spectrum_metric("partner-spectrum-rel-dev", part.eigenvalues,
                                {-13.32, 42.68, 66.48, 92.28},
                                1e-3 * ctx.tol_scale));
    m.push_back({"law-insert-one-max-dev", law.max_rel_dev,
                 1e-3 * ctx.tol_scale});
    m.push_back({"missing-state-normalizable", verdict.normalizable ? 0.0 : 1.0,
                 0.5});
    njson extra;
    extra["partner_eigenvalues"] = part.eigenvalues;
    extra["window_integrals"] = verdict.integrals;
    return finish("c04_first_order_creation", m, ctx, extra);
}

CheckResult c05_second_order_deletion(const CheckContext& ctx) {
    const ModelParams mp = params_re(5, 0, 3);
    const auto p = intertwine2::second_order_partner(
        model::bound_state_seed(mp, 0), model::bound_state_seed(mp, 1));
    double vdev = 0.0;
    for (int i = 0; i <= 800; ++i) {
        const double x = -10.0 + 20.0 * i / 800.0;
        const double want = 3.75 * std::exp(x) + 3.75 * std::exp(-x) + 6.0;
        vdev = std::max(vdev, rel_dev(p.partner_potential(x), want));
    }
    const auto base = model_spectrum(mp, 4, ctx);
    const auto part = partner_spectrum(
        mp, [&p](double x) { return p.partner_potential(x); }, 2, ctx);
    const auto law =
        numspec::verify_isospectral(base, part, p.law(), 1e-3 * ctx.tol_scale);
    std::vector<Metric> m;
    m.push_back({"partner-potential-vs-closed-form", vdev,
                 1e-8 * ctx.tol_scale});
    m.push_back(spectrum_metric("partner-spectrum-rel-dev", part.eigenvalues,
                                {18.5, 28.5}, 1e-3 * ctx.tol_scale));
    m.push_back({"law-shift-by-two-max-dev", law.max_rel_dev,
                 1e-3 * ctx.tol_scale});
    njson extra;
    extra["partner_eigenvalues"] = part.eigenvalues;
    return finish("c05_second_order_deletion", m, ctx, extra);
}

CheckResult c06_second_order_strict_iso(const CheckContext& ctx) {
    const ModelParams mp = params_re(3, 5, 4);
    ModelParams m2 = mp;
    m2.nu = 1.0;
    const auto p =
        intertwine2::second_order_partner(model::seed(mp), model::seed(m2));
    double vdev = 0.0;
    for (int i = 0; i <= 800; ++i) {
        const double x = -10.0 + 20.0 * i / 800.0;
        const double want =
            1.0 + 0.75 * (9.0 * std::cosh(x) - 7.0 * std::sinh(x));
        vdev = std::max(vdev, rel_dev(p.partner_potential(x), want));
    }
    const auto base = model_spectrum(mp, 4, ctx);
    const auto part = partner_spectrum(
        mp, [&p](double x) { return p.partner_potential(x); }, 4, ctx);
    const auto law =
        numspec::verify_isospectral(base, part, p.law(), 1e-3 * ctx.tol_scale);
    std::vector<Metric> m;
    m.push_back({"partner-potential-vs-closed-form", vdev,
                 1e-8 * ctx.tol_scale});
    m.push_back({"law-equal-max-dev", law.max_rel_dev, 1e-3 * ctx.tol_scale});
    njson extra;
    extra["partner_eigenvalues"] = part.eigenvalues;
    extra["base_eigenvalues"] = base.eigenvalues;
    return finish("c06_second_order_strict_iso", m, ctx, extra);
}

CheckResult c07_second_order_creation(const CheckContext& ctx) {
    const auto& preset = presets::figure_preset("fig6");
    const auto p = presets::second_order_for(preset);
    const auto base = model_spectrum(preset.params, 4, ctx);
    const auto part = partner_spectrum(
        preset.params, [&p](double x) { return p.partner_potential(x); }, 4,
        ctx);
    const auto law =
        numspec::verify_isospectral(base, part, p.law(), 1e-3 * ctx.tol_scale);
    // the alternative documented shift produces the same second seed
    const auto palt = presets::second_order_for(preset, preset.nu2_alt);
    double altdev = 0.0;
    for (double x = -5.0; x <= 5.0; x += 0.5)
        altdev = std::max(altdev, rel_dev(palt.partner_potential(x),
                                          p.partner_potential(x)));
    std::vector<Metric> m;
    m.push_back(spectrum_metric("partner-spectrum-rel-dev", part.eigenvalues,
                                {-85.32, -13.32, 42.68, 66.48},
                                1e-3 * ctx.tol_scale));
    m.push_back({"law-insert-two-max-dev", law.max_rel_dev,
                 1e-3 * ctx.tol_scale});
    m.push_back({"alternative-shift-agreement", altdev, 1e-10});
    njson extra;
    extra["partner_eigenvalues"] = part.eigenvalues;
    extra["nu2"] = preset.nu2;
    extra["nu2_alt"] = preset.nu2_alt;
    return finish("c07_second_order_creation", m, ctx, extra);
}

CheckResult c08_complex_case(const CheckContext& ctx) {
    const auto& preset = presets::figure_preset("fig7");
    const auto p = presets::second_order_for(preset);
    double imdev = 0.0;
    for (int i = 0; i <= 800; ++i) {
        const double x = -10.0 + 20.0 * i / 800.0;
        imdev = std::max(imdev,
                         std::abs(p.partner_potential_complex(x).imag()));
    }
    const auto base = model_spectrum(preset.params, 4, ctx);
    const auto part = partner_spectrum(
        preset.params, [&p](double x) { return p.partner_potential(x); }, 4,
        ctx);
    const auto law = numspec::verify_isospectral(
        base, part, numspec::IsospectralLaw::equal(), 1e-3 * ctx.tol_scale);
    std::vector<Metric> m;
    m.push_back({"max-im-partner-potential", imdev, 1e-10 * ctx.tol_scale});
    m.push_back({"law-equal-max-dev", law.max_rel_dev, 1e-3 * ctx.tol_scale});
    njson extra;
    extra["partner_eigenvalues"] = part.eigenvalues;
    extra["base_eigenvalues"] = base.eigenvalues;
    return finish("c08_complex_case", m, ctx, extra);
}

CheckResult c09a_first_order_identities(const CheckContext& ctx) {
    std::vector<Metric> m;
    const char* names[] = {"deletion", "strict-iso", "creation"};
    const ModelParams sets[] = {params_re(5, 0, 3), params_re(3, 5, 4),
                                params_re(2.8, 20, 4.4, 1, 1)};
    for (int k = 0; k < 3; ++k) {
        const auto seed = (k == 0) ? model::bound_state_seed(sets[k], 0)
                                   : model::seed(sets[k]);
        const auto p = intertwine1::first_order_partner(seed);
        std::vector<JetFn> tests = {gaussian_jet(0.0, 1.0),
                                    gaussian_jet(-1.5, 2.0)};
        const auto psi0 = model::bound_state(sets[k], 0);
        tests.push_back([psi0](double x) { return psi0.jet(x); });
        const auto rep =
            intertwine1::factorization_residuals(p, tests, -8.0, 8.0, 161);
        double ric = 0.0, ricd = 0.0, intw = 0.0;
        for (int i = 0; i <= 160; ++i) {
            const double x = -8.0 + 16.0 * i / 160.0;
            ric = std::max(ric, riccati_residual(p, x));
            ricd = std::max(ricd, riccati_derivative_residual(p, x));
        }
        for (int n : {1, 2}) {
            const auto psi = model::bound_state(sets[k], n);
            for (int i = 0; i <= 160; ++i) {
                const double x = -8.0 + 16.0 * i / 160.0;
                intw = std::max(
                    intw, intertwine1_residual(p, psi.jet(x), psi.energy, x));
            }
        }
        const std::string tag = names[k];
        const double bound = 1e-6 * ctx.tol_scale;
        m.push_back({tag + "-factorization-LdagL", rep.max_residual_LdagL,
                     bound});
        m.push_back({tag + "-factorization-LLdag", rep.max_residual_LLdag,
                     bound});
        m.push_back({tag + "-riccati", ric, bound});
        m.push_back({tag + "-riccati-derivative", ricd, bound});
        m.push_back({tag + "-intertwining", intw, bound});
    }
    return finish("c09a_first_order_identities", m, ctx);
}

CheckResult c09b_second_order_identities(const CheckContext& ctx) {
    std::vector<Metric> m;
    const double bound = 1e-6 * ctx.tol_scale;

    struct Case {
        std::string tag;
        intertwine2::SecondOrderPartner p;
    };
    std::vector<Case> cases;
    cases.push_back(
        {"deletion", presets::second_order_for(presets::figure_preset("fig4"))});
    cases.push_back(
        {"strict-iso", presets::second_order_for(presets::figure_preset("fig5"))});
    cases.push_back(
        {"creation", presets::second_order_for(presets::figure_preset("fig6"))});
    cases.push_back(
        {"complex", presets::second_order_for(presets::figure_preset("fig7"))});

    for (const auto& cs : cases) {
        double ans = 0.0, inv = 0.0, ker = 0.0, comm = 0.0, gam = 0.0;
        const JetFn bump = gaussian_jet(0.4, 1.3);
        for (int i = 0; i <= 160; ++i) {
            const double x = -8.0 + 16.0 * i / 160.0;
            ans = std::max(ans, ansatz_residual(cs.p, cs.p.u1, cs.p.xi, x));
            ans = std::max(ans, ansatz_residual(cs.p, cs.p.u2, -cs.p.xi, x));
            inv = std::max(inv, invariant_residual(cs.p, x));
            ker = std::max(ker, kernel_residual(cs.p, cs.p.u1, x));
            ker = std::max(ker, kernel_residual(cs.p, cs.p.u2, x));
            comm = std::max(comm,
                            intertwine2_commutator_residual(cs.p, bump, x));
            gam = std::max(gam, gamma_consistency_residual(cs.p, x));
        }
        m.push_back({cs.tag + "-ansatz", ans, bound});
        m.push_back({cs.tag + "-integrated-invariant", inv, bound});
        m.push_back({cs.tag + "-kernel", ker, bound});
        m.push_back({cs.tag + "-commutator", comm, bound});
        m.push_back({cs.tag + "-gamma-consistency", gam, bound});
    }
    return finish("c09b_second_order_identities", m, ctx);
}

CheckResult c10_type_a_equivalence(const CheckContext& ctx) {
    std::vector<Metric> m;
    const double bound = 1e-8 * ctx.tol_scale;

    // one-fold
    {
        const char* names[] = {"deletion", "strict-iso", "creation"};
        const ModelParams sets[] = {params_re(5, 0, 3), params_re(3, 5, 4),
                                    params_re(2.8, 20, 4.4, 1, 1)};
        for (int k = 0; k < 3; ++k) {
            const auto seed = (k == 0) ? model::bound_state_seed(sets[k], 0)
                                       : model::seed(sets[k]);
            const auto p = intertwine1::first_order_partner(seed);
            const auto bg = intertwine1::model_background(sets[k]);
            double dev = 0.0;
            for (int i = 0; i <= 160; ++i) {
                const double x = -8.0 + 16.0 * i / 160.0;
                const Jet w =
                    typea::superpotential_jet(seed.jet(x), bg.mass_jet(x));
                const double lhs = typea::potential_diff(bg, w, x, 1);
                const double rhs =
                    p.partner_potential(x) - model::potential(sets[k], x);
                dev = std::max(dev, rel_dev(lhs, rhs));
            }
            m.push_back({std::string("one-fold-") + names[k], dev, bound});
        }
    }
    // two-fold
    {
        const ModelParams base = params_re(5, 0, 3);
        const auto pair_del = typea::make_pair(model::bound_state_seed(base, 0),
                                               model::bound_state_seed(base, 1));
        const auto so_del = intertwine2::second_order_partner(
            model::bound_state_seed(base, 0), model::bound_state_seed(base, 1));
        ModelParams iso2 = params_re(3, 5, 4);
        iso2.nu = 1.0;
        const auto pair_iso = typea::make_pair(model::seed(params_re(3, 5, 4)),
                                               model::seed(iso2));
        const auto so_iso = intertwine2::second_order_partner(
            model::seed(params_re(3, 5, 4)), model::seed(iso2));
        const typea::TypeAPair* pairs[] = {&pair_del, &pair_iso};
        const intertwine2::SecondOrderPartner* sos[] = {&so_del, &so_iso};
        const char* names[] = {"deletion", "strict-iso"};
        for (int k = 0; k < 2; ++k) {
            double edev = 0.0, vdev = 0.0;
            for (int i = 0; i <= 160; ++i) {
                const double x = -8.0 + 16.0 * i / 160.0;
                edev = std::max(
                    edev, std::abs(pairs[k]->eta_from_superpotential(x) -
                                   sos[k]->eta(x)) /
                              std::max(1.0, std::abs(sos[k]->eta(x))));
                const Jet w = pairs[k]->superpotential2_jet(x);
                const double lhs = typea::potential_diff(pairs[k]->bg, w, x, 2);
                const double rhs =
                    sos[k]->partner_potential(x) -
                    model::potential(pairs[k]->u1.params, x);
                vdev = std::max(vdev, rel_dev(lhs, rhs));
            }
            m.push_back({std::string("two-fold-eta-") + names[k], edev, bound});
            m.push_back({std::string("two-fold-potential-") + names[k], vdev,
                         bound});
        }
    }
    // affine gauge coefficient for the two lowest bound states
    const ModelParams base = params_re(5, 0, 3);
    const auto fit = typea::bz_linearity(typea::make_pair(
        model::bound_state_seed(base, 0), model::bound_state_seed(base, 1)));
    const double stol = 1e-6 * 6.0 * ctx.tol_scale;
    m.push_back({"bz-slope-deviation", std::abs(fit.slope + 6.0), stol});
    m.push_back({"bz-intercept", std::abs(fit.intercept), stol});
    m.push_back({"bz-fit-deviation", fit.max_deviation,
                 1e-6 * ctx.tol_scale});
    njson extra;
    extra["bz_slope"] = fit.slope;
    extra["bz_intercept"] = fit.intercept;
    return finish("c10_type_a_equivalence", m, ctx, extra);
}

CheckResult c11_composition_cross_check(const CheckContext& ctx) {
    const ModelParams mp = params_re(5, 0, 3);
    const auto second = intertwine2::second_order_partner(
        model::bound_state_seed(mp, 0), model::bound_state_seed(mp, 1));
    const auto first =
        intertwine1::first_order_partner(model::bound_state_seed(mp, 0));
    intertwine1::Background mid;
    mid.mass_jet = first.bg.mass_jet;
    mid.potential_jet = [first](double x) {
        return first.partner_potential_jet(x);
    };
    const auto psi1 = model::bound_state(mp, 1);
    JetFn chain_seed = [first, psi1](double x) {
        return first.apply_L(psi1.jet(x), x);
    };
    const auto chained = intertwine1::first_order_partner(
        mid, chain_seed, model::energy(mp, 1));
    double dev = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = -10.0 + 20.0 * i / 400.0;
        dev = std::max(dev, rel_dev(chained.partner_potential(x),
                                    second.partner_potential(x)));
    }
    std::vector<Metric> m;
    m.push_back({"chained-vs-direct", dev, 1e-7 * ctx.tol_scale});
    return finish("c11_composition_cross_check", m, ctx);
}

CheckResult c12_special_functions(const CheckContext& ctx) {
    std::mt19937 rng(20240711);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    const double bound = 1e-10 * ctx.tol_scale;
    double contiguous = 0.0;
    for (int t = 0; t < 200; ++t) {
        const Complex a(uniform(-3, 3), uniform(-1, 1));
        const Complex b(uniform(-3, 3), uniform(-1, 1));
        const Complex c(uniform(0.6, 4.0), uniform(-1, 1));
        const double z = uniform(0.0, 0.9);
        const Complex f = sf::gauss_2f1(a, b, c, z);
        const Complex r = c * f - c * sf::gauss_2f1(a - 1.0, b, c, z) -
                          b * z * sf::gauss_2f1(a, b + 1.0, c + 1.0, z);
        contiguous = std::max(contiguous,
                              std::abs(r) / std::max(1.0, std::abs(c * f)));
    }
    double connection = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int n = std::uniform_int_distribution<int>(0, 10)(rng);
        const double s = uniform(-0.9, 4.0);
        const double d = uniform(-0.9, 4.0);
        const double x = uniform(-1.0, 1.0);
        double poch = 1.0, fact = 1.0;
        for (int j = 0; j < n; ++j) {
            poch *= s + 1.0 + j;
            fact *= j + 1.0;
        }
        const Complex f =
            sf::gauss_2f1(Complex(-n, 0), Complex(n + s + d + 1, 0),
                          Complex(s + 1.0, 0), (1.0 - x) / 2.0);
        const double want = sf::jacobi_p(n, s, d, x);
        connection = std::max(
            connection, std::abs(poch / fact * f.real() - want) /
                            std::max(1.0, std::abs(want)));
    }
    std::vector<Metric> m;
    m.push_back({"contiguous-relation", contiguous, bound});
    m.push_back({"jacobi-connection", connection, bound});
    return finish("c12_special_functions", m, ctx);
}

std::vector<NamedCheck> build_checks() {
    return {
        {"c01_model_spectrum", "numerics", c01_model_spectrum},
        {"c02_first_order_deletion", "first-order", c02_first_order_deletion},
        {"c03_first_order_strict_iso", "first-order",
         c03_first_order_strict_iso},
        {"c04_first_order_creation", "first-order", c04_first_order_creation},
        {"c05_second_order_deletion", "second-order",
         c05_second_order_deletion},
        {"c06_second_order_strict_iso", "second-order",
         c06_second_order_strict_iso},
        {"c07_second_order_creation", "second-order",
         c07_second_order_creation},
        {"c08_complex_case", "second-order", c08_complex_case},
        {"c09a_first_order_identities", "first-order",
         c09a_first_order_identities},
        {"c09b_second_order_identities", "second-order",
         c09b_second_order_identities},
        {"c10_type_a_equivalence", "typea", c10_type_a_equivalence},
        {"c11_composition_cross_check", "second-order",
         c11_composition_cross_check},
        {"c12_special_functions", "numerics", c12_special_functions},
    };
}

}  // namespace

CheckContext default_context() {
    CheckContext ctx;
    if (const char* env = std::getenv("PDM_ISOSPEC_GRID_N")) {
        const int n = std::atoi(env);
        if (n >= 16) ctx.grid_n = n;
    }
    return ctx;
}

const std::vector<NamedCheck>& all_checks() {
    static const std::vector<NamedCheck> checks = build_checks();
    return checks;
}

std::vector<std::string> suite_names() {
    return {"all", "first-order", "second-order", "typea", "numerics"};
}

bool is_suite(const std::string& name) {
    for (const auto& s : suite_names())
        if (s == name) return true;
    return false;
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const CheckContext& ctx) {
    if (!is_suite(suite)) throw DomainError("unknown suite: " + suite);
    std::vector<CheckResult> results;
    for (const auto& check : all_checks()) {
        if (suite != "all" && check.suite != suite) continue;
        try {
            results.push_back(check.run(ctx));
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = check.name;
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
            njson j;
            j["name"] = check.name;
            j["pass"] = false;
            j["exception"] = e.what();
            r.json = j.dump();
            results.push_back(std::move(r));
        }
    }
    return results;
}

}  // namespace pdmiso::checks

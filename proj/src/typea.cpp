// Consistency checks against the N-fold superpotential formulation for
// N = 1 and N = 2: superpotentials extracted from seeds, the induced
// potential difference, and the linear-in-z structure of the gauged
// first-derivative coefficient.

#include "pdmiso/typea.hpp"

#include <cmath>

namespace pdmiso::typea {

namespace {

void check_finite(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw SeedHasNode(std::string(what) +
                          ": evaluation at or near a zero of the seed");
}

}  // namespace

Jet superpotential_jet(const Jet& useed, const Jet& mass) {
    const Complex quarter(0.25, 0.0);
    Jet w = -(jet_d(useed) / useed) + quarter * (jet_d(mass) / mass);
    check_finite(w.value(), "superpotential_jet");
    return w;
}

double superpotential_from_seed(const model::SeedSolution& s, double x) {
    return superpotential_jet(s.jet(x), model::mass_jet(s.params, x))
        .value()
        .real();
}

double potential_diff(const Background& bg, const Jet& w, double x,
                      int nfold) {
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1();
    const Complex diff =
        2.0 * double(nfold) *
        (w.d1() / m - m1 * w.value() / (2.0 * m * m));
    return diff.real();
}

Jet TypeAPair::z_jet(double x) const {
    const Jet a = u1.jet(x);
    const Jet b = u2.jet(x);
    Jet z = b / a;
    check_finite(z.value(), "z_jet");
    return z;
}

Jet TypeAPair::superpotential2_jet(double x) const {
    const Jet a = u1.jet(x);
    const Jet tau1 = jet_d(a) / a;
    const Jet z1 = jet_d(z_jet(x));
    const Jet M = bg.mass_jet(x);
    const Complex half(0.5, 0.0);
    Jet w = -tau1 - half * (jet_d(z1) / z1) + half * (jet_d(M) / M);
    check_finite(w.value(), "superpotential2_jet");
    return w;
}

double TypeAPair::eta_from_superpotential(double x) const {
    const Jet w = superpotential2_jet(x);
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1();
    return (2.0 * w.value() / m - m1 / (m * m)).real();
}

double TypeAPair::gauge_coefficient(double x) const {
    // B = z''/M - z' M'/M^2 - (2 z'^2 / M) dW/dz with W = -ln u1, so
    // dW/dz = -tau1 / z'.
    const Jet a = u1.jet(x);
    const Jet z = z_jet(x);
    const Jet M = bg.mass_jet(x);
    const Complex m = M.value(), m1 = M.d1();
    const Complex tau1 = a.d1() / a.value();
    const Complex z1 = z.d1(), z2 = z.d2();
    const Complex b =
        z2 / m - z1 * m1 / (m * m) + 2.0 * z1 * tau1 / m;
    check_finite(b, "gauge_coefficient");
    return b.real();
}

TypeAPair make_pair(const model::SeedSolution& u1,
                    const model::SeedSolution& u2) {
    TypeAPair p;
    p.bg = intertwine1::model_background(u1.params);
    p.u1 = u1;
    p.u2 = u2;
    return p;
}

BzFit bz_linearity(const TypeAPair& p, double lo, double hi, int samples,
                   double rel_tol) {
    if (samples < 3) throw DomainError("bz_linearity: need samples >= 3");
    std::vector<double> zs(samples), bs(samples);
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        zs[i] = p.z_jet(x).value().real();
        bs[i] = p.gauge_coefficient(x);
    }
    for (int i = 0; i + 1 < samples; ++i) {
        if (!((zs[i + 1] > zs[i]) == (zs[1] > zs[0])) || zs[i + 1] == zs[i])
            throw NonMonotoneZ(
                "bz_linearity: z is not strictly monotone on the window");
    }

    // least-squares affine fit
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < samples; ++i) {
        sx += zs[i];
        sy += bs[i];
        sxx += zs[i] * zs[i];
        sxy += zs[i] * bs[i];
    }
    const double n = samples;
    BzFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    for (int i = 0; i < samples; ++i) {
        fit.max_deviation =
            std::max(fit.max_deviation,
                     std::abs(bs[i] - (fit.slope * zs[i] + fit.intercept)));
    }
    const double dmu = (p.u1.mu - p.u2.mu).real();
    const double scale = std::abs(dmu);
    fit.pass = std::abs(fit.slope - dmu) <= rel_tol * scale &&
               std::abs(fit.intercept) <= rel_tol * scale &&
               fit.max_deviation <= rel_tol * std::max(1.0, scale);
    return fit;
}

}  // namespace pdmiso::typea

// Flux-form discretization of the position-dependent-mass operator and the
// tridiagonal machinery used to verify spectra independently of any closed
// form: Sturm counts, bisection, inverse iteration, node scans, quadrature.

#include "pdmiso/numspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdmiso::numspec {

namespace {

constexpr double kSafeMin = std::numeric_limits<double>::min();

double gershgorin_lower(const DiscretizedHamiltonian& H) {
    const int n = H.grid.n;
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(H.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(H.offdiag[i]);
        lo = std::min(lo, H.diag[i] - r);
    }
    return lo;
}

double gershgorin_upper(const DiscretizedHamiltonian& H) {
    const int n = H.grid.n;
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(H.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(H.offdiag[i]);
        hi = std::max(hi, H.diag[i] + r);
    }
    return hi;
}

double pivmin(const DiscretizedHamiltonian& H) {
    double e2max = kSafeMin;
    for (double e : H.offdiag) e2max = std::max(e2max, e * e);
    return kSafeMin * e2max;
}

// Eigenvalue of index idx (0-based, ascending) by bisection on the count.
double bisect_index(const DiscretizedHamiltonian& H, int idx, double lo,
                    double hi) {
    // invariant: count(lo) <= idx < count(hi)
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double tol = 1e-10 * std::max(1.0, std::abs(mid));
        if (hi - lo <= tol || mid == lo || mid == hi) break;
        if (sturm_count(H, mid) <= idx)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

DiscretizedHamiltonian discretize(const RealFn& mass, const RealFn& potential,
                                  const Grid& grid, par::Exec exec) {
    const int n = grid.n;
    const double h = grid.h();
    DiscretizedHamiltonian H;
    H.grid = grid;
    H.diag.assign(n, 0.0);
    H.offdiag.assign(n - 1 > 0 ? n - 1 : 0, 0.0);

    // midpoint flux weights w_{i+1/2} = 1/M, i = -1 .. n-1
    std::vector<double> w(n + 1);
    std::vector<double> msample(n + 1);
    par::parallel_for(n + 1, exec, [&](long i) {
        const double xm = grid.x_min + (double(i) + 0.5) * h;
        msample[i] = mass(xm);
        w[i] = 1.0 / msample[i];
    });
    for (int i = 0; i <= n; ++i) {
        if (!(msample[i] > 0.0) || !std::isfinite(msample[i]))
            throw NonPositiveMass("discretize: mass must be positive and finite");
        if (!std::isfinite(w[i]))
            throw BoxTooLarge("discretize: 1/M overflow; shrink the box");
    }

    std::vector<double> v(n);
    par::parallel_for(n, exec, [&](long i) { v[i] = potential(grid.x(int(i))); });

    const double h2 = h * h;
    for (int i = 0; i < n; ++i) {
        H.diag[i] = (w[i] + w[i + 1]) / h2 + v[i];
        if (i + 1 < n) H.offdiag[i] = -w[i + 1] / h2;
    }
    for (int i = 0; i < n; ++i) {
        if (std::isfinite(H.diag[i])) continue;
        if (!std::isfinite(v[i]))
            throw NonFiniteSample("discretize: potential sample not finite");
        throw BoxTooLarge("discretize: 1/M overflow; shrink the box");
    }
    return H;
}

int sturm_count(const DiscretizedHamiltonian& H, double lambda) {
    const int n = H.grid.n;
    const double piv = pivmin(H);
    int count = 0;
    double q = H.diag[0] - lambda;
    if (std::abs(q) < piv) q = -piv;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        const double e = H.offdiag[i - 1];
        q = (H.diag[i] - lambda) - e * e / q;
        if (std::abs(q) < piv) q = -piv;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> eigenvalues_lowest(const DiscretizedHamiltonian& H, int k,
                                       par::Exec exec) {
    const int n = H.grid.n;
    if (k < 1 || k > n)
        throw DomainError("eigenvalues_lowest: k out of range");
    const double lo = gershgorin_lower(H);
    const double hi = gershgorin_upper(H);
    std::vector<double> ev(k);
    par::parallel_for(k, exec,
                      [&](long idx) { ev[idx] = bisect_index(H, int(idx), lo, hi); });
    return ev;
}

std::vector<double> eigenvector(const DiscretizedHamiltonian& H,
                                double lambda) {
    const int n = H.grid.n;
    std::vector<double> v(n, 1.0 / std::sqrt(double(n)));
    std::vector<double> y(n);

    // Gaussian elimination on (T - lambda I) with partial pivoting;
    // bandwidth 1 fills in to bandwidth 2.
    auto solve = [&](std::vector<double>& rhs) {
        std::vector<double> a(n), b(n), c2(n), sub(n, 0.0);
        for (int i = 0; i < n; ++i) {
            a[i] = H.diag[i] - lambda;
            b[i] = (i + 1 < n) ? H.offdiag[i] : 0.0;
            c2[i] = 0.0;
            if (i > 0) sub[i] = H.offdiag[i - 1];
        }
        const double tiny = 1e-300;
        for (int i = 0; i + 1 < n; ++i) {
            if (std::abs(sub[i + 1]) > std::abs(a[i])) {
                std::swap(a[i], sub[i + 1]);
                std::swap(b[i], a[i + 1]);
                std::swap(c2[i], b[i + 1]);
                std::swap(rhs[i], rhs[i + 1]);
            }
            if (std::abs(a[i]) < tiny) a[i] = (a[i] < 0 ? -tiny : tiny);
            const double m = sub[i + 1] / a[i];
            a[i + 1] -= m * b[i];
            b[i + 1] -= m * c2[i];
            rhs[i + 1] -= m * rhs[i];
        }
        if (std::abs(a[n - 1]) < tiny)
            a[n - 1] = (a[n - 1] < 0 ? -tiny : tiny);
        rhs[n - 1] /= a[n - 1];
        if (n >= 2) rhs[n - 2] = (rhs[n - 2] - b[n - 2] * rhs[n - 1]) / a[n - 2];
        for (int i = n - 3; i >= 0; --i)
            rhs[i] = (rhs[i] - b[i] * rhs[i + 1] - c2[i] * rhs[i + 2]) / a[i];
    };

    double prev_norm = 0.0;
    bool settled = false;
    for (int iter = 0; iter < 50 && !settled; ++iter) {
        y = v;
        solve(y);
        double norm = 0.0;
        for (double t : y) norm += t * t;
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) v[i] = y[i] / norm;
        // the solve amplifies by 1/dist(lambda, spectrum); once the
        // amplification saturates the iterate is converged
        settled = iter > 0 && std::abs(norm - prev_norm) <= 1e-8 * norm;
        prev_norm = norm;
    }
    if (!settled) throw NonConvergence("eigenvector: inverse iteration stalled");

    // residual sanity: lambda must actually be near an eigenvalue
    double rmax = 0.0, vmax = 0.0, scale = std::abs(lambda);
    for (int i = 0; i < n; ++i) {
        double r = (H.diag[i] - lambda) * v[i];
        if (i > 0) r += H.offdiag[i - 1] * v[i - 1];
        if (i + 1 < n) r += H.offdiag[i] * v[i + 1];
        rmax = std::max(rmax, std::abs(r));
        vmax = std::max(vmax, std::abs(v[i]));
        scale = std::max(scale, std::abs(H.diag[i]));
    }
    if (rmax > 1e-6 * scale * vmax)
        throw NonConvergence("eigenvector: residual too large at given shift");

    // discrete L2 normalization, sign fixed by the first significant entry
    double nrm = 0.0;
    for (double t : v) nrm += t * t;
    nrm = std::sqrt(nrm * H.grid.h());
    for (auto& t : v) t /= nrm;
    for (double t : v) {
        if (std::abs(t) > 0.01 * vmax / nrm) {
            if (t < 0.0)
                for (auto& u : v) u = -u;
            break;
        }
    }
    return v;
}

NodeScan count_nodes(const RealFn& f, double lo, double hi, int samples) {
    NodeScan scan;
    if (samples < 3) throw DomainError("count_nodes: need at least 3 samples");
    const double dx = (hi - lo) / (samples - 1);
    std::vector<double> val(samples);
    for (int i = 0; i < samples; ++i) val[i] = f(lo + i * dx);
    // A sample far below its neighbours is a node candidate and forces
    // refinement.  The threshold is neighbour-relative: functions with
    // exponential envelopes would otherwise blind the scan.
    auto tiny_at = [&](int i) {
        const double l = std::abs(val[std::max(i - 1, 0)]);
        const double r = std::abs(val[std::min(i + 1, samples - 1)]);
        return 1e-13 * std::max(l, r);
    };

    auto refine = [&](double xl, double fl, double xr) {
        while (xr - xl > 1e-10) {
            const double xm = 0.5 * (xl + xr);
            const double fm = f(xm);
            if (fm == 0.0) return xm;
            if ((fl < 0.0) == (fm < 0.0)) {
                xl = xm;
                fl = fm;
            } else {
                xr = xm;
            }
        }
        return 0.5 * (xl + xr);
    };

    int last = -1;  // index of the last significant sample
    for (int i = 0; i < samples; ++i) {
        if (std::abs(val[i]) <= tiny_at(i)) {
            scan.suspicious.emplace_back(lo + std::max(i - 1, 0) * dx,
                                         lo + std::min(i + 1, samples - 1) * dx);
            continue;
        }
        if (last >= 0 && (val[last] < 0.0) != (val[i] < 0.0)) {
            scan.locations.push_back(
                refine(lo + last * dx, val[last], lo + i * dx));
            ++scan.count;
        }
        last = i;
    }
    return scan;
}

NodeScan count_nodes(const std::vector<double>& samples) {
    NodeScan scan;
    double fmax = 0.0;
    for (double v : samples) fmax = std::max(fmax, std::abs(v));
    const double tiny = 1e-13 * fmax;
    int last_sign = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (std::abs(samples[i]) <= tiny) continue;
        const int s = samples[i] < 0.0 ? -1 : 1;
        if (last_sign != 0 && s != last_sign) ++scan.count;
        last_sign = s;
    }
    return scan;
}

QuadResult quad(const RealFn& f, double lo, double hi, int intervals) {
    if (intervals < 4) intervals = 4;
    if (intervals % 2 != 0) ++intervals;

    auto simpson = [&](int m) {
        const double h = (hi - lo) / m;
        double s = f(lo) + f(hi);
        for (int i = 1; i < m; ++i)
            s += f(lo + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    const double coarse = simpson(intervals / 2);
    const double fine = simpson(intervals);
    QuadResult r;
    r.error = std::abs(fine - coarse) / 15.0;
    r.value = fine + (fine - coarse) / 15.0;
    return r;
}

Spectrum compute_spectrum(const RealFn& mass, const RealFn& potential,
                          double x_min, double x_max, int n, int k,
                          par::Exec exec) {
    Spectrum s;
    const int n_seq[3] = {std::max(k + 2, n / 4), std::max(k + 2, n / 2), n};
    for (int level = 0; level < 3; ++level) {
        Grid g(x_min, x_max, n_seq[level]);
        const auto H = discretize(mass, potential, g, exec);
        Refinement r;
        r.n = g.n;
        r.h = g.h();
        r.eigenvalues = eigenvalues_lowest(H, k, exec);
        s.history.push_back(std::move(r));
    }
    s.eigenvalues = s.history.back().eigenvalues;

    // observed order: log(d1/d2) / log(h1/h2) per eigenvalue, worst case
    double worst = std::numeric_limits<double>::infinity();
    bool measurable = false;
    for (int j = 0; j < k; ++j) {
        const double d1 =
            std::abs(s.history[1].eigenvalues[j] - s.history[0].eigenvalues[j]);
        const double d2 =
            std::abs(s.history[2].eigenvalues[j] - s.history[1].eigenvalues[j]);
        const double scale = std::max(1.0, std::abs(s.eigenvalues[j]));
        if (d2 <= 1e-12 * scale) continue;  // already at roundoff, fine
        const double hr1 = s.history[0].h / s.history[1].h;
        const double hr2 = s.history[1].h / s.history[2].h;
        const double order =
            std::log(d1 / d2) / (0.5 * (std::log(hr1) + std::log(hr2)));
        worst = std::min(worst, order);
        measurable = true;
    }
    s.observed_order = measurable ? worst : 2.0;
    s.converged = !measurable || (worst > 1.5 && worst < 2.9);
    return s;
}

std::string IsospectralLaw::name() const {
    switch (kind) {
        case Equal:
            return "equal";
        case ShiftByOne:
            return "shift-by-one";
        case ShiftByTwo:
            return "shift-by-two";
        case InsertOne:
            return "insert-one";
        case InsertTwo:
            return "insert-two";
    }
    return "?";
}

LawCheck verify_isospectral(const Spectrum& a, const Spectrum& b,
                            const IsospectralLaw& law, double tol) {
    if (!a.converged || !b.converged)
        throw UnconvergedInput("verify_isospectral: spectra lack converged metadata");
    LawCheck res;
    std::vector<double> expect;
    switch (law.kind) {
        case IsospectralLaw::Equal:
            expect = a.eigenvalues;
            break;
        case IsospectralLaw::ShiftByOne:
            expect.assign(a.eigenvalues.begin() + 1, a.eigenvalues.end());
            break;
        case IsospectralLaw::ShiftByTwo:
            expect.assign(a.eigenvalues.begin() + 2, a.eigenvalues.end());
            break;
        case IsospectralLaw::InsertOne:
            expect = a.eigenvalues;
            expect.push_back(law.mu1);
            std::sort(expect.begin(), expect.end());
            break;
        case IsospectralLaw::InsertTwo:
            expect = a.eigenvalues;
            expect.push_back(law.mu1);
            expect.push_back(law.mu2);
            std::sort(expect.begin(), expect.end());
            break;
    }
    const std::size_t m = std::min(expect.size(), b.eigenvalues.size());
    res.pass = m > 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dev = std::abs(b.eigenvalues[i] - expect[i]) /
                           std::max(1.0, std::abs(expect[i]));
        res.expected.push_back(expect[i]);
        res.rel_dev.push_back(dev);
        res.max_rel_dev = std::max(res.max_rel_dev, dev);
        if (dev > tol) res.pass = false;
    }
    return res;
}

}  // namespace pdmiso::numspec

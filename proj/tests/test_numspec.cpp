#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "pdmiso/numspec.hpp"

using namespace pdmiso;
using namespace pdmiso::numspec;

namespace {

// ---- dense QL-with-implicit-shifts oracle (independent of the Sturm path)
std::vector<double> dense_eigenvalues(std::vector<double> d,
                                      std::vector<double> e) {
    const int n = int(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 1e-16 * dd) break;
            }
            if (m != l) {
                REQUIRE(iter++ < 60);
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i], b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::mt19937 rng(987654);

}  // namespace

TEST_CASE("free particle in a box reproduces k^2") {
    Grid g(0.0, M_PI, 1999);
    auto H = discretize([](double) { return 1.0; }, [](double) { return 0.0; },
                        g);
    auto ev = eigenvalues_lowest(H, 3);
    CHECK(std::abs(ev[0] - 1.0) < 1e-4);
    CHECK(std::abs(ev[1] - 4.0) / 4.0 < 1e-4);
    CHECK(std::abs(ev[2] - 9.0) / 9.0 < 1e-4);
}

TEST_CASE("single interior point gives 2/h^2") {
    Grid g(0.0, 1.0, 1);
    auto H = discretize([](double) { return 1.0; }, [](double) { return 0.0; },
                        g);
    const double h = g.h();
    CHECK(H.diag.size() == 1);
    CHECK(std::abs(H.diag[0] - 2.0 / (h * h)) < 1e-12);
    auto ev = eigenvalues_lowest(H, 1);
    CHECK(std::abs(ev[0] - 2.0 / (h * h)) < 1e-6 / (h * h));
}

TEST_CASE("matrix is symmetric with strictly negative couplings") {
    Grid g(-3.0, 5.0, 200);
    auto H = discretize([](double x) { return 1.0 / (1.0 + x * x); },
                        [](double x) { return std::cos(x); }, g);
    for (double e : H.offdiag) CHECK(e < 0.0);
}

TEST_CASE("Sturm count vanishes below the Gershgorin bound") {
    Grid g(-2.0, 2.0, 157);
    auto H = discretize([](double) { return 0.5; },
                        [](double x) { return x * x; }, g);
    double lo = H.diag[0];
    double emax = 0.0;
    for (double d : H.diag) lo = std::min(lo, d);
    for (double e : H.offdiag) emax = std::max(emax, std::abs(e));
    CHECK(sturm_count(H, lo - 2.0 * emax) == 0);
}

TEST_CASE("bisection agrees with the dense QL oracle on random matrices") {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 50;
        DiscretizedHamiltonian H;
        H.grid = Grid(0.0, 1.0, n);
        H.diag.resize(n);
        H.offdiag.resize(n - 1);
        for (int i = 0; i < n; ++i) H.diag[i] = 4.0 * U(rng);
        for (int i = 0; i < n - 1; ++i)
            H.offdiag[i] = -std::abs(U(rng)) - 0.01;
        auto mine = eigenvalues_lowest(H, n);
        auto oracle = dense_eigenvalues(H.diag, H.offdiag);
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(mine[i] - oracle[i]) <
                  1e-10 * std::max(1.0, std::abs(oracle[i])));
    }
}

TEST_CASE("Sturm count matches the number of bisection eigenvalues below lambda") {
    Grid g(-4.0, 4.0, 300);
    auto H = discretize([](double) { return 1.0; },
                        [](double x) { return x * x; }, g);
    auto ev = eigenvalues_lowest(H, 20);
    std::uniform_real_distribution<double> U(ev.front() - 1.0, ev.back());
    for (int t = 0; t < 20; ++t) {
        const double lam = U(rng);
        const int count = sturm_count(H, lam);
        const int below =
            int(std::count_if(ev.begin(), ev.end(),
                              [&](double e) { return e < lam; }));
        if (count <= 20) CHECK(count == below);
    }
}

TEST_CASE("serial and parallel eigensolves are bitwise identical") {
    Grid g(-6.0, 6.0, 801);
    auto mass = [](double x) { return 0.25 / std::cosh(x / 2) / std::cosh(x / 2); };
    auto pot = [](double x) { return std::exp(x) + 2.0 * std::exp(-x); };
    auto Hs = discretize(mass, pot, g, par::Exec::Serial);
    auto Hp = discretize(mass, pot, g, par::Exec::Parallel);
    CHECK(Hs.diag == Hp.diag);
    CHECK(Hs.offdiag == Hp.offdiag);
    auto es = eigenvalues_lowest(Hs, 6, par::Exec::Serial);
    auto ep = eigenvalues_lowest(Hs, 6, par::Exec::Parallel);
    CHECK(es == ep);
}

TEST_CASE("eigenvector matches the box sine mode and node counts") {
    Grid g(0.0, M_PI, 999);
    auto H = discretize([](double) { return 1.0; }, [](double) { return 0.0; },
                        g);
    auto ev = eigenvalues_lowest(H, 4);
    auto v1 = eigenvector(H, ev[0]);
    const double amp = std::sqrt(2.0 / M_PI);  // normalized sin(x)
    for (int i = 0; i < g.n; i += 37)
        CHECK(std::abs(v1[i] - amp * std::sin(g.x(i))) < 1e-3);
    for (int j = 0; j < 4; ++j) {
        auto vj = eigenvector(H, ev[j]);
        CHECK(count_nodes(vj).count == j);
    }
    CHECK_THROWS_AS((void)eigenvector(H, ev[0] + 0.5), NonConvergence);
}

TEST_CASE("node scan finds simple roots and flags near-zero samples") {
    auto f = [](double x) { return (x - 0.5) * (x + 1.25) * (x - 2.0); };
    auto scan = count_nodes(f, -3.0, 3.0, 601);
    CHECK(scan.count == 3);
    REQUIRE(scan.locations.size() == 3);
    CHECK(std::abs(scan.locations[0] + 1.25) < 1e-8);
    CHECK(std::abs(scan.locations[1] - 0.5) < 1e-8);
    CHECK(std::abs(scan.locations[2] - 2.0) < 1e-8);
    // tangential zero: no sign change, but the samples near it are suspicious
    auto g = [](double x) { return (x - 1.0) * (x - 1.0) + 1e-18; };
    auto scan2 = count_nodes(g, 0.0, 2.0, 201);
    CHECK(scan2.count == 0);
    CHECK(!scan2.suspicious.empty());
}

TEST_CASE("Simpson quadrature with Richardson estimate") {
    auto r = quad([](double x) { return std::sin(x) * std::sin(x); }, 0.0,
                  M_PI, 200);
    CHECK(std::abs(r.value - M_PI / 2.0) < 1e-10);
    CHECK(r.error < 1e-8);
    auto s = quad([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 400);
    CHECK(std::abs(s.value - std::sqrt(M_PI)) < 1e-9);
}

TEST_CASE("grid convergence monitor reports second order on the box") {
    auto spec = compute_spectrum([](double) { return 1.0; },
                                 [](double) { return 0.0; }, 0.0, M_PI, 2000,
                                 3);
    CHECK(spec.converged);
    CHECK(spec.observed_order > 1.5);
    CHECK(spec.observed_order < 2.9);
    CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-4);
}

TEST_CASE("isospectral law comparisons") {
    Spectrum a, b;
    a.converged = b.converged = true;
    a.eigenvalues = {1.0, 4.0, 9.0, 16.0, 25.0};

    b.eigenvalues = {4.0, 9.0, 16.0};
    CHECK(verify_isospectral(a, b, IsospectralLaw::shift_by_one(), 1e-9).pass);
    b.eigenvalues = {9.0, 16.0, 25.0};
    CHECK(verify_isospectral(a, b, IsospectralLaw::shift_by_two(), 1e-9).pass);
    b.eigenvalues = {-2.0, 1.0, 4.0, 9.0};
    CHECK(verify_isospectral(a, b, IsospectralLaw::insert_one(-2.0), 1e-9).pass);
    b.eigenvalues = {-5.0, -2.0, 1.0, 4.0};
    CHECK(verify_isospectral(a, b, IsospectralLaw::insert_two(-2.0, -5.0), 1e-9)
              .pass);
    b.eigenvalues = {1.0, 4.0, 9.0001};
    auto chk = verify_isospectral(a, b, IsospectralLaw::equal(), 1e-6);
    CHECK(!chk.pass);
    CHECK(chk.max_rel_dev > 1e-6);

    Spectrum bad = a;
    bad.converged = false;
    CHECK_THROWS_AS(
        (void)verify_isospectral(a, bad, IsospectralLaw::equal(), 1e-6),
        UnconvergedInput);
}

TEST_CASE("discretize error paths") {
    Grid g(-1.0, 1.0, 50);
    CHECK_THROWS_AS((void)discretize([](double) { return -1.0; },
                                     [](double) { return 0.0; }, g),
                    NonPositiveMass);
    CHECK_THROWS_AS(
        (void)discretize([](double) { return 1.0; },
                         [](double) { return std::nan(""); }, g),
        NonFiniteSample);
    // 1/M overflow: mass so small that the flux weight is infinite
    Grid wide(-740.0, 740.0, 99);
    CHECK_THROWS_AS(
        (void)discretize([](double x) { return std::exp(-std::abs(x)); },
                         [](double) { return 0.0; }, wide),
        BoxTooLarge);
    CHECK_THROWS_AS((void)Grid(1.0, -1.0, 10), DomainError);
    auto H = discretize([](double) { return 1.0; }, [](double) { return 0.0; },
                        g);
    CHECK_THROWS_AS((void)eigenvalues_lowest(H, 0), DomainError);
    CHECK_THROWS_AS((void)eigenvalues_lowest(H, 51), DomainError);
}

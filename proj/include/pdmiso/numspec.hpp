#ifndef PDMISO_NUMSPEC_HPP
#define PDMISO_NUMSPEC_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pdmiso/errors.hpp"
#include "pdmiso/parallel.hpp"

namespace pdmiso::numspec {

using RealFn = std::function<double(double)>;

// Uniform Dirichlet grid: n interior points, boundary values excluded.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;

    Grid() = default;
    Grid(double lo, double hi, int interior) : x_min(lo), x_max(hi), n(interior) {
        if (!(x_min < x_max) || n < 1)
            throw DomainError("Grid: need x_min < x_max and n >= 1");
    }
    double h() const { return (x_max - x_min) / (n + 1); }
    double x(int i) const { return x_min + (i + 1) * h(); }
};

// Symmetric tridiagonal matrix from the flux-form discretization of
// -d/dx[(1/M) d/dx] + V with Dirichlet boundaries:
//   diag[i]    = (w_{i-1/2} + w_{i+1/2})/h^2 + V(x_i),   w = 1/M at midpoints
//   offdiag[i] = -w_{i+1/2}/h^2
struct DiscretizedHamiltonian {
    Grid grid;
    std::vector<double> diag;     // size n
    std::vector<double> offdiag;  // size n-1, strictly negative
};

DiscretizedHamiltonian discretize(const RealFn& mass, const RealFn& potential,
                                  const Grid& grid,
                                  par::Exec exec = par::default_exec());

// Number of eigenvalues strictly below lambda (Sturm sequence count).
int sturm_count(const DiscretizedHamiltonian& H, double lambda);

// k smallest eigenvalues by bisection on the Sturm count.  Deterministic;
// the two execution policies give bitwise-identical results.
std::vector<double> eigenvalues_lowest(const DiscretizedHamiltonian& H, int k,
                                       par::Exec exec = par::default_exec());

// Eigenvector by inverse iteration at an eigenvalue estimate; normalized in
// the discrete L2 norm (sum v_i^2 h = 1), sign fixed by the first component
// exceeding 1% of the max being positive.
std::vector<double> eigenvector(const DiscretizedHamiltonian& H, double lambda);

// One refinement step of an eigenvalue run, for convergence monitoring.
struct Refinement {
    int n = 0;
    double h = 0.0;
    std::vector<double> eigenvalues;
};

// Low-lying spectrum with its refinement history.  `converged` is set only
// when the history exhibits second-order behaviour under h -> h/2.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<Refinement> history;
    bool converged = false;
    double observed_order = 0.0;
};

// Computes the k lowest eigenvalues on grids of roughly n/4, n/2 and n
// interior points and records the observed refinement order.
Spectrum compute_spectrum(const RealFn& mass, const RealFn& potential,
                          double x_min, double x_max, int n, int k,
                          par::Exec exec = par::default_exec());

// Sign-change count of a smooth function sampled on [lo, hi]; brackets are
// refined by bisection, near-zero samples are reported as suspicious.
struct NodeScan {
    int count = 0;
    std::vector<double> locations;
    std::vector<std::pair<double, double>> suspicious;
};

NodeScan count_nodes(const RealFn& f, double lo, double hi, int samples = 2001);
NodeScan count_nodes(const std::vector<double>& samples);

// Composite Simpson with one Richardson step; `error` is the h^4 estimate.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

QuadResult quad(const RealFn& f, double lo, double hi, int intervals = 2000);

// Spectral-modification laws relating a base spectrum A to a partner
// spectrum B.
struct IsospectralLaw {
    enum Kind { Equal, ShiftByOne, ShiftByTwo, InsertOne, InsertTwo } kind;
    double mu1 = 0.0;
    double mu2 = 0.0;

    static IsospectralLaw equal() { return {Equal, 0, 0}; }
    static IsospectralLaw shift_by_one() { return {ShiftByOne, 0, 0}; }
    static IsospectralLaw shift_by_two() { return {ShiftByTwo, 0, 0}; }
    static IsospectralLaw insert_one(double mu) { return {InsertOne, mu, 0}; }
    static IsospectralLaw insert_two(double m1, double m2) {
        return {InsertTwo, m1, m2};
    }
    std::string name() const;
};

struct LawCheck {
    bool pass = false;
    double max_rel_dev = 0.0;
    std::vector<double> expected;  // what B should look like under the law
    std::vector<double> rel_dev;   // per compared eigenvalue
};

// Deviations are measured relative to max(1, |E|).  Requires both spectra
// to carry converged refinement metadata.
LawCheck verify_isospectral(const Spectrum& a, const Spectrum& b,
                            const IsospectralLaw& law, double tol);

}  // namespace pdmiso::numspec

#endif

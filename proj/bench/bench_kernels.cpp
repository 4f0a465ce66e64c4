// Benchmark: serial reference vs OpenMP execution of the two data-parallel
// kernels, partner-potential sampling (discretize) and Sturm bisection.

#include <chrono>
#include <cstdio>

#include "pdmiso/intertwine2.hpp"
#include "pdmiso/model.hpp"
#include "pdmiso/numspec.hpp"

using namespace pdmiso;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
}

model::ModelParams creation_params() {
    model::ModelParams mp;
    mp.a = 2.8;
    mp.b = 20.0;
    mp.c = 4.4;
    mp.alpha = 1.0;
    mp.beta = 1.0;
    return mp;
}

}  // namespace

int main(int argc, char** argv) {
    int n = 8000;
    if (argc > 1) n = std::atoi(argv[1]);
    const auto mp = creation_params();
    model::ModelParams m2 = mp;
    m2.nu = 7.2;
    const auto partner =
        intertwine2::second_order_partner(model::seed(mp), model::seed(m2));

    const auto mass = [mp](double x) { return model::mass(mp, x); };
    const auto vbar = [&partner](double x) {
        return partner.partner_potential(x);
    };

    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]",
                "speedup");

    numspec::Grid grid(-12.0, 12.0, n);
    numspec::DiscretizedHamiltonian hs, hp;
    const double t_ser = seconds(
        [&] { hs = numspec::discretize(mass, vbar, grid, par::Exec::Serial); });
    const double t_par = seconds([&] {
        hp = numspec::discretize(mass, vbar, grid, par::Exec::Parallel);
    });
    std::printf("%-34s %10.3f %10.3f %8.2f\n",
                "partner potential sampling", t_ser, t_par, t_ser / t_par);
    if (hs.diag != hp.diag || hs.offdiag != hp.offdiag) {
        std::printf("MISMATCH: serial and parallel assemblies differ\n");
        return 1;
    }

    std::vector<double> es, ep;
    const double e_ser = seconds(
        [&] { es = numspec::eigenvalues_lowest(hs, 16, par::Exec::Serial); });
    const double e_par = seconds(
        [&] { ep = numspec::eigenvalues_lowest(hs, 16, par::Exec::Parallel); });
    std::printf("%-34s %10.3f %10.3f %8.2f\n", "Sturm bisection (16 lowest)",
                e_ser, e_par, e_ser / e_par);
    if (es != ep) {
        std::printf("MISMATCH: serial and parallel eigenvalues differ\n");
        return 1;
    }
    std::printf("results bitwise identical across execution policies\n");
    return 0;
}

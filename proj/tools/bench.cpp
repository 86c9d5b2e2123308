// Benchmark comparing the serial reference kernels against the OpenMP
// kernels on the harness's hot loops.  Not part of the test suite.

#include <chrono>
#include <cstdio>
#include <vector>

#include "ultra/kernels.hpp"
#include "ultra/spectral.hpp"

using namespace ultra;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_of(const std::function<void()>& f, int reps) {
    // warm-up
    f();
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(Clock::now() - t0).count() / reps;
}

void row(const char* name, double serial_s, double omp_s) {
    std::printf("%-32s %10.3f ms %10.3f ms %8.2fx\n", name, serial_s * 1e3, omp_s * 1e3,
                omp_s > 0 ? serial_s / omp_s : 0.0);
}

}  // namespace

int main() {
    RunConfig serial_cfg;
    serial_cfg.parallel = false;
    RunConfig omp_cfg;
    omp_cfg.parallel = true;

    std::printf("OpenMP kernels available: %s\n\n",
                spectral::kernels::openmp_available() ? "yes" : "no");
    std::printf("%-32s %13s %13s %9s\n", "workload", "serial", "openmp", "speedup");

    {  // raw kernel: weighted norm on a large 2D lattice
        const std::size_t n = (2 * 1024 + 1) * (2 * 1024 + 1);
        std::vector<spectral::kernels::cplx> c(n, {0.5, -0.25});
        const auto& ser = spectral::kernels::serial();
        const auto& par = spectral::kernels::openmp();
        const double s = seconds_of([&] { (void)ser.weighted_norm2({}, c, 1.0); }, 5);
        const double p = seconds_of([&] { (void)par.weighted_norm2({}, c, 1.0); }, 5);
        row("norm2 4.2M points", s, p);
    }

    {  // iterate norms on the classification experiment geometry
        const auto u = spectral::make_field(spectral::FieldGevreyProfile{2.0}, 1, 4096, serial_cfg);
        const auto P = spectral::parse_operator("laplace", 1);
        const double s =
            seconds_of([&] { (void)spectral::iterate_norms(P, u, 12, serial_cfg); }, 3);
        const double p = seconds_of([&] { (void)spectral::iterate_norms(P, u, 12, omp_cfg); }, 3);
        row("iterate norms 1D k<=12", s, p);
    }

    {  // derivative table rows scheduled across threads
        const auto u = spectral::make_field(spectral::FieldGevreyProfile{2.0}, 2, 192, serial_cfg);
        const double s =
            seconds_of([&] { (void)spectral::derivative_norms(u, 16, serial_cfg); }, 3);
        const double p = seconds_of([&] { (void)spectral::derivative_norms(u, 16, omp_cfg); }, 3);
        row("derivative norms 2D a<=16", s, p);
    }

    {  // a-priori lattice scan in 2D
        const auto P = spectral::parse_operator("laplace", 2);
        const double s =
            seconds_of([&] { (void)spectral::apriori_constant(P, 2, serial_cfg); }, 3);
        const double p = seconds_of([&] { (void)spectral::apriori_constant(P, 2, omp_cfg); }, 3);
        row("apriori scan 2D r=512", s, p);
    }

    return 0;
}

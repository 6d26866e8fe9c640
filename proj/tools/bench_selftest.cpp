// Benchmark: serial vs OpenMP-parallel selftest batch over identical cases.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "prismcalc/selftest.hpp"

using namespace prismcalc;

namespace {

double run_timed(SelftestOptions opts, bool parallel, SelftestResult& out) {
    opts.parallel = parallel;
    auto t0 = std::chrono::steady_clock::now();
    out = run_selftest(opts);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    SelftestOptions opts;
    opts.seed = 7;
    opts.count = argc > 1 ? std::atoll(argv[1]) : 120;

    SelftestResult serial, parallel;
    double ts = run_timed(opts, false, serial);
    double tp = run_timed(opts, true, parallel);

    std::cout << "cases            " << opts.count << "\n"
              << "serial           " << ts << " s\n"
              << "parallel (omp)   " << tp << " s\n"
              << "speedup          " << (tp > 0 ? ts / tp : 0.0) << "x\n";

    if (serial.case_lines != parallel.case_lines || serial.passed != parallel.passed ||
        serial.failed != parallel.failed) {
        std::cout << "MISMATCH: serial and parallel runs disagree\n";
        return 1;
    }
    std::cout << "serial and parallel outputs identical (" << serial.passed << " passed, "
              << serial.failed << " failed)\n";
    return serial.failed == 0 ? 0 : 1;
}

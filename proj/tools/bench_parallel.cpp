// Wall-time comparison of the serial reference path against the OpenMP path
// for the data-parallel kernels: verification sample sweeps and quadrature
// node sums. Both paths write into per-index slots and reduce in index order,
// so the outputs must match bit for bit; this harness asserts that too.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "spdmeans/barycenter.hpp"
#include "spdmeans/linalg.hpp"
#include "spdmeans/parallel.hpp"
#include "spdmeans/verify.hpp"

using namespace spdmeans;

namespace {

double time_seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-32s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   identical %s\n", name,
              serial, parallel, serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  const long samples = argc > 1 ? std::stol(argv[1]) : 400;
  std::printf("threads available: %d\n", max_threads());

  {
    VerifyOptions opts;
    opts.suite = Suite::Order;
    opts.samples = samples;
    opts.dim_min = 2;
    opts.dim_max = 6;
    opts.seed = 42;
    VerifyReport serial_report, parallel_report;
    opts.exec = Execution::Serial;
    const double ts = time_seconds([&] { serial_report = run_verification(opts); });
    opts.exec = Execution::Parallel;
    const double tp = time_seconds([&] { parallel_report = run_verification(opts); });
    bool identical = serial_report.properties.size() == parallel_report.properties.size();
    for (std::size_t i = 0; identical && i < serial_report.properties.size(); ++i) {
      const auto& a = serial_report.properties[i];
      const auto& b = parallel_report.properties[i];
      identical = a.name == b.name && a.passes == b.passes && a.skips == b.skips &&
                  a.violations == b.violations && a.worst_margin == b.worst_margin;
    }
    report("order suite sweep", ts, tp, identical);
  }

  {
    const SpdMatrix a = random_spd(24, 1e4, 7);
    Matrix serial_out, parallel_out;
    const double ts = time_seconds([&] {
      for (int i = 0; i < 50; ++i) {
        serial_out = power_integral(a, 0.7, 512, Execution::Serial).entries();
      }
    });
    const double tp = time_seconds([&] {
      for (int i = 0; i < 50; ++i) {
        parallel_out = power_integral(a, 0.7, 512, Execution::Parallel).entries();
      }
    });
    report("power integral, 512 nodes", ts, tp, serial_out.cwiseEqual(parallel_out).all());
  }

  {
    std::vector<SpdMatrix> mats;
    for (int j = 0; j < 5; ++j) {
      mats.push_back(random_spd(16, 100.0, 100 + j));
    }
    BarycenterProblem p(mats, WeightVector({0.2, 0.2, 0.2, 0.2, 0.2}), 0.4);
    const SpdMatrix x = random_spd(16, 50.0, 11);
    Matrix serial_out, parallel_out;
    const double ts = time_seconds([&] {
      for (int i = 0; i < 20; ++i) {
        serial_out = gradient_quadrature(p, x, 256, Execution::Serial).entries();
      }
    });
    const double tp = time_seconds([&] {
      for (int i = 0; i < 20; ++i) {
        parallel_out = gradient_quadrature(p, x, 256, Execution::Parallel).entries();
      }
    });
    report("stationarity residual, n=5", ts, tp, serial_out.cwiseEqual(parallel_out).all());
  }

  return 0;
}

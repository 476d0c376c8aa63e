// Benchmark of the OpenMP kernels against their serial reference twins.
// Usage: decolab_bench [dim] [reps]   (defaults: dim=1024, reps=3)

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "decolab/kernels.hpp"
#include "decolab/rng.hpp"

using decolab::Complex;
namespace kernels = decolab::kernels;

namespace {

std::vector<Complex> random_values(std::size_t count, std::uint64_t seed) {
  decolab::SequenceRng rng(seed);
  std::vector<Complex> values(count);
  for (Complex& v : values) v = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return values;
}

double time_best_of(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double start = omp_get_wtime();
    body();
    const double stop = omp_get_wtime();
    if (stop - start < best) best = stop - start;
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s, double delta) {
  std::printf("%-16s %10.3f ms %10.3f ms %7.2fx   max|diff| %.3g\n", name,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s, delta);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t dim = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1024;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("dim=%zu reps=%d threads=%d\n", dim, reps, omp_get_max_threads());
  std::printf("%-16s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  const auto vec = random_values(dim, 1);
  const auto mat_a = random_values(dim * dim, 2);
  const auto mat_b = random_values(dim * dim, 3);
  std::vector<Complex> out_serial(dim * dim), out_parallel(dim * dim);

  {
    const double s = time_best_of(reps, [&] {
      kernels::serial::outer(vec.data(), out_serial.data(), dim);
    });
    const double p = time_best_of(reps, [&] {
      kernels::outer(vec.data(), out_parallel.data(), dim);
    });
    report("outer", s, p,
           kernels::max_abs_diff(out_serial.data(), out_parallel.data(), dim * dim));
  }

  {
    const double s = time_best_of(reps, [&] {
      kernels::serial::matvec(mat_a.data(), vec.data(), out_serial.data(), dim);
    });
    const double p = time_best_of(reps, [&] {
      kernels::matvec(mat_a.data(), vec.data(), out_parallel.data(), dim);
    });
    report("matvec", s, p,
           kernels::max_abs_diff(out_serial.data(), out_parallel.data(), dim));
  }

  {
    Complex r_serial, r_parallel;
    const double s = time_best_of(reps, [&] {
      r_serial = kernels::serial::trace_product(mat_a.data(), mat_b.data(), dim);
    });
    const double p = time_best_of(reps, [&] {
      r_parallel = kernels::trace_product(mat_a.data(), mat_b.data(), dim);
    });
    report("trace_product", s, p, std::abs(r_serial - r_parallel));
  }

  {
    const std::size_t mm_dim = dim < 256 ? dim : 256;
    const double s = time_best_of(reps, [&] {
      kernels::serial::matmul(mat_a.data(), mat_b.data(), out_serial.data(), mm_dim);
    });
    const double p = time_best_of(reps, [&] {
      kernels::matmul(mat_a.data(), mat_b.data(), out_parallel.data(), mm_dim);
    });
    char name[32];
    std::snprintf(name, sizeof(name), "matmul(%zu)", mm_dim);
    report(name, s, p,
           kernels::max_abs_diff(out_serial.data(), out_parallel.data(), mm_dim * mm_dim));
  }

  {
    // Split dim into a kept/traced pair of factor groups of roughly equal size.
    std::size_t kept_dim = 1;
    while (kept_dim * kept_dim < dim) kept_dim *= 2;
    const std::size_t traced_dim = dim / kept_dim;
    std::vector<std::size_t> kept(kept_dim), traced(traced_dim);
    for (std::size_t i = 0; i < kept_dim; ++i) kept[i] = i * traced_dim;
    for (std::size_t t = 0; t < traced_dim; ++t) traced[t] = t;
    const auto rho = random_values(dim * dim, 4);
    const double s = time_best_of(reps, [&] {
      kernels::serial::partial_trace(rho.data(), dim, kept, traced, out_serial.data());
    });
    const double p = time_best_of(reps, [&] {
      kernels::partial_trace(rho.data(), dim, kept, traced, out_parallel.data());
    });
    char name[32];
    std::snprintf(name, sizeof(name), "ptrace(%zux%zu)", kept_dim, traced_dim);
    report(name, s, p,
           kernels::max_abs_diff(out_serial.data(), out_parallel.data(),
                                 kept_dim * kept_dim));
  }

  {
    // Counter-based sampling: the parallel loop mirrors born_sample.
    const std::size_t trials = 10'000'000;
    const decolab::CounterRng rng{7};
    long serial_count = 0, parallel_count = 0;
    const double s = time_best_of(reps, [&] {
      long count = 0;
      for (std::size_t i = 0; i < trials; ++i) {
        if (rng.uniform(i) < 0.5) ++count;
      }
      serial_count = count;
    });
    const double p = time_best_of(reps, [&] {
      long count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
      for (long long i = 0; i < static_cast<long long>(trials); ++i) {
        if (rng.uniform(static_cast<std::uint64_t>(i)) < 0.5) ++count;
      }
      parallel_count = count;
    });
    report("born_counting", s, p,
           static_cast<double>(std::abs(serial_count - parallel_count)));
  }

  return 0;
}

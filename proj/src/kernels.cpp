#include "decolab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace decolab::kernels {

namespace {
// Work below this many scalar operations is not worth a thread team.
constexpr std::int64_t kParallelCutoff = 1 << 12;
}  // namespace

void matvec(const Complex* a, const Complex* x, Complex* y, std::size_t dim) {
  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static) if (n * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < n; ++i) {
    const Complex* row = a + i * n;
    Complex acc{0.0, 0.0};
    for (std::int64_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matvec_adjoint(const Complex* a, const Complex* x, Complex* y, std::size_t dim) {
  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static) if (n * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < n; ++i) {
    Complex acc{0.0, 0.0};
    for (std::int64_t j = 0; j < n; ++j) acc += std::conj(a[j * n + i]) * x[j];
    y[i] = acc;
  }
}

void matmul(const Complex* a, const Complex* b, Complex* c, std::size_t dim) {
  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static) if (n * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < n; ++i) {
    Complex* crow = c + i * n;
    std::fill(crow, crow + n, Complex{0.0, 0.0});
    for (std::int64_t k = 0; k < n; ++k) {
      const Complex aik = a[i * n + k];
      const Complex* brow = b + k * n;
      for (std::int64_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void outer(const Complex* v, Complex* dst, std::size_t dim) {
  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static) if (n * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < n; ++i) {
    const Complex vi = v[i];
    Complex* row = dst + i * n;
    for (std::int64_t j = 0; j < n; ++j) row[j] = vi * std::conj(v[j]);
  }
}

void tensor(const Complex* a, std::size_t da, const Complex* b, std::size_t db,
            Complex* dst) {
  const auto na = static_cast<std::int64_t>(da);
  const auto nb = static_cast<std::int64_t>(db);
#pragma omp parallel for schedule(static) if (na * nb >= kParallelCutoff)
  for (std::int64_t i = 0; i < na; ++i) {
    const Complex ai = a[i];
    Complex* row = dst + i * nb;
    for (std::int64_t j = 0; j < nb; ++j) row[j] = ai * b[j];
  }
}

Complex inner(const Complex* a, const Complex* b, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (m >= kParallelCutoff)
  for (std::int64_t i = 0; i < m; ++i) {
    const Complex term = std::conj(a[i]) * b[i];
    re += term.real();
    im += term.imag();
  }
  return {re, im};
}

double norm_squared(const Complex* v, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (m >= kParallelCutoff)
  for (std::int64_t i = 0; i < m; ++i) acc += std::norm(v[i]);
  return acc;
}

Complex trace_product(const Complex* a, const Complex* b, std::size_t dim) {
  const auto n = static_cast<std::int64_t>(dim);
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (n * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < n; ++i) {
    Complex acc{0.0, 0.0};
    for (std::int64_t j = 0; j < n; ++j) acc += a[i * n + j] * b[j * n + i];
    re += acc.real();
    im += acc.imag();
  }
  return {re, im};
}

void partial_trace(const Complex* rho, std::size_t full_dim,
                   std::span<const std::size_t> kept,
                   std::span<const std::size_t> traced, Complex* dst) {
  const auto dk = static_cast<std::int64_t>(kept.size());
  const auto dt = static_cast<std::int64_t>(traced.size());
  const auto fd = static_cast<std::int64_t>(full_dim);
#pragma omp parallel for collapse(2) schedule(static) if (dk * dk * dt >= kParallelCutoff)
  for (std::int64_t ra = 0; ra < dk; ++ra) {
    for (std::int64_t rb = 0; rb < dk; ++rb) {
      const auto ka = static_cast<std::int64_t>(kept[ra]);
      const auto kb = static_cast<std::int64_t>(kept[rb]);
      Complex acc{0.0, 0.0};
      for (std::int64_t t = 0; t < dt; ++t) {
        const auto off = static_cast<std::int64_t>(traced[t]);
        acc += rho[(ka + off) * fd + (kb + off)];
      }
      dst[ra * dk + rb] = acc;
    }
  }
}

double max_abs_diff(const Complex* a, const Complex* b, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst) if (m >= kParallelCutoff)
  for (std::int64_t i = 0; i < m; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double hermitian_deviation(const Complex* a, std::size_t dim) {
  const auto n = static_cast<std::int64_t>(dim);
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst) if (n * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      worst = std::max(worst, std::abs(a[i * n + j] - std::conj(a[j * n + i])));
    }
  }
  return worst;
}

double unitary_deviation(const Complex* u, std::size_t dim) {
  std::vector<Complex> gram(dim * dim);
  const auto n = static_cast<std::int64_t>(dim);
  // gram = U^dagger U
#pragma omp parallel for schedule(static) if (n * n * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (std::int64_t k = 0; k < n; ++k) acc += std::conj(u[k * n + i]) * u[k * n + j];
      gram[i * n + j] = acc;
    }
  }
  double worst = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      worst = std::max(worst, std::abs(gram[i * n + j] - expect));
    }
  }
  return worst;
}

namespace serial {

void matvec(const Complex* a, const Complex* x, Complex* y, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < dim; ++j) acc += a[i * dim + j] * x[j];
    y[i] = acc;
  }
}

void matvec_adjoint(const Complex* a, const Complex* x, Complex* y, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < dim; ++j) acc += std::conj(a[j * dim + i]) * x[j];
    y[i] = acc;
  }
}

void matmul(const Complex* a, const Complex* b, Complex* c, std::size_t dim) {
  std::fill(c, c + dim * dim, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex aik = a[i * dim + k];
      for (std::size_t j = 0; j < dim; ++j) c[i * dim + j] += aik * b[k * dim + j];
    }
  }
}

void outer(const Complex* v, Complex* dst, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) dst[i * dim + j] = v[i] * std::conj(v[j]);
  }
}

void tensor(const Complex* a, std::size_t da, const Complex* b, std::size_t db,
            Complex* dst) {
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) dst[i * db + j] = a[i] * b[j];
  }
}

Complex inner(const Complex* a, const Complex* b, std::size_t n) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm_squared(const Complex* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(v[i]);
  return acc;
}

Complex trace_product(const Complex* a, const Complex* b, std::size_t dim) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) acc += a[i * dim + j] * b[j * dim + i];
  }
  return acc;
}

void partial_trace(const Complex* rho, std::size_t full_dim,
                   std::span<const std::size_t> kept,
                   std::span<const std::size_t> traced, Complex* dst) {
  const std::size_t dk = kept.size();
  for (std::size_t ra = 0; ra < dk; ++ra) {
    for (std::size_t rb = 0; rb < dk; ++rb) {
      Complex acc{0.0, 0.0};
      for (std::size_t off : traced) {
        acc += rho[(kept[ra] + off) * full_dim + (kept[rb] + off)];
      }
      dst[ra * dk + rb] = acc;
    }
  }
}

double max_abs_diff(const Complex* a, const Complex* b, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double hermitian_deviation(const Complex* a, std::size_t dim) {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      worst = std::max(worst, std::abs(a[i * dim + j] - std::conj(a[j * dim + i])));
    }
  }
  return worst;
}

double unitary_deviation(const Complex* u, std::size_t dim) {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) acc += std::conj(u[k * dim + i]) * u[k * dim + j];
      const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      worst = std::max(worst, std::abs(acc - expect));
    }
  }
  return worst;
}

}  // namespace serial
}  // namespace decolab::kernels

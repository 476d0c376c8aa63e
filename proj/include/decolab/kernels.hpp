#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace decolab {

using Complex = std::complex<double>;

/// OpenMP-parallel inner loops over dense complex data.
///
/// Matrices are row-major and square unless noted. Every kernel has a plain
/// serial twin in kernels::serial used as the reference implementation in
/// tests and in the benchmark tool; the two must agree to roundoff.
namespace kernels {

// y = A x
void matvec(const Complex* a, const Complex* x, Complex* y, std::size_t dim);

// y = A^dagger x
void matvec_adjoint(const Complex* a, const Complex* x, Complex* y, std::size_t dim);

// C = A B
void matmul(const Complex* a, const Complex* b, Complex* c, std::size_t dim);

// dst[i*dim + j] = v[i] * conj(v[j])
void outer(const Complex* v, Complex* dst, std::size_t dim);

// dst[i*db + j] = a[i] * b[j]
void tensor(const Complex* a, std::size_t da, const Complex* b, std::size_t db,
            Complex* dst);

// <a|b> = sum_i conj(a[i]) b[i]
Complex inner(const Complex* a, const Complex* b, std::size_t n);

// sum_i |v[i]|^2
double norm_squared(const Complex* v, std::size_t n);

// tr(A B) = sum_ij A[i,j] B[j,i]
Complex trace_product(const Complex* a, const Complex* b, std::size_t dim);

// dst[ra*dk + rb] = sum_t rho[kept[ra] + traced[t], kept[rb] + traced[t]]
// where kept/traced hold the flat-index contributions of the kept and traced
// factor groups (dk = kept.size()).
void partial_trace(const Complex* rho, std::size_t full_dim,
                   std::span<const std::size_t> kept,
                   std::span<const std::size_t> traced, Complex* dst);

// max_i |a[i] - b[i]|
double max_abs_diff(const Complex* a, const Complex* b, std::size_t n);

// max_ij |A[i,j] - conj(A[j,i])|
double hermitian_deviation(const Complex* a, std::size_t dim);

// max_ij |(U^dagger U - I)[i,j]|
double unitary_deviation(const Complex* u, std::size_t dim);

// Serial reference twins; same contracts as above.
namespace serial {
void matvec(const Complex* a, const Complex* x, Complex* y, std::size_t dim);
void matvec_adjoint(const Complex* a, const Complex* x, Complex* y, std::size_t dim);
void matmul(const Complex* a, const Complex* b, Complex* c, std::size_t dim);
void outer(const Complex* v, Complex* dst, std::size_t dim);
void tensor(const Complex* a, std::size_t da, const Complex* b, std::size_t db,
            Complex* dst);
Complex inner(const Complex* a, const Complex* b, std::size_t n);
double norm_squared(const Complex* v, std::size_t n);
Complex trace_product(const Complex* a, const Complex* b, std::size_t dim);
void partial_trace(const Complex* rho, std::size_t full_dim,
                   std::span<const std::size_t> kept,
                   std::span<const std::size_t> traced, Complex* dst);
double max_abs_diff(const Complex* a, const Complex* b, std::size_t n);
double hermitian_deviation(const Complex* a, std::size_t dim);
double unitary_deviation(const Complex* u, std::size_t dim);
}  // namespace serial

}  // namespace kernels
}  // namespace decolab

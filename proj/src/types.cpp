#include "decolab/types.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace decolab {

namespace {

Eigen::MatrixXcd to_eigen(const std::vector<Complex>& entries, std::size_t dim) {
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = entries[i * dim + j];
  }
  return m;
}

}  // namespace

StateVector::StateVector(CompositeSpace space, std::vector<Complex> amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
  if (amps_.size() != space_.total_dim()) {
    throw std::invalid_argument("amplitude count must equal the total dimension");
  }
}

StateVector StateVector::basis(CompositeSpace space, std::size_t flat) {
  if (flat >= space.total_dim()) {
    throw std::out_of_range("basis index out of range");
  }
  std::vector<Complex> amps(space.total_dim(), Complex{0.0, 0.0});
  amps[flat] = Complex{1.0, 0.0};
  return StateVector(std::move(space), std::move(amps));
}

StateVector StateVector::qubit(Complex a0, Complex a1) {
  return StateVector(CompositeSpace({2}), {a0, a1});
}

double StateVector::norm() const {
  return std::sqrt(kernels::norm_squared(amps_.data(), amps_.size()));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector& StateVector::normalize() {
  const double n = norm();
  if (!(n > 0.0)) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  return scale(Complex{1.0 / n, 0.0});
}

StateVector StateVector::normalized() const {
  StateVector copy(*this);
  copy.normalize();
  return copy;
}

StateVector& StateVector::scale(Complex factor) {
  for (Complex& a : amps_) a *= factor;
  return *this;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch in inner product");
  }
  return kernels::inner(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

Operator::Operator(CompositeSpace space, std::vector<Complex> entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const std::size_t d = space_.total_dim();
  if (entries_.size() != d * d) {
    throw std::invalid_argument("operator entries must form a square matrix over the space");
  }
}

Operator Operator::identity(const CompositeSpace& space) {
  const std::size_t d = space.total_dim();
  std::vector<Complex> entries(d * d, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < d; ++i) entries[i * d + i] = Complex{1.0, 0.0};
  return Operator(space, std::move(entries));
}

Operator Operator::zero(const CompositeSpace& space) {
  const std::size_t d = space.total_dim();
  return Operator(space, std::vector<Complex>(d * d, Complex{0.0, 0.0}));
}

Operator Operator::adjoint() const {
  const std::size_t d = dim();
  std::vector<Complex> out(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out[j * d + i] = std::conj(entries_[i * d + j]);
  }
  return Operator(space_, std::move(out));
}

double Operator::hermitian_deviation() const {
  return kernels::hermitian_deviation(entries_.data(), dim());
}

bool Operator::is_hermitian(double tol) const { return hermitian_deviation() <= tol; }

double Operator::unitary_deviation() const {
  return kernels::unitary_deviation(entries_.data(), dim());
}

bool Operator::is_unitary(double tol) const { return unitary_deviation() <= tol; }

Operator pauli_x() {
  return Operator(CompositeSpace({2}), {Complex{0, 0}, Complex{1, 0},  //
                                        Complex{1, 0}, Complex{0, 0}});
}

Operator pauli_y() {
  return Operator(CompositeSpace({2}), {Complex{0, 0}, Complex{0, -1},  //
                                        Complex{0, 1}, Complex{0, 0}});
}

Operator pauli_z() {
  return Operator(CompositeSpace({2}), {Complex{1, 0}, Complex{0, 0},  //
                                        Complex{0, 0}, Complex{-1, 0}});
}

StateVector apply(const Operator& op, const StateVector& psi) {
  if (op.dim() != psi.dim()) {
    throw std::invalid_argument("operator/state dimension mismatch");
  }
  std::vector<Complex> out(psi.dim());
  kernels::matvec(op.entries().data(), psi.amplitudes().data(), out.data(), psi.dim());
  return StateVector(psi.space(), std::move(out));
}

DensityMatrix::DensityMatrix(CompositeSpace space, std::vector<Complex> entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const std::size_t d = space_.total_dim();
  if (entries_.size() != d * d) {
    throw std::invalid_argument("density matrix entries must form a square matrix over the space");
  }
  const double herm = kernels::hermitian_deviation(entries_.data(), d);
  if (herm > kStructuralTol) {
    throw std::invalid_argument("density matrix is not Hermitian within tolerance");
  }
  Complex tr{0.0, 0.0};
  for (std::size_t i = 0; i < d; ++i) tr += entries_[i * d + i];
  if (std::abs(tr - Complex{1.0, 0.0}) > kStructuralTol) {
    throw std::invalid_argument("density matrix trace must equal 1 within tolerance");
  }
}

Complex DensityMatrix::trace() const {
  const std::size_t d = dim();
  Complex tr{0.0, 0.0};
  for (std::size_t i = 0; i < d; ++i) tr += entries_[i * d + i];
  return tr;
}

double DensityMatrix::purity() const {
  return kernels::trace_product(entries_.data(), entries_.data(), dim()).real();
}

double DensityMatrix::min_eigenvalue() const {
  const std::size_t d = dim();
  Eigen::MatrixXcd m = to_eigen(entries_, d);
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_positive(double tol) const { return min_eigenvalue() >= -tol; }

bool DensityMatrix::is_pure(double tol) const { return std::abs(purity() - 1.0) <= tol; }

double max_entry_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch");
  }
  return kernels::max_abs_diff(a.entries().data(), b.entries().data(),
                               a.entries().size());
}

}  // namespace decolab

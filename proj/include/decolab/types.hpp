#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "decolab/kernels.hpp"
#include "decolab/space.hpp"
#include "decolab/tolerances.hpp"

namespace decolab {

/// Complex amplitude sequence over a composite Hilbert space.
class StateVector {
 public:
  StateVector(CompositeSpace space, std::vector<Complex> amplitudes);

  // Computational basis vector |flat>.
  static StateVector basis(CompositeSpace space, std::size_t flat);
  // Single two-level factor with amplitudes (a0, a1).
  static StateVector qubit(Complex a0, Complex a1);

  const CompositeSpace& space() const { return space_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::size_t dim() const { return amps_.size(); }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  bool is_normalized(double tol = kStructuralTol) const;
  StateVector& normalize();  // throws on the zero vector
  StateVector normalized() const;

  StateVector& scale(Complex factor);

 private:
  CompositeSpace space_;
  std::vector<Complex> amps_;
};

// <a|b>; dimensions must match.
Complex inner(const StateVector& a, const StateVector& b);

/// Dense square operator over a composite space (dimensionless; Hamiltonians
/// are in units where hbar = 1).
class Operator {
 public:
  Operator(CompositeSpace space, std::vector<Complex> entries);  // row-major

  static Operator identity(const CompositeSpace& space);
  static Operator zero(const CompositeSpace& space);

  const CompositeSpace& space() const { return space_; }
  std::size_t dim() const { return space_.total_dim(); }
  const std::vector<Complex>& entries() const { return entries_; }
  Complex at(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }
  Complex& at(std::size_t i, std::size_t j) { return entries_[i * dim() + j]; }

  Operator adjoint() const;

  double hermitian_deviation() const;
  bool is_hermitian(double tol = kStructuralTol) const;
  double unitary_deviation() const;  // max |U^dagger U - I|
  bool is_unitary(double tol = kStructuralTol) const;

 private:
  CompositeSpace space_;
  std::vector<Complex> entries_;
};

// The single-qubit Pauli operators.
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

// O |psi>
StateVector apply(const Operator& op, const StateVector& psi);

/// Hermitian, unit-trace matrix over a composite space. Hermiticity and trace
/// are checked at construction; positivity is an on-demand diagnostic because
/// it costs a full eigensolve.
class DensityMatrix {
 public:
  DensityMatrix(CompositeSpace space, std::vector<Complex> entries);  // row-major

  const CompositeSpace& space() const { return space_; }
  std::size_t dim() const { return space_.total_dim(); }
  const std::vector<Complex>& entries() const { return entries_; }
  Complex at(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }

  Complex trace() const;
  double purity() const;  // tr rho^2

  // Smallest eigenvalue of the Hermitian part: a graded positivity diagnostic.
  double min_eigenvalue() const;
  bool is_positive(double tol = kSpectralTol) const;
  bool is_pure(double tol = kSpectralTol) const;

 private:
  CompositeSpace space_;
  std::vector<Complex> entries_;
};

double max_entry_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace decolab

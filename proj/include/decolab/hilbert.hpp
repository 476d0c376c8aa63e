#pragma once

#include <span>

#include "decolab/types.hpp"

namespace decolab::hilbert {

// |a> (x) |b> over the concatenated factor sequence.
StateVector tensor_product(const StateVector& a, const StateVector& b);

// |psi><psi| for a normalized psi (norm within kSpectralTol of 1; the entries
// are built from the unit-normalized amplitudes).
DensityMatrix outer_product(const StateVector& psi);

// Reduced density matrix over the kept factors, in their original relative
// order. `keep` must be a nonempty subset of valid factor indices; keeping
// every factor returns rho unchanged.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

// tr rho^2
double purity(const DensityMatrix& rho);

// tr(O rho) for Hermitian O; the imaginary residue is checked against
// kStructuralTol and discarded.
double expectation(const Operator& obs, const DensityMatrix& rho);

// U(t) psi with U(t) = exp(-i H t), computed by spectral decomposition of the
// Hermitian generator h.
StateVector evolve(const Operator& h, double t, const StateVector& psi);

// U(t) = exp(-i H t) as a dense operator.
Operator evolution_operator(const Operator& h, double t);

}  // namespace decolab::hilbert

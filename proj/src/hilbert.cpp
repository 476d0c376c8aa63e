#include "decolab/hilbert.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace decolab::hilbert {

namespace {

Eigen::MatrixXcd to_eigen(const Operator& op) {
  const std::size_t d = op.dim();
  Eigen::MatrixXcd m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m(i, j) = op.at(i, j);
  }
  return m;
}

struct Spectral {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Spectral decompose_hermitian(const Operator& h) {
  if (!h.is_hermitian()) {
    throw std::invalid_argument("generator must be Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Flat-index contributions of every multi-index over the chosen factors.
std::vector<std::size_t> group_offsets(const CompositeSpace& space,
                                       std::span<const std::size_t> factors) {
  std::size_t count = 1;
  for (std::size_t f : factors) count *= space.factor_dims()[f];
  std::vector<std::size_t> offsets(count, 0);
  std::size_t repeat = count;
  for (std::size_t f : factors) {
    const std::size_t d = space.factor_dims()[f];
    const std::size_t stride = space.stride(f);
    repeat /= d;
    for (std::size_t idx = 0; idx < count; ++idx) {
      offsets[idx] += ((idx / repeat) % d) * stride;
    }
  }
  return offsets;
}

}  // namespace

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  CompositeSpace joint = tensor(a.space(), b.space());
  std::vector<Complex> amps(joint.total_dim());
  kernels::tensor(a.amplitudes().data(), a.dim(), b.amplitudes().data(), b.dim(),
                  amps.data());
  return StateVector(std::move(joint), std::move(amps));
}

DensityMatrix outer_product(const StateVector& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > kSpectralTol) {
    throw std::invalid_argument("outer_product requires a normalized state");
  }
  const std::size_t d = psi.dim();
  std::vector<Complex> entries(d * d);
  if (std::abs(norm - 1.0) > 1e-15) {
    const StateVector unit = psi.normalized();
    kernels::outer(unit.amplitudes().data(), entries.data(), d);
  } else {
    kernels::outer(psi.amplitudes().data(), entries.data(), d);
  }
  return DensityMatrix(psi.space(), std::move(entries));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const CompositeSpace& space = rho.space();
  if (keep.empty()) {
    throw std::invalid_argument("keep set must be nonempty");
  }
  std::vector<std::size_t> kept_factors(keep.begin(), keep.end());
  std::sort(kept_factors.begin(), kept_factors.end());
  kept_factors.erase(std::unique(kept_factors.begin(), kept_factors.end()),
                     kept_factors.end());
  if (kept_factors.back() >= space.num_factors()) {
    throw std::out_of_range("factor index out of range");
  }
  std::vector<std::size_t> traced_factors;
  for (std::size_t f = 0; f < space.num_factors(); ++f) {
    if (!std::binary_search(kept_factors.begin(), kept_factors.end(), f)) {
      traced_factors.push_back(f);
    }
  }

  const std::vector<std::size_t> kept = group_offsets(space, kept_factors);
  const std::vector<std::size_t> traced = group_offsets(space, traced_factors);
  std::vector<Complex> entries(kept.size() * kept.size());
  kernels::partial_trace(rho.entries().data(), space.total_dim(), kept, traced,
                         entries.data());
  return DensityMatrix(subspace(space, kept_factors), std::move(entries));
}

double purity(const DensityMatrix& rho) { return rho.purity(); }

double expectation(const Operator& obs, const DensityMatrix& rho) {
  if (!obs.is_hermitian()) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  if (!(obs.space() == rho.space())) {
    throw std::invalid_argument("observable/state space mismatch");
  }
  const Complex value =
      kernels::trace_product(obs.entries().data(), rho.entries().data(), rho.dim());
  if (std::abs(value.imag()) > kStructuralTol) {
    throw std::runtime_error("expectation value has a non-negligible imaginary part");
  }
  return value.real();
}

StateVector evolve(const Operator& h, double t, const StateVector& psi) {
  if (h.dim() != psi.dim()) {
    throw std::invalid_argument("generator/state dimension mismatch");
  }
  const Spectral spec = decompose_hermitian(h);
  const std::size_t d = psi.dim();
  Eigen::VectorXcd x(d);
  for (std::size_t i = 0; i < d; ++i) x(i) = psi[i];
  Eigen::VectorXcd modes = spec.vectors.adjoint() * x;
  for (std::size_t i = 0; i < d; ++i) {
    modes(i) *= std::polar(1.0, -spec.values(i) * t);
  }
  const Eigen::VectorXcd y = spec.vectors * modes;
  std::vector<Complex> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = y(i);
  return StateVector(psi.space(), std::move(out));
}

Operator evolution_operator(const Operator& h, double t) {
  const Spectral spec = decompose_hermitian(h);
  const std::size_t d = h.dim();
  Eigen::VectorXcd phases(d);
  for (std::size_t i = 0; i < d; ++i) phases(i) = std::polar(1.0, -spec.values(i) * t);
  const Eigen::MatrixXcd u = spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
  std::vector<Complex> entries(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) entries[i * d + j] = u(i, j);
  }
  return Operator(h.space(), std::move(entries));
}

}  // namespace decolab::hilbert
